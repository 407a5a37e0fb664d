#pragma once

#include <cstdint>

#include <gmpxx.h>

namespace levellab {

// gmpxx has no long long overloads; this build targets LP64.
static_assert(sizeof(long) == 8, "LP64 platform expected");

inline mpz_class mpz_of(long long v) {
  return mpz_class(static_cast<long>(v));
}

inline mpz_class mpz_of_u64(std::uint64_t v) {
  return mpz_class(static_cast<unsigned long>(v));
}

inline long long mpz_to_ll(const mpz_class& z) {
  return static_cast<long long>(z.get_si());
}

}  // namespace levellab
