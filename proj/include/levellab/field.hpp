#pragma once

#include <memory>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "levellab/gmputil.hpp"

namespace levellab {

enum class FieldKind { rationals, finite };

struct FieldDescriptor;
using FieldPtr = std::shared_ptr<const FieldDescriptor>;

// Q, F_p, or F_{p^k} presented as F_p[u]/(h) with h monic irreducible.  The
// modulus is the lexicographically smallest monic irreducible of degree k
// (coefficient vectors ordered with c_0 most significant) unless one is
// supplied explicitly.
struct FieldDescriptor {
  FieldKind kind = FieldKind::rationals;
  long long p = 0;
  int k = 1;
  std::vector<long long> modulus;  // size k+1, monic; empty for Q

  static FieldPtr rationals();
  static FieldPtr finite(long long p, int k = 1);
  static FieldPtr finite_with_modulus(long long p,
                                      std::vector<long long> modulus);

  bool is_rationals() const { return kind == FieldKind::rationals; }
  bool is_finite() const { return kind == FieldKind::finite; }
  mpz_class order() const;  // p^k
  long long characteristic() const { return is_finite() ? p : 0; }
  bool same(const FieldDescriptor& o) const;
  std::string describe() const;  // e.g. "Q", "GF(7)", "GF(3^2;u^2+1)"
};

struct FieldElement {
  FieldPtr f;
  mpq_class rat;                // rationals only
  std::vector<long long> c;     // finite only, size k

  bool is_zero() const;
  bool is_one() const;
};

void check_same_field(const FieldElement& a, const FieldElement& b);

FieldElement fe_zero(const FieldPtr& f);
FieldElement fe_one(const FieldPtr& f);
FieldElement fe_from_int(const FieldPtr& f, long long n);
FieldElement fe_from_mpz(const FieldPtr& f, const mpz_class& n);
FieldElement fe_from_mpq(const FieldPtr& f, const mpq_class& q);
FieldElement fe_from_coeffs(const FieldPtr& f, std::vector<long long> coeffs);

FieldElement fe_add(const FieldElement& a, const FieldElement& b);
FieldElement fe_sub(const FieldElement& a, const FieldElement& b);
FieldElement fe_mul(const FieldElement& a, const FieldElement& b);
FieldElement fe_div(const FieldElement& a, const FieldElement& b);
FieldElement fe_neg(const FieldElement& a);
FieldElement fe_inv(const FieldElement& a);
FieldElement fe_pow(const FieldElement& a, const mpz_class& e);
bool fe_eq(const FieldElement& a, const FieldElement& b);

inline FieldElement operator+(const FieldElement& a, const FieldElement& b) { return fe_add(a, b); }
inline FieldElement operator-(const FieldElement& a, const FieldElement& b) { return fe_sub(a, b); }
inline FieldElement operator*(const FieldElement& a, const FieldElement& b) { return fe_mul(a, b); }
inline FieldElement operator/(const FieldElement& a, const FieldElement& b) { return fe_div(a, b); }
inline FieldElement operator-(const FieldElement& a) { return fe_neg(a); }
inline bool operator==(const FieldElement& a, const FieldElement& b) { return fe_eq(a, b); }
inline bool operator!=(const FieldElement& a, const FieldElement& b) { return !fe_eq(a, b); }

// p-power map (identity on Q); applied j times.
FieldElement fe_frobenius(const FieldElement& a, int j = 1);

// Canonical total order on a finite field: index(a) = sum c_i p^i.
mpz_class fe_index(const FieldElement& a);
FieldElement fe_at_index(const FieldPtr& f, const mpz_class& index);
int fe_cmp(const FieldElement& a, const FieldElement& b);

// Text forms: "n/d" (or "n") over Q, "c0,c1,...,c{k-1}" over F_{p^k}.
std::string fe_to_text(const FieldElement& a);
FieldElement fe_parse(const FieldPtr& f, const std::string& text);

bool fe_is_square(const FieldElement& a);
// Both square roots exist when is_square; returns the canonically smaller.
// Throws arithmetic_error when a is not a square.
FieldElement fe_sqrt(const FieldElement& a);

// Absolute trace to F_p as an integer residue.
long long fe_abs_trace(const FieldElement& a);

// Deterministic smallest element of exact multiplicative order N.
// Requires N | q - 1.
FieldElement zeta_ref(const FieldPtr& f, long long N);

// Smallest e >= 0 with base^e == target, searching order values below cap.
// Throws membership_error when no solution exists.
long long discrete_log(const FieldElement& base, const FieldElement& target,
                       long long order_bound, long long cap = 10000);

// Exact multiplicative order when it is at most cap.
long long element_order(const FieldElement& a, long long cap = 10000);

}  // namespace levellab
