#include "doctest.h"

#include <set>
#include <vector>

#include "levellab/errors.hpp"
#include "levellab/galois_ring.hpp"

using namespace levellab;

namespace {

std::vector<GaloisRingElement> all_elements(const GaloisRingPtr& R) {
  std::vector<GaloisRingElement> v;
  long long n = R->pr * R->pr;
  for (long long i = 0; i < n; i++) v.push_back(gr_at_index(R, i));
  return v;
}

}  // namespace

TEST_CASE("ring axioms hold exhaustively for small parameters") {
  for (auto [p, r] : std::vector<std::pair<long long, int>>{{2, 1}, {3, 1}, {2, 2}}) {
    auto R = GaloisRingDescriptor::make(p, r);
    auto elems = all_elements(R);
    for (const auto& a : elems) {
      CHECK(gr_eq(gr_add(a, gr_zero(R)), a));
      CHECK(gr_eq(gr_mul(a, gr_one(R)), a));
      CHECK(gr_add(a, gr_neg(a)).is_zero());
      for (const auto& b : elems) {
        CHECK(gr_eq(gr_add(a, b), gr_add(b, a)));
        CHECK(gr_eq(gr_mul(a, b), gr_mul(b, a)));
        for (const auto& c : elems) {
          CHECK(gr_eq(gr_mul(gr_mul(a, b), c), gr_mul(a, gr_mul(b, c))));
          CHECK(gr_eq(gr_mul(a, gr_add(b, c)), gr_add(gr_mul(a, b), gr_mul(a, c))));
        }
      }
    }
  }
}

TEST_CASE("unit counts match p^{2r} - p^{2(r-1)} and inverses work") {
  for (auto [p, r, units] : std::vector<std::tuple<long long, int, long long>>{
           {2, 1, 3}, {3, 1, 8}, {2, 2, 12}, {3, 2, 72}, {5, 1, 24}}) {
    auto R = GaloisRingDescriptor::make(p, r);
    long long count = 0;
    for (const auto& a : all_elements(R)) {
      if (gr_is_unit(a)) {
        count++;
        CHECK(gr_mul(a, gr_inv(a)).is_one());
      } else {
        CHECK_THROWS_AS((void)gr_inv(a), input_error);
      }
    }
    CHECK(count == units);
  }
}

TEST_CASE("non-units are exactly the multiples of p") {
  auto R = GaloisRingDescriptor::make(3, 2);
  for (const auto& a : all_elements(R)) {
    bool divisible = (a.c0 % 3 == 0) && (a.c1 % 3 == 0);
    CHECK(gr_is_unit(a) == !divisible);
  }
}

TEST_CASE("frobenius is an involutive ring automorphism fixing Z/p^r") {
  for (auto [p, r] : std::vector<std::pair<long long, int>>{{2, 2}, {3, 2}, {5, 1}}) {
    auto R = GaloisRingDescriptor::make(p, r);
    auto elems = all_elements(R);
    for (const auto& a : elems) {
      CHECK(gr_eq(gr_frobenius(gr_frobenius(a)), a));
      for (const auto& b : elems) {
        CHECK(gr_eq(gr_frobenius(gr_mul(a, b)), gr_mul(gr_frobenius(a), gr_frobenius(b))));
        CHECK(gr_eq(gr_frobenius(gr_add(a, b)), gr_add(gr_frobenius(a), gr_frobenius(b))));
      }
    }
    for (long long c = 0; c < R->pr; c++)
      CHECK(gr_eq(gr_frobenius(gr_make(R, c, 0)), gr_make(R, c, 0)));
  }
}

TEST_CASE("frobenius reduces to the p-power map modulo p") {
  auto R = GaloisRingDescriptor::make(3, 2);
  for (const auto& a : all_elements(R)) {
    auto f = gr_frobenius(a);
    auto cube = gr_mul(gr_mul(a, a), a);
    CHECK((f.c0 - cube.c0) % 3 == 0);
    CHECK((f.c1 - cube.c1) % 3 == 0);
  }
}

TEST_CASE("norm and trace under frobenius land in Z/p^r") {
  auto R = GaloisRingDescriptor::make(5, 2);
  for (long long i = 0; i < 625; i += 13) {
    auto a = gr_at_index(R, i);
    auto n = gr_mul(a, gr_frobenius(a));
    auto t = gr_add(a, gr_frobenius(a));
    CHECK(n.c1 == 0);
    CHECK(t.c1 == 0);
  }
}

TEST_CASE("index enumeration is a bijection") {
  auto R = GaloisRingDescriptor::make(3, 2);
  std::set<std::pair<long long, long long>> seen;
  for (long long i = 0; i < 81; i++) {
    auto a = gr_at_index(R, i);
    CHECK(gr_index(a) == i);
    seen.insert({a.c0, a.c1});
  }
  CHECK(seen.size() == 81);
}

TEST_CASE("alternative modulus gives a different presentation of the same ring") {
  for (auto [p, r] : std::vector<std::pair<long long, int>>{{3, 2}, {5, 2}, {2, 2}}) {
    auto R1 = GaloisRingDescriptor::make(p, r);
    auto R2 = GaloisRingDescriptor::make_alternative(p, r);
    CHECK(!R1->same(*R2));
    // Same ring-theoretic shape: unit count, frobenius involution, axioms.
    long long u1 = 0, u2 = 0;
    for (const auto& a : all_elements(R1))
      if (gr_is_unit(a)) u1++;
    for (const auto& a : all_elements(R2)) {
      if (gr_is_unit(a)) u2++;
      CHECK(gr_eq(gr_frobenius(gr_frobenius(a)), a));
    }
    CHECK(u1 == u2);
  }
}

TEST_CASE("alternative modulus at r = 1 coincides for p = 2 only") {
  auto a2 = GaloisRingDescriptor::make_alternative(2, 1);
  CHECK(a2->same(*GaloisRingDescriptor::make(2, 1)));
  auto a3 = GaloisRingDescriptor::make_alternative(3, 1);
  CHECK(!a3->same(*GaloisRingDescriptor::make(3, 1)));
}

TEST_CASE("modulus reduction mod p is irreducible over F_p") {
  for (auto [p, r] : std::vector<std::pair<long long, int>>{{2, 3}, {3, 3}, {7, 2}}) {
    for (auto R : {GaloisRingDescriptor::make(p, r), GaloisRingDescriptor::make_alternative(p, r)}) {
      for (long long x = 0; x < p; x++) {
        long long val = (x * x + R->h1 % p * x + R->h0) % p;
        CHECK(val % p != 0);
      }
    }
  }
}

TEST_CASE("describe and text output are stable") {
  auto R = GaloisRingDescriptor::make(2, 2);
  CHECK(!R->describe().empty());
  CHECK(!gr_to_text(gr_make(R, 3, 1)).empty());
  CHECK_THROWS_AS((void)GaloisRingDescriptor::make_with_modulus(3, 1, 0, 0), input_error);
}
