#include "doctest.h"

#include <vector>

#include "levellab/errors.hpp"
#include "levellab/field.hpp"
#include "levellab/upoly.hpp"

using namespace levellab;

namespace {

EPoly from_ints(const FieldPtr& f, std::vector<long long> cs) {
  std::vector<FieldElement> v;
  for (long long c : cs) v.push_back(fe_from_int(f, c));
  return EPoly::from_coeffs(f, std::move(v));
}

}  // namespace

TEST_CASE("ring operations satisfy the division identity") {
  auto f = FieldDescriptor::finite(7, 1);
  auto a = from_ints(f, {3, 0, 5, 1, 2});
  auto b = from_ints(f, {1, 4, 1});
  EPoly q, r;
  ep_divrem(a, b, q, r);
  CHECK(r.deg() < b.deg());
  CHECK(ep_eq(ep_add(ep_mul(q, b), r), a));
  CHECK(ep_eq(ep_exact_div(ep_mul(a, b), b), a));
  CHECK(ep_eq(ep_rem(a, b), r));
}

TEST_CASE("gcd of products with a known common factor") {
  auto f = FieldDescriptor::finite(5, 1);
  auto g = from_ints(f, {2, 1});          // x + 2
  auto a = ep_mul(g, from_ints(f, {1, 1, 1}));
  auto b = ep_mul(g, from_ints(f, {3, 1}));
  auto d = ep_gcd(a, b);
  CHECK(ep_eq(d, ep_make_monic(g)));
  // Coprime inputs: gcd is 1.
  auto one = ep_gcd(from_ints(f, {1, 1}), from_ints(f, {2, 1}));
  CHECK(one.deg() == 0);
  CHECK(one.c[0].is_one());
}

TEST_CASE("roots of a fully split polynomial are recovered sorted") {
  auto f = FieldDescriptor::finite(7, 1);
  // (x-1)(x-2)(x-3)
  auto poly = ep_mul(ep_mul(from_ints(f, {6, 1}), from_ints(f, {5, 1})), from_ints(f, {4, 1}));
  auto roots = ep_roots(poly);
  REQUIRE(roots.size() == 3);
  CHECK(fe_to_text(roots[0]) == "1");
  CHECK(fe_to_text(roots[1]) == "2");
  CHECK(fe_to_text(roots[2]) == "3");
  for (const auto& r : roots) CHECK(ep_eval(poly, r).is_zero());
}

TEST_CASE("roots respect quadratic residuosity") {
  // x^2 + 1 splits over F_13 (13 = 1 mod 4) but not over F_7.
  auto f13 = FieldDescriptor::finite(13, 1);
  auto r13 = ep_roots(from_ints(f13, {1, 0, 1}));
  REQUIRE(r13.size() == 2);
  CHECK(fe_to_text(r13[0]) == "5");
  CHECK(fe_to_text(r13[1]) == "8");
  auto f7 = FieldDescriptor::finite(7, 1);
  CHECK(ep_roots(from_ints(f7, {1, 0, 1})).empty());
}

TEST_CASE("roots over an extension field include subfield-invisible ones") {
  auto f9 = FieldDescriptor::finite(3, 2);
  // x^2 + 1 = modulus of F_9, so it has two roots there: +-u.
  auto roots = ep_roots(from_ints(f9, {1, 0, 1}));
  REQUIRE(roots.size() == 2);
  for (const auto& r : roots) {
    CHECK(fe_mul(r, r) == fe_neg(fe_one(f9)));
    CHECK(r.c[1] != 0);
  }
}

TEST_CASE("repeated roots are reported once") {
  auto f = FieldDescriptor::finite(5, 1);
  auto sq = ep_mul(from_ints(f, {3, 1}), from_ints(f, {3, 1}));  // (x+3)^2
  auto roots = ep_roots(sq);
  REQUIRE(roots.size() == 1);
  CHECK(fe_to_text(roots[0]) == "2");
}

TEST_CASE("root finding is deterministic across calls") {
  auto f = FieldDescriptor::finite(101, 1);
  // x^4 - 1 has the four 4th roots of unity.
  auto poly = from_ints(f, {100, 0, 0, 0, 1});
  auto r1 = ep_roots(poly);
  auto r2 = ep_roots(poly);
  REQUIRE(r1.size() == 4);
  REQUIRE(r2.size() == 4);
  for (size_t i = 0; i < 4; i++) CHECK(r1[i] == r2[i]);
  for (size_t i = 0; i + 1 < 4; i++) CHECK(fe_cmp(r1[i], r1[i + 1]) < 0);
}

TEST_CASE("powmod matches naive exponentiation") {
  auto f = FieldDescriptor::finite(11, 1);
  auto m = from_ints(f, {3, 1, 0, 1});  // x^3 + x + 3
  auto base = from_ints(f, {1, 1});
  auto fast = ep_powmod(base, mpz_class(10), m);
  EPoly slow = EPoly::constant(fe_one(f));
  for (int i = 0; i < 10; i++) slow = ep_rem(ep_mul(slow, base), m);
  CHECK(ep_eq(fast, slow));
}

TEST_CASE("powmod at the field order realizes frobenius on x") {
  auto f = FieldDescriptor::finite(5, 1);
  // x^5 mod m acts as identity on roots of m in F_5.
  auto m = from_ints(f, {4, 1});  // x + 4, root x = 1
  auto xp = ep_powmod(EPoly::x(f), mpz_class(5), m);
  CHECK(xp.deg() == 0);
  CHECK(fe_to_text(xp.c[0]) == "1");
}

TEST_CASE("derivative is linear and satisfies the product rule") {
  auto f = FieldDescriptor::finite(7, 1);
  auto a = from_ints(f, {1, 2, 3, 4});
  auto b = from_ints(f, {5, 0, 1});
  auto lhs = ep_derivative(ep_mul(a, b));
  auto rhs = ep_add(ep_mul(ep_derivative(a), b), ep_mul(a, ep_derivative(b)));
  CHECK(ep_eq(lhs, rhs));
  CHECK(ep_derivative(EPoly::constant(fe_from_int(f, 3))).is_zero());
}

TEST_CASE("nth roots enumerate every solution of x^n = a") {
  auto f13 = FieldDescriptor::finite(13, 1);
  auto one = fe_one(f13);
  auto fourth = fe_nth_roots(one, 4);
  REQUIRE(fourth.size() == 4);
  for (const auto& r : fourth) CHECK(fe_pow(r, mpz_class(4)) == one);
  CHECK(fe_to_text(fourth[0]) == "1");
  CHECK(fe_to_text(fourth[1]) == "5");
  CHECK(fe_to_text(fourth[2]) == "8");
  CHECK(fe_to_text(fourth[3]) == "12");

  auto f7 = FieldDescriptor::finite(7, 1);
  auto sq2 = fe_nth_roots(fe_from_int(f7, 2), 2);
  REQUIRE(sq2.size() == 2);
  for (const auto& r : sq2) CHECK(fe_mul(r, r) == fe_from_int(f7, 2));
  // 3 is not a square mod 7.
  CHECK(fe_nth_roots(fe_from_int(f7, 3), 2).empty());
  // Brute-force cross-check: every reported root and no other.
  for (long long a = 0; a < 7; a++) {
    auto rep = fe_nth_roots(fe_from_int(f7, a), 3);
    std::vector<long long> brute;
    for (long long x = 0; x < 7; x++)
      if (x * x * x % 7 == a) brute.push_back(x);
    REQUIRE(rep.size() == brute.size());
    for (size_t i = 0; i < rep.size(); i++) CHECK(fe_to_text(rep[i]) == std::to_string(brute[i]));
  }
}

TEST_CASE("zero and constant edge cases") {
  auto f = FieldDescriptor::finite(3, 1);
  CHECK(EPoly::zero(f).is_zero());
  CHECK(ep_roots(from_ints(f, {2})).empty());
  CHECK(ep_mul(EPoly::zero(f), from_ints(f, {1, 1})).is_zero());
  auto g = ep_gcd(EPoly::zero(f), from_ints(f, {0, 2}));
  CHECK(ep_eq(g, from_ints(f, {0, 1})));
}
