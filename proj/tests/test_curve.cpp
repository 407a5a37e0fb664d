#include "doctest.h"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "levellab/errors.hpp"
#include "levellab/curve.hpp"

using namespace levellab;

namespace {

std::vector<CurvePoint> scan_torsion(const CurvePtr& E, int n) {
  std::vector<CurvePoint> out;
  for (const auto& P : all_points(E))
    if (scalar_mul(static_cast<long long>(n), P).infinity) out.push_back(P);
  return out;
}

bool same_point_set(std::vector<CurvePoint> a, std::vector<CurvePoint> b) {
  if (a.size() != b.size()) return false;
  auto lt = [](const CurvePoint& x, const CurvePoint& y) { return point_cmp(x, y) < 0; };
  std::sort(a.begin(), a.end(), lt);
  std::sort(b.begin(), b.end(), lt);
  for (size_t i = 0; i < a.size(); i++)
    if (!point_eq(a[i], b[i])) return false;
  return true;
}

}  // namespace

TEST_CASE("registry holds the four named curves") {
  auto names = registry_names();
  for (const char* n : {"105a2-min", "105a2-red", "KO-A", "KO-B"})
    CHECK(std::find(names.begin(), names.end(), n) != names.end());
  CHECK_THROWS_AS((void)registry_curve("nope"), input_error);
}

TEST_CASE("minimal and reduced models of the same curve share the j-invariant") {
  auto jm = curve_invariants(registry_curve("105a2-min")).j;
  auto jr = curve_invariants(registry_curve("105a2-red")).j;
  CHECK(jm == jr);
  CHECK(fe_to_text(jm) == "47045881/11025");
}

TEST_CASE("invariants satisfy 1728 disc = c4^3 - c6^2 on every registry curve") {
  for (const auto& name : registry_names()) {
    auto inv = curve_invariants(registry_curve(name));
    auto f = inv.disc.f;
    auto lhs = fe_mul(fe_from_int(f, 1728), inv.disc);
    auto rhs = fe_sub(fe_mul(fe_mul(inv.c4, inv.c4), inv.c4), fe_mul(inv.c6, inv.c6));
    CHECK(lhs == rhs);
    CHECK(!inv.disc.is_zero());
  }
}

TEST_CASE("singular models are rejected") {
  auto q = FieldDescriptor::rationals();
  CHECK_THROWS_AS((void)EllipticCurve::make_short_int(q, 0, 0), input_error);
  auto f5 = FieldDescriptor::finite(5, 1);
  // disc(A=0,B=0) and the cuspidal y^2 = x^3 - 3x + 2 are both singular.
  CHECK_THROWS_AS((void)EllipticCurve::make_short_int(f5, 0, 0), input_error);
  CHECK_THROWS_AS((void)EllipticCurve::make_short_int(f5, -3, 2), input_error);
}

TEST_CASE("short models need 6 invertible") {
  CHECK_THROWS_AS((void)EllipticCurve::make_short_int(FieldDescriptor::finite(2, 1), 1, 1),
                  input_error);
  CHECK_THROWS_AS((void)EllipticCurve::make_short_int(FieldDescriptor::finite(3, 1), 1, 1),
                  input_error);
}

TEST_CASE("point counts on curves with known orders") {
  // y^2 + y = x^3 over F_2: points (0,0), (0,1), infinity.
  auto E2 = EllipticCurve::make_long_int(FieldDescriptor::finite(2, 1), 0, 0, 1, 0, 0);
  CHECK(count_points(E2) == 3);
  CHECK(trace_of_frobenius(E2) == 0);
  CHECK(is_supersingular(E2));

  // y^2 = x^3 + x over F_3 (long-model input since 6 is not invertible).
  auto E3 = EllipticCurve::make_long_int(FieldDescriptor::finite(3, 1), 0, 0, 0, 1, 0);
  CHECK(count_points(E3) == 4);
  CHECK(trace_of_frobenius(E3) == 0);
  CHECK(is_supersingular(E3));

  // y^2 = x^3 + 1 over F_5: 6 points, supersingular since 5 = 2 mod 3.
  auto E5 = EllipticCurve::make_short_int(FieldDescriptor::finite(5, 1), 0, 1);
  CHECK(count_points(E5) == 6);
  CHECK(is_supersingular(E5));

  // y^2 = x^3 + 2 over F_7: 9 points, ordinary, full rational 3-torsion.
  auto E7 = EllipticCurve::make_short_int(FieldDescriptor::finite(7, 1), 0, 2);
  CHECK(count_points(E7) == 9);
  CHECK(trace_of_frobenius(E7) == -1);
  CHECK(!is_supersingular(E7));
}

TEST_CASE("group law: exhaustive associativity and inverses on a small curve") {
  auto E = EllipticCurve::make_short_int(FieldDescriptor::finite(5, 1), 1, 1);
  auto pts = all_points(E);
  CHECK(static_cast<long long>(pts.size()) == count_points(E));
  for (const auto& P : pts) {
    CHECK(point_eq(add_points(P, point_infinity(E)), P));
    CHECK(add_points(P, point_neg(P)).infinity);
    for (const auto& Q : pts) {
      CHECK(point_eq(add_points(P, Q), add_points(Q, P)));
      for (const auto& R : pts)
        CHECK(point_eq(add_points(add_points(P, Q), R), add_points(P, add_points(Q, R))));
    }
  }
}

TEST_CASE("scalar multiplication matches repeated addition and Lagrange") {
  auto E = EllipticCurve::make_short_int(FieldDescriptor::finite(13, 1), 2, 3);
  long long n = count_points(E);
  for (const auto& P : all_points(E)) {
    CurvePoint acc = point_infinity(E);
    for (long long m = 0; m <= 6; m++) {
      CHECK(point_eq(scalar_mul(m, P), acc));
      acc = add_points(acc, P);
    }
    CHECK(scalar_mul(n, P).infinity);
    CHECK(point_eq(scalar_mul(-1LL, P), point_neg(P)));
    long long d = point_order_dividing(P, n);
    CHECK(d > 0);
    CHECK(n % d == 0);
  }
}

TEST_CASE("Hasse bound holds for every short curve over F_11") {
  auto f = FieldDescriptor::finite(11, 1);
  for (long long A = 0; A < 11; A++) {
    for (long long B = 0; B < 11; B++) {
      if ((4 * A * A * A + 27 * B * B) % 11 == 0) continue;
      long long a = trace_of_frobenius(EllipticCurve::make_short_int(f, A, B));
      CHECK(a * a <= 4 * 11);
    }
  }
}

TEST_CASE("trace recurrence matches direct counting over the quadratic extension") {
  for (auto [p, A, B] : std::vector<std::tuple<long long, long long, long long>>{
           {5, 1, 1}, {7, 0, 2}, {11, 1, 0}, {13, 2, 3}}) {
    auto E = EllipticCurve::make_short_int(FieldDescriptor::finite(p, 1), A, B);
    auto tp = trace_power(E, 2);
    auto E2 = base_change(E, FieldDescriptor::finite(p, 2));
    CHECK(tp.count == mpz_of(count_points(E2)));
    CHECK(tp.count == mpz_of(p) * mpz_of(p) + 1 - tp.trace);
  }
}

TEST_CASE("trace recurrence in characteristic 2 and 3") {
  auto E2 = EllipticCurve::make_long_int(FieldDescriptor::finite(2, 1), 0, 0, 1, 0, 0);
  auto E2e = base_change(E2, FieldDescriptor::finite(2, 2));
  CHECK(trace_power(E2, 2).count == mpz_of(count_points(E2e)));
  auto E3 = EllipticCurve::make_long_int(FieldDescriptor::finite(3, 1), 0, 0, 0, 1, 0);
  auto E3e = base_change(E3, FieldDescriptor::finite(3, 2));
  CHECK(trace_power(E3, 2).count == mpz_of(count_points(E3e)));
}

TEST_CASE("all_points agrees with on-curve membership and has no duplicates") {
  auto E = EllipticCurve::make_short_int(FieldDescriptor::finite(7, 2), 1, 3);
  auto pts = all_points(E);
  std::set<std::string> seen;
  long long affine = 0;
  for (const auto& P : pts) {
    CHECK(seen.insert(point_to_text(P)).second);
    if (!P.infinity) {
      affine++;
      CHECK(point_on_curve(E, P.x, P.y));
    }
  }
  CHECK(affine + 1 == count_points(E));
}

TEST_CASE("division polynomial roots describe exactly the rational torsion") {
  auto f7 = FieldDescriptor::finite(7, 1);
  auto E = EllipticCurve::make_short_int(f7, 0, 2);  // 9 points, E[3] rational
  for (int n : {2, 3, 4, 6}) {
    CHECK(same_point_set(torsion_points(E, n), scan_torsion(E, n)));
  }
  CHECK(torsion_points(E, 3).size() == 9);
  CHECK(torsion_points(E, 2).size() == 1);
  CHECK_THROWS_AS((void)torsion_points(E, 7), input_error);
}

TEST_CASE("torsion_xpoly is separable with roots at torsion x-coordinates") {
  auto E = EllipticCurve::make_short_int(FieldDescriptor::finite(11, 1), 1, 0);
  auto h = torsion_xpoly(E, 3);
  auto d = ep_derivative(h);
  auto g = ep_gcd(h, d);
  CHECK(g.deg() == 0);
  for (const auto& r : ep_roots(h)) {
    bool found = false;
    for (const auto& P : scan_torsion(E, 3))
      if (!P.infinity && P.x == r) found = true;
    CHECK(found);
  }
}

TEST_CASE("torsion basis over the right extension with deterministic selection") {
  auto f7 = FieldDescriptor::finite(7, 1);
  // y^2 = x^3 + 1 needs the cubic extension for full 3-torsion.
  auto tb1 = torsion_basis(EllipticCurve::make_short_int(f7, 0, 1), 3);
  CHECK(tb1.k == 3);
  // y^2 = x^3 + 2 has full 3-torsion already over F_7.
  auto tb2 = torsion_basis(EllipticCurve::make_short_int(f7, 0, 2), 3);
  CHECK(tb2.k == 1);
  for (const auto& tb : {tb1, tb2}) {
    CHECK(point_order_dividing(tb.P, 3) == 3);
    CHECK(point_order_dividing(tb.Q, 3) == 3);
    // Q is not a multiple of P.
    for (long long m = 0; m < 3; m++) CHECK(!point_eq(scalar_mul(m, tb.P), tb.Q));
  }
  auto tb1b = torsion_basis(EllipticCurve::make_short_int(f7, 0, 1), 3);
  CHECK(point_eq(tb1.P, tb1b.P));
  CHECK(point_eq(tb1.Q, tb1b.Q));
}

TEST_CASE("torsion basis spans: every N-torsion point is a combination") {
  auto E = EllipticCurve::make_short_int(FieldDescriptor::finite(11, 1), 1, 0);
  auto tb = torsion_basis(E, 5);
  CHECK(tb.k == 4);
  std::set<std::string> combos;
  for (long long i = 0; i < 5; i++)
    for (long long j = 0; j < 5; j++)
      combos.insert(point_to_text(add_points(scalar_mul(i, tb.P), scalar_mul(j, tb.Q))));
  CHECK(combos.size() == 25);
  for (const auto& P : torsion_points(tb.curve, 5)) CHECK(combos.count(point_to_text(P)));
}

TEST_CASE("frobenius fixes base-field points and permutes extension points") {
  auto E = EllipticCurve::make_short_int(FieldDescriptor::finite(5, 1), 1, 1);
  auto Eb = base_change(E, FieldDescriptor::finite(5, 2));
  for (const auto& P : all_points(Eb)) {
    auto FP = frobenius_point(P, 1);
    if (P.infinity) {
      CHECK(FP.infinity);
      continue;
    }
    CHECK(point_on_curve(Eb, FP.x, FP.y));
    CHECK(point_eq(frobenius_point(FP, 1), P));
  }
  for (const auto& P : all_points(E)) {
    auto emb = point_embed(P, Eb);
    CHECK(point_eq(frobenius_point(emb, 1), emb));
    if (!P.infinity) CHECK(point_eq(point_coerce(emb, E), P));
  }
}

TEST_CASE("base curve points survive embedding and coercion across extensions") {
  auto E = EllipticCurve::make_short_int(FieldDescriptor::finite(3, 2), 1, 1);
  auto big = base_change(E, FieldDescriptor::finite(3, 4));
  long long rational = 0;
  for (const auto& P : all_points(big)) {
    if (P.infinity) continue;
    if (point_eq(frobenius_point(P, 2), P)) rational++;
  }
  CHECK(rational + 1 == count_points(E));
}

TEST_CASE("short model is an isomorphism preserving the group structure") {
  auto E = registry_curve("105a2-min");
  auto sm = short_model(E);
  auto inv1 = curve_invariants(E);
  auto inv2 = curve_invariants(sm.curve);
  CHECK(inv1.j == inv2.j);
  // Finite-field version: bijection on points commuting with addition.
  auto Ep = reduce_mod_p(E, FieldDescriptor::finite(13, 1));
  auto smp = short_model(Ep);
  auto pts = all_points(Ep);
  CHECK(count_points(smp.curve) == count_points(Ep));
  for (const auto& P : pts) {
    auto s = smp.to_short(P);
    CHECK(point_eq(smp.from_short(s), P));
    for (const auto& Q : pts) {
      auto lhs = smp.to_short(add_points(P, Q));
      auto rhs = add_points(smp.to_short(P), smp.to_short(Q));
      CHECK(point_eq(lhs, rhs));
    }
  }
}

TEST_CASE("reduction of the minimal model matches known traces") {
  auto E = registry_curve("105a2-min");
  CHECK(trace_of_frobenius(reduce_mod_p(E, FieldDescriptor::finite(2, 1))) == 1);
  CHECK(trace_of_frobenius(reduce_mod_p(E, FieldDescriptor::finite(11, 1))) == 0);
  CHECK(trace_of_frobenius(reduce_mod_p(E, FieldDescriptor::finite(13, 1))) == -6);
}

TEST_CASE("curve text round trip and field selectors") {
  for (const auto& name : registry_names()) {
    auto E = registry_curve(name);
    auto text = curve_to_text(E);
    CHECK(!text.empty());
  }
  auto f = parse_field_selector("Fq:3^2");
  CHECK(f->p == 3);
  CHECK(f->k == 2);
  CHECK(format_field_selector(f) == "Fq:3^2");
  CHECK(parse_field_selector("Q")->is_rationals());
  CHECK(parse_field_selector("Fp:17")->p == 17);
  CHECK(format_field_selector(FieldDescriptor::finite(17, 1)) == "Fp:17");
  CHECK_THROWS_AS((void)parse_field_selector("F:bad"), input_error);

  auto E = parse_curve(FieldDescriptor::finite(7, 1), true, "1,3");
  CHECK(E->short_form);
  CHECK(fe_to_text(E->a4) == "1");
  CHECK(fe_to_text(E->a6) == "3");
  CHECK_THROWS_AS((void)parse_curve(FieldDescriptor::finite(7, 1), true, "1,2,3"), input_error);
}

TEST_CASE("supersingularity over prime fields is the trace-zero condition for p >= 5") {
  for (long long p : {5, 7, 11, 13}) {
    auto f = FieldDescriptor::finite(p, 1);
    for (long long A = 0; A < p; A++) {
      for (long long B = 0; B < p; B++) {
        if ((4 * A * A * A + 27 * B * B) % p == 0) continue;
        auto E = EllipticCurve::make_short_int(f, A, B);
        CHECK(is_supersingular(E) == (trace_of_frobenius(E) % p == 0));
      }
    }
  }
}
