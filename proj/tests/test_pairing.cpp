#include "doctest.h"

#include <set>
#include <string>
#include <vector>

#include "levellab/errors.hpp"
#include "levellab/gmputil.hpp"
#include "levellab/pairing.hpp"

using namespace levellab;

TEST_CASE("weil pairing on a rational 3-torsion plane: pinned value and bilinearity") {
  auto E = EllipticCurve::make_short_int(FieldDescriptor::finite(7, 1), 0, 2);
  auto [P, Q] = torsion_basis_over(E, 3);
  auto z = weil_pairing(3, P, Q);
  CHECK(fe_to_text(z) == "4");
  CHECK(element_order(z) == 3);

  // Bilinear, alternating, antisymmetric across the whole plane.
  for (long long a = 0; a < 3; a++) {
    for (long long b = 0; b < 3; b++) {
      auto R = add_points(scalar_mul(a, P), scalar_mul(b, Q));
      for (long long c = 0; c < 3; c++) {
        for (long long d = 0; d < 3; d++) {
          auto S = add_points(scalar_mul(c, P), scalar_mul(d, Q));
          auto w = weil_pairing(3, R, S);
          // Determinant formula: e(aP+bQ, cP+dQ) = e(P,Q)^(ad-bc).
          long long expnt = ((a * d - b * c) % 3 + 3) % 3;
          CHECK(w == fe_pow(z, mpz_of(expnt)));
          CHECK(fe_mul(w, weil_pairing(3, S, R)).is_one());
        }
      }
      CHECK(weil_pairing(3, R, R).is_one());
    }
  }
}

TEST_CASE("weil pairing is nondegenerate on a basis") {
  auto E = EllipticCurve::make_short_int(FieldDescriptor::finite(11, 1), 1, 0);
  auto tb = torsion_basis(E, 5);
  CHECK(tb.k == 4);
  auto z = weil_pairing(5, tb.P, tb.Q);
  CHECK(!z.is_one());
  CHECK(element_order(z) == 5);
  CHECK(fe_pow(z, mpz_class(5)).is_one());
}

TEST_CASE("weil pairing commutes with frobenius by raising values to q") {
  auto E = EllipticCurve::make_short_int(FieldDescriptor::finite(11, 1), 1, 0);
  auto tb = torsion_basis(E, 5);
  auto z = weil_pairing(5, tb.P, tb.Q);
  auto FP = frobenius_point(tb.P, 1);
  auto FQ = frobenius_point(tb.Q, 1);
  CHECK(weil_pairing(5, FP, FQ) == fe_pow(z, mpz_class(11)));
}

TEST_CASE("cyclic subgroups enumerate correctly and standard_subgroup scales") {
  auto E = EllipticCurve::make_short_int(FieldDescriptor::finite(11, 1), 1, 0);
  // #E = 12; find a point of order 6 to build subgroups from.
  CurvePoint g = point_infinity(E);
  for (const auto& P : all_points(E)) {
    if (!P.infinity && point_order_dividing(P, 12) == 6) {
      g = P;
      break;
    }
  }
  REQUIRE(!g.infinity);
  auto C6 = make_cyclic_subgroup(g, 6);
  auto pts = subgroup_points(C6);
  CHECK(pts.size() == 6);
  std::set<std::string> seen;
  for (const auto& P : pts) {
    CHECK(subgroup_contains(C6, P));
    seen.insert(point_to_text(P));
  }
  CHECK(seen.size() == 6);

  auto C3 = standard_subgroup(C6, 3);
  CHECK(C3.order == 3);
  for (const auto& P : subgroup_points(C3)) CHECK(subgroup_contains(C6, P));
  auto C1 = standard_subgroup(C6, 1);
  CHECK(C1.order == 1);
  CHECK(subgroup_eq(C1, trivial_subgroup(E)));
  CHECK(subgroup_eq(standard_subgroup(C6, 6), C6));
  CHECK_THROWS_AS((void)make_cyclic_subgroup(g, 4), input_error);
}

TEST_CASE("velu quotient by the (0,0) subgroup has the pinned codomain") {
  auto E = EllipticCurve::make_short_int(FieldDescriptor::finite(11, 1), 1, 0);
  auto T = point_make(E, fe_zero(E->field), fe_zero(E->field));
  auto phi = velu_quotient(E, make_cyclic_subgroup(T, 2));
  CHECK(phi.degree == 2);
  CHECK(fe_to_text(phi.codomain->a4) == "7");
  CHECK(fe_to_text(phi.codomain->a6) == "0");
  // Isogenous curves over the same field have equal point counts.
  CHECK(count_points(phi.codomain) == count_points(E));
}

TEST_CASE("velu quotient is a group homomorphism with the declared kernel") {
  auto E = EllipticCurve::make_short_int(FieldDescriptor::finite(11, 1), 1, 0);
  auto T = point_make(E, fe_zero(E->field), fe_zero(E->field));
  auto K = make_cyclic_subgroup(T, 2);
  auto phi = velu_quotient(E, K);
  auto pts = all_points(E);
  for (const auto& P : pts) {
    auto iP = push_point(phi, P);
    if (!iP.infinity) CHECK(point_on_curve(phi.codomain, iP.x, iP.y));
    CHECK(push_point(phi, point_neg(P)).infinity == iP.infinity);
    for (const auto& Q : pts) {
      CHECK(point_eq(push_point(phi, add_points(P, Q)), add_points(iP, push_point(phi, Q))));
    }
  }
  for (const auto& P : subgroup_points(K)) CHECK(push_point(phi, P).infinity);
  // Exactly the kernel maps to infinity.
  long long killed = 0;
  for (const auto& P : pts)
    if (push_point(phi, P).infinity) killed++;
  CHECK(killed == 2);
}

TEST_CASE("velu quotient by a 3-subgroup on a 9-point curve") {
  auto E = EllipticCurve::make_short_int(FieldDescriptor::finite(7, 1), 0, 2);
  auto [P, Q] = torsion_basis_over(E, 3);
  auto phi = velu_quotient(E, make_cyclic_subgroup(P, 3));
  CHECK(phi.degree == 3);
  CHECK(count_points(phi.codomain) == 9);
  long long killed = 0;
  for (const auto& R : all_points(E))
    if (push_point(phi, R).infinity) killed++;
  CHECK(killed == 3);
  // The image of the complementary generator still has order 3.
  CHECK(point_order_dividing(push_point(phi, Q), 3) == 3);
}

TEST_CASE("pairing values transform by the isogeny degree") {
  auto E = EllipticCurve::make_short_int(FieldDescriptor::finite(11, 1), 1, 0);
  auto tb = torsion_basis(E, 3);
  auto Ek = tb.curve;
  // Rebuild the 2-isogeny over the extension so kernel and torsion coexist.
  auto T = point_make(Ek, fe_zero(Ek->field), fe_zero(Ek->field));
  auto phi = velu_quotient(Ek, make_cyclic_subgroup(T, 2));
  auto z = weil_pairing(3, tb.P, tb.Q);
  auto w = weil_pairing(3, push_point(phi, tb.P), push_point(phi, tb.Q));
  CHECK(w == fe_mul(z, z));
}

TEST_CASE("push_subgroup carries orders through when coprime to the degree") {
  auto E = EllipticCurve::make_short_int(FieldDescriptor::finite(7, 1), 0, 2);
  auto [P, Q] = torsion_basis_over(E, 3);
  auto phi = velu_quotient(E, make_cyclic_subgroup(P, 3));
  // Point of order 3 not in the kernel.
  auto C = make_cyclic_subgroup(Q, 3);
  auto im = push_subgroup(phi, C);
  CHECK(im.order == 3);
  CHECK(subgroup_contains(im, push_point(phi, Q)));
}

TEST_CASE("identity isogeny acts trivially") {
  auto E = EllipticCurve::make_short_int(FieldDescriptor::finite(5, 1), 1, 1);
  auto id = identity_isogeny(E);
  CHECK(id.degree == 1);
  for (const auto& P : all_points(E)) CHECK(point_eq(push_point(id, P), P));
}

TEST_CASE("nth_curve_point walks the canonical order") {
  auto E = EllipticCurve::make_short_int(FieldDescriptor::finite(5, 1), 1, 1);
  auto pts = all_points(E);
  // pts[0] is infinity; nth_curve_point skips it.
  for (size_t i = 0; i + 1 < pts.size(); i++) CHECK(point_eq(nth_curve_point(E, i), pts[i + 1]));
}
