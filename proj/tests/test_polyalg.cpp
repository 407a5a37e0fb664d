#include "doctest.h"

#include <string>
#include <vector>

#include "levellab/errors.hpp"
#include "levellab/polyalg.hpp"
#include "levellab/rng.hpp"

using namespace levellab;

namespace {

const FieldPtr Q = FieldDescriptor::rationals();
const std::vector<std::string> XY{"x", "y"};
const std::vector<std::string> XYZ{"x", "y", "z"};

}  // namespace

TEST_CASE("grevlex orders degree-2 monomials in three variables") {
  std::vector<Mono> deg2{{2, 0, 0}, {1, 1, 0}, {0, 2, 0}, {1, 0, 1}, {0, 1, 1}, {0, 0, 2}};
  for (size_t i = 0; i < deg2.size(); i++)
    for (size_t j = i + 1; j < deg2.size(); j++) CHECK(grevlex_cmp(deg2[i], deg2[j]) > 0);
  CHECK(grevlex_cmp({1, 0, 0}, {0, 2, 0}) < 0);
  CHECK(grevlex_cmp({1, 1, 0}, {1, 1, 0}) == 0);
}

TEST_CASE("parse and print round trip with canonical term order") {
  auto p1 = sp_parse(Q, XYZ, "x^3*y + 2*x*y - 3 + z");
  CHECK(sp_to_text(p1) == "x^3*y + 2*x*y + z - 3");
  CHECK(sp_eq(sp_parse(Q, XYZ, sp_to_text(p1)), p1));
  auto pneg = sp_parse(Q, XYZ, "-x^2 + 1/2*y");
  CHECK(sp_to_text(pneg) == "-x^2 + 1/2*y");
  CHECK(sp_eq(sp_parse(Q, XYZ, sp_to_text(pneg)), pneg));
  CHECK(sp_to_text(sp_zero(Q, XYZ)) == "0");
  CHECK_THROWS_AS((void)sp_parse(Q, XYZ, "w + 1"), input_error);
}

TEST_CASE("arithmetic laws on sparse polynomials") {
  auto a = sp_parse(Q, XY, "x^2 + 2*x*y - y");
  auto b = sp_parse(Q, XY, "x - 3");
  auto c = sp_parse(Q, XY, "y^2 + 1");
  CHECK(sp_eq(sp_mul(a, b), sp_mul(b, a)));
  CHECK(sp_eq(sp_mul(a, sp_add(b, c)), sp_add(sp_mul(a, b), sp_mul(a, c))));
  CHECK(sp_eq(sp_sub(a, a), sp_zero(Q, XY)));
  CHECK(sp_eq(sp_pow(b, 2), sp_mul(b, b)));
  CHECK(sp_total_degree(sp_mul(a, c)) == 4);
  CHECK(sp_total_degree(sp_zero(Q, XY)) == -1);
}

TEST_CASE("evaluation and derivatives on the klein quartic form") {
  auto klein = registry_form("klein");
  CHECK(sp_to_text(klein) == "x^3*y + y^3*z + x*z^3");
  std::vector<FieldElement> pt{fe_from_int(Q, 1), fe_from_int(Q, 2), fe_from_int(Q, 3)};
  CHECK(fe_eq(sp_eval(klein, pt), fe_from_int(Q, 53)));
  CHECK(sp_to_text(sp_derivative(klein, 0)) == "3*x^2*y + z^3");
  // Euler identity for a homogeneous degree-4 form: sum x_i dF/dx_i = 4F.
  auto sum = sp_zero(Q, XYZ);
  for (int v = 0; v < 3; v++)
    sum = sp_add(sum, sp_mul(sp_var(Q, XYZ, v), sp_derivative(klein, v)));
  CHECK(sp_eq(sum, sp_scale_int(klein, 4)));
}

TEST_CASE("reduced groebner basis matches textbook results") {
  auto I1 = make_ideal({sp_parse(Q, XY, "x^3 - 2*x*y"), sp_parse(Q, XY, "x^2*y - 2*y^2 + x")});
  auto G1 = groebner(I1);
  REQUIRE(G1.gens.size() == 3);
  CHECK(sp_to_text(G1.gens[0]) == "y^2 - 1/2*x");
  CHECK(sp_to_text(G1.gens[1]) == "x*y");
  CHECK(sp_to_text(G1.gens[2]) == "x^2");

  auto I2 = make_ideal({sp_parse(Q, XY, "x^2 + y"), sp_parse(Q, XY, "x*y")});
  auto G2 = groebner(I2);
  REQUIRE(G2.gens.size() == 3);
  CHECK(sp_to_text(G2.gens[0]) == "y^2");
  CHECK(sp_to_text(G2.gens[1]) == "x*y");
  CHECK(sp_to_text(G2.gens[2]) == "x^2 + y");
  CHECK(ideal_member(sp_parse(Q, XY, "x^2*y + y^2"), G2));
  CHECK(!ideal_member(sp_parse(Q, XY, "x"), G2));
}

TEST_CASE("groebner is idempotent on its own output") {
  auto I1 = make_ideal({sp_parse(Q, XY, "x^3 - 2*x*y"), sp_parse(Q, XY, "x^2*y - 2*y^2 + x")});
  auto G1 = groebner(I1);
  auto G1b = groebner(G1);
  REQUIRE(G1b.gens.size() == G1.gens.size());
  for (size_t i = 0; i < G1.gens.size(); i++) CHECK(sp_eq(G1b.gens[i], G1.gens[i]));
}

TEST_CASE("groebner idempotence holds on seeded random ideals") {
  SplitMix64 rng(derive_seed(5, 0x31));
  auto f7 = FieldDescriptor::finite(7, 1);
  for (int trial = 0; trial < 8; trial++) {
    std::vector<SparsePoly> gens;
    for (int g = 0; g < 3; g++) {
      auto poly = sp_zero(f7, XYZ);
      for (int t = 0; t < 4; t++) {
        Mono m{static_cast<int>(rng.below(3)), static_cast<int>(rng.below(3)),
               static_cast<int>(rng.below(2))};
        poly = sp_add(poly, sp_monomial(f7, XYZ,
                                        fe_from_int(f7, 1 + static_cast<long long>(rng.below(6))),
                                        m));
      }
      if (!poly.is_zero()) gens.push_back(poly);
    }
    if (gens.empty()) continue;
    auto G = groebner(make_ideal(gens));
    auto G2 = groebner(G);
    REQUIRE(G2.gens.size() == G.gens.size());
    for (size_t i = 0; i < G.gens.size(); i++) CHECK(sp_eq(G2.gens[i], G.gens[i]));
    // Every original generator reduces to zero against the basis.
    for (const auto& g : gens) CHECK(normal_form(g, G.gens).is_zero());
  }
}

TEST_CASE("normal form is linear and kills basis elements") {
  auto G2 = groebner(make_ideal({sp_parse(Q, XY, "x^2 + y"), sp_parse(Q, XY, "x*y")}));
  auto f = sp_parse(Q, XY, "x^3 + x^2*y + y^3 + x + 1");
  auto g = sp_parse(Q, XY, "x*y^2 + y - 7");
  CHECK(sp_eq(normal_form(sp_add(f, g), G2.gens),
              sp_add(normal_form(f, G2.gens), normal_form(g, G2.gens))));
  for (const auto& b : G2.gens) CHECK(normal_form(b, G2.gens).is_zero());
}

TEST_CASE("an ideal containing a unit collapses to (1)") {
  auto Gu = groebner(make_ideal({sp_parse(Q, XY, "x"), sp_parse(Q, XY, "x + 1")}));
  REQUIRE(Gu.gens.size() == 1);
  CHECK(sp_to_text(Gu.gens[0]) == "1");
}

TEST_CASE("radical membership distinguishes nilpotents from non-members") {
  auto Ix2 = make_ideal({sp_parse(Q, XY, "x^2")});
  CHECK(radical_member(sp_parse(Q, XY, "x"), Ix2));
  CHECK(!radical_member(sp_parse(Q, XY, "y"), Ix2));
  auto Ixy = make_ideal({sp_parse(Q, XY, "x*y")});
  CHECK(!radical_member(sp_parse(Q, XY, "x"), Ixy));
  auto Iline = make_ideal({sp_parse(Q, XY, "x^2"), sp_parse(Q, XY, "x*y")});
  CHECK(radical_member(sp_parse(Q, XY, "x"), Iline));
  CHECK(!radical_member(sp_parse(Q, XY, "y"), Iline));
}

TEST_CASE("resource caps abort oversized computations") {
  auto I1 = make_ideal({sp_parse(Q, XY, "x^3 - 2*x*y"), sp_parse(Q, XY, "x^2*y - 2*y^2 + x")});
  GroebnerOptions tiny;
  tiny.max_pairs = 1;
  CHECK_THROWS_AS((void)groebner(I1, tiny), resource_error);
}

TEST_CASE("projective smoothness over Q on classical examples") {
  CHECK(projective_smooth(registry_form("klein")));
  CHECK(projective_smooth(sp_parse(Q, XYZ, "x^2 + y^2 + z^2")));
  CHECK(!projective_smooth(sp_parse(Q, XYZ, "x*y*z")));
  CHECK(!projective_smooth(sp_parse(Q, XYZ, "x^2*z + y^3")));
  CHECK_THROWS_AS((void)projective_smooth(sp_parse(Q, XYZ, "x^2 + y")), input_error);
}

TEST_CASE("smoothness depends on the characteristic") {
  auto F2 = FieldDescriptor::finite(2, 1);
  auto F5 = FieldDescriptor::finite(5, 1);
  CHECK(!projective_smooth(sp_parse(F2, XYZ, "x^2 + y^2 + z^2")));
  CHECK(projective_smooth(sp_parse(F5, XYZ, "x^4 + y^4 + z^4")));
  CHECK(!projective_smooth(sp_parse(F2, XYZ, "x^4 + y^4 + z^4")));
}

TEST_CASE("radical containment report mirrors the smoothness verdict") {
  auto klein = registry_form("klein");
  std::vector<SparsePoly> gens{klein};
  for (int v = 0; v < 3; v++) gens.push_back(sp_derivative(klein, v));
  auto rep = radical_containment_report(make_ideal(gens), {0, 1, 2});
  CHECK(rep.contains_all);
  CHECK(rep.per_target.at("x"));
  auto F2 = FieldDescriptor::finite(2, 1);
  auto conic2 = sp_parse(F2, XYZ, "x^2 + y^2 + z^2");
  auto rep2 = radical_containment_report(make_ideal({conic2}), {0, 1, 2});
  CHECK(!rep2.contains_all);
  CHECK(rep2.per_target.at("x") == false);
}

TEST_CASE("quartic attached to the minimal model: pinned shape") {
  auto hkm = registry_form("hk-105a2-min");
  CHECK(hkm.terms.size() == 13);
  CHECK(sp_is_homogeneous(hkm, {0, 1, 2}, 4));
  CHECK(fe_eq(sp_coeff(hkm, {0, 0, 4}), fe_from_int(Q, -6)));
}

TEST_CASE("quartic attached to the reduced model: pinned coefficients") {
  auto hk = registry_form("hk-105a2");
  CHECK(hk.terms.size() == 9);
  CHECK(fe_eq(sp_coeff(hk, {3, 1, 0}), fe_from_int(Q, 144)));
  CHECK(fe_eq(sp_coeff(hk, {2, 1, 1}), fe_from_int(Q, -432)));
  CHECK(fe_eq(sp_coeff(hk, {1, 3, 0}), fe_from_int(Q, -189)));
  CHECK(fe_eq(sp_coeff(hk, {1, 2, 1}), fe_from_int(Q, 567)));
  CHECK(fe_eq(sp_coeff(hk, {0, 1, 3}), fe_from_int(Q, 45)));
  CHECK(fe_eq(sp_coeff(hk, {1, 1, 2}), fe_from_int(Q, -135)));
  CHECK(sp_is_homogeneous(hk, {0, 1, 2}, 4));
}

TEST_CASE("minimized quartic is smooth away from 105 and singular at 3, 5, 7") {
  auto hkm = registry_form("hk-105a2-min");
  CHECK(projective_smooth(hkm));
  CHECK(projective_smooth(sp_map_field(hkm, FieldDescriptor::finite(2, 1))));
  CHECK(!projective_smooth(sp_map_field(hkm, FieldDescriptor::finite(3, 1))));
  CHECK(!projective_smooth(sp_map_field(hkm, FieldDescriptor::finite(5, 1))));
  CHECK(!projective_smooth(sp_map_field(hkm, FieldDescriptor::finite(7, 1))));
  CHECK(projective_smooth(sp_map_field(hkm, FieldDescriptor::finite(11, 1))));
  CHECK(projective_smooth(sp_map_field(hkm, FieldDescriptor::finite(13, 1))));
}

TEST_CASE("unminimized quartic has content 9 and dies mod 3") {
  auto hk = registry_form("hk-105a2");
  CHECK(sp_map_field(hk, FieldDescriptor::finite(3, 1)).is_zero());
  CHECK(!projective_smooth(sp_map_field(hk, FieldDescriptor::finite(5, 1))));
  CHECK(!projective_smooth(sp_map_field(hk, FieldDescriptor::finite(7, 1))));
}

TEST_CASE("singular point search finds pinned witnesses at the bad primes") {
  auto hkm = registry_form("hk-105a2-min");
  for (auto [p, x, y, z] : std::vector<std::tuple<long long, long long, long long, long long>>{
           {3, 1, 2, 1}, {5, 1, 1, 1}, {7, 1, 6, 1}}) {
    auto f = sp_map_field(hkm, FieldDescriptor::finite(p, 1));
    auto w = singular_point_search(f, 2);
    REQUIRE(w.has_value());
    CHECK((*w)[0] == fe_from_int((*w)[0].f, x));
    CHECK((*w)[1] == fe_from_int((*w)[1].f, y));
    CHECK((*w)[2] == fe_from_int((*w)[2].f, z));
    // The witness kills the form and all partials.
    CHECK(sp_eval(f, *w).is_zero());
    for (int v = 0; v < 3; v++) CHECK(sp_eval(sp_derivative(f, v), *w).is_zero());
  }
  // Smooth reduction at 2: no singular point in extensions up to degree 3.
  auto f2 = sp_map_field(hkm, FieldDescriptor::finite(2, 1));
  CHECK(!singular_point_search(f2, 3).has_value());
}

TEST_CASE("structured family entries carry the pinned term counts") {
  auto entries = structural_checks_fisher9();
  REQUIRE(entries.size() == 4);
  CHECK(entries[0].name == "fisher9-c1p");
  CHECK(entries[0].term_count == 12);
  CHECK(entries[1].name == "fisher9-c2p");
  CHECK(entries[1].term_count == 15);
  CHECK(entries[2].name == "fisher9-c1m");
  CHECK(entries[2].term_count == 22);
  CHECK(entries[3].name == "fisher9-c2m");
  CHECK(entries[3].term_count == 24);
  for (const auto& e : entries) {
    CHECK(e.homogeneous_deg3_xyzt);
    CHECK(e.integer_coefficients);
  }
  auto c1p = registry_form("fisher9-c1p");
  CHECK(fe_eq(sp_coeff(c1p, {2, 1, 0, 0, 0, 0}), fe_from_int(Q, 3)));
  CHECK(fe_eq(sp_coeff(c1p, {0, 0, 0, 3, 4, 0}), fe_from_int(Q, 2)));
  CHECK(fe_eq(sp_coeff(c1p, {0, 0, 0, 3, 1, 2}), fe_from_int(Q, 18)));
}

TEST_CASE("every registry form survives a text round trip") {
  for (const auto& name : form_registry_names()) {
    auto f = registry_form(name);
    CHECK(sp_eq(sp_parse(f.field, f.vars, sp_to_text(f)), f));
  }
  CHECK_THROWS_AS((void)registry_form("missing"), input_error);
}

TEST_CASE("cubic census over F_2: pinned counts and internal agreement") {
  auto c = smooth_census(2, 3);
  CHECK(c.forms_total == 1023);
  CHECK(c.singular_forms == 687);
  CHECK(c.forms_total - c.singular_forms == 336);
  CHECK(c.orbit_count == 21);
  CHECK(c.reps_agreeing == c.orbit_count);
  CHECK(c.oracle_constant_on_orbits);
  CHECK(c.groebner_matches_oracle);
  // Smooth ternary cubic count equals q * |GL3(F_q)|.
  long long q = 2;
  long long gl3 = (q * q * q - 1) * (q * q * q - q) * (q * q * q - q * q);
  CHECK(gl3 == 168);
  CHECK(c.forms_total - c.singular_forms == q * gl3);
}

TEST_CASE("cubic census over F_3: pinned counts") {
  auto c = smooth_census(3, 3);
  CHECK(c.forms_total == 59048);
  CHECK(c.singular_forms == 25352);
  CHECK(c.forms_total - c.singular_forms == 33696);
  CHECK(c.orbit_count == 25);
  CHECK(c.reps_agreeing == 25);
  CHECK(c.oracle_constant_on_orbits);
  CHECK(c.groebner_matches_oracle);
  long long q = 3;
  long long gl3 = (q * q * q - 1) * (q * q * q - q) * (q * q * q - q * q);
  CHECK(gl3 == 11232);
  CHECK(c.forms_total - c.singular_forms == q * gl3);
}
