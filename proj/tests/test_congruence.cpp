#include "doctest.h"

#include <set>
#include <vector>

#include "levellab/errors.hpp"
#include "levellab/congruence.hpp"

using namespace levellab;

TEST_CASE("integral discriminants of the paired curves") {
  CHECK(integral_discriminant(registry_curve("KO-A")) == mpz_class(-953344));
  CHECK(integral_discriminant(registry_curve("KO-B")) == mpz_class(-4864));
  // 105a2 minimal model: conductor 105 support.
  auto d = integral_discriminant(registry_curve("105a2-min"));
  CHECK(d % 3 == 0);
  CHECK(d % 5 == 0);
  CHECK(d % 7 == 0);
  CHECK(d % 2 != 0);
}

TEST_CASE("ap_of_reduction matches direct counting at good primes") {
  auto E = registry_curve("105a2-min");
  CHECK(ap_of_reduction(E, 2) == 1);
  CHECK(ap_of_reduction(E, 11) == 0);
  CHECK(ap_of_reduction(E, 13) == -6);
  auto KA = registry_curve("KO-A");
  CHECK(ap_of_reduction(KA, 5) == -1);
}

TEST_CASE("mod 7 congruence between the paired curves up to 200") {
  auto rep = ap_congruence(registry_curve("KO-A"), registry_curve("KO-B"), 7, 200);
  CHECK(rep.all_good_agree);
  CHECK(!rep.first_disagreement.has_value());
  long long agreed = 0;
  std::set<long long> skipped;
  for (const auto& pc : rep.primes) {
    if (pc.verdict == PrimeVerdict::Agree) {
      agreed++;
      CHECK(pc.ap1_mod == pc.ap2_mod);
    } else if (pc.verdict == PrimeVerdict::Skipped) {
      skipped.insert(pc.p);
    } else {
      CHECK(false);
    }
  }
  CHECK(agreed == 43);
  CHECK(skipped == std::set<long long>{2, 7, 19});
}

TEST_CASE("the same pair fails mod 11 with first disagreement at 17") {
  auto rep = ap_congruence(registry_curve("KO-A"), registry_curve("KO-B"), 11, 60);
  CHECK(!rep.all_good_agree);
  REQUIRE(rep.first_disagreement.has_value());
  CHECK(*rep.first_disagreement == 17);
}

TEST_CASE("congruence is reflexive at every level") {
  auto E = registry_curve("105a2-min");
  for (long long N : {3, 5, 7, 11}) {
    auto rep = ap_congruence(E, E, N, 100);
    CHECK(rep.all_good_agree);
  }
}

TEST_CASE("quadratic twists flip traces exactly at non-residue primes") {
  auto q = FieldDescriptor::rationals();
  auto E = EllipticCurve::make_short_int(q, 2, 3);
  // Twist by 2: y^2 = x^3 + 8x + 24.
  auto Et = EllipticCurve::make_short_int(q, 8, 24);
  // 2 is a non-residue mod 13 but a residue mod 7.
  CHECK(ap_of_reduction(E, 13) == -4);
  CHECK(ap_of_reduction(Et, 13) == 4);
  CHECK(ap_of_reduction(E, 7) == ap_of_reduction(Et, 7));
  // Twisting by -1 changes nothing at 13 since -1 is a square there.
  auto Em = EllipticCurve::make_short_int(q, 2, -3);
  CHECK(ap_of_reduction(Em, 13) == -4);
  // Mod 2 the twisted traces agree at every good prime.
  auto rep = ap_congruence(E, Et, 2, 50);
  CHECK(rep.all_good_agree);
}

TEST_CASE("a curve is locally isomorphic to itself with alpha containing 1") {
  auto E = registry_curve("105a2-min");
  auto rep = determinant_classes(E, E, 5, 13);
  CHECK(rep.local_isomorphism_exists);
  CHECK(rep.k == 4);
  CHECK(rep.alpha_set.count(1) == 1);
  CHECK(rep.intertwiner_dets.size() == 4);
  CHECK(rep.det_index1 == rep.det_index2);
  CHECK(mat_eq(rep.frob1, rep.frob2));
}

TEST_CASE("paired curves at p=5 mod 7: every class is realized") {
  auto rep = determinant_classes(registry_curve("KO-A"), registry_curve("KO-B"), 7, 5);
  CHECK(rep.local_isomorphism_exists);
  CHECK(rep.symplectic_possible);
  CHECK(rep.antisymplectic_possible);
  CHECK(rep.k == 6);
  CHECK(rep.alpha_set == std::set<long long>{1, 2, 3, 4, 5, 6});
  CHECK(rep.intertwiner_dets == std::set<long long>{1, 2, 3, 4, 5, 6});
  CHECK(mat_to_text(rep.frob1) == "1,0;0,5");
  CHECK(mat_trace(rep.frob1) == 6);
  CHECK(mat_det(rep.frob1) == 5);
  // trace = a_5 mod 7 and det = 5 mod 7.
  CHECK(((ap_of_reduction(registry_curve("KO-A"), 5) % 7) + 7) % 7 == 6);
}

TEST_CASE("frobenius matrices in the class report obey trace and det laws") {
  auto E1 = registry_curve("KO-A");
  auto E2 = registry_curve("KO-B");
  for (long long p : {5, 11, 13}) {
    auto rep = determinant_classes(E1, E2, 7, p);
    CHECK(mat_det(rep.frob1) == p % 7);
    CHECK(mat_det(rep.frob2) == p % 7);
    CHECK(mat_trace(rep.frob1) == ((ap_of_reduction(E1, p) % 7) + 7) % 7);
    CHECK(mat_trace(rep.frob2) == ((ap_of_reduction(E2, p) % 7) + 7) % 7);
  }
}

TEST_CASE("congruence rejects bad input") {
  auto E = registry_curve("105a2-min");
  auto f7 = FieldDescriptor::finite(7, 1);
  auto Ep = EllipticCurve::make_short_int(f7, 1, 1);
  CHECK_THROWS_AS((void)ap_congruence(Ep, E, 5, 50), input_error);
  // Reduction at a bad prime yields a singular model and is rejected.
  CHECK_THROWS_AS((void)ap_of_reduction(E, 3), input_error);
}
