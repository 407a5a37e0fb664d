#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "levellab/curve.hpp"
#include "levellab/moduli.hpp"

namespace levellab {

// Trace-of-Frobenius comparison of two integral curves modulo N, prime by
// prime. Primes dividing N or either model discriminant are skipped (the
// given model is reduced directly; no minimal-model search).
enum class PrimeVerdict { Agree, Disagree, Skipped };

struct PrimeComparison {
  long long p = 0;
  PrimeVerdict verdict = PrimeVerdict::Skipped;
  long long ap1_mod = 0;  // residues mod N, valid when not skipped
  long long ap2_mod = 0;
};

struct CongruenceReport {
  long long N = 0;
  long long p_max = 0;
  std::vector<PrimeComparison> primes;
  bool all_good_agree = true;
  std::optional<long long> first_disagreement;
};

CongruenceReport ap_congruence(const CurvePtr& e1, const CurvePtr& e2,
                               long long N, long long p_max);

// a_p of the reduction of an integral curve at a good prime.
long long ap_of_reduction(const CurvePtr& e, long long p);

// Model discriminant numerator of a curve over Q with integral coefficients.
mpz_class integral_discriminant(const CurvePtr& e);

// Local symplectic-type classification at one good prime: conjugates the two
// Frobenius matrices on N-torsion bases over a common field and records the
// determinants of all intertwiners, normalized by the pairing indices of the
// bases so that alpha satisfies <i(x),i(y)> = <x,y>^alpha.
struct DetClassReport {
  long long N = 0;
  long long p = 0;
  long long k = 0;  // degree of the common working field over F_p
  MatrixModN frob1{};
  MatrixModN frob2{};
  long long det_index1 = 0;
  long long det_index2 = 0;
  std::set<long long> intertwiner_dets;  // {det(g) : g D1 = D2 g, g invertible}
  std::set<long long> alpha_set;         // pairing-normalized classes
  bool local_isomorphism_exists = false;
  bool symplectic_possible = false;      // alpha_set meets the squares mod N
  bool antisymplectic_possible = false;  // alpha_set meets the nonsquares
};

struct DetClassOptions {
  long long k_max = 64;
  long long count_cap = kDefaultCountCap;
};

DetClassReport determinant_classes(const CurvePtr& e1, const CurvePtr& e2,
                                   long long N, long long p,
                                   const DetClassOptions& opt = {});

}  // namespace levellab
