#include "levellab/congruence.hpp"

#include <algorithm>
#include <numeric>

#include "levellab/errors.hpp"
#include "levellab/numutil.hpp"

namespace levellab {

namespace {

mpz_class integral_scalar(const FieldElement& a, const char* what) {
  mpq_class q = a.rat;
  if (q.get_den() != 1) throw input_error(std::string(what) + " must be integral");
  return q.get_num();
}

void require_rational(const CurvePtr& e) {
  if (!e->field->is_rationals())
    throw input_error("congruence comparison needs curves over Q");
}

}  // namespace

mpz_class integral_discriminant(const CurvePtr& e) {
  require_rational(e);
  integral_scalar(e->a1, "a1");
  integral_scalar(e->a2, "a2");
  integral_scalar(e->a3, "a3");
  integral_scalar(e->a4, "a4");
  CurveInvariants inv = curve_invariants(e);
  return integral_scalar(inv.disc, "discriminant");
}

long long ap_of_reduction(const CurvePtr& e, long long p) {
  FieldPtr fp = FieldDescriptor::finite(p, 1);
  CurvePtr red = reduce_mod_p(e, fp);
  return trace_of_frobenius(red);
}

CongruenceReport ap_congruence(const CurvePtr& e1, const CurvePtr& e2,
                               long long N, long long p_max) {
  if (N < 1) throw input_error("modulus must be positive");
  require_rational(e1);
  require_rational(e2);
  mpz_class bad = mpz_of(N) * integral_discriminant(e1) * integral_discriminant(e2);

  CongruenceReport rep;
  rep.N = N;
  rep.p_max = p_max;
  for (long long p = 2; p <= p_max; ++p) {
    if (!is_prime_ll(p)) continue;
    PrimeComparison pc;
    pc.p = p;
    if (mpz_divisible_ui_p(bad.get_mpz_t(), static_cast<unsigned long>(p))) {
      pc.verdict = PrimeVerdict::Skipped;
    } else {
      pc.ap1_mod = mod_norm(ap_of_reduction(e1, p), N);
      pc.ap2_mod = mod_norm(ap_of_reduction(e2, p), N);
      pc.verdict = pc.ap1_mod == pc.ap2_mod ? PrimeVerdict::Agree
                                            : PrimeVerdict::Disagree;
      if (pc.verdict == PrimeVerdict::Disagree) {
        rep.all_good_agree = false;
        if (!rep.first_disagreement) rep.first_disagreement = p;
      }
    }
    rep.primes.push_back(pc);
  }
  return rep;
}

DetClassReport determinant_classes(const CurvePtr& e1, const CurvePtr& e2,
                                   long long N, long long p,
                                   const DetClassOptions& opt) {
  if (N < 2 || N > 7 || !is_prime_ll(N))
    throw input_error("determinant classes need a prime modulus <= 7");
  if (p < 5) throw unsupported_error("determinant classes need residue characteristic >= 5");
  require_rational(e1);
  require_rational(e2);
  mpz_class bad = mpz_of(N) * integral_discriminant(e1) * integral_discriminant(e2);
  if (mpz_divisible_ui_p(bad.get_mpz_t(), static_cast<unsigned long>(p)))
    throw input_error("prime divides the modulus or a model discriminant");

  FieldPtr fp = FieldDescriptor::finite(p, 1);
  TorsionOptions topt;
  topt.k_max = static_cast<int>(opt.k_max);
  topt.count_cap = opt.count_cap;
  CurvePtr r1 = short_model(reduce_mod_p(e1, fp)).curve;
  CurvePtr r2 = short_model(reduce_mod_p(e2, fp)).curve;
  TorsionBasis t1 = torsion_basis(r1, static_cast<int>(N), topt);
  TorsionBasis t2 = torsion_basis(r2, static_cast<int>(N), topt);

  long long k = std::lcm(static_cast<long long>(t1.k), static_cast<long long>(t2.k));
  FieldPtr fk = FieldDescriptor::finite(p, static_cast<int>(k));
  CurvePtr b1 = base_change(t1.curve, fk);
  CurvePtr b2 = base_change(t2.curve, fk);
  ModuliPoint m1 = make_moduli_point(b1, static_cast<int>(N),
                                     point_embed(t1.P, b1), point_embed(t1.Q, b1));
  ModuliPoint m2 = make_moduli_point(b2, static_cast<int>(N),
                                     point_embed(t2.P, b2), point_embed(t2.Q, b2));

  DetClassReport rep;
  rep.N = N;
  rep.p = p;
  rep.k = k;
  rep.frob1 = frobenius_matrix(m1, p);
  rep.frob2 = frobenius_matrix(m2, p);
  rep.det_index1 = det_index(m1);
  rep.det_index2 = det_index(m2);

  long long ratio = mod_norm(rep.det_index2 * inv_mod_ll(rep.det_index1, N), N);
  std::set<long long> squares;
  for (long long u = 1; u < N; ++u) squares.insert(mod_norm(u * u, N));
  for (const MatrixModN& g : gl2_elements(N)) {
    if (!mat_eq(mat_mul(g, rep.frob1), mat_mul(rep.frob2, g))) continue;
    long long dg = mat_det(g);
    rep.intertwiner_dets.insert(dg);
    // i sends coordinates by g; e(i x, i y) = e(P2,Q2)^{det(g) <x,y>_std},
    // so alpha = det(g) * det_index2 / det_index1.
    long long alpha = mod_norm(dg * ratio, N);
    rep.alpha_set.insert(alpha);
    if (squares.count(alpha)) rep.symplectic_possible = true;
    else rep.antisymplectic_possible = true;
  }
  rep.local_isomorphism_exists = !rep.intertwiner_dets.empty();
  return rep;
}

}  // namespace levellab
