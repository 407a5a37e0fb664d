#include "levellab/charp.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "levellab/curve.hpp"
#include "levellab/errors.hpp"
#include "levellab/gmputil.hpp"
#include "levellab/numutil.hpp"

namespace levellab {

namespace {

long long mod_n(long long x, long long N) { return ((x % N) + N) % N; }

void check_same_model(const TriangularEndo& x, const TriangularEndo& y) {
  if (x.N != y.N || x.nilpotent != y.nilpotent)
    throw input_error("charp: endomorphism base tags differ");
  if (!x.nilpotent && !x.field->same(*y.field))
    throw input_error("charp: endomorphism fields differ");
}

long long field_size(const FieldPtr& f) {
  long long q = 1;
  for (int i = 0; i < f->k; ++i) q *= f->p;
  return q;
}

}  // namespace

TriangularEndo endo_make(const FieldPtr& f, long long N, long long a,
                         const FieldElement& b, long long c, long long d) {
  if (N < 1) throw input_error("charp: level must be positive");
  if (!f->is_finite() || (field_size(f) - 1) % N != 0)
    throw input_error("charp: field does not split mu_N");
  if (!fe_eq(fe_pow(b, mpz_of(N)), fe_one(f)))
    throw input_error("charp: b must be an N-th root of unity");
  TriangularEndo x;
  x.N = N;
  x.nilpotent = false;
  x.field = f;
  x.a = mod_n(a, N);
  x.b = b;
  x.c = mod_n(c, N);
  x.d = mod_n(d, N);
  return x;
}

TriangularEndo endo_make_nilpotent(long long p, int r, long long a,
                                   long long b_exp, long long d) {
  if (p < 2 || !is_prime_ll(p) || r < 1)
    throw input_error("charp: level must be a positive prime power");
  long long N = 1;
  for (int i = 0; i < r; ++i) N *= p;
  TriangularEndo x;
  x.N = N;
  x.nilpotent = true;
  x.a = mod_n(a, N);
  x.b_exp = mod_n(b_exp, N);
  x.d = mod_n(d, N);
  return x;
}

TriangularEndo endo_identity(const FieldPtr& f, long long N) {
  return endo_make(f, N, 1, fe_one(f), 0, 1);
}

TriangularEndo endo_identity_nilpotent(long long p, int r) {
  return endo_make_nilpotent(p, r, 1, 0, 1);
}

bool endo_eq(const TriangularEndo& x, const TriangularEndo& y) {
  check_same_model(x, y);
  if (x.a != y.a || x.c != y.c || x.d != y.d) return false;
  return x.nilpotent ? x.b_exp == y.b_exp : fe_eq(x.b, y.b);
}

long long endo_b_exponent(const TriangularEndo& x) {
  if (x.nilpotent) return x.b_exp;
  return discrete_log(zeta_ref(x.field, x.N), x.b, x.N);
}

TriangularEndo endo_compose(const TriangularEndo& x, const TriangularEndo& y) {
  check_same_model(x, y);
  const long long N = x.N;
  if (x.nilpotent) {
    TriangularEndo r = x;
    r.a = mod_n(x.a * y.a, N);
    r.b_exp = mod_n(x.a * y.b_exp + y.d * x.b_exp, N);
    r.d = mod_n(x.d * y.d, N);
    return r;
  }
  long long bx = endo_b_exponent(x);
  long long by = endo_b_exponent(y);
  TriangularEndo r = x;
  r.a = mod_n(x.a * y.a + bx * y.c, N);
  r.b = fe_mul(fe_pow(y.b, mpz_of(mod_n(x.a, N))), fe_pow(x.b, mpz_of(mod_n(y.d, N))));
  r.c = mod_n(x.c * y.a + x.d * y.c, N);
  r.d = mod_n(x.d * y.d + x.c * by, N);
  return r;
}

long long endo_det(const TriangularEndo& x) {
  if (x.nilpotent) return mod_n(x.a * x.d, x.N);
  return mod_n(x.a * x.d - endo_b_exponent(x) * x.c, x.N);
}

std::optional<TriangularEndo> endo_inverse(const TriangularEndo& x) {
  long long det = endo_det(x);
  if (std::gcd(det, x.N) != 1) return std::nullopt;
  long long di = inv_mod_ll(det, x.N);
  TriangularEndo r = x;
  r.a = mod_n(di * x.d, x.N);
  r.d = mod_n(di * x.a, x.N);
  r.c = mod_n(-di * x.c, x.N);
  if (x.nilpotent)
    r.b_exp = mod_n(-di * x.b_exp, x.N);
  else
    r.b = fe_pow(x.b, mpz_of(mod_n(-di, x.N)));
  return r;
}

std::vector<TriangularEndo> enumerate_endos(const FieldPtr& f, long long N) {
  FieldElement zeta = zeta_ref(f, N);
  std::vector<FieldElement> mu;
  FieldElement w = fe_one(f);
  for (long long e = 0; e < N; ++e) {
    mu.push_back(w);
    w = fe_mul(w, zeta);
  }
  std::vector<TriangularEndo> out;
  out.reserve(N * N * N * N);
  for (long long a = 0; a < N; ++a)
    for (long long e = 0; e < N; ++e)
      for (long long c = 0; c < N; ++c)
        for (long long d = 0; d < N; ++d) out.push_back(endo_make(f, N, a, mu[e], c, d));
  return out;
}

FieldPtr smallest_mu_field(long long N) {
  if (N < 1) throw input_error("charp: level must be positive");
  for (long long q = 2;; ++q) {
    if ((q - 1) % N != 0) continue;
    long long p = 0;
    for (long long t = 2; t * t <= q; ++t)
      if (q % t == 0) {
        p = t;
        break;
      }
    if (p == 0) p = q;
    int k = 0;
    long long m = q;
    while (m % p == 0) {
      m /= p;
      ++k;
    }
    if (m == 1) return FieldDescriptor::finite(p, k);
  }
}

PairingCheckReport pairing_equality_check(const FieldPtr& f, long long N) {
  if (N < 1) throw input_error("charp: level must be positive");
  long long q = field_size(f);
  if ((q - 1) % N != 0) throw input_error("charp: field does not split mu_N");

  FieldElement zeta = zeta_ref(f, N);
  std::vector<FieldElement> mu;
  FieldElement w = fe_one(f);
  for (long long e = 0; e < N; ++e) {
    mu.push_back(w);
    w = fe_mul(w, zeta);
  }

  PairingCheckReport rep;
  rep.N = N;
  rep.q = q;
  rep.all_equal = true;
  for (long long j = 0; j < N; ++j) {
    // the hom v_j: mu_N -> Z/N as a value table keyed by the element
    std::map<std::string, long long> table;
    for (long long s = 0; s < N; ++s) table[fe_to_text(mu[s])] = mod_n(j * s, N);
    for (long long su = 0; su < N; ++su) {
      const FieldElement& u = mu[su];
      long long b1 = table.at(fe_to_text(u));
      // exponent of w |-> u^{v_j(w)} as an endomorphism of mu_N
      long long b2 = -1;
      for (long long e = 0; e < N && b2 < 0; ++e) {
        bool match = true;
        for (long long sw = 0; sw < N && match; ++sw) {
          FieldElement lhs = fe_pow(u, mpz_of(table.at(fe_to_text(mu[sw]))));
          FieldElement rhs = fe_pow(mu[sw], mpz_of(e));
          match = fe_eq(lhs, rhs);
        }
        if (match) b2 = e;
      }
      ++rep.pairs_checked;
      if (b2 != b1) rep.all_equal = false;
    }
  }
  return rep;
}

long long ordinary_aut_count(long long p, int r) {
  if (p < 2 || !is_prime_ll(p) || r < 1)
    throw input_error("charp: level must be a positive prime power");
  long long N = 1;
  for (int i = 0; i < r; ++i) N *= p;
  if (N > 100) throw resource_error("charp: endomorphism census too large");
  std::vector<TriangularEndo> all;
  for (long long a = 0; a < N; ++a)
    for (long long b = 0; b < N; ++b)
      for (long long d = 0; d < N; ++d)
        all.push_back(endo_make_nilpotent(p, r, a, b, d));
  TriangularEndo id = endo_identity_nilpotent(p, r);
  long long count = 0;
  for (const TriangularEndo& x : all) {
    bool invertible = false;
    for (const TriangularEndo& y : all) {
      if (endo_eq(endo_compose(x, y), id) && endo_eq(endo_compose(y, x), id)) {
        invertible = true;
        break;
      }
    }
    if (invertible) ++count;
  }
  return count;
}

QuaternionElement quat_make(const GaloisRingElement& a, const GaloisRingElement& b) {
  if (!a.R->same(*b.R)) throw input_error("charp: quaternion parts over different rings");
  return {a, b};
}

QuaternionElement quat_one(const GaloisRingPtr& R) { return {gr_one(R), gr_zero(R)}; }

QuaternionElement quat_pi(const GaloisRingPtr& R) { return {gr_zero(R), gr_one(R)}; }

QuaternionElement quat_mul(const QuaternionElement& x, const QuaternionElement& y) {
  if (!x.a.R->same(*y.a.R)) throw input_error("charp: quaternion rings differ");
  long long p = x.a.R->p;
  GaloisRingElement scalar =
      gr_add(gr_mul(x.a, y.a), gr_scale(gr_mul(x.b, gr_frobenius(y.b)), p));
  GaloisRingElement pi_part = gr_add(gr_mul(x.a, y.b), gr_mul(x.b, gr_frobenius(y.a)));
  return {scalar, pi_part};
}

bool quat_eq(const QuaternionElement& x, const QuaternionElement& y) {
  return gr_eq(x.a, y.a) && gr_eq(x.b, y.b);
}

bool quat_is_unit(const QuaternionElement& x) { return gr_is_unit(x.a); }

QuaternionElement quat_conjugate(const QuaternionElement& x) {
  return {gr_frobenius(x.a), gr_neg(x.b)};
}

long long quat_reduced_norm(const QuaternionElement& x) {
  GaloisRingElement n = gr_sub(gr_mul(x.a, gr_frobenius(x.a)),
                               gr_scale(gr_mul(x.b, gr_frobenius(x.b)), x.a.R->p));
  if (n.c1 != 0) throw internal_error("charp: reduced norm not central");
  return n.c0;
}

std::optional<QuaternionElement> quat_inverse(const QuaternionElement& x) {
  if (!quat_is_unit(x)) return std::nullopt;
  long long n = quat_reduced_norm(x);
  long long ni = inv_mod_ll(n, x.a.R->pr);
  QuaternionElement c = quat_conjugate(x);
  return QuaternionElement{gr_scale(c.a, ni), gr_scale(c.b, ni)};
}

long long quat_index(const QuaternionElement& x) {
  long long sq = x.a.R->pr * x.a.R->pr;
  return gr_index(x.a) + sq * gr_index(x.b);
}

QuaternionElement quat_at_index(const GaloisRingPtr& R, long long index) {
  long long sq = R->pr * R->pr;
  return {gr_at_index(R, index % sq), gr_at_index(R, index / sq)};
}

std::string quat_to_text(const QuaternionElement& x) {
  std::ostringstream out;
  out << "(" << gr_to_text(x.a) << ") + (" << gr_to_text(x.b) << ")*Pi";
  return out.str();
}

std::array<GaloisRingElement, 4> dieudonne_matrix(const QuaternionElement& x) {
  long long p = x.a.R->p;
  return {gr_frobenius(x.a), x.b, gr_scale(gr_frobenius(x.b), p), x.a};
}

QuaternionQuotient quaternion_quotient_count_over(const GaloisRingPtr& R,
                                                  long long cap) {
  long long sq = R->pr * R->pr;
  long long total = sq * sq;  // p^{4r}
  if (total > cap) throw resource_error("charp: quaternion census exceeds the cap");

  QuaternionQuotient out;
  out.p = R->p;
  out.r = R->r;
  out.elements = total;

  long long pr1 = R->pr / R->p;  // p^{r-1}
  std::set<long long> kernel;
  for (long long ib = 0; ib < sq; ++ib) {
    GaloisRingElement beta = gr_at_index(R, ib);
    QuaternionElement k = {gr_one(R), gr_scale(beta, pr1)};
    kernel.insert(quat_index(k));
  }
  out.kernel = static_cast<long long>(kernel.size());

  // subgroup checks: closure under multiplication and inverses inside the set
  for (long long ik : kernel)
    for (long long jk : kernel) {
      QuaternionElement prod = quat_mul(quat_at_index(R, ik), quat_at_index(R, jk));
      if (!kernel.count(quat_index(prod)))
        throw internal_error("charp: kernel is not closed under multiplication");
    }
  for (long long ik : kernel) {
    auto inv = quat_inverse(quat_at_index(R, ik));
    if (!inv || !kernel.count(quat_index(*inv)))
      throw internal_error("charp: kernel is not closed under inversion");
  }

  std::vector<long long> units;
  for (long long i = 0; i < total; ++i)
    if (quat_is_unit(quat_at_index(R, i))) units.push_back(i);
  out.units = static_cast<long long>(units.size());

  // normality and the left-coset partition
  std::set<long long> coset_min;
  for (long long iu : units) {
    QuaternionElement u = quat_at_index(R, iu);
    QuaternionElement ui = *quat_inverse(u);
    long long least = -1;
    for (long long ik : kernel) {
      QuaternionElement k = quat_at_index(R, ik);
      QuaternionElement conj = quat_mul(quat_mul(u, k), ui);
      if (!kernel.count(quat_index(conj)))
        throw internal_error("charp: kernel is not normal in the unit group");
      long long ci = quat_index(quat_mul(u, k));
      if (least < 0 || ci < least) least = ci;
    }
    coset_min.insert(least);
  }
  if (out.units % out.kernel != 0)
    throw internal_error("charp: kernel size does not divide the unit count");
  out.quotient = static_cast<long long>(coset_min.size());
  if (out.quotient != out.units / out.kernel)
    throw internal_error("charp: coset count disagrees with the index");
  return out;
}

QuaternionQuotient quaternion_quotient_count(long long p, int r, long long cap) {
  return quaternion_quotient_count_over(GaloisRingDescriptor::make(p, r), cap);
}

std::vector<FieldElement> supersingular_j_enumeration(long long p, long long cap) {
  if (!is_prime_ll(p)) throw input_error("charp: characteristic must be prime");
  if (p > cap) throw resource_error("charp: characteristic exceeds the cap");
  FieldPtr f = FieldDescriptor::finite(p, 2);
  long long q = p * p;

  std::map<mpz_class, FieldElement> found;
  auto consider = [&](const CurvePtr& E) {
    long long a = q + 1 - count_points(E);
    if (a % p != 0) return;
    FieldElement j = curve_invariants(E).j;
    found.emplace(fe_index(j), j);
  };

  if (p == 2) {
    for (long long i = 0; i < q * q * q * q * q; ++i) {
      long long rem = i;
      std::vector<FieldElement> a;
      for (int t = 0; t < 5; ++t) {
        a.push_back(fe_at_index(f, mpz_of(rem % q)));
        rem /= q;
      }
      try {
        consider(EllipticCurve::make_long(f, a[0], a[1], a[2], a[3], a[4]));
      } catch (const input_error&) {
      }
    }
  } else if (p == 3) {
    for (long long i = 0; i < q * q * q; ++i) {
      long long rem = i;
      std::vector<FieldElement> a;
      for (int t = 0; t < 3; ++t) {
        a.push_back(fe_at_index(f, mpz_of(rem % q)));
        rem /= q;
      }
      try {
        consider(EllipticCurve::make_long(f, fe_zero(f), a[0], fe_zero(f), a[1], a[2]));
      } catch (const input_error&) {
      }
    }
  } else {
    FieldElement c1728 = fe_from_int(f, 1728);
    for (long long i = 0; i < q; ++i) {
      FieldElement j = fe_at_index(f, mpz_of(i));
      CurvePtr E;
      if (j.is_zero()) {
        E = EllipticCurve::make_short_int(f, 0, 1);
      } else if (fe_eq(j, c1728)) {
        E = EllipticCurve::make_short_int(f, 1, 0);
      } else {
        FieldElement t = fe_sub(c1728, j);
        FieldElement A = fe_mul(fe_from_int(f, 3), fe_mul(j, t));
        FieldElement B = fe_mul(fe_from_int(f, 2), fe_mul(j, fe_mul(t, t)));
        E = EllipticCurve::make_short(f, A, B);
      }
      consider(E);
    }
  }

  std::vector<FieldElement> out;
  for (const auto& [idx, j] : found) out.push_back(j);
  return out;
}

SsComponentCensus ss_component_census(long long p, int r, long long structure_size) {
  if (structure_size < 1) throw input_error("charp: structure size must be positive");
  SsComponentCensus census;
  census.p = p;
  census.r = r;
  census.structure_size = structure_size;
  std::vector<FieldElement> js = supersingular_j_enumeration(p);
  census.curve_count = static_cast<long long>(js.size());
  census.quotient = quaternion_quotient_count(p, r).quotient;
  census.upper_bound = census.curve_count * structure_size * census.quotient;
  for (const FieldElement& j : js) {
    FieldPtr f = j.f;
    if (j.is_zero() || fe_eq(j, fe_from_int(f, 1728))) census.aut_ambiguous = true;
  }
  return census;
}

}  // namespace levellab
