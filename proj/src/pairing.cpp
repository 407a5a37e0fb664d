#include "levellab/pairing.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <string>

#include "levellab/errors.hpp"
#include "levellab/numutil.hpp"

namespace levellab {

CyclicSubgroup make_cyclic_subgroup(const CurvePoint& gen, long long m) {
  if (m < 1) throw input_error("subgroup order must be positive");
  if (!gen.curve) throw input_error("subgroup generator needs a curve");
  const FieldPtr& f = gen.curve->field;
  if (f->is_finite() && m % f->p == 0)
    throw input_error("subgroup order shares the field characteristic");
  if (m == 1) {
    if (!gen.infinity) throw input_error("trivial subgroup needs infinity");
  } else {
    if (!scalar_mul(m, gen).infinity)
      throw input_error("generator order does not divide the stated order");
    for (long long l : prime_divisors(m))
      if (scalar_mul(m / l, gen).infinity)
        throw input_error("generator order is smaller than stated");
  }
  return CyclicSubgroup{gen.curve, gen, m};
}

CyclicSubgroup trivial_subgroup(const CurvePtr& E) {
  return CyclicSubgroup{E, point_infinity(E), 1};
}

std::vector<CurvePoint> subgroup_points(const CyclicSubgroup& C) {
  std::vector<CurvePoint> pts;
  CurvePoint R = point_infinity(C.curve);
  for (long long i = 0; i < C.order; ++i) {
    pts.push_back(R);
    R = add_points(R, C.generator);
  }
  std::sort(pts.begin(), pts.end(), [](const CurvePoint& a, const CurvePoint& b) {
    return point_cmp(a, b) < 0;
  });
  return pts;
}

bool subgroup_contains(const CyclicSubgroup& C, const CurvePoint& P) {
  CurvePoint R = point_infinity(C.curve);
  for (long long i = 0; i < C.order; ++i) {
    if (point_eq(R, P)) return true;
    R = add_points(R, C.generator);
  }
  return false;
}

bool subgroup_eq(const CyclicSubgroup& a, const CyclicSubgroup& b) {
  if (!curve_same(a.curve, b.curve) || a.order != b.order) return false;
  return subgroup_contains(a, b.generator) && subgroup_contains(b, a.generator);
}

CyclicSubgroup standard_subgroup(const CyclicSubgroup& C, long long d) {
  if (d < 1 || C.order % d != 0)
    throw input_error("standard subgroup order must divide the group order");
  return make_cyclic_subgroup(scalar_mul(C.order / d, C.generator), d);
}

CurvePoint nth_curve_point(const CurvePtr& E, size_t skip) {
  if (!E->field->is_finite())
    throw input_error("point enumeration needs a finite field");
  const FieldPtr& f = E->field;
  mpz_class q = f->order();
  FieldElement half =
      f->p == 2 ? fe_zero(f) : fe_inv(fe_from_int(f, 2));
  size_t seen = 0;
  for (mpz_class xi = 0; xi < q && xi < 2000000; ++xi) {
    FieldElement x = fe_at_index(f, xi);
    FieldElement L = E->a1 * x + E->a3;
    FieldElement rhs = ((x + E->a2) * x + E->a4) * x + E->a6;
    std::vector<FieldElement> ys;
    if (f->p == 2) {
      // tiny fields only reach this helper in characteristic 2
      for (mpz_class yi = 0; yi < q; ++yi) {
        FieldElement y = fe_at_index(f, yi);
        if (point_on_curve(E, x, y)) ys.push_back(y);
      }
    } else {
      FieldElement d = L * L + fe_mul(rhs, fe_from_int(f, 4));
      if (d.is_zero()) {
        ys.push_back(fe_neg(L) * half);
      } else if (fe_is_square(d)) {
        FieldElement s = fe_sqrt(d);
        FieldElement y1 = (fe_neg(L) + s) * half;
        FieldElement y2 = (fe_neg(L) - s) * half;
        if (fe_cmp(y2, y1) < 0) std::swap(y1, y2);
        ys = {y1, y2};
      }
    }
    for (const FieldElement& y : ys) {
      if (seen == skip) return point_make(E, x, y);
      ++seen;
    }
  }
  throw internal_error("curve point enumeration exhausted");
}

namespace {

// Value at S of the line used when adding T + U; vertical lines fall out of
// the degenerate slope cases.
FieldElement chord_eval(const CurvePoint& T, const CurvePoint& U,
                        const CurvePoint& S) {
  const auto& E = T.curve;
  if (T.infinity && U.infinity) return fe_one(E->field);
  if (T.infinity) return S.x - U.x;
  if (U.infinity) return S.x - T.x;
  if (T.x == U.x && !(T.y == U.y)) return S.x - T.x;
  FieldElement lambda = fe_zero(E->field);
  if (T.x == U.x) {
    FieldElement denom = fe_mul(T.y, fe_from_int(E->field, 2)) +
                         E->a1 * T.x + E->a3;
    if (denom.is_zero()) return S.x - T.x;
    lambda = fe_div(fe_mul(T.x * T.x, fe_from_int(E->field, 3)) +
                        fe_mul(E->a2 * T.x, fe_from_int(E->field, 2)) + E->a4 -
                        E->a1 * T.y,
                    denom);
  } else {
    lambda = fe_div(U.y - T.y, U.x - T.x);
  }
  return (S.y - T.y) - lambda * (S.x - T.x);
}

// f_{N,P}(S) for N*P = infinity; nullopt when an intermediate line vanishes
// at S and the evaluation must be retried with another auxiliary point.
std::optional<FieldElement> miller_eval(const CurvePoint& P, long long N,
                                        const CurvePoint& S) {
  const auto& E = P.curve;
  FieldElement num = fe_one(E->field), den = fe_one(E->field);
  CurvePoint T = P;
  int top = 63;
  while (top > 0 && !((N >> top) & 1)) --top;
  for (int i = top - 1; i >= 0; --i) {
    FieldElement l = chord_eval(T, T, S);
    T = add_points(T, T);
    FieldElement v = T.infinity ? fe_one(E->field) : S.x - T.x;
    if (l.is_zero() || v.is_zero()) return std::nullopt;
    num = num * num * l;
    den = den * den * v;
    if ((N >> i) & 1) {
      FieldElement l2 = chord_eval(T, P, S);
      T = add_points(T, P);
      FieldElement v2 = T.infinity ? fe_one(E->field) : S.x - T.x;
      if (l2.is_zero() || v2.is_zero()) return std::nullopt;
      num = num * l2;
      den = den * v2;
    }
  }
  if (!T.infinity) throw internal_error("Miller loop ended off infinity");
  return fe_div(num, den);
}

}  // namespace

FieldElement weil_pairing(long long N, const CurvePoint& P,
                          const CurvePoint& Q) {
  if (!curve_same(P.curve, Q.curve))
    throw input_error("pairing arguments lie on different curves");
  const auto& E = P.curve;
  const FieldPtr& f = E->field;
  if (N < 1) throw input_error("pairing level must be positive");
  if (f->is_finite() && N % f->p == 0)
    throw input_error("pairing level shares the field characteristic");
  if (!scalar_mul(N, P).infinity || !scalar_mul(N, Q).infinity)
    throw input_error("pairing arguments must be N-torsion");
  if (N == 1 || P.infinity || Q.infinity) return fe_one(f);
  CurvePoint negQ = point_neg(Q);
  CurvePoint PmQ = sub_points(P, Q);
  for (size_t cand = 0; cand < 64; ++cand) {
    CurvePoint R = nth_curve_point(E, cand);
    if (point_eq(R, P) || point_eq(R, negQ) || point_eq(R, PmQ)) continue;
    auto a = miller_eval(P, N, add_points(Q, R));
    if (!a) continue;
    auto b = miller_eval(P, N, R);
    if (!b) continue;
    auto c = miller_eval(Q, N, sub_points(P, R));
    if (!c) continue;
    auto d = miller_eval(Q, N, point_neg(R));
    if (!d) continue;
    FieldElement zeta = fe_div(fe_mul(*a, *d), fe_mul(*b, *c));
    if (!fe_pow(zeta, mpz_of(N)).is_one())
      throw internal_error("pairing value is not an N-th root of unity");
    return zeta;
  }
  throw internal_error("Weil pairing evaluation stayed degenerate");
}

Isogeny identity_isogeny(const CurvePtr& E) {
  return Isogeny{E, E, 1, {point_infinity(E)}};
}

Isogeny velu_quotient(const CurvePtr& E, const CyclicSubgroup& K) {
  if (!curve_same(E, K.curve))
    throw input_error("kernel lives on a different curve");
  if (K.order == 1) return identity_isogeny(E);
  if (!E->short_form)
    throw unsupported_error("quotient isogenies need a short model");
  const FieldPtr& f = E->field;
  if (f->is_finite() && (f->p == 2 || f->p == 3))
    throw unsupported_error("quotient isogenies need characteristic >= 5");
  if (f->is_finite() && K.order % f->p == 0)
    throw unsupported_error("kernel order shares the field characteristic");
  std::vector<CurvePoint> kpts = subgroup_points(K);
  const FieldElement& A = E->a4;
  const FieldElement& B = E->a6;
  FieldElement t = fe_zero(f), w = fe_zero(f);
  for (const CurvePoint& T : kpts) {
    if (T.infinity) continue;
    FieldElement gx = fe_mul(T.x * T.x, fe_from_int(f, 3)) + A;
    t = t + gx;
    w = w + fe_mul(T.y * T.y, fe_from_int(f, 2)) + T.x * gx;
  }
  FieldElement A2 = A - fe_mul(t, fe_from_int(f, 5));
  FieldElement B2 = B - fe_mul(w, fe_from_int(f, 7));
  CurvePtr cod = EllipticCurve::make_short(f, A2, B2);
  return Isogeny{E, cod, K.order, std::move(kpts)};
}

CurvePoint push_point(const Isogeny& phi, const CurvePoint& P) {
  if (!curve_same(phi.domain, P.curve))
    throw input_error("point is not on the isogeny domain");
  if (phi.degree == 1)
    return P.infinity ? point_infinity(phi.codomain)
                      : point_make(phi.codomain, P.x, P.y);
  if (P.infinity) return point_infinity(phi.codomain);
  for (const CurvePoint& T : phi.kernel_points)
    if (point_eq(T, P)) return point_infinity(phi.codomain);
  FieldElement xs = P.x, ys = P.y;
  for (const CurvePoint& T : phi.kernel_points) {
    if (T.infinity) continue;
    CurvePoint U = add_points(P, T);
    xs = xs + U.x - T.x;
    ys = ys + U.y - T.y;
  }
  return point_make(phi.codomain, xs, ys);
}

CyclicSubgroup push_subgroup(const Isogeny& phi, const CyclicSubgroup& C) {
  if (!curve_same(phi.domain, C.curve))
    throw input_error("subgroup is not on the isogeny domain");
  long long meet = 0;
  CurvePoint R = point_infinity(C.curve);
  for (long long i = 0; i < C.order; ++i) {
    for (const CurvePoint& T : phi.kernel_points)
      if (point_eq(T, R)) {
        ++meet;
        break;
      }
    R = add_points(R, C.generator);
  }
  if (meet == 0 || C.order % meet != 0)
    throw internal_error("kernel intersection has impossible size");
  return make_cyclic_subgroup(push_point(phi, C.generator), C.order / meet);
}

}  // namespace levellab
