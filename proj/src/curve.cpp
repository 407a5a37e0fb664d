#include "levellab/curve.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "levellab/errors.hpp"

namespace levellab {

namespace {

FieldElement fe_int(const FieldPtr& f, long long n) { return fe_from_int(f, n); }

FieldElement scale_int(const FieldElement& a, long long n) {
  return fe_mul(a, fe_from_int(a.f, n));
}

bool six_invertible(const FieldPtr& f) {
  return f->is_rationals() || (f->p != 2 && f->p != 3);
}

struct RawInvariants {
  FieldElement b2, b4, b6, b8, c4, c6, disc;
};

RawInvariants raw_invariants(const FieldPtr& f, const FieldElement& a1,
                             const FieldElement& a2, const FieldElement& a3,
                             const FieldElement& a4, const FieldElement& a6) {
  RawInvariants r;
  r.b2 = a1 * a1 + scale_int(a2, 4);
  r.b4 = scale_int(a4, 2) + a1 * a3;
  r.b6 = a3 * a3 + scale_int(a6, 4);
  r.b8 = a1 * a1 * a6 + scale_int(a2 * a6, 4) - a1 * a3 * a4 + a2 * a3 * a3 -
         a4 * a4;
  r.c4 = r.b2 * r.b2 - scale_int(r.b4, 24);
  r.c6 = -(r.b2 * r.b2 * r.b2) + scale_int(r.b2 * r.b4, 36) - scale_int(r.b6, 216);
  r.disc = -(r.b2 * r.b2 * r.b8) - scale_int(r.b4 * r.b4 * r.b4, 8) -
           scale_int(r.b6 * r.b6, 27) + scale_int(r.b2 * r.b4 * r.b6, 9);
  if (r.c4 * r.c4 * r.c4 - r.c6 * r.c6 != scale_int(r.disc, 1728))
    throw internal_error("Weierstrass invariant identity failed");
  return r;
}

CurvePtr make_curve(const FieldPtr& f, bool short_form, FieldElement a1,
                    FieldElement a2, FieldElement a3, FieldElement a4,
                    FieldElement a6) {
  if (!f) throw input_error("curve needs a field");
  RawInvariants inv = raw_invariants(f, a1, a2, a3, a4, a6);
  if (inv.disc.is_zero()) throw input_error("singular Weierstrass model");
  auto E = std::make_shared<EllipticCurve>();
  E->field = f;
  E->short_form = short_form;
  E->a1 = std::move(a1);
  E->a2 = std::move(a2);
  E->a3 = std::move(a3);
  E->a4 = std::move(a4);
  E->a6 = std::move(a6);
  return E;
}

}  // namespace

CurvePtr EllipticCurve::make_long(const FieldPtr& f, FieldElement a1,
                                  FieldElement a2, FieldElement a3,
                                  FieldElement a4, FieldElement a6) {
  return make_curve(f, false, std::move(a1), std::move(a2), std::move(a3),
                    std::move(a4), std::move(a6));
}

CurvePtr EllipticCurve::make_short(const FieldPtr& f, FieldElement A,
                                   FieldElement B) {
  if (!six_invertible(f))
    throw input_error("short model needs 6 invertible in the field");
  return make_curve(f, true, fe_zero(f), fe_zero(f), fe_zero(f), std::move(A),
                    std::move(B));
}

CurvePtr EllipticCurve::make_long_int(const FieldPtr& f, long long a1,
                                      long long a2, long long a3, long long a4,
                                      long long a6) {
  return make_long(f, fe_int(f, a1), fe_int(f, a2), fe_int(f, a3),
                   fe_int(f, a4), fe_int(f, a6));
}

CurvePtr EllipticCurve::make_short_int(const FieldPtr& f, long long A,
                                       long long B) {
  return make_short(f, fe_int(f, A), fe_int(f, B));
}

bool curve_same(const CurvePtr& a, const CurvePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->field->same(*b->field) && a->short_form == b->short_form &&
         a->a1 == b->a1 && a->a2 == b->a2 && a->a3 == b->a3 && a->a4 == b->a4 &&
         a->a6 == b->a6;
}

std::string curve_to_text(const CurvePtr& E) {
  std::vector<const FieldElement*> cs;
  if (E->short_form)
    cs = {&E->a4, &E->a6};
  else
    cs = {&E->a1, &E->a2, &E->a3, &E->a4, &E->a6};
  std::string out;
  for (size_t i = 0; i < cs.size(); ++i) {
    if (i) out += ',';
    out += fe_to_text(*cs[i]);
  }
  return out;
}

CurvePtr parse_curve(const FieldPtr& f, bool short_form,
                     const std::string& coeffs) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char ch : coeffs) {
    if (ch == ',') {
      tokens.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      cur += ch;
    }
  }
  tokens.push_back(cur);
  size_t n_coeff = short_form ? 2 : 5;
  size_t k = f->is_finite() ? static_cast<size_t>(f->k) : 1;
  if (tokens.size() != n_coeff * k)
    throw input_error("curve text has the wrong number of scalars");
  std::vector<FieldElement> elems;
  for (size_t i = 0; i < n_coeff; ++i) {
    std::string joined;
    for (size_t j = 0; j < k; ++j) {
      if (j) joined += ',';
      joined += tokens[i * k + j];
    }
    elems.push_back(fe_parse(f, joined));
  }
  if (short_form) return EllipticCurve::make_short(f, elems[0], elems[1]);
  return EllipticCurve::make_long(f, elems[0], elems[1], elems[2], elems[3],
                                  elems[4]);
}

FieldPtr parse_field_selector(const std::string& text) {
  if (text == "Q") return FieldDescriptor::rationals();
  auto parse_ll = [](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw input_error("bad field selector: " + s);
    return std::stoll(s);
  };
  if (text.rfind("Fp:", 0) == 0)
    return FieldDescriptor::finite(parse_ll(text.substr(3)), 1);
  if (text.rfind("Fq:", 0) == 0) {
    std::string body = text.substr(3);
    auto caret = body.find('^');
    if (caret == std::string::npos)
      throw input_error("field selector Fq needs p^k");
    long long p = parse_ll(body.substr(0, caret));
    long long k = parse_ll(body.substr(caret + 1));
    if (k < 1 || k > 64) throw input_error("field selector degree out of range");
    return FieldDescriptor::finite(p, static_cast<int>(k));
  }
  throw input_error("unknown field selector: " + text);
}

std::string format_field_selector(const FieldPtr& f) {
  if (f->is_rationals()) return "Q";
  if (f->k == 1) return "Fp:" + std::to_string(f->p);
  return "Fq:" + std::to_string(f->p) + "^" + std::to_string(f->k);
}

CurveInvariants curve_invariants(const CurvePtr& E) {
  RawInvariants r =
      raw_invariants(E->field, E->a1, E->a2, E->a3, E->a4, E->a6);
  CurveInvariants inv;
  inv.b2 = r.b2;
  inv.b4 = r.b4;
  inv.b6 = r.b6;
  inv.b8 = r.b8;
  inv.c4 = r.c4;
  inv.c6 = r.c6;
  inv.disc = r.disc;
  inv.j = fe_div(r.c4 * r.c4 * r.c4, r.disc);
  return inv;
}

CurvePoint point_infinity(const CurvePtr& E) {
  CurvePoint P;
  P.curve = E;
  P.infinity = true;
  P.x = fe_zero(E->field);
  P.y = fe_zero(E->field);
  return P;
}

bool point_on_curve(const CurvePtr& E, const FieldElement& x,
                    const FieldElement& y) {
  FieldElement lhs = y * y + E->a1 * x * y + E->a3 * y;
  FieldElement rhs = ((x + E->a2) * x + E->a4) * x + E->a6;
  return lhs == rhs;
}

CurvePoint point_make(const CurvePtr& E, FieldElement x, FieldElement y) {
  if (!point_on_curve(E, x, y))
    throw membership_error("point is not on the curve");
  CurvePoint P;
  P.curve = E;
  P.infinity = false;
  P.x = std::move(x);
  P.y = std::move(y);
  return P;
}

bool point_eq(const CurvePoint& P, const CurvePoint& Q) {
  if (!curve_same(P.curve, Q.curve)) return false;
  if (P.infinity || Q.infinity) return P.infinity == Q.infinity;
  return P.x == Q.x && P.y == Q.y;
}

int point_cmp(const CurvePoint& P, const CurvePoint& Q) {
  if (P.infinity || Q.infinity) {
    if (P.infinity && Q.infinity) return 0;
    return P.infinity ? -1 : 1;
  }
  if (int c = fe_cmp(P.x, Q.x)) return c;
  return fe_cmp(P.y, Q.y);
}

CurvePoint point_neg(const CurvePoint& P) {
  if (P.infinity) return P;
  const auto& E = P.curve;
  return point_make(E, P.x, -P.y - E->a1 * P.x - E->a3);
}

CurvePoint add_points(const CurvePoint& P, const CurvePoint& Q) {
  if (!curve_same(P.curve, Q.curve))
    throw input_error("points lie on different curves");
  if (P.infinity) return Q;
  if (Q.infinity) return P;
  const auto& E = P.curve;
  const FieldPtr& f = E->field;
  FieldElement lambda = fe_zero(f), nu = fe_zero(f);
  if (P.x == Q.x) {
    FieldElement denom = scale_int(P.y, 2) + E->a1 * P.x + E->a3;
    if (Q.y != P.y || denom.is_zero()) return point_infinity(E);
    lambda = fe_div(scale_int(P.x * P.x, 3) + scale_int(E->a2 * P.x, 2) +
                        E->a4 - E->a1 * P.y,
                    denom);
    nu = fe_div(-(P.x * P.x * P.x) + E->a4 * P.x + scale_int(E->a6, 2) -
                    E->a3 * P.y,
                denom);
  } else {
    lambda = fe_div(Q.y - P.y, Q.x - P.x);
    nu = P.y - lambda * P.x;
  }
  FieldElement x3 = lambda * lambda + E->a1 * lambda - E->a2 - P.x - Q.x;
  FieldElement y3 = -(lambda + E->a1) * x3 - nu - E->a3;
  return point_make(E, x3, y3);
}

CurvePoint sub_points(const CurvePoint& P, const CurvePoint& Q) {
  return add_points(P, point_neg(Q));
}

CurvePoint scalar_mul(const mpz_class& n, const CurvePoint& P) {
  if (n < 0) return scalar_mul(mpz_class(-n), point_neg(P));
  CurvePoint R = point_infinity(P.curve);
  if (n == 0 || P.infinity) return R;
  size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  for (size_t i = bits; i-- > 0;) {
    R = add_points(R, R);
    if (mpz_tstbit(n.get_mpz_t(), i)) R = add_points(R, P);
  }
  return R;
}

CurvePoint scalar_mul(long long n, const CurvePoint& P) {
  return scalar_mul(mpz_of(n), P);
}

std::string point_to_text(const CurvePoint& P) {
  if (P.infinity) return "INF";
  return fe_to_text(P.x) + ";" + fe_to_text(P.y);
}

CurvePoint point_parse(const CurvePtr& E, const std::string& text) {
  if (text == "INF") return point_infinity(E);
  auto semi = text.find(';');
  if (semi == std::string::npos)
    throw input_error("point text needs 'x;y' or INF");
  return point_make(E, fe_parse(E->field, text.substr(0, semi)),
                    fe_parse(E->field, text.substr(semi + 1)));
}

CurvePoint frobenius_point(const CurvePoint& P, int j) {
  if (P.infinity) return P;
  return point_make(P.curve, fe_frobenius(P.x, j), fe_frobenius(P.y, j));
}

CurvePoint point_embed(const CurvePoint& P, const CurvePtr& big) {
  if (P.infinity) return point_infinity(big);
  return point_make(big, fe_embed(P.x, big->field), fe_embed(P.y, big->field));
}

CurvePoint point_coerce(const CurvePoint& P, const CurvePtr& small) {
  if (P.infinity) return point_infinity(small);
  return point_make(small, fe_coerce(P.x, small->field),
                    fe_coerce(P.y, small->field));
}

long long point_order_dividing(const CurvePoint& P, long long n) {
  if (n < 1) throw input_error("order bound must be positive");
  for (long long d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    if (scalar_mul(d, P).infinity) return d;
  }
  return 0;
}

namespace {

long long require_counted_field(const CurvePtr& E, long long cap) {
  if (!E->field->is_finite())
    throw input_error("point counting needs a finite field");
  mpz_class q = E->field->order();
  if (q > mpz_of(cap)) throw resource_error("field size exceeds counting cap");
  return mpz_to_ll(q);
}

}  // namespace

long long count_points(const CurvePtr& E, long long cap) {
  long long q = require_counted_field(E, cap);
  const FieldPtr& f = E->field;
  long long count = 1;
  if (f->p == 2) {
    for (long long xi = 0; xi < q; ++xi) {
      FieldElement x = fe_at_index(f, mpz_of(xi));
      FieldElement L = E->a1 * x + E->a3;
      FieldElement rhs = ((x + E->a2) * x + E->a4) * x + E->a6;
      if (L.is_zero()) {
        count += 1;
      } else {
        FieldElement li = fe_inv(L);
        if (fe_abs_trace(rhs * li * li) == 0) count += 2;
      }
    }
  } else {
    std::vector<bool> is_sq(static_cast<size_t>(q), false);
    for (long long t = 0; t < q; ++t) {
      FieldElement e = fe_at_index(f, mpz_of(t));
      is_sq[static_cast<size_t>(mpz_to_ll(fe_index(e * e)))] = true;
    }
    for (long long xi = 0; xi < q; ++xi) {
      FieldElement x = fe_at_index(f, mpz_of(xi));
      FieldElement L = E->a1 * x + E->a3;
      FieldElement rhs = ((x + E->a2) * x + E->a4) * x + E->a6;
      FieldElement d = L * L + scale_int(rhs, 4);
      if (d.is_zero())
        count += 1;
      else if (is_sq[static_cast<size_t>(mpz_to_ll(fe_index(d)))])
        count += 2;
    }
  }
  long long a = q + 1 - count;
  if (mpz_class(mpz_of(a) * mpz_of(a)) > 4 * mpz_of(q))
    throw internal_error("Hasse bound violated by point count");
  return count;
}

long long trace_of_frobenius(const CurvePtr& E, long long cap) {
  long long q = require_counted_field(E, cap);
  return q + 1 - count_points(E, cap);
}

TracePower trace_power(const CurvePtr& E, int k, long long cap) {
  if (k < 1) throw input_error("extension degree must be positive");
  long long a0 = trace_of_frobenius(E, cap);
  mpz_class q0 = E->field->order();
  mpz_class s_prev = 2, s_cur = mpz_of(a0);
  for (int j = 1; j < k; ++j) {
    mpz_class s_next = mpz_of(a0) * s_cur - q0 * s_prev;
    s_prev = s_cur;
    s_cur = s_next;
  }
  if (k == 1) s_cur = mpz_of(a0);
  TracePower tp;
  tp.trace = s_cur;
  mpz_class qk;
  mpz_pow_ui(qk.get_mpz_t(), q0.get_mpz_t(), static_cast<unsigned long>(k));
  tp.count = qk + 1 - s_cur;
  return tp;
}

bool is_supersingular(const CurvePtr& E, long long cap) {
  if (!E->field->is_finite() || E->field->k != 1)
    throw input_error("supersingularity test needs a prime field model");
  long long p = E->field->p;
  long long ap = trace_of_frobenius(E, cap);
  bool ss = (ap % p == 0);
  if (p >= 5 && p <= cap / p) {
    CurvePtr E2 = base_change(E, FieldDescriptor::finite(p, 2));
    long long n2 = count_points(E2, cap);
    bool in_set = (n2 == (p - 1) * (p - 1)) || (n2 == (p + 1) * (p + 1));
    if (in_set != ss)
      throw internal_error("supersingular criteria disagree");
  }
  return ss;
}

std::vector<CurvePoint> all_points(const CurvePtr& E, long long cap) {
  long long q = require_counted_field(E, cap);
  const FieldPtr& f = E->field;
  std::vector<CurvePoint> pts;
  pts.push_back(point_infinity(E));
  if (f->p == 2) {
    if (q > 4096)
      throw unsupported_error("point enumeration in characteristic 2 is capped");
    for (long long xi = 0; xi < q; ++xi) {
      FieldElement x = fe_at_index(f, mpz_of(xi));
      for (long long yi = 0; yi < q; ++yi) {
        FieldElement y = fe_at_index(f, mpz_of(yi));
        if (point_on_curve(E, x, y)) pts.push_back(point_make(E, x, y));
      }
    }
    return pts;
  }
  FieldElement half = fe_inv(fe_int(f, 2));
  for (long long xi = 0; xi < q; ++xi) {
    FieldElement x = fe_at_index(f, mpz_of(xi));
    FieldElement L = E->a1 * x + E->a3;
    FieldElement rhs = ((x + E->a2) * x + E->a4) * x + E->a6;
    FieldElement d = L * L + scale_int(rhs, 4);
    if (d.is_zero()) {
      pts.push_back(point_make(E, x, fe_neg(L) * half));
    } else if (fe_is_square(d)) {
      FieldElement s = fe_sqrt(d);
      FieldElement y1 = (fe_neg(L) + s) * half;
      FieldElement y2 = (fe_neg(L) - s) * half;
      if (fe_cmp(y2, y1) < 0) std::swap(y1, y2);
      pts.push_back(point_make(E, x, y1));
      pts.push_back(point_make(E, x, y2));
    }
  }
  return pts;
}

CurvePtr base_change(const CurvePtr& E, const FieldPtr& big) {
  if (E->field->same(*big)) return E;
  if (!E->field->is_finite() || !big->is_finite() || E->field->p != big->p ||
      big->k % E->field->k != 0)
    throw input_error("base change needs a compatible field extension");
  return make_curve(big, E->short_form, fe_embed(E->a1, big),
                    fe_embed(E->a2, big), fe_embed(E->a3, big),
                    fe_embed(E->a4, big), fe_embed(E->a6, big));
}

CurvePtr reduce_mod_p(const CurvePtr& E, const FieldPtr& fp) {
  if (!E->field->is_rationals())
    throw input_error("reduction starts from a curve over Q");
  if (!fp->is_finite()) throw input_error("reduction target must be finite");
  auto red = [&](const FieldElement& a) {
    if (a.rat.get_den() != 1)
      throw input_error("reduction needs integral coefficients");
    return fe_from_mpz(fp, a.rat.get_num());
  };
  return make_curve(fp, E->short_form, red(E->a1), red(E->a2), red(E->a3),
                    red(E->a4), red(E->a6));
}

CurvePoint ShortModel::to_short(const CurvePoint& P) const {
  if (P.infinity) return point_infinity(curve);
  return point_make(curve, P.x + r, P.y + s1 * P.x + s3);
}

CurvePoint ShortModel::from_short(const CurvePoint& P) const {
  if (P.infinity)
    throw input_error("from_short needs the source curve for infinity");
  FieldElement x = P.x - r;
  FieldElement y = P.y - s1 * x - s3;
  return CurvePoint{nullptr, false, std::move(x), std::move(y)};
}

ShortModel short_model(const CurvePtr& E) {
  ShortModel sm;
  if (E->short_form) {
    sm.curve = E;
    sm.r = fe_zero(E->field);
    sm.s1 = fe_zero(E->field);
    sm.s3 = fe_zero(E->field);
    return sm;
  }
  if (!six_invertible(E->field))
    throw unsupported_error("short model needs 6 invertible in the field");
  const FieldPtr& f = E->field;
  CurveInvariants inv = curve_invariants(E);
  FieldElement A = fe_div(-inv.c4, fe_int(f, 48));
  FieldElement B = fe_div(-inv.c6, fe_int(f, 864));
  sm.curve = EllipticCurve::make_short(f, A, B);
  sm.r = fe_div(inv.b2, fe_int(f, 12));
  FieldElement half = fe_inv(fe_int(f, 2));
  sm.s1 = E->a1 * half;
  sm.s3 = E->a3 * half;
  return sm;
}

namespace {

struct DP {
  EPoly a;
  bool wy = false;
};

DP dp_mul(const DP& u, const DP& v, const EPoly& fc) {
  DP r{ep_mul(u.a, v.a), false};
  if (u.wy && v.wy)
    r.a = ep_mul(r.a, fc);
  else
    r.wy = u.wy || v.wy;
  if (r.a.is_zero()) r.wy = false;
  return r;
}

DP dp_sub(const DP& u, const DP& v) {
  if (!u.a.is_zero() && !v.a.is_zero() && u.wy != v.wy)
    throw internal_error("division polynomial parity mismatch");
  DP r{ep_sub(u.a, v.a), u.a.is_zero() ? v.wy : u.wy};
  if (r.a.is_zero()) r.wy = false;
  return r;
}

EPoly cubic_rhs(const CurvePtr& E) {
  const FieldPtr& f = E->field;
  return EPoly::from_coeffs(f, {E->a6, E->a4, fe_zero(f), fe_one(f)});
}

std::vector<DP> dp_table(const CurvePtr& E, int n, int cap) {
  if (!E->short_form)
    throw unsupported_error("division polynomials need a short model");
  if (E->field->is_finite() && (E->field->p == 2 || E->field->p == 3))
    throw unsupported_error("division polynomials need characteristic > 3");
  if (n < 1) throw input_error("division polynomial index must be >= 1");
  if (n > cap) throw resource_error("division polynomial index exceeds cap");
  const FieldPtr& f = E->field;
  const FieldElement& A = E->a4;
  const FieldElement& B = E->a6;
  EPoly fc = cubic_rhs(E);
  auto c = [&](long long v) { return fe_int(f, v); };
  std::vector<DP> tab(static_cast<size_t>(std::max(n, 4)) + 1);
  tab[0] = {EPoly::zero(f), false};
  tab[1] = {EPoly::constant(fe_one(f)), false};
  tab[2] = {EPoly::constant(c(2)), true};
  tab[3] = {EPoly::from_coeffs(
                f, {-(A * A), scale_int(B, 12), scale_int(A, 6), fe_zero(f),
                    c(3)}),
            false};
  tab[4] = {EPoly::from_coeffs(
                f, {-(scale_int(A * A * A, 4) + scale_int(B * B, 32)),
                    -scale_int(A * B, 16), -scale_int(A * A, 20),
                    scale_int(B, 80), scale_int(A, 20), fe_zero(f), c(4)}),
            true};
  for (int i = 5; i <= n; ++i) {
    int m = i / 2;
    if (i % 2 == 1) {
      DP m3 = dp_mul(dp_mul(tab[m], tab[m], fc), tab[m], fc);
      DP p3 = dp_mul(dp_mul(tab[m + 1], tab[m + 1], fc), tab[m + 1], fc);
      tab[i] = dp_sub(dp_mul(tab[m + 2], m3, fc), dp_mul(tab[m - 1], p3, fc));
    } else {
      DP t1 = dp_mul(tab[m + 2], dp_mul(tab[m - 1], tab[m - 1], fc), fc);
      DP t2 = dp_mul(tab[m - 2], dp_mul(tab[m + 1], tab[m + 1], fc), fc);
      DP rhs = dp_mul(tab[m], dp_sub(t1, t2), fc);
      if (rhs.wy) throw internal_error("division polynomial parity mismatch");
      tab[i] = {ep_exact_div(rhs.a, ep_scale(fc, c(2))), true};
    }
    if (!tab[i].a.is_zero() && tab[i].wy != (i % 2 == 0))
      throw internal_error("division polynomial parity mismatch");
  }
  return tab;
}

}  // namespace

DivisionPolynomial division_polynomial(const CurvePtr& E, int n, int cap) {
  auto tab = dp_table(E, n, cap);
  return DivisionPolynomial{tab[static_cast<size_t>(n)].a,
                            tab[static_cast<size_t>(n)].wy};
}

EPoly torsion_xpoly(const CurvePtr& E, int n, int cap) {
  if (n < 2) throw input_error("torsion polynomial needs n >= 2");
  auto tab = dp_table(E, n, cap);
  if (n % 2 == 1) return tab[static_cast<size_t>(n)].a;
  return ep_mul(cubic_rhs(E), tab[static_cast<size_t>(n)].a);
}

std::vector<CurvePoint> torsion_points(const CurvePtr& E, int N,
                                       long long count_cap) {
  if (!E->field->is_finite())
    throw input_error("torsion enumeration needs a finite field");
  if (N < 1) throw input_error("torsion level must be positive");
  std::vector<CurvePoint> pts;
  pts.push_back(point_infinity(E));
  if (N == 1) return pts;
  if (N % E->field->p == 0)
    throw input_error("torsion level shares the field characteristic");
  if (E->field->p >= 5) {
    ShortModel sm = short_model(E);
    EPoly h = torsion_xpoly(sm.curve, N);
    EPoly fc = cubic_rhs(sm.curve);
    std::vector<CurvePoint> shorts;
    for (const FieldElement& x0 : ep_roots(h)) {
      FieldElement v = ep_eval(fc, x0);
      if (v.is_zero()) {
        shorts.push_back(point_make(sm.curve, x0, fe_zero(E->field)));
      } else if (fe_is_square(v)) {
        FieldElement s = fe_sqrt(v);
        shorts.push_back(point_make(sm.curve, x0, s));
        shorts.push_back(point_make(sm.curve, x0, fe_neg(s)));
      }
    }
    for (const CurvePoint& S : shorts) {
      CurvePoint raw = sm.from_short(S);
      pts.push_back(point_make(E, raw.x, raw.y));
    }
  } else {
    for (const CurvePoint& P : all_points(E, count_cap)) {
      if (!P.infinity && scalar_mul(N, P).infinity) pts.push_back(P);
    }
  }
  std::sort(pts.begin(), pts.end(),
            [](const CurvePoint& a, const CurvePoint& b) {
              return point_cmp(a, b) < 0;
            });
  return pts;
}

namespace {

std::vector<long long> prime_divisors(long long n) {
  std::vector<long long> ps;
  for (long long d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      ps.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

std::pair<CurvePoint, CurvePoint> canonical_basis(
    const std::vector<CurvePoint>& pts, int N) {
  std::vector<long long> ell = prime_divisors(N);
  auto exact_order_n = [&](const CurvePoint& P) {
    if (P.infinity) return false;
    if (!scalar_mul(static_cast<long long>(N), P).infinity) return false;
    for (long long l : ell)
      if (scalar_mul(N / l, P).infinity) return false;
    return true;
  };
  const CurvePoint* P0 = nullptr;
  for (const CurvePoint& P : pts) {
    if (exact_order_n(P)) {
      P0 = &P;
      break;
    }
  }
  if (!P0) throw internal_error("no point of exact order in torsion set");
  std::set<std::string> line;
  CurvePoint R = point_infinity(P0->curve);
  for (int i = 0; i < N; ++i) {
    line.insert(point_to_text(R));
    R = add_points(R, *P0);
  }
  for (const CurvePoint& Q : pts) {
    if (!exact_order_n(Q)) continue;
    bool spans = true;
    for (long long l : ell) {
      if (line.count(point_to_text(scalar_mul(N / l, Q)))) {
        spans = false;
        break;
      }
    }
    if (spans) return {*P0, Q};
  }
  throw internal_error("no basis completion in torsion set");
}

}  // namespace

std::pair<CurvePoint, CurvePoint> torsion_basis_over(const CurvePtr& E, int N,
                                                     long long count_cap) {
  std::vector<CurvePoint> pts = torsion_points(E, N, count_cap);
  if (pts.size() != static_cast<size_t>(N) * static_cast<size_t>(N))
    throw membership_error("torsion is not fully rational over this field");
  return canonical_basis(pts, N);
}

TorsionBasis torsion_basis(const CurvePtr& E, int N, const TorsionOptions& opt) {
  if (!E->field->is_finite() || E->field->k != 1)
    throw input_error("torsion basis search starts from a prime field model");
  if (N < 2) throw input_error("torsion level must be at least 2");
  if (N > opt.n_cap) throw resource_error("torsion level exceeds cap");
  long long p = E->field->p;
  if (N % p == 0)
    throw input_error("torsion level shares the field characteristic");
  mpz_class NN = mpz_of(static_cast<long long>(N) * N);
  for (int k = 1; k <= opt.k_max; ++k) {
    mpz_class qk;
    mpz_class pz = mpz_of(p);
    mpz_pow_ui(qk.get_mpz_t(), pz.get_mpz_t(), static_cast<unsigned long>(k));
    if (qk % mpz_of(static_cast<long long>(N)) != 1) continue;
    TracePower tp = trace_power(E, k, opt.count_cap);
    if (tp.count % NN != 0) continue;
    FieldPtr F = FieldDescriptor::finite(p, k);
    CurvePtr Ek = base_change(E, F);
    std::vector<CurvePoint> pts = torsion_points(Ek, N, opt.count_cap);
    if (pts.size() != static_cast<size_t>(N) * static_cast<size_t>(N)) continue;
    auto [P0, Q0] = canonical_basis(pts, N);
    return TorsionBasis{k, F, Ek, P0, Q0};
  }
  throw resource_error("torsion field degree exceeds the search cap");
}

const std::vector<std::string>& registry_names() {
  static const std::vector<std::string> names = {"105a2-min", "105a2-red",
                                                 "KO-A", "KO-B"};
  return names;
}

CurvePtr registry_curve(const std::string& name) {
  FieldPtr Q = FieldDescriptor::rationals();
  if (name == "105a2-min")
    return EllipticCurve::make_long_int(Q, 1, 0, 1, -8, -7);
  if (name == "105a2-red")
    return EllipticCurve::make_short_int(Q, -9747, -285714);
  if (name == "KO-A") return EllipticCurve::make_long_int(Q, 0, 7, 0, 0, 28);
  if (name == "KO-B") return EllipticCurve::make_long_int(Q, 0, 1, 0, -1, 3);
  throw input_error("unknown registry curve: " + name);
}

}  // namespace levellab
