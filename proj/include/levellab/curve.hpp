#pragma once

#include <memory>
#include <string>
#include <vector>

#include "levellab/field.hpp"
#include "levellab/upoly.hpp"

namespace levellab {

struct EllipticCurve;
using CurvePtr = std::shared_ptr<const EllipticCurve>;

// Long Weierstrass model y^2 + a1*xy + a3*y = x^3 + a2*x^2 + a4*x + a6.
// Short models keep a1 = a2 = a3 = 0 and require 6 invertible in the field.
// Construction rejects singular models (disc = 0).
struct EllipticCurve {
  FieldPtr field;
  bool short_form = false;
  FieldElement a1, a2, a3, a4, a6;

  static CurvePtr make_long(const FieldPtr& f, FieldElement a1, FieldElement a2,
                            FieldElement a3, FieldElement a4, FieldElement a6);
  static CurvePtr make_short(const FieldPtr& f, FieldElement A, FieldElement B);
  static CurvePtr make_long_int(const FieldPtr& f, long long a1, long long a2,
                                long long a3, long long a4, long long a6);
  static CurvePtr make_short_int(const FieldPtr& f, long long A, long long B);
};

bool curve_same(const CurvePtr& a, const CurvePtr& b);
std::string curve_to_text(const CurvePtr& E);

// Coefficient text is a flat comma list of scalars: 5*k values for a long
// model, 2*k for a short one (k = 1 over Q and prime fields).
CurvePtr parse_curve(const FieldPtr& f, bool short_form, const std::string& coeffs);

// "Q" | "Fp:<p>" | "Fq:<p>^<k>"
FieldPtr parse_field_selector(const std::string& text);
std::string format_field_selector(const FieldPtr& f);

struct CurveInvariants {
  FieldElement b2, b4, b6, b8, c4, c6, disc, j;
};
CurveInvariants curve_invariants(const CurvePtr& E);

struct CurvePoint {
  CurvePtr curve;
  bool infinity = true;
  FieldElement x, y;
};

CurvePoint point_infinity(const CurvePtr& E);
CurvePoint point_make(const CurvePtr& E, FieldElement x, FieldElement y);
bool point_on_curve(const CurvePtr& E, const FieldElement& x, const FieldElement& y);
bool point_eq(const CurvePoint& P, const CurvePoint& Q);
int point_cmp(const CurvePoint& P, const CurvePoint& Q);
CurvePoint point_neg(const CurvePoint& P);
CurvePoint add_points(const CurvePoint& P, const CurvePoint& Q);
CurvePoint sub_points(const CurvePoint& P, const CurvePoint& Q);
CurvePoint scalar_mul(const mpz_class& n, const CurvePoint& P);
CurvePoint scalar_mul(long long n, const CurvePoint& P);
std::string point_to_text(const CurvePoint& P);
CurvePoint point_parse(const CurvePtr& E, const std::string& text);

// Coordinate-wise p^j power; fixes the curve when its coefficients lie in the
// degree-j subfield.
CurvePoint frobenius_point(const CurvePoint& P, int j);

// Move a point between presentations of the same curve over nested fields.
CurvePoint point_embed(const CurvePoint& P, const CurvePtr& big);
CurvePoint point_coerce(const CurvePoint& P, const CurvePtr& small);

// Smallest d | n with d*P = infinity, or 0 if n*P != infinity.
long long point_order_dividing(const CurvePoint& P, long long n);

inline constexpr long long kDefaultCountCap = 1000000;

long long count_points(const CurvePtr& E, long long cap = kDefaultCountCap);
long long trace_of_frobenius(const CurvePtr& E, long long cap = kDefaultCountCap);

struct TracePower {
  mpz_class trace;
  mpz_class count;
};
// a_{q^k} and #E(F_{q^k}) from the base-field trace via the standard
// second-order recurrence.
TracePower trace_power(const CurvePtr& E, int k, long long cap = kDefaultCountCap);

bool is_supersingular(const CurvePtr& E, long long cap = kDefaultCountCap);

// Infinity first, then x ascending in field index order, y ascending.
std::vector<CurvePoint> all_points(const CurvePtr& E, long long cap = kDefaultCountCap);

CurvePtr base_change(const CurvePtr& E, const FieldPtr& big);
CurvePtr reduce_mod_p(const CurvePtr& E, const FieldPtr& fp);

// Isomorphism (x,y) -> (x + r, y + s1*x + s3) onto y^2 = x^3 + Ax + B.
struct ShortModel {
  CurvePtr curve;
  FieldElement r, s1, s3;

  CurvePoint to_short(const CurvePoint& P) const;
  CurvePoint from_short(const CurvePoint& P) const;
};
ShortModel short_model(const CurvePtr& E);

// psi_n as xpart(x) when with_y is false, xpart(x)*y when true.
struct DivisionPolynomial {
  EPoly xpart;
  bool with_y = false;
};
inline constexpr int kDefaultDivisionCap = 50;
DivisionPolynomial division_polynomial(const CurvePtr& E, int n,
                                       int cap = kDefaultDivisionCap);
// Separable polynomial whose roots are the x-coordinates of the nonzero
// points killed by n (short model, n >= 2).
EPoly torsion_xpoly(const CurvePtr& E, int n, int cap = kDefaultDivisionCap);

// All points of E(F_q) killed by N, deterministic order; possibly fewer than
// N^2 when the torsion is not fully rational.
std::vector<CurvePoint> torsion_points(const CurvePtr& E, int N,
                                       long long count_cap = kDefaultCountCap);

struct TorsionBasis {
  int k = 1;
  FieldPtr field;
  CurvePtr curve;
  CurvePoint P, Q;
};

struct TorsionOptions {
  int k_max = 36;
  int n_cap = kDefaultDivisionCap;
  long long count_cap = kDefaultCountCap;
};

// Basis of E[N] over the smallest extension of the (prime) base field where
// the torsion is fully rational; deterministic point selection.
TorsionBasis torsion_basis(const CurvePtr& E, int N, const TorsionOptions& opt = {});
// Canonical basis over a fixed field already known to contain E[N].
std::pair<CurvePoint, CurvePoint> torsion_basis_over(const CurvePtr& E, int N,
                                                     long long count_cap = kDefaultCountCap);

const std::vector<std::string>& registry_names();
CurvePtr registry_curve(const std::string& name);

}  // namespace levellab
