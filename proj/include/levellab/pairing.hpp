#pragma once

#include <vector>

#include "levellab/curve.hpp"

namespace levellab {

// Cyclic subgroup presented by a generator of exact order m; the order must
// be invertible in the base field.
struct CyclicSubgroup {
  CurvePtr curve;
  CurvePoint generator;
  long long order = 1;
};

CyclicSubgroup make_cyclic_subgroup(const CurvePoint& gen, long long m);
CyclicSubgroup trivial_subgroup(const CurvePtr& E);
std::vector<CurvePoint> subgroup_points(const CyclicSubgroup& C);
bool subgroup_contains(const CyclicSubgroup& C, const CurvePoint& P);
bool subgroup_eq(const CyclicSubgroup& a, const CyclicSubgroup& b);
CyclicSubgroup standard_subgroup(const CyclicSubgroup& C, long long d);

// Miller two-function evaluation with a deterministic auxiliary point; the
// value is an N-th root of unity, bilinear and alternating in (P,Q).
FieldElement weil_pairing(long long N, const CurvePoint& P, const CurvePoint& Q);

struct Isogeny {
  CurvePtr domain;
  CurvePtr codomain;
  long long degree = 1;
  std::vector<CurvePoint> kernel_points;  // sorted, includes infinity
};

Isogeny identity_isogeny(const CurvePtr& E);
// Quotient by a cyclic kernel on a short model in characteristic >= 5.
Isogeny velu_quotient(const CurvePtr& E, const CyclicSubgroup& K);
CurvePoint push_point(const Isogeny& phi, const CurvePoint& P);
CyclicSubgroup push_subgroup(const Isogeny& phi, const CyclicSubgroup& C);

// skip-th curve point in the canonical coordinate order (infinity excluded).
CurvePoint nth_curve_point(const CurvePtr& E, size_t skip);

}  // namespace levellab
