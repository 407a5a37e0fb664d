#pragma once

#include <optional>
#include <vector>

#include "levellab/pairing.hpp"
#include "levellab/rng.hpp"

namespace levellab {

struct MatrixModN {
  long long N = 1;
  long long a = 0, b = 0, c = 0, d = 0;  // row-major [[a,b],[c,d]]
};

MatrixModN mat_make(long long N, long long a, long long b, long long c, long long d);
MatrixModN mat_identity(long long N);
MatrixModN mat_scalar(long long N, long long n);
MatrixModN mat_mul(const MatrixModN& x, const MatrixModN& y);
MatrixModN mat_pow(const MatrixModN& x, long long e);
MatrixModN mat_inv(const MatrixModN& x);
long long mat_det(const MatrixModN& x);
long long mat_trace(const MatrixModN& x);
bool mat_eq(const MatrixModN& x, const MatrixModN& y);
bool mat_is_unit(const MatrixModN& x);
std::string mat_to_text(const MatrixModN& x);  // "a,b;c,d"
std::vector<MatrixModN> gl2_elements(long long N);

// Level-structure datum (E, (P,Q), C): a basis of E[N] plus an optional
// cyclic subgroup of order m coprime to N, all rational over the working
// field of the curve.
struct ModuliPoint {
  CurvePtr curve;
  int N = 3;
  CurvePoint P, Q;
  bool has_gamma0 = false;
  CyclicSubgroup C;

  long long m() const { return has_gamma0 ? C.order : 1; }
};

ModuliPoint make_moduli_point(const CurvePtr& E, int N, CurvePoint P, CurvePoint Q);
ModuliPoint make_moduli_point(const CurvePtr& E, int N, CurvePoint P, CurvePoint Q,
                              CyclicSubgroup C);
void validate_moduli_point(const ModuliPoint& M);

// dlog of e_N(P,Q) against the canonical primitive N-th root of the working
// field; always a unit mod N.
long long det_index(const ModuliPoint& M);

ModuliPoint act_unit(long long n, const ModuliPoint& M);
ModuliPoint act_gl2(const MatrixModN& g, const ModuliPoint& M);

// D_{d,t}: quotient by the standard order-d subgroup of C, push the basis,
// keep the standard order-t subgroup of the image of C.
ModuliPoint degeneracy(long long d, long long t, const ModuliPoint& M);

// w_d: quotient by C[d]; the new subgroup is generated by a generator of the
// dual kernel plus the image of the prime-to-d part of C.
ModuliPoint atkin_lehner(long long d, const ModuliPoint& M);

MatrixModN frobenius_matrix(const ModuliPoint& M, long long q0);

struct IsoWitness {
  bool isomorphic = false;
  FieldElement u;
};
IsoWitness isomorphic(const ModuliPoint& M1, const ModuliPoint& M2);

struct EnumerateOptions {
  long long q_cap = 256;
  long long count_cap = kDefaultCountCap;
};
std::vector<ModuliPoint> enumerate_points(int N, long long m, const FieldPtr& f,
                                          const EnumerateOptions& opt = {});

struct SampleOptions {
  int k_cap = 12;
  long long count_cap = kDefaultCountCap;
};
// One random (E,(P,Q),C) over an extension of F_p where E[N] (and E[m]) are
// fully rational; nullopt when the sampled curve needs a larger extension.
std::optional<ModuliPoint> sample_moduli_point(SplitMix64& rng, long long p,
                                               int N, long long m,
                                               const SampleOptions& opt = {});

}  // namespace levellab
