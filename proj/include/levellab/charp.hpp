#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "levellab/field.hpp"
#include "levellab/galois_ring.hpp"

namespace levellab {

// Endomorphism of mu_N x Z/N in matrix form [[a, b],[c, d]]: a and d act on
// the diagonal factors, b is the mu_N entry Hom(Z/N, mu_N), c the dual-hom
// entry Hom(mu_N, Z/N) read as an exponent through zeta_ref.  Over F_q with
// q = 1 mod N every entry carries content; in the p-nilpotent model
// (N = p^r in residue characteristic p) the dual hom vanishes, so c = 0, and
// b is kept as a formal exponent of the rank-N coordinate model of mu_N.
struct TriangularEndo {
  long long N = 0;
  bool nilpotent = false;
  FieldPtr field;       // F_q tag only
  long long a = 0, d = 0;
  FieldElement b;       // F_q tag: an N-th root of unity
  long long b_exp = 0;  // p-nilpotent tag
  long long c = 0;      // always 0 in the p-nilpotent tag
};

TriangularEndo endo_make(const FieldPtr& f, long long N, long long a,
                         const FieldElement& b, long long c, long long d);
TriangularEndo endo_make_nilpotent(long long p, int r, long long a,
                                   long long b_exp, long long d);
TriangularEndo endo_identity(const FieldPtr& f, long long N);
TriangularEndo endo_identity_nilpotent(long long p, int r);
bool endo_eq(const TriangularEndo& x, const TriangularEndo& y);

// x after y, multiplying the matrices with the off-diagonal products read
// through the b1 = b2 pairing.
TriangularEndo endo_compose(const TriangularEndo& x, const TriangularEndo& y);

long long endo_b_exponent(const TriangularEndo& x);  // dlog of b at zeta_ref
long long endo_det(const TriangularEndo& x);         // ad - bc in Z/N

// Explicit inverse det^{-1} * [[d, -b],[-c, a]] when det is a unit.
std::optional<TriangularEndo> endo_inverse(const TriangularEndo& x);

// All N^4 endomorphisms over F_q (a, c, d in Z/N and b in mu_N).
std::vector<TriangularEndo> enumerate_endos(const FieldPtr& f, long long N);

// Smallest prime power q = 1 mod N, as a field.
FieldPtr smallest_mu_field(long long N);

struct PairingCheckReport {
  long long N = 0;
  long long q = 0;
  long long pairs_checked = 0;
  bool all_equal = false;
};

// For every u in mu_N(F_q) and every hom v: mu_N -> Z/N, compares the value
// v(u) with the exponent e of the composite w |-> u^{v(w)} as an
// endomorphism of mu_N, the exponent being recovered by exhaustive matching.
PairingCheckReport pairing_equality_check(const FieldPtr& f, long long N);

// Counts invertible p-nilpotent endomorphisms over the rank-N coordinate
// model by brute-force two-sided inverse search over all N^3 of them; the
// expected value is N * phi(N)^2.
long long ordinary_aut_count(long long p, int r);

// a + b*Pi over the rank-2 Galois ring, with Pi^2 = p and Pi x = frob(x) Pi.
struct QuaternionElement {
  GaloisRingElement a, b;
};

QuaternionElement quat_make(const GaloisRingElement& a, const GaloisRingElement& b);
QuaternionElement quat_one(const GaloisRingPtr& R);
QuaternionElement quat_pi(const GaloisRingPtr& R);
QuaternionElement quat_mul(const QuaternionElement& x, const QuaternionElement& y);
bool quat_eq(const QuaternionElement& x, const QuaternionElement& y);
bool quat_is_unit(const QuaternionElement& x);  // iff a is a unit
QuaternionElement quat_conjugate(const QuaternionElement& x);
long long quat_reduced_norm(const QuaternionElement& x);  // a frob(a) - p b frob(b)
std::optional<QuaternionElement> quat_inverse(const QuaternionElement& x);
long long quat_index(const QuaternionElement& x);  // in [0, p^{4r})
QuaternionElement quat_at_index(const GaloisRingPtr& R, long long index);
std::string quat_to_text(const QuaternionElement& x);

// 2x2 matrix [[frob(a), b],[p frob(b), a]] over the Galois ring; this
// represents the opposite ring, so matrix(x y) = matrix(y) matrix(x), the
// identity maps to the identity and Pi to [[0, 1],[p, 0]].
std::array<GaloisRingElement, 4> dieudonne_matrix(const QuaternionElement& x);

struct QuaternionQuotient {
  long long p = 0;
  int r = 0;
  long long elements = 0;  // p^{4r}
  long long units = 0;     // invertible a
  long long kernel = 0;    // |{1 + p^{r-1} beta Pi}|, expected p^2
  long long quotient = 0;  // units / kernel
};

// Brute-force census of the quotient of the unit group by the normal
// subgroup {1 + p^{r-1} beta Pi}; subgroup closure, normality and exact
// divisibility are verified during the enumeration.
QuaternionQuotient quaternion_quotient_count(long long p, int r,
                                             long long cap = 10000000);
QuaternionQuotient quaternion_quotient_count_over(const GaloisRingPtr& R,
                                                  long long cap = 10000000);

// All supersingular j-invariants in F_{p^2}, sorted by element index.  For
// p = 2, 3 this is an exhaustive census over curve models; for p >= 5 each
// j gets the standard curve with that invariant and the F_{p^2} point-count
// test.  Every j in F_{p^2} is tested independently, so Frobenius stability
// of the output is a checkable property rather than a construction artifact.
std::vector<FieldElement> supersingular_j_enumeration(long long p,
                                                      long long cap = 200);

struct SsComponentCensus {
  long long p = 0;
  int r = 0;
  long long structure_size = 0;
  long long curve_count = 0;
  long long quotient = 0;
  long long upper_bound = 0;   // curve_count * structure_size * quotient
  // true when some supersingular j is 0 or 1728, where extra automorphisms
  // can fold distinct local classes into one component
  bool aut_ambiguous = false;
};

SsComponentCensus ss_component_census(long long p, int r, long long structure_size);

}  // namespace levellab
