#pragma once

#include <memory>
#include <string>

namespace levellab {

struct GaloisRingDescriptor;
using GaloisRingPtr = std::shared_ptr<const GaloisRingDescriptor>;

// Z/p^r [u] / (h) with h = u^2 + h1*u + h0 monic whose reduction mod p is
// irreducible, i.e. the Galois ring of rank 2 truncated at level r.  The
// default modulus lifts the smallest irreducible quadratic over F_p with
// coefficients taken in [0, p).
struct GaloisRingDescriptor {
  long long p = 0;
  int r = 1;
  long long pr = 0;  // p^r
  long long h0 = 0, h1 = 0;

  static GaloisRingPtr make(long long p, int r);
  // A second modulus for invariance checks: the next irreducible quadratic in
  // the deterministic order (p odd), or the default lift shifted by p (p = 2;
  // at r = 1 this shift is invisible and the rings coincide).
  static GaloisRingPtr make_alternative(long long p, int r);
  static GaloisRingPtr make_with_modulus(long long p, int r, long long h0,
                                         long long h1);

  bool same(const GaloisRingDescriptor& o) const;
  std::string describe() const;
};

struct GaloisRingElement {
  GaloisRingPtr R;
  long long c0 = 0, c1 = 0;

  bool is_zero() const { return c0 == 0 && c1 == 0; }
  bool is_one() const { return c0 == 1 && c1 == 0; }
};

GaloisRingElement gr_make(const GaloisRingPtr& R, long long c0, long long c1);
GaloisRingElement gr_zero(const GaloisRingPtr& R);
GaloisRingElement gr_one(const GaloisRingPtr& R);
GaloisRingElement gr_add(const GaloisRingElement& a, const GaloisRingElement& b);
GaloisRingElement gr_sub(const GaloisRingElement& a, const GaloisRingElement& b);
GaloisRingElement gr_mul(const GaloisRingElement& a, const GaloisRingElement& b);
GaloisRingElement gr_neg(const GaloisRingElement& a);
GaloisRingElement gr_scale(const GaloisRingElement& a, long long s);
bool gr_eq(const GaloisRingElement& a, const GaloisRingElement& b);

// Ring automorphism sending u to the other root of h; reduces to the p-power
// map modulo p and squares to the identity.
GaloisRingElement gr_frobenius(const GaloisRingElement& a);

// Unit iff the residue in F_{p^2} is nonzero.
bool gr_is_unit(const GaloisRingElement& a);
GaloisRingElement gr_inv(const GaloisRingElement& a);

// index in [0, p^{2r}): c0 + c1 * p^r
long long gr_index(const GaloisRingElement& a);
GaloisRingElement gr_at_index(const GaloisRingPtr& R, long long index);

std::string gr_to_text(const GaloisRingElement& a);

}  // namespace levellab
