#include "levellab/galois_ring.hpp"

#include <sstream>

#include "levellab/errors.hpp"
#include "levellab/fppoly.hpp"

namespace levellab {

namespace {

long long pow_ll(long long b, int e) {
  long long r = 1;
  for (int i = 0; i < e; i++) {
    if (r > (1ll << 40) / b) throw input_error("galois ring: p^r too large");
    r *= b;
  }
  return r;
}

inline long long norm(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

fpp::Poly nth_irreducible_quadratic(long long p, int skip) {
  // monic quadratics in the same lexicographic coefficient order used by
  // find_irreducible
  for (long long c0 = 0; c0 < p; c0++)
    for (long long c1 = 0; c1 < p; c1++) {
      fpp::Poly f{c0, c1, 1};
      if (fpp::is_irreducible(f, p)) {
        if (skip == 0) return f;
        skip--;
      }
    }
  throw input_error("galois ring: no irreducible quadratic available");
}

}  // namespace

GaloisRingPtr GaloisRingDescriptor::make(long long p, int r) {
  fpp::Poly h = nth_irreducible_quadratic(p, 0);
  return make_with_modulus(p, r, h[0], h[1]);
}

GaloisRingPtr GaloisRingDescriptor::make_alternative(long long p, int r) {
  if (p == 2) {
    fpp::Poly h = nth_irreducible_quadratic(p, 0);
    long long pr = pow_ll(p, r);
    return make_with_modulus(p, r, norm(h[0] + p, pr), norm(h[1] + p, pr));
  }
  fpp::Poly h = nth_irreducible_quadratic(p, 1);
  return make_with_modulus(p, r, h[0], h[1]);
}

GaloisRingPtr GaloisRingDescriptor::make_with_modulus(long long p, int r,
                                                      long long h0,
                                                      long long h1) {
  if (p < 2 || r < 1) throw input_error("galois ring: need p >= 2, r >= 1");
  for (long long d = 2; d * d <= p; d++)
    if (p % d == 0) throw input_error("galois ring: p must be prime");
  auto d = std::make_shared<GaloisRingDescriptor>();
  d->p = p;
  d->r = r;
  d->pr = pow_ll(p, r);
  d->h0 = norm(h0, d->pr);
  d->h1 = norm(h1, d->pr);
  fpp::Poly hbar{norm(h0, p), norm(h1, p), 1};
  if (!fpp::is_irreducible(hbar, p))
    throw input_error("galois ring: modulus reduction is reducible");
  return d;
}

bool GaloisRingDescriptor::same(const GaloisRingDescriptor& o) const {
  return p == o.p && r == o.r && h0 == o.h0 && h1 == o.h1;
}

std::string GaloisRingDescriptor::describe() const {
  std::ostringstream os;
  os << "GR(" << p << "^" << r << ";u^2+" << h1 << "u+" << h0 << ")";
  return os.str();
}

namespace {
void check_same(const GaloisRingElement& a, const GaloisRingElement& b) {
  if (a.R.get() == b.R.get()) return;
  if (!a.R || !b.R || !a.R->same(*b.R))
    throw input_error("galois ring: operands live in different rings");
}
}  // namespace

GaloisRingElement gr_make(const GaloisRingPtr& R, long long c0, long long c1) {
  GaloisRingElement e;
  e.R = R;
  e.c0 = norm(c0, R->pr);
  e.c1 = norm(c1, R->pr);
  return e;
}

GaloisRingElement gr_zero(const GaloisRingPtr& R) { return gr_make(R, 0, 0); }
GaloisRingElement gr_one(const GaloisRingPtr& R) { return gr_make(R, 1, 0); }

GaloisRingElement gr_add(const GaloisRingElement& a, const GaloisRingElement& b) {
  check_same(a, b);
  return gr_make(a.R, a.c0 + b.c0, a.c1 + b.c1);
}

GaloisRingElement gr_sub(const GaloisRingElement& a, const GaloisRingElement& b) {
  check_same(a, b);
  return gr_make(a.R, a.c0 - b.c0, a.c1 - b.c1);
}

GaloisRingElement gr_mul(const GaloisRingElement& a, const GaloisRingElement& b) {
  check_same(a, b);
  long long m = a.R->pr;
  long long t2 = norm((__int128)a.c1 * b.c1 % m, m);
  long long t1 = norm(((__int128)a.c0 * b.c1 + (__int128)a.c1 * b.c0) % m, m);
  long long t0 = norm((__int128)a.c0 * b.c0 % m, m);
  // u^2 = -h1 u - h0
  long long c0 = norm(t0 - (__int128)t2 * a.R->h0 % m, m);
  long long c1 = norm(t1 - (__int128)t2 * a.R->h1 % m, m);
  return gr_make(a.R, c0, c1);
}

GaloisRingElement gr_neg(const GaloisRingElement& a) {
  return gr_make(a.R, -a.c0, -a.c1);
}

GaloisRingElement gr_scale(const GaloisRingElement& a, long long s) {
  s = norm(s, a.R->pr);
  return gr_make(a.R, (__int128)a.c0 * s % a.R->pr,
                 (__int128)a.c1 * s % a.R->pr);
}

bool gr_eq(const GaloisRingElement& a, const GaloisRingElement& b) {
  check_same(a, b);
  return a.c0 == b.c0 && a.c1 == b.c1;
}

GaloisRingElement gr_frobenius(const GaloisRingElement& a) {
  // u |-> -h1 - u
  long long m = a.R->pr;
  long long c0 = norm(a.c0 - (__int128)a.c1 * a.R->h1 % m, m);
  long long c1 = norm(-a.c1, m);
  return gr_make(a.R, c0, c1);
}

bool gr_is_unit(const GaloisRingElement& a) {
  return a.c0 % a.R->p != 0 || a.c1 % a.R->p != 0;
}

GaloisRingElement gr_inv(const GaloisRingElement& a) {
  if (!gr_is_unit(a)) throw arithmetic_error("galois ring: not a unit");
  // norm N(a) = a * frob(a) lies in Z/p^r and is a unit there
  GaloisRingElement conj = gr_frobenius(a);
  GaloisRingElement n = gr_mul(a, conj);
  if (n.c1 != 0) throw internal_error("galois ring: norm not scalar");
  long long m = a.R->pr;
  // invert n.c0 mod p^r by lifting the mod-p inverse
  long long inv = fpp::mod_inv(norm(n.c0, a.R->p), a.R->p);
  // Hensel: x -> x(2 - nx) doubles precision
  long long prec = a.R->p;
  while (prec < m) {
    prec = prec * prec > m ? m : prec * prec;
    __int128 nx = (__int128)norm(n.c0, prec) * inv % prec;
    inv = norm((__int128)inv * norm((long long)(2 - (long long)nx), prec) % prec, prec);
  }
  return gr_scale(conj, inv);
}

long long gr_index(const GaloisRingElement& a) {
  return a.c0 + a.c1 * a.R->pr;
}

GaloisRingElement gr_at_index(const GaloisRingPtr& R, long long index) {
  if (index < 0 || index >= R->pr * R->pr)
    throw input_error("galois ring: index out of range");
  return gr_make(R, index % R->pr, index / R->pr);
}

std::string gr_to_text(const GaloisRingElement& a) {
  std::ostringstream os;
  os << a.c0 << "," << a.c1;
  return os.str();
}

}  // namespace levellab
