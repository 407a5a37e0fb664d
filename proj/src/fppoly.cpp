#include "levellab/fppoly.hpp"

#include <algorithm>

#include "levellab/errors.hpp"
#include "levellab/rng.hpp"

namespace levellab::fpp {

namespace {

inline long long mod_mul(long long a, long long b, long long p) {
  return static_cast<long long>((__int128)a * b % p);
}

inline long long norm(long long a, long long p) {
  long long r = a % p;
  return r < 0 ? r + p : r;
}

}  // namespace

long long mod_pow(long long a, long long e, long long p) {
  long long r = 1 % p;
  a = norm(a, p);
  while (e > 0) {
    if (e & 1) r = mod_mul(r, a, p);
    a = mod_mul(a, a, p);
    e >>= 1;
  }
  return r;
}

long long mod_inv(long long a, long long p) {
  a = norm(a, p);
  if (a == 0) throw arithmetic_error("fpp: inverse of zero");
  long long t = 0, new_t = 1, r = p, new_r = a;
  while (new_r != 0) {
    long long q = r / new_r;
    long long tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) throw arithmetic_error("fpp: not invertible");
  return norm(t, p);
}

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int deg(const Poly& f) { return static_cast<int>(f.size()) - 1; }

bool is_zero(const Poly& f) { return f.empty(); }

Poly from_coeffs(std::vector<long long> c, long long p) {
  for (auto& v : c) v = norm(v, p);
  trim(c);
  return c;
}

Poly add(const Poly& a, const Poly& b, long long p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); i++) r[i] = a[i];
  for (size_t i = 0; i < b.size(); i++) r[i] = (r[i] + b[i]) % p;
  trim(r);
  return r;
}

Poly sub(const Poly& a, const Poly& b, long long p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); i++) r[i] = a[i];
  for (size_t i = 0; i < b.size(); i++) r[i] = norm(r[i] - b[i], p);
  trim(r);
  return r;
}

Poly mul(const Poly& a, const Poly& b, long long p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); i++) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); j++)
      r[i + j] = (r[i + j] + (__int128)a[i] * b[j]) % p;
  }
  trim(r);
  return r;
}

Poly scale(const Poly& a, long long s, long long p) {
  s = norm(s, p);
  Poly r(a.size());
  for (size_t i = 0; i < a.size(); i++) r[i] = mod_mul(a[i], s, p);
  trim(r);
  return r;
}

Poly shift(const Poly& a, int k) {
  if (a.empty()) return {};
  Poly r(a.size() + k, 0);
  for (size_t i = 0; i < a.size(); i++) r[i + k] = a[i];
  return r;
}

void divrem(const Poly& a, const Poly& b, long long p, Poly& q, Poly& r) {
  if (b.empty()) throw arithmetic_error("fpp: division by zero polynomial");
  r = a;
  q.assign(a.size() > b.size() ? a.size() - b.size() + 1 : 1, 0);
  long long inv_lc = mod_inv(b.back(), p);
  while (r.size() >= b.size()) {
    long long c = mod_mul(r.back(), inv_lc, p);
    size_t off = r.size() - b.size();
    q[off] = c;
    if (c != 0)
      for (size_t i = 0; i < b.size(); i++)
        r[off + i] = norm(r[off + i] - mod_mul(c, b[i], p), p);
    while (!r.empty() && r.back() == 0) r.pop_back();
    if (r.empty()) break;
  }
  trim(q);
}

Poly rem(const Poly& a, const Poly& b, long long p) {
  Poly q, r;
  divrem(a, b, p, q, r);
  return r;
}

Poly make_monic(const Poly& f, long long p) {
  if (f.empty()) return f;
  return scale(f, mod_inv(f.back(), p), p);
}

Poly gcd(const Poly& a, const Poly& b, long long p) {
  Poly x = a, y = b;
  while (!y.empty()) {
    Poly r = rem(x, y, p);
    x = std::move(y);
    y = std::move(r);
  }
  return make_monic(x, p);
}

long long eval(const Poly& f, long long x, long long p) {
  long long r = 0;
  x = norm(x, p);
  for (size_t i = f.size(); i-- > 0;) r = (mod_mul(r, x, p) + f[i]) % p;
  return r;
}

Poly derivative(const Poly& f, long long p) {
  if (f.size() <= 1) return {};
  Poly r(f.size() - 1);
  for (size_t i = 1; i < f.size(); i++)
    r[i - 1] = mod_mul(f[i], static_cast<long long>(i % p), p);
  trim(r);
  return r;
}

Poly powmod(const Poly& a, const mpz_class& e, const Poly& f, long long p) {
  Poly base = rem(a, f, p);
  Poly r{1 % p};
  trim(r);
  size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  if (e == 0) return r;
  for (size_t i = bits; i-- > 0;) {
    r = rem(mul(r, r, p), f, p);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = rem(mul(r, base, p), f, p);
  }
  return r;
}

Poly frob_power(int j, const Poly& f, long long p) {
  Poly x{0, 1};
  Poly r = rem(x, f, p);
  for (int i = 0; i < j; i++) r = powmod(r, mpz_of(p), f, p);
  return r;
}

bool is_irreducible(const Poly& f, long long p) {
  int k = deg(f);
  if (k <= 0) return false;
  if (k == 1) return true;
  Poly x{0, 1};
  // x^(p^k) == x (mod f), and x^(p^(k/l)) - x coprime to f for prime l | k
  Poly xp = frob_power(k, f, p);
  if (sub(xp, rem(x, f, p), p) != Poly{}) return false;
  int m = k;
  for (int l = 2; l * l <= m; l++) {
    if (m % l) continue;
    Poly g = gcd(sub(frob_power(k / l, f, p), x, p), f, p);
    if (deg(g) != 0) return false;
    while (m % l == 0) m /= l;
  }
  if (m > 1) {
    Poly g = gcd(sub(frob_power(k / m, f, p), x, p), f, p);
    if (deg(g) != 0) return false;
  }
  return true;
}

Poly find_irreducible(long long p, int k) {
  if (p < 2 || k < 1) throw input_error("find_irreducible: need p >= 2, k >= 1");
  if (k == 1) {
    Poly f{0, 1};
    return f;  // u itself
  }
  // Enumerate (c_0, ..., c_{k-1}) in lexicographic order, c_0 most
  // significant.  c_0 == 0 gives the root 0, so start at c_0 = 1.
  std::vector<long long> c(k, 0);
  c[0] = 1;
  for (;;) {
    Poly f(c.begin(), c.end());
    f.push_back(1);
    trim(f);
    if (static_cast<int>(f.size()) == k + 1 && is_irreducible(f, p)) return f;
    int i = k - 1;
    while (i >= 0) {
      if (++c[i] < p) break;
      c[i] = 0;
      i--;
    }
    if (i < 0) throw internal_error("find_irreducible: exhausted search space");
  }
}

namespace {

// f monic squarefree, all irreducible factors of degree d: split completely.
void edf(const Poly& f, int d, long long p, SplitMix64& rng,
         std::vector<Poly>& out) {
  if (deg(f) == d) {
    out.push_back(f);
    return;
  }
  int n = deg(f);
  for (;;) {
    Poly r(n);
    for (int i = 0; i < n; i++) r[i] = static_cast<long long>(rng.below(p));
    trim(r);
    if (r.empty()) continue;
    Poly g;
    if (p == 2) {
      // trace map r + r^2 + ... + r^(2^(d-1))
      Poly t = rem(r, f, p);
      Poly acc = t;
      for (int i = 1; i < d; i++) {
        t = rem(mul(t, t, p), f, p);
        acc = add(acc, t, p);
      }
      g = gcd(acc, f, p);
    } else {
      mpz_class e;
      mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(p),
                    static_cast<unsigned long>(d));
      e = (e - 1) / 2;
      Poly s = powmod(r, e, f, p);
      g = gcd(sub(s, Poly{1}, p), f, p);
    }
    if (deg(g) > 0 && deg(g) < deg(f)) {
      Poly q, rr;
      divrem(f, g, p, q, rr);
      edf(g, d, p, rng, out);
      edf(make_monic(q, p), d, p, rng, out);
      return;
    }
  }
}

void factor_squarefree_monic(const Poly& f, long long p,
                             std::vector<Poly>& out) {
  // distinct-degree then equal-degree splitting
  SplitMix64 rng(0x5eedf00dULL);
  Poly rest = f;
  Poly x{0, 1};
  Poly h = rem(x, rest, p);
  int d = 0;
  while (deg(rest) > 0) {
    d++;
    if (2 * d > deg(rest)) {
      out.push_back(rest);
      break;
    }
    h = powmod(h, mpz_of(p), rest, p);
    Poly g = gcd(sub(h, x, p), rest, p);
    if (deg(g) > 0) {
      std::vector<Poly> part;
      edf(g, d, p, rng, part);
      for (auto& q : part) out.push_back(q);
      Poly q, r;
      divrem(rest, g, p, q, r);
      rest = make_monic(q, p);
      h = rem(h, rest, p);
    }
  }
}

}  // namespace

std::vector<std::pair<Poly, int>> factor(const Poly& f, long long p) {
  std::vector<std::pair<Poly, int>> result;
  if (deg(f) <= 0) return result;
  Poly g = make_monic(f, p);
  // Collect distinct irreducible factors from squarefree slices, then recover
  // multiplicities by trial division.  Vanishing derivative means the
  // polynomial is a composition in x^p; over F_p exponent compression is an
  // exact p-th root.
  std::vector<Poly> irreducibles;
  Poly cur = g;
  while (deg(cur) > 0) {
    Poly d = derivative(cur, p);
    if (is_zero(d)) {
      Poly comp((deg(cur) / p) + 1, 0);
      for (int i = 0; i <= deg(cur); i += static_cast<int>(p))
        comp[i / p] = cur[i];
      trim(comp);
      cur = comp;
      continue;
    }
    Poly c = gcd(cur, d, p);
    Poly w, r;
    divrem(cur, c, p, w, r);
    std::vector<Poly> irr;
    factor_squarefree_monic(make_monic(w, p), p, irr);
    for (auto& q : irr) irreducibles.push_back(q);
    cur = c;
  }
  std::sort(irreducibles.begin(), irreducibles.end());
  irreducibles.erase(std::unique(irreducibles.begin(), irreducibles.end()),
                     irreducibles.end());
  for (auto& q : irreducibles) {
    int m = 0;
    Poly rest = g, quo, r;
    for (;;) {
      divrem(rest, q, p, quo, r);
      if (!is_zero(r)) break;
      m++;
      rest = quo;
    }
    if (m > 0) result.push_back({q, m});
  }
  return result;
}

std::vector<long long> roots(const Poly& f, long long p) {
  std::vector<long long> out;
  if (deg(f) <= 0) return out;
  if (p <= 4096) {
    for (long long a = 0; a < p; a++)
      if (eval(f, a, p) == 0) out.push_back(a);
    return out;
  }
  Poly x{0, 1};
  Poly xp = powmod(x, mpz_of(p), f, p);
  Poly g = gcd(sub(xp, x, p), f, p);
  for (auto& [q, m] : factor(g, p))
    if (deg(q) == 1) out.push_back((p - q[0]) % p);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace levellab::fpp
