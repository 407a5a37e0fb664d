#include "levellab/upoly.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "levellab/errors.hpp"
#include "levellab/fppoly.hpp"
#include "levellab/rng.hpp"

namespace levellab {

EPoly EPoly::zero(const FieldPtr& f) {
  EPoly p;
  p.f = f;
  return p;
}

EPoly EPoly::constant(const FieldElement& a) {
  EPoly p;
  p.f = a.f;
  if (!a.is_zero()) p.c.push_back(a);
  return p;
}

EPoly EPoly::x(const FieldPtr& f) {
  EPoly p;
  p.f = f;
  p.c = {fe_zero(f), fe_one(f)};
  return p;
}

EPoly EPoly::from_coeffs(const FieldPtr& f, std::vector<FieldElement> coeffs) {
  EPoly p;
  p.f = f;
  p.c = std::move(coeffs);
  p.trim();
  return p;
}

void EPoly::trim() {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
}

namespace {
void check_field(const EPoly& a, const EPoly& b) {
  if (a.f.get() != b.f.get() && !a.f->same(*b.f))
    throw input_error("upoly: mixed coefficient fields");
}
}  // namespace

EPoly ep_add(const EPoly& a, const EPoly& b) {
  check_field(a, b);
  EPoly r = EPoly::zero(a.f);
  r.c.resize(std::max(a.c.size(), b.c.size()), fe_zero(a.f));
  for (size_t i = 0; i < a.c.size(); i++) r.c[i] = a.c[i];
  for (size_t i = 0; i < b.c.size(); i++) r.c[i] = fe_add(r.c[i], b.c[i]);
  r.trim();
  return r;
}

EPoly ep_sub(const EPoly& a, const EPoly& b) {
  check_field(a, b);
  EPoly r = EPoly::zero(a.f);
  r.c.resize(std::max(a.c.size(), b.c.size()), fe_zero(a.f));
  for (size_t i = 0; i < a.c.size(); i++) r.c[i] = a.c[i];
  for (size_t i = 0; i < b.c.size(); i++) r.c[i] = fe_sub(r.c[i], b.c[i]);
  r.trim();
  return r;
}

EPoly ep_mul(const EPoly& a, const EPoly& b) {
  check_field(a, b);
  if (a.is_zero() || b.is_zero()) return EPoly::zero(a.f);
  EPoly r = EPoly::zero(a.f);
  r.c.assign(a.c.size() + b.c.size() - 1, fe_zero(a.f));
  for (size_t i = 0; i < a.c.size(); i++) {
    if (a.c[i].is_zero()) continue;
    for (size_t j = 0; j < b.c.size(); j++)
      r.c[i + j] = fe_add(r.c[i + j], fe_mul(a.c[i], b.c[j]));
  }
  r.trim();
  return r;
}

EPoly ep_scale(const EPoly& a, const FieldElement& s) {
  EPoly r = a;
  for (auto& v : r.c) v = fe_mul(v, s);
  r.trim();
  return r;
}

void ep_divrem(const EPoly& a, const EPoly& b, EPoly& q, EPoly& r) {
  check_field(a, b);
  if (b.is_zero()) throw arithmetic_error("upoly: division by zero polynomial");
  r = a;
  q = EPoly::zero(a.f);
  q.c.assign(a.c.size() > b.c.size() ? a.c.size() - b.c.size() + 1 : 1,
             fe_zero(a.f));
  FieldElement inv_lc = fe_inv(b.c.back());
  while (r.c.size() >= b.c.size()) {
    FieldElement t = fe_mul(r.c.back(), inv_lc);
    size_t off = r.c.size() - b.c.size();
    q.c[off] = fe_add(q.c[off], t);
    if (!t.is_zero())
      for (size_t i = 0; i < b.c.size(); i++)
        r.c[off + i] = fe_sub(r.c[off + i], fe_mul(t, b.c[i]));
    while (!r.c.empty() && r.c.back().is_zero()) r.c.pop_back();
    if (r.c.empty()) break;
  }
  q.trim();
}

EPoly ep_rem(const EPoly& a, const EPoly& b) {
  EPoly q, r;
  ep_divrem(a, b, q, r);
  return r;
}

EPoly ep_exact_div(const EPoly& a, const EPoly& b) {
  EPoly q, r;
  ep_divrem(a, b, q, r);
  if (!r.is_zero()) throw internal_error("upoly: division was not exact");
  return q;
}

EPoly ep_make_monic(const EPoly& a) {
  if (a.is_zero()) return a;
  return ep_scale(a, fe_inv(a.c.back()));
}

EPoly ep_gcd(const EPoly& a, const EPoly& b) {
  EPoly x = a, y = b;
  while (!y.is_zero()) {
    EPoly r = ep_rem(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return ep_make_monic(x);
}

EPoly ep_powmod(const EPoly& a, const mpz_class& e, const EPoly& f) {
  EPoly base = ep_rem(a, f);
  EPoly r = EPoly::constant(fe_one(a.f));
  if (e == 0) return r;
  size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (size_t i = bits; i-- > 0;) {
    r = ep_rem(ep_mul(r, r), f);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = ep_rem(ep_mul(r, base), f);
  }
  return r;
}

FieldElement ep_eval(const EPoly& a, const FieldElement& x) {
  FieldElement r = fe_zero(x.f);
  for (size_t i = a.c.size(); i-- > 0;) r = fe_add(fe_mul(r, x), a.c[i]);
  return r;
}

EPoly ep_derivative(const EPoly& a) {
  EPoly r = EPoly::zero(a.f);
  if (a.c.size() <= 1) return r;
  r.c.resize(a.c.size() - 1, fe_zero(a.f));
  for (size_t i = 1; i < a.c.size(); i++)
    r.c[i - 1] = fe_mul(a.c[i], fe_from_int(a.f, static_cast<long long>(i)));
  r.trim();
  return r;
}

bool ep_eq(const EPoly& a, const EPoly& b) {
  check_field(a, b);
  if (a.c.size() != b.c.size()) return false;
  for (size_t i = 0; i < a.c.size(); i++)
    if (!fe_eq(a.c[i], b.c[i])) return false;
  return true;
}

namespace {

// Split a monic product of distinct linear factors.
void split_linear(const EPoly& f, SplitMix64& rng,
                  std::vector<FieldElement>& out) {
  if (f.deg() <= 0) return;
  if (f.deg() == 1) {
    out.push_back(fe_neg(f.c[0]));
    return;
  }
  const FieldPtr& F = f.f;
  mpz_class q = F->order();
  for (;;) {
    // random linear shift
    mpz_class idx = mpz_of_u64(rng.next()) % q;
    EPoly r = EPoly::from_coeffs(F, {fe_at_index(F, idx), fe_one(F)});
    EPoly g;
    if (F->p == 2) {
      // absolute trace of r(x) splits the roots into the two trace classes
      int bits = static_cast<int>(mpz_sizeinbase(q.get_mpz_t(), 2)) - 1;
      EPoly t = ep_rem(r, f);
      EPoly acc = t;
      for (int i = 1; i < bits; i++) {
        t = ep_rem(ep_mul(t, t), f);
        acc = ep_add(acc, t);
      }
      g = ep_gcd(acc, f);
    } else {
      EPoly s = ep_powmod(r, (q - 1) / 2, f);
      g = ep_gcd(ep_sub(s, EPoly::constant(fe_one(F))), f);
    }
    if (g.deg() > 0 && g.deg() < f.deg()) {
      split_linear(g, rng, out);
      split_linear(ep_exact_div(f, g), rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<FieldElement> ep_roots(const EPoly& f) {
  std::vector<FieldElement> out;
  if (f.deg() <= 0) return out;
  if (!f.f->is_finite()) throw unsupported_error("upoly: roots need a finite field");
  // isolate the distinct-root part: gcd(f, x^q - x)
  mpz_class q = f.f->order();
  EPoly x = EPoly::x(f.f);
  EPoly monic = ep_make_monic(f);
  EPoly xq = ep_powmod(x, q, monic);
  EPoly lin = ep_gcd(ep_sub(xq, x), monic);
  SplitMix64 rng(0x700757ea11ull);
  split_linear(lin, rng, out);
  std::sort(out.begin(), out.end(),
            [](const FieldElement& a, const FieldElement& b) {
              return fe_cmp(a, b) < 0;
            });
  return out;
}

std::vector<FieldElement> fe_nth_roots(const FieldElement& a, long long n) {
  if (n < 1) throw input_error("nth_roots: n must be positive");
  EPoly f = EPoly::zero(a.f);
  f.c.assign(n + 1, fe_zero(a.f));
  f.c[0] = fe_neg(a);
  f.c[n] = fe_one(a.f);
  f.trim();
  return ep_roots(f);
}

namespace {

struct EmbeddingKey {
  const FieldDescriptor* small;
  const FieldDescriptor* big;
  bool operator<(const EmbeddingKey& o) const {
    if (small != o.small) return small < o.small;
    return big < o.big;
  }
};

std::map<EmbeddingKey, FieldElement>& embedding_cache() {
  static std::map<EmbeddingKey, FieldElement> cache;
  return cache;
}
std::mutex& embedding_mutex() {
  static std::mutex m;
  return m;
}

FieldElement embedding_generator_image(const FieldPtr& small,
                                       const FieldPtr& big) {
  {
    std::lock_guard<std::mutex> lock(embedding_mutex());
    auto it = embedding_cache().find({small.get(), big.get()});
    if (it != embedding_cache().end()) return it->second;
  }
  std::vector<FieldElement> mod_coeffs;
  for (auto c : small->modulus) mod_coeffs.push_back(fe_from_int(big, c));
  EPoly h = EPoly::from_coeffs(big, std::move(mod_coeffs));
  auto rs = ep_roots(h);
  if (rs.empty()) throw internal_error("embed: modulus has no root upstairs");
  FieldElement img = rs.front();
  std::lock_guard<std::mutex> lock(embedding_mutex());
  embedding_cache().insert({{small.get(), big.get()}, img});
  return img;
}

}  // namespace

FieldElement fe_embed(const FieldElement& x, const FieldPtr& big) {
  const FieldPtr& small = x.f;
  if (small->is_rationals() || big->is_rationals())
    throw input_error("embed: finite fields required");
  if (small->p != big->p) throw input_error("embed: different characteristics");
  if (big->k % small->k != 0)
    throw input_error("embed: target degree not a multiple");
  if (small->same(*big)) {
    FieldElement y = x;
    y.f = big;
    return y;
  }
  FieldElement gen = embedding_generator_image(small, big);
  FieldElement acc = fe_zero(big);
  FieldElement pow = fe_one(big);
  for (int i = 0; i < small->k; i++) {
    acc = fe_add(acc, fe_mul(pow, fe_from_int(big, x.c[i])));
    pow = fe_mul(pow, gen);
  }
  return acc;
}

FieldElement fe_coerce(const FieldElement& x, const FieldPtr& small) {
  const FieldPtr& big = x.f;
  if (small->same(*big)) {
    FieldElement y = x;
    y.f = small;
    return y;
  }
  if (small->p != big->p || big->k % small->k != 0)
    throw input_error("coerce: incompatible fields");
  // solve  sum_i z_i * gen^i = x  over F_p
  FieldElement gen = embedding_generator_image(small, big);
  int a = small->k, b = big->k;
  long long p = small->p;
  std::vector<std::vector<long long>> m(b, std::vector<long long>(a + 1, 0));
  FieldElement pow = fe_one(big);
  for (int i = 0; i < a; i++) {
    for (int row = 0; row < b; row++) m[row][i] = pow.c[row];
    pow = fe_mul(pow, gen);
  }
  for (int row = 0; row < b; row++) m[row][a] = x.c[row];
  // gaussian elimination
  int rank = 0;
  std::vector<int> pivot_col(b, -1);
  for (int col = 0; col < a && rank < b; col++) {
    int piv = -1;
    for (int row = rank; row < b; row++)
      if (m[row][col] != 0) {
        piv = row;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[rank], m[piv]);
    long long inv = fpp::mod_inv(m[rank][col], p);
    for (int j = col; j <= a; j++)
      m[rank][j] = (__int128)m[rank][j] * inv % p;
    for (int row = 0; row < b; row++) {
      if (row == rank || m[row][col] == 0) continue;
      long long factor = m[row][col];
      for (int j = col; j <= a; j++) {
        m[row][j] = ((m[row][j] - (__int128)factor * m[rank][j]) % p + p) % p;
      }
    }
    pivot_col[rank] = col;
    rank++;
  }
  for (int row = rank; row < b; row++)
    if (m[row][a] != 0) throw membership_error("coerce: element not in subfield");
  std::vector<long long> z(a, 0);
  for (int row = 0; row < rank; row++) z[pivot_col[row]] = m[row][a];
  return fe_from_coeffs(small, std::move(z));
}

}  // namespace levellab
