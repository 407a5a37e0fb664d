#include "levellab/field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "levellab/errors.hpp"
#include "levellab/fppoly.hpp"

namespace levellab {

namespace {

constexpr long long kMaxPrime = (1ll << 31);

bool small_prime(long long p) {
  if (p < 2) return false;
  for (long long d = 2; d * d <= p; d++)
    if (p % d == 0) return false;
  return true;
}

inline long long norm(long long a, long long p) {
  long long r = a % p;
  return r < 0 ? r + p : r;
}

inline long long mod_mul(long long a, long long b, long long p) {
  return static_cast<long long>((__int128)a * b % p);
}

std::vector<long long> poly_mod_reduce(std::vector<long long> v,
                                       const std::vector<long long>& modulus,
                                       long long p) {
  int k = static_cast<int>(modulus.size()) - 1;
  for (int i = static_cast<int>(v.size()) - 1; i >= k; i--) {
    long long c = v[i];
    if (c == 0) continue;
    v[i] = 0;
    for (int j = 0; j < k; j++)
      v[i - k + j] = norm(v[i - k + j] - mod_mul(c, modulus[j], p), p);
  }
  v.resize(k);
  return v;
}

std::vector<long long> primes_of(long long n) {
  std::vector<long long> ps;
  for (long long d = 2; d * d <= n; d++) {
    if (n % d) continue;
    ps.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

}  // namespace

FieldPtr FieldDescriptor::rationals() {
  static FieldPtr q = [] {
    auto d = std::make_shared<FieldDescriptor>();
    d->kind = FieldKind::rationals;
    return FieldPtr(d);
  }();
  return q;
}

FieldPtr FieldDescriptor::finite(long long p, int k) {
  static std::map<std::pair<long long, int>, FieldPtr> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find({p, k});
  if (it != cache.end()) return it->second;
  auto ptr = finite_with_modulus(p, fpp::find_irreducible(p, k));
  cache[{p, k}] = ptr;
  return ptr;
}

FieldPtr FieldDescriptor::finite_with_modulus(long long p,
                                              std::vector<long long> modulus) {
  if (!small_prime(p)) throw input_error("field: characteristic must be prime");
  if (p >= kMaxPrime) throw input_error("field: characteristic too large");
  int k = static_cast<int>(modulus.size()) - 1;
  if (k < 1 || modulus[k] != 1)
    throw input_error("field: modulus must be monic of degree >= 1");
  for (auto& c : modulus) c = norm(c, p);
  if (!fpp::is_irreducible(modulus, p))
    throw input_error("field: modulus is reducible");
  auto d = std::make_shared<FieldDescriptor>();
  d->kind = FieldKind::finite;
  d->p = p;
  d->k = k;
  d->modulus = std::move(modulus);
  return d;
}

mpz_class FieldDescriptor::order() const {
  if (is_rationals()) return 0;
  mpz_class q;
  mpz_ui_pow_ui(q.get_mpz_t(), static_cast<unsigned long>(p),
                static_cast<unsigned long>(k));
  return q;
}

bool FieldDescriptor::same(const FieldDescriptor& o) const {
  if (kind != o.kind) return false;
  if (is_rationals()) return true;
  return p == o.p && k == o.k && modulus == o.modulus;
}

std::string FieldDescriptor::describe() const {
  if (is_rationals()) return "Q";
  std::ostringstream os;
  if (k == 1) {
    os << "GF(" << p << ")";
    return os.str();
  }
  os << "GF(" << p << "^" << k << ";";
  bool first = true;
  for (int i = k; i >= 0; i--) {
    long long c = modulus[i];
    if (c == 0) continue;
    if (!first) os << "+";
    first = false;
    if (i == 0 || c != 1) os << c;
    if (i >= 1) {
      os << "u";
      if (i > 1) os << "^" << i;
    }
  }
  os << ")";
  return os.str();
}

bool FieldElement::is_zero() const {
  if (f->is_rationals()) return rat == 0;
  for (auto v : c)
    if (v) return false;
  return true;
}

bool FieldElement::is_one() const {
  if (f->is_rationals()) return rat == 1;
  if (c.empty() || c[0] != 1) return false;
  for (size_t i = 1; i < c.size(); i++)
    if (c[i]) return false;
  return true;
}

void check_same_field(const FieldElement& a, const FieldElement& b) {
  if (a.f.get() == b.f.get()) return;
  if (!a.f || !b.f || !a.f->same(*b.f))
    throw input_error("field: operands live in different fields");
}

FieldElement fe_zero(const FieldPtr& f) {
  FieldElement e;
  e.f = f;
  if (f->is_finite()) e.c.assign(f->k, 0);
  return e;
}

FieldElement fe_one(const FieldPtr& f) { return fe_from_int(f, 1); }

FieldElement fe_from_int(const FieldPtr& f, long long n) {
  FieldElement e = fe_zero(f);
  if (f->is_rationals()) {
    e.rat = mpq_class(mpz_class(static_cast<long>(n)));
  } else {
    e.c[0] = norm(n, f->p);
  }
  return e;
}

FieldElement fe_from_mpz(const FieldPtr& f, const mpz_class& n) {
  FieldElement e = fe_zero(f);
  if (f->is_rationals()) {
    e.rat = n;
  } else {
    mpz_class r = n % mpz_of(f->p);
    if (r < 0) r += mpz_of(f->p);
    e.c[0] = r.get_si();
  }
  return e;
}

FieldElement fe_from_mpq(const FieldPtr& f, const mpq_class& q) {
  if (f->is_rationals()) {
    FieldElement e = fe_zero(f);
    e.rat = q;
    e.rat.canonicalize();
    return e;
  }
  FieldElement num = fe_from_mpz(f, q.get_num());
  FieldElement den = fe_from_mpz(f, q.get_den());
  return fe_div(num, den);
}

FieldElement fe_from_coeffs(const FieldPtr& f, std::vector<long long> coeffs) {
  if (!f->is_finite()) throw input_error("field: coefficient form needs a finite field");
  if (static_cast<int>(coeffs.size()) > f->k)
    throw input_error("field: too many coefficients");
  coeffs.resize(f->k, 0);
  for (auto& v : coeffs) v = norm(v, f->p);
  FieldElement e;
  e.f = f;
  e.c = std::move(coeffs);
  return e;
}

FieldElement fe_add(const FieldElement& a, const FieldElement& b) {
  check_same_field(a, b);
  if (a.f->is_rationals()) {
    FieldElement r = a;
    r.rat = a.rat + b.rat;
    return r;
  }
  FieldElement r;
  r.f = a.f;
  r.c.resize(a.f->k);
  for (int i = 0; i < a.f->k; i++) r.c[i] = (a.c[i] + b.c[i]) % a.f->p;
  return r;
}

FieldElement fe_sub(const FieldElement& a, const FieldElement& b) {
  check_same_field(a, b);
  if (a.f->is_rationals()) {
    FieldElement r = a;
    r.rat = a.rat - b.rat;
    return r;
  }
  FieldElement r;
  r.f = a.f;
  r.c.resize(a.f->k);
  for (int i = 0; i < a.f->k; i++) r.c[i] = norm(a.c[i] - b.c[i], a.f->p);
  return r;
}

FieldElement fe_neg(const FieldElement& a) {
  if (a.f->is_rationals()) {
    FieldElement r = a;
    r.rat = -a.rat;
    return r;
  }
  FieldElement r;
  r.f = a.f;
  r.c.resize(a.f->k);
  for (int i = 0; i < a.f->k; i++) r.c[i] = a.c[i] ? a.f->p - a.c[i] : 0;
  return r;
}

FieldElement fe_mul(const FieldElement& a, const FieldElement& b) {
  check_same_field(a, b);
  if (a.f->is_rationals()) {
    FieldElement r = a;
    r.rat = a.rat * b.rat;
    return r;
  }
  long long p = a.f->p;
  int k = a.f->k;
  FieldElement r;
  r.f = a.f;
  if (k == 1) {
    r.c.assign(1, mod_mul(a.c[0], b.c[0], p));
    return r;
  }
  // Accumulate in 128 bits and reduce once per coefficient; the deferred
  // sums stay below 2k(p-1)^2, so this needs p below 2^57.
  constexpr int kStackTerms = 71;  // supports k up to 36
  if (2 * k - 1 <= kStackTerms && p < (1LL << 57)) {
    __int128 acc[kStackTerms] = {};
    for (int i = 0; i < k; i++) {
      if (a.c[i] == 0) continue;
      for (int j = 0; j < k; j++)
        acc[i + j] += static_cast<__int128>(a.c[i]) * b.c[j];
    }
    const std::vector<long long>& mod = a.f->modulus;
    for (int i = 2 * k - 2; i >= k; i--) {
      long long c = static_cast<long long>(acc[i] % p);
      if (c < 0) c += p;
      if (c == 0) continue;
      for (int j = 0; j < k; j++)
        acc[i - k + j] -= static_cast<__int128>(c) * mod[j];
    }
    r.c.resize(k);
    for (int i = 0; i < k; i++) {
      long long c = static_cast<long long>(acc[i] % p);
      r.c[i] = c < 0 ? c + p : c;
    }
    return r;
  }
  std::vector<long long> prod(2 * k - 1, 0);
  for (int i = 0; i < k; i++) {
    if (a.c[i] == 0) continue;
    for (int j = 0; j < k; j++)
      prod[i + j] = (prod[i + j] + (__int128)a.c[i] * b.c[j]) % p;
  }
  r.c = poly_mod_reduce(std::move(prod), a.f->modulus, p);
  return r;
}

FieldElement fe_inv(const FieldElement& a) {
  if (a.is_zero()) throw arithmetic_error("field: inverse of zero");
  if (a.f->is_rationals()) {
    FieldElement r = a;
    r.rat = 1 / a.rat;
    return r;
  }
  long long p = a.f->p;
  if (a.f->k == 1) {
    FieldElement r = a;
    r.c[0] = fpp::mod_inv(a.c[0], p);
    return r;
  }
  fpp::Poly av(a.c.begin(), a.c.end());
  fpp::trim(av);
  // extended euclid over F_p[u]
  fpp::Poly r0 = a.f->modulus, r1 = av;
  fpp::Poly t0{}, t1{1};
  while (!fpp::is_zero(r1)) {
    fpp::Poly q, rr;
    fpp::divrem(r0, r1, p, q, rr);
    fpp::Poly t2 = fpp::sub(t0, fpp::mul(q, t1, p), p);
    r0 = std::move(r1);
    r1 = std::move(rr);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (fpp::deg(r0) != 0) throw internal_error("field: inverse failed");
  fpp::Poly inv = fpp::scale(t0, fpp::mod_inv(r0[0], p), p);
  inv.resize(a.f->k, 0);
  FieldElement out;
  out.f = a.f;
  out.c.assign(inv.begin(), inv.end());
  return out;
}

FieldElement fe_div(const FieldElement& a, const FieldElement& b) {
  if (a.f->is_rationals()) {
    check_same_field(a, b);
    if (b.rat == 0) throw arithmetic_error("field: division by zero");
    FieldElement r = a;
    r.rat = a.rat / b.rat;
    return r;
  }
  return fe_mul(a, fe_inv(b));
}

FieldElement fe_pow(const FieldElement& a, const mpz_class& e) {
  if (e < 0) return fe_pow(fe_inv(a), -e);
  FieldElement r = fe_one(a.f);
  if (e == 0) return r;
  size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (size_t i = bits; i-- > 0;) {
    r = fe_mul(r, r);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = fe_mul(r, a);
  }
  return r;
}

bool fe_eq(const FieldElement& a, const FieldElement& b) {
  check_same_field(a, b);
  if (a.f->is_rationals()) return a.rat == b.rat;
  return a.c == b.c;
}

FieldElement fe_frobenius(const FieldElement& a, int j) {
  if (a.f->is_rationals()) return a;
  FieldElement r = a;
  for (int i = 0; i < j; i++) r = fe_pow(r, mpz_of(a.f->p));
  return r;
}

mpz_class fe_index(const FieldElement& a) {
  if (!a.f->is_finite()) throw input_error("field: index needs a finite field");
  mpz_class idx = 0;
  for (int i = a.f->k; i-- > 0;) {
    idx *= mpz_of(a.f->p);
    idx += mpz_of(a.c[i]);
  }
  return idx;
}

FieldElement fe_at_index(const FieldPtr& f, const mpz_class& index) {
  if (!f->is_finite()) throw input_error("field: index needs a finite field");
  if (index < 0 || index >= f->order()) throw input_error("field: index out of range");
  FieldElement e = fe_zero(f);
  mpz_class n = index;
  for (int i = 0; i < f->k; i++) {
    mpz_class r = n % mpz_of(f->p);
    e.c[i] = r.get_si();
    n /= mpz_of(f->p);
  }
  return e;
}

int fe_cmp(const FieldElement& a, const FieldElement& b) {
  check_same_field(a, b);
  if (a.f->is_rationals()) {
    int s = cmp(a.rat, b.rat);
    return s < 0 ? -1 : (s > 0 ? 1 : 0);
  }
  for (int i = a.f->k; i-- > 0;) {
    if (a.c[i] != b.c[i]) return a.c[i] < b.c[i] ? -1 : 1;
  }
  return 0;
}

std::string fe_to_text(const FieldElement& a) {
  if (a.f->is_rationals()) {
    std::ostringstream os;
    if (a.rat.get_den() == 1)
      os << a.rat.get_num();
    else
      os << a.rat.get_num() << "/" << a.rat.get_den();
    return os.str();
  }
  std::ostringstream os;
  for (int i = 0; i < a.f->k; i++) {
    if (i) os << ",";
    os << a.c[i];
  }
  return os.str();
}

FieldElement fe_parse(const FieldPtr& f, const std::string& text) {
  if (text.empty()) throw input_error("field: empty element text");
  if (f->is_rationals()) {
    mpq_class q;
    if (q.set_str(text, 10) != 0) throw input_error("field: bad rational '" + text + "'");
    if (q.get_den() == 0) throw input_error("field: zero denominator");
    q.canonicalize();
    FieldElement e = fe_zero(f);
    e.rat = q;
    return e;
  }
  std::vector<long long> coeffs;
  std::string cur;
  std::istringstream is(text);
  while (std::getline(is, cur, ',')) {
    size_t pos = 0;
    long long v;
    try {
      v = std::stoll(cur, &pos);
    } catch (const std::exception&) {
      throw input_error("field: bad coefficient '" + cur + "'");
    }
    if (pos != cur.size()) throw input_error("field: bad coefficient '" + cur + "'");
    coeffs.push_back(v);
  }
  if (static_cast<int>(coeffs.size()) != f->k)
    throw input_error("field: expected " + std::to_string(f->k) + " coefficients");
  return fe_from_coeffs(f, std::move(coeffs));
}

bool fe_is_square(const FieldElement& a) {
  if (a.f->is_rationals()) {
    if (a.rat < 0) return false;
    mpz_class n = a.rat.get_num(), d = a.rat.get_den();
    return mpz_perfect_square_p(n.get_mpz_t()) && mpz_perfect_square_p(d.get_mpz_t());
  }
  if (a.is_zero()) return true;
  if (a.f->p == 2) return true;
  mpz_class e = (a.f->order() - 1) / 2;
  return fe_pow(a, e).is_one();
}

FieldElement fe_sqrt(const FieldElement& a) {
  if (a.f->is_rationals()) {
    if (!fe_is_square(a)) throw arithmetic_error("field: not a square");
    FieldElement r = a;
    mpz_class n = a.rat.get_num(), d = a.rat.get_den();
    mpz_class sn, sd;
    mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
    r.rat = mpq_class(sn) / mpq_class(sd);
    return r;
  }
  if (a.is_zero()) return a;
  mpz_class q = a.f->order();
  if (a.f->p == 2) return fe_pow(a, q / 2);  // squaring is bijective
  if (!fe_is_square(a)) throw arithmetic_error("field: not a square");
  FieldElement r;
  if (q % 4 == 3) {
    r = fe_pow(a, (q + 1) / 4);
  } else {
    // Tonelli--Shanks in the cyclic group of order q-1
    mpz_class t = q - 1;
    unsigned long s = mpz_scan1(t.get_mpz_t(), 0);
    t >>= s;
    FieldElement z = fe_zero(a.f);
    for (mpz_class idx = 2;; idx++) {
      z = fe_at_index(a.f, idx);
      if (!z.is_zero() && !fe_is_square(z)) break;
    }
    FieldElement m = fe_pow(z, t);
    FieldElement x = fe_pow(a, (t + 1) / 2);
    FieldElement b = fe_pow(a, t);
    unsigned long r_exp = s;
    while (!b.is_one()) {
      unsigned long i = 0;
      FieldElement b2 = b;
      while (!b2.is_one()) {
        b2 = fe_mul(b2, b2);
        i++;
        if (i >= r_exp) throw internal_error("field: sqrt failed");
      }
      FieldElement g = m;
      for (unsigned long j = 0; j + i + 1 < r_exp; j++) g = fe_mul(g, g);
      x = fe_mul(x, g);
      FieldElement g2 = fe_mul(g, g);
      b = fe_mul(b, g2);
      m = g2;
      r_exp = i;
    }
    r = x;
  }
  FieldElement nr = fe_neg(r);
  return fe_cmp(r, nr) <= 0 ? r : nr;
}

long long fe_abs_trace(const FieldElement& a) {
  if (!a.f->is_finite()) throw input_error("field: trace needs a finite field");
  FieldElement t = fe_zero(a.f);
  FieldElement cur = a;
  for (int i = 0; i < a.f->k; i++) {
    t = fe_add(t, cur);
    cur = fe_frobenius(cur);
  }
  for (int i = 1; i < a.f->k; i++)
    if (t.c[i]) throw internal_error("field: trace not in prime field");
  return t.c[0];
}

FieldElement zeta_ref(const FieldPtr& f, long long N) {
  if (!f->is_finite()) throw input_error("zeta_ref: finite field required");
  if (N < 1) throw input_error("zeta_ref: N must be positive");
  mpz_class q1 = f->order() - 1;
  if (q1 % mpz_of(N) != 0) throw input_error("zeta_ref: N does not divide q-1");
  if (N == 1) return fe_one(f);
  auto ells = primes_of(N);
  auto exact_order_N = [&](const FieldElement& z) {
    if (z.is_zero() || !fe_pow(z, mpz_of(N)).is_one()) return false;
    for (auto l : ells)
      if (fe_pow(z, mpz_of(N / l)).is_one()) return false;
    return true;
  };
  mpz_class e = q1 / mpz_of(N);
  FieldElement zeta = fe_zero(f);
  bool found = false;
  for (mpz_class idx = 1; idx < f->order(); idx++) {
    FieldElement cand = fe_pow(fe_at_index(f, idx), e);
    if (exact_order_N(cand)) {
      zeta = cand;
      found = true;
      break;
    }
  }
  if (!found) throw internal_error("zeta_ref: no generator found");
  // smallest primitive N-th root among the powers zeta^j, gcd(j, N) = 1
  FieldElement best = zeta;
  for (long long j = 2; j < N; j++) {
    if (std::gcd(j, N) != 1) continue;
    FieldElement cand = fe_pow(zeta, mpz_of(j));
    if (fe_cmp(cand, best) < 0) best = cand;
  }
  return best;
}

long long element_order(const FieldElement& a, long long cap) {
  if (a.is_zero()) throw arithmetic_error("element_order: zero has no order");
  FieldElement cur = a;
  for (long long n = 1; n <= cap; n++) {
    if (cur.is_one()) return n;
    cur = fe_mul(cur, a);
  }
  throw resource_error("element_order: exceeds cap");
}

long long discrete_log(const FieldElement& base, const FieldElement& target,
                       long long order_bound, long long cap) {
  check_same_field(base, target);
  if (order_bound < 1 || order_bound > cap)
    throw resource_error("discrete_log: order bound exceeds cap");
  long long m = 1;
  while (m * m < order_bound) m++;
  std::map<std::vector<long long>, long long> table;
  FieldElement cur = fe_one(base.f);
  for (long long j = 0; j < m; j++) {
    if (!table.count(cur.c)) table[cur.c] = j;
    cur = fe_mul(cur, base);
  }
  FieldElement giant = fe_pow(base, mpz_of(-m));
  cur = target;
  for (long long i = 0; i * m <= order_bound; i++) {
    auto it = table.find(cur.c);
    if (it != table.end()) {
      long long e = i * m + it->second;
      if (fe_eq(fe_pow(base, mpz_of(e)), target)) return e;
    }
    cur = fe_mul(cur, giant);
  }
  throw membership_error("discrete_log: target not in cyclic span");
}

}  // namespace levellab
