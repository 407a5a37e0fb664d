#pragma once

#include <algorithm>
#include <vector>

namespace levellab {

inline std::vector<long long> prime_divisors(long long n) {
  std::vector<long long> ps;
  if (n < 0) n = -n;
  for (long long d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      ps.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

inline std::vector<long long> divisors_sorted(long long n) {
  std::vector<long long> ds;
  for (long long d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      ds.push_back(d);
      if (d != n / d) ds.push_back(n / d);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

inline bool is_prime_ll(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline long long pow_mod_ll(long long base, long long e, long long mod) {
  long long r = 1 % mod;
  base %= mod;
  if (base < 0) base += mod;
  while (e > 0) {
    if (e & 1) r = static_cast<long long>((__int128)r * base % mod);
    base = static_cast<long long>((__int128)base * base % mod);
    e >>= 1;
  }
  return r;
}

inline int valuation_ll(long long n, long long p) {
  int v = 0;
  while (n != 0 && n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

inline long long mod_norm(long long a, long long m) {
  a %= m;
  return a < 0 ? a + m : a;
}

inline long long inv_mod_ll(long long a, long long m) {
  long long r0 = m, r1 = mod_norm(a, m), s0 = 0, s1 = 1;
  while (r1 != 0) {
    long long q = r0 / r1;
    long long r2 = r0 - q * r1;
    long long s2 = s0 - q * s1;
    r0 = r1;
    r1 = r2;
    s0 = s1;
    s1 = s2;
  }
  if (r0 != 1) return 0;
  return mod_norm(s0, m);
}

}  // namespace levellab
