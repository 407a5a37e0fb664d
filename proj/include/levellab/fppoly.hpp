#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "levellab/gmputil.hpp"

namespace levellab::fpp {

// Dense univariate polynomials over F_p with small p.  Coefficients are
// residues in [0, p); c[i] is the coefficient of x^i; the zero polynomial is
// the empty vector.  Used for modulus search, factoring over the prime field
// and the elimination machinery.
using Poly = std::vector<long long>;

long long mod_inv(long long a, long long p);
long long mod_pow(long long a, long long e, long long p);

void trim(Poly& f);
int deg(const Poly& f);  // -1 for zero
bool is_zero(const Poly& f);
Poly from_coeffs(std::vector<long long> c, long long p);

Poly add(const Poly& a, const Poly& b, long long p);
Poly sub(const Poly& a, const Poly& b, long long p);
Poly mul(const Poly& a, const Poly& b, long long p);
Poly scale(const Poly& a, long long s, long long p);
Poly shift(const Poly& a, int k);  // multiply by x^k

// division with remainder; b != 0
void divrem(const Poly& a, const Poly& b, long long p, Poly& q, Poly& r);
Poly rem(const Poly& a, const Poly& b, long long p);
Poly make_monic(const Poly& f, long long p);
Poly gcd(const Poly& a, const Poly& b, long long p);  // monic gcd

long long eval(const Poly& f, long long x, long long p);
Poly derivative(const Poly& f, long long p);

// a^e mod f, e >= 0
Poly powmod(const Poly& a, const mpz_class& e, const Poly& f, long long p);
// x^(p^j) mod f
Poly frob_power(int j, const Poly& f, long long p);

bool is_irreducible(const Poly& f, long long p);

// Lexicographically smallest monic irreducible of degree k over F_p, ordering
// coefficient vectors (c_0, ..., c_{k-1}) with c_0 most significant.
Poly find_irreducible(long long p, int k);

// Monic irreducible factors with multiplicity, deterministic order.
std::vector<std::pair<Poly, int>> factor(const Poly& f, long long p);

// Distinct roots in F_p.
std::vector<long long> roots(const Poly& f, long long p);

}  // namespace levellab::fpp
