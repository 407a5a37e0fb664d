#pragma once

#include <vector>

#include "levellab/field.hpp"

namespace levellab {

// Dense univariate polynomial over a field element type; c[i] multiplies x^i
// and the vector carries no trailing zeros.
struct EPoly {
  FieldPtr f;
  std::vector<FieldElement> c;

  static EPoly zero(const FieldPtr& f);
  static EPoly constant(const FieldElement& a);
  static EPoly x(const FieldPtr& f);
  static EPoly from_coeffs(const FieldPtr& f, std::vector<FieldElement> coeffs);

  int deg() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  void trim();
};

EPoly ep_add(const EPoly& a, const EPoly& b);
EPoly ep_sub(const EPoly& a, const EPoly& b);
EPoly ep_mul(const EPoly& a, const EPoly& b);
EPoly ep_scale(const EPoly& a, const FieldElement& s);
void ep_divrem(const EPoly& a, const EPoly& b, EPoly& q, EPoly& r);
EPoly ep_rem(const EPoly& a, const EPoly& b);
EPoly ep_exact_div(const EPoly& a, const EPoly& b);
EPoly ep_make_monic(const EPoly& a);
EPoly ep_gcd(const EPoly& a, const EPoly& b);
EPoly ep_powmod(const EPoly& a, const mpz_class& e, const EPoly& f);
FieldElement ep_eval(const EPoly& a, const FieldElement& x);
EPoly ep_derivative(const EPoly& a);
bool ep_eq(const EPoly& a, const EPoly& b);

// Distinct roots in the coefficient field, sorted canonically.
std::vector<FieldElement> ep_roots(const EPoly& f);

// All solutions of x^n = a, sorted canonically.
std::vector<FieldElement> fe_nth_roots(const FieldElement& a, long long n);

// Canonical embedding F_{p^a} -> F_{p^b} for a | b: the small generator is
// sent to the canonically smallest root of the small modulus in the big
// field.  Results are cached per field pair.
FieldElement fe_embed(const FieldElement& x, const FieldPtr& big);

// Preimage under fe_embed; throws membership_error when x is not in the
// image subfield.
FieldElement fe_coerce(const FieldElement& x, const FieldPtr& small);

}  // namespace levellab
