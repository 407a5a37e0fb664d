#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "levellab/field.hpp"

namespace levellab {

using Mono = std::vector<int>;

// Graded reverse lexicographic order: higher total degree wins; within a
// degree, the monomial whose last nonzero exponent difference is negative
// is the larger one.
int grevlex_cmp(const Mono& a, const Mono& b);

struct GrevlexGreater {
  bool operator()(const Mono& a, const Mono& b) const {
    return grevlex_cmp(a, b) > 0;
  }
};

// Multivariate polynomial with a fixed variable list; the term map is kept
// in descending grevlex order with no zero coefficients, so begin() is the
// leading term.
struct SparsePoly {
  FieldPtr field;
  std::vector<std::string> vars;
  std::map<Mono, FieldElement, GrevlexGreater> terms;

  bool is_zero() const { return terms.empty(); }
};

SparsePoly sp_zero(const FieldPtr& f, const std::vector<std::string>& vars);
SparsePoly sp_const(const FieldPtr& f, const std::vector<std::string>& vars,
                    const FieldElement& c);
SparsePoly sp_const_int(const FieldPtr& f, const std::vector<std::string>& vars,
                        long long c);
SparsePoly sp_var(const FieldPtr& f, const std::vector<std::string>& vars,
                  int index, int power = 1);
SparsePoly sp_monomial(const FieldPtr& f, const std::vector<std::string>& vars,
                       const FieldElement& c, const Mono& m);

void sp_check_compatible(const SparsePoly& a, const SparsePoly& b);
SparsePoly sp_add(const SparsePoly& a, const SparsePoly& b);
SparsePoly sp_sub(const SparsePoly& a, const SparsePoly& b);
SparsePoly sp_neg(const SparsePoly& a);
SparsePoly sp_mul(const SparsePoly& a, const SparsePoly& b);
SparsePoly sp_scale(const SparsePoly& a, const FieldElement& c);
SparsePoly sp_scale_int(const SparsePoly& a, long long c);
SparsePoly sp_pow(const SparsePoly& a, int e);
bool sp_eq(const SparsePoly& a, const SparsePoly& b);

Mono sp_leading_mono(const SparsePoly& a);         // input_error on zero
FieldElement sp_leading_coeff(const SparsePoly& a);
SparsePoly sp_monic(const SparsePoly& a);
int sp_total_degree(const SparsePoly& a);          // -1 for zero
bool sp_is_homogeneous(const SparsePoly& a, const std::vector<int>& var_subset,
                       int degree);
SparsePoly sp_derivative(const SparsePoly& a, int var_index);
FieldElement sp_eval(const SparsePoly& a, const std::vector<FieldElement>& point);
FieldElement sp_coeff(const SparsePoly& a, const Mono& m);

// Coefficient-wise move to another field; rational coefficients reduce via
// numerator over denominator, so the denominator must stay invertible.
SparsePoly sp_map_field(const SparsePoly& a, const FieldPtr& f);

// Text format: terms in descending grevlex joined by " + " / " - ", each
// term "c*x^2*y" with unit coefficients and first powers elided.
std::string sp_to_text(const SparsePoly& a);
SparsePoly sp_parse(const FieldPtr& f, const std::vector<std::string>& vars,
                    const std::string& text);

struct IdealData {
  FieldPtr field;
  std::vector<std::string> vars;
  std::vector<SparsePoly> gens;
};

IdealData make_ideal(std::vector<SparsePoly> gens);

struct GroebnerOptions {
  long long max_pairs = 200000;
  long long max_basis = 2000;
  int max_degree = 80;
};

// Full reduction against a list of nonzero polynomials.
SparsePoly normal_form(const SparsePoly& f, const std::vector<SparsePoly>& basis);

// Reduced monic Groebner basis under grevlex, deterministically ordered by
// ascending leading monomial.
IdealData groebner(const IdealData& ideal, const GroebnerOptions& opt = {});

bool ideal_member(const SparsePoly& f, const IdealData& reduced_basis);

// f in radical(I) iff 1 in I + (1 - w*f) in one extra variable.
bool radical_member(const SparsePoly& f, const IdealData& ideal,
                    const GroebnerOptions& opt = {});

// Smoothness of the projective hypersurface F = 0 over the algebraic
// closure: the ideal (F, all partials) must contain a pure power of every
// variable among the leading terms of its Groebner basis, which is the
// finite-quotient criterion for the singular locus being empty.
bool projective_smooth(const SparsePoly& F, const GroebnerOptions& opt = {});

struct RadicalContainmentReport {
  std::map<std::string, bool> per_target;
  bool contains_all = false;
};
RadicalContainmentReport radical_containment_report(
    const IdealData& ideal, const std::vector<int>& target_vars,
    const GroebnerOptions& opt = {});

// Named forms transcribed from fixed source displays.
const std::vector<std::string>& form_registry_names();
SparsePoly registry_form(const std::string& name);

struct Fisher9Entry {
  std::string name;
  bool homogeneous_deg3_xyzt = false;
  bool integer_coefficients = false;
  size_t term_count = 0;
  // per (x,y,z,t)-monomial: list of (a-degree, b-degree, coefficient text)
  std::map<Mono, std::vector<std::string>> profile;
};
std::vector<Fisher9Entry> structural_checks_fisher9();

// Point search over F_{p^j}, j <= j_max, for a common projective zero of F
// and its partials; exact but slow, used as a cross-check oracle.
std::optional<std::vector<FieldElement>> singular_point_search(
    const SparsePoly& F, int j_max);

// Exhaustive smoothness census for all nonzero ternary forms of the given
// degree over F_p: an exact linear-algebra singular-point detector covering
// every form, a GL3-orbit decomposition, and a Groebner verdict on every
// orbit representative.
struct SmoothCensus {
  long long p = 0;
  int degree = 0;
  long long forms_total = 0;     // nonzero coefficient vectors
  long long singular_forms = 0;  // detected by the point-census oracle
  long long orbit_count = 0;
  long long reps_agreeing = 0;   // orbit reps where groebner == oracle
  bool oracle_constant_on_orbits = true;
  bool groebner_matches_oracle = true;
};
SmoothCensus smooth_census(long long p, int degree,
                           const GroebnerOptions& opt = {});

}  // namespace levellab
