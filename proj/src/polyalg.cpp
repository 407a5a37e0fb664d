#include "levellab/polyalg.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>

#include "levellab/errors.hpp"

namespace levellab {

namespace {

int mono_degree(const Mono& m) {
  int d = 0;
  for (int e : m) d += e;
  return d;
}

bool mono_divides(const Mono& a, const Mono& b) {  // a | b
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Mono mono_mul(const Mono& a, const Mono& b) {
  Mono r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Mono mono_div(const Mono& a, const Mono& b) {  // a / b, assumes b | a
  Mono r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Mono mono_lcm(const Mono& a, const Mono& b) {
  Mono r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

bool mono_coprime(const Mono& a, const Mono& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > 0 && b[i] > 0) return false;
  return true;
}

void add_term(SparsePoly& p, const Mono& m, const FieldElement& c) {
  if (c.is_zero()) return;
  auto it = p.terms.find(m);
  if (it == p.terms.end()) {
    p.terms.emplace(m, c);
  } else {
    it->second = fe_add(it->second, c);
    if (it->second.is_zero()) p.terms.erase(it);
  }
}

}  // namespace

int grevlex_cmp(const Mono& a, const Mono& b) {
  if (a.size() != b.size()) throw input_error("polyalg: exponent length mismatch");
  int da = mono_degree(a), db = mono_degree(b);
  if (da != db) return da < db ? -1 : 1;
  for (size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  }
  return 0;
}

SparsePoly sp_zero(const FieldPtr& f, const std::vector<std::string>& vars) {
  SparsePoly p;
  p.field = f;
  p.vars = vars;
  return p;
}

SparsePoly sp_const(const FieldPtr& f, const std::vector<std::string>& vars,
                    const FieldElement& c) {
  SparsePoly p = sp_zero(f, vars);
  add_term(p, Mono(vars.size(), 0), c);
  return p;
}

SparsePoly sp_const_int(const FieldPtr& f, const std::vector<std::string>& vars,
                        long long c) {
  return sp_const(f, vars, fe_from_int(f, c));
}

SparsePoly sp_var(const FieldPtr& f, const std::vector<std::string>& vars,
                  int index, int power) {
  if (index < 0 || static_cast<size_t>(index) >= vars.size())
    throw input_error("polyalg: variable index out of range");
  if (power < 0) throw input_error("polyalg: negative exponent");
  SparsePoly p = sp_zero(f, vars);
  Mono m(vars.size(), 0);
  m[index] = power;
  add_term(p, m, fe_one(f));
  return p;
}

SparsePoly sp_monomial(const FieldPtr& f, const std::vector<std::string>& vars,
                       const FieldElement& c, const Mono& m) {
  if (m.size() != vars.size()) throw input_error("polyalg: exponent length mismatch");
  SparsePoly p = sp_zero(f, vars);
  add_term(p, m, c);
  return p;
}

void sp_check_compatible(const SparsePoly& a, const SparsePoly& b) {
  if (!a.field->same(*b.field) || a.vars != b.vars)
    throw input_error("polyalg: polynomials live in different rings");
}

SparsePoly sp_add(const SparsePoly& a, const SparsePoly& b) {
  sp_check_compatible(a, b);
  SparsePoly r = a;
  for (const auto& [m, c] : b.terms) add_term(r, m, c);
  return r;
}

SparsePoly sp_neg(const SparsePoly& a) {
  SparsePoly r = a;
  for (auto& [m, c] : r.terms) c = fe_neg(c);
  return r;
}

SparsePoly sp_sub(const SparsePoly& a, const SparsePoly& b) {
  return sp_add(a, sp_neg(b));
}

SparsePoly sp_mul(const SparsePoly& a, const SparsePoly& b) {
  sp_check_compatible(a, b);
  SparsePoly r = sp_zero(a.field, a.vars);
  for (const auto& [ma, ca] : a.terms)
    for (const auto& [mb, cb] : b.terms)
      add_term(r, mono_mul(ma, mb), fe_mul(ca, cb));
  return r;
}

SparsePoly sp_scale(const SparsePoly& a, const FieldElement& c) {
  SparsePoly r = sp_zero(a.field, a.vars);
  for (const auto& [m, cm] : a.terms) add_term(r, m, fe_mul(cm, c));
  return r;
}

SparsePoly sp_scale_int(const SparsePoly& a, long long c) {
  return sp_scale(a, fe_from_int(a.field, c));
}

SparsePoly sp_pow(const SparsePoly& a, int e) {
  if (e < 0) throw input_error("polyalg: negative power");
  SparsePoly r = sp_const(a.field, a.vars, fe_one(a.field));
  for (int i = 0; i < e; ++i) r = sp_mul(r, a);
  return r;
}

bool sp_eq(const SparsePoly& a, const SparsePoly& b) {
  sp_check_compatible(a, b);
  if (a.terms.size() != b.terms.size()) return false;
  auto ia = a.terms.begin();
  auto ib = b.terms.begin();
  for (; ia != a.terms.end(); ++ia, ++ib)
    if (ia->first != ib->first || !fe_eq(ia->second, ib->second)) return false;
  return true;
}

Mono sp_leading_mono(const SparsePoly& a) {
  if (a.is_zero()) throw input_error("polyalg: zero polynomial has no leading term");
  return a.terms.begin()->first;
}

FieldElement sp_leading_coeff(const SparsePoly& a) {
  if (a.is_zero()) throw input_error("polyalg: zero polynomial has no leading term");
  return a.terms.begin()->second;
}

SparsePoly sp_monic(const SparsePoly& a) {
  if (a.is_zero()) return a;
  return sp_scale(a, fe_inv(sp_leading_coeff(a)));
}

int sp_total_degree(const SparsePoly& a) {
  if (a.is_zero()) return -1;
  return mono_degree(a.terms.begin()->first);
}

bool sp_is_homogeneous(const SparsePoly& a, const std::vector<int>& var_subset,
                       int degree) {
  for (const auto& [m, c] : a.terms) {
    int d = 0;
    for (int i : var_subset) d += m[i];
    if (d != degree) return false;
  }
  return true;
}

SparsePoly sp_derivative(const SparsePoly& a, int var_index) {
  SparsePoly r = sp_zero(a.field, a.vars);
  for (const auto& [m, c] : a.terms) {
    int e = m[var_index];
    if (e == 0) continue;
    Mono d = m;
    d[var_index] = e - 1;
    add_term(r, d, fe_mul(c, fe_from_int(a.field, e)));
  }
  return r;
}

FieldElement sp_eval(const SparsePoly& a, const std::vector<FieldElement>& point) {
  if (point.size() != a.vars.size())
    throw input_error("polyalg: evaluation point has wrong arity");
  FieldElement acc = fe_zero(a.field);
  for (const auto& [m, c] : a.terms) {
    FieldElement t = c;
    for (size_t i = 0; i < m.size(); ++i)
      for (int e = 0; e < m[i]; ++e) t = fe_mul(t, point[i]);
    acc = fe_add(acc, t);
  }
  return acc;
}

FieldElement sp_coeff(const SparsePoly& a, const Mono& m) {
  auto it = a.terms.find(m);
  return it == a.terms.end() ? fe_zero(a.field) : it->second;
}

SparsePoly sp_map_field(const SparsePoly& a, const FieldPtr& f) {
  SparsePoly r = sp_zero(f, a.vars);
  for (const auto& [m, c] : a.terms) {
    if (a.field->same(*f)) {
      add_term(r, m, c);
    } else if (a.field->is_rationals()) {
      add_term(r, m, fe_from_mpq(f, c.rat));
    } else {
      throw input_error("polyalg: can only move coefficients from the rationals");
    }
  }
  return r;
}

std::string sp_to_text(const SparsePoly& a) {
  if (a.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : a.terms) {
    FieldElement coeff = c;
    std::string ct = fe_to_text(coeff);
    bool negative = !ct.empty() && ct[0] == '-';
    if (first) {
      if (negative) out << "-";
      first = false;
    } else {
      out << (negative ? " - " : " + ");
    }
    if (negative) {
      coeff = fe_neg(coeff);
      ct = fe_to_text(coeff);
    }
    std::vector<std::string> factors;
    for (size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (m[i] == 1)
        factors.push_back(a.vars[i]);
      else
        factors.push_back(a.vars[i] + "^" + std::to_string(m[i]));
    }
    if (factors.empty()) {
      out << ct;
    } else {
      bool unit = coeff.is_one();
      if (!unit) out << ct << "*";
      for (size_t i = 0; i < factors.size(); ++i) {
        if (i) out << "*";
        out << factors[i];
      }
    }
  }
  return out.str();
}

namespace {

struct TermLexer {
  const std::string& s;
  size_t i = 0;

  explicit TermLexer(const std::string& text) : s(text) {}
  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool done() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
};

std::string read_number(TermLexer& lx) {
  lx.skip_ws();
  size_t start = lx.i;
  while (lx.i < lx.s.size() &&
         (std::isdigit(static_cast<unsigned char>(lx.s[lx.i])) || lx.s[lx.i] == '/'))
    ++lx.i;
  if (lx.i == start) throw input_error("polyalg: expected a number in polynomial text");
  return lx.s.substr(start, lx.i - start);
}

std::string read_name(TermLexer& lx) {
  lx.skip_ws();
  size_t start = lx.i;
  while (lx.i < lx.s.size() &&
         (std::isalnum(static_cast<unsigned char>(lx.s[lx.i])) || lx.s[lx.i] == '_')) {
    if (std::isdigit(static_cast<unsigned char>(lx.s[lx.i])) && lx.i == start) break;
    ++lx.i;
  }
  if (lx.i == start) throw input_error("polyalg: expected a variable name");
  return lx.s.substr(start, lx.i - start);
}

}  // namespace

SparsePoly sp_parse(const FieldPtr& f, const std::vector<std::string>& vars,
                    const std::string& text) {
  SparsePoly result = sp_zero(f, vars);
  TermLexer lx(text);
  bool expect_term = true;
  int sign = 1;
  while (!lx.done()) {
    char ch = lx.peek();
    if (ch == '+' || ch == '-') {
      if (expect_term && ch == '+') throw input_error("polyalg: stray sign");
      sign = ch == '-' ? (expect_term ? -sign : -1) : (expect_term ? sign : 1);
      ++lx.i;
      expect_term = true;
      continue;
    }
    // one term: optional coefficient, then *-separated variable powers
    FieldElement coeff = fe_one(f);
    bool saw_any = false;
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      coeff = fe_parse(f, read_number(lx));
      saw_any = true;
    }
    Mono m(vars.size(), 0);
    while (true) {
      char nx = lx.peek();
      if (nx == '*') {
        ++lx.i;
        nx = lx.peek();
      } else if (saw_any) {
        break;
      }
      if (!std::isalpha(static_cast<unsigned char>(nx)) && nx != '_') {
        if (!saw_any) throw input_error("polyalg: empty term");
        break;
      }
      std::string name = read_name(lx);
      auto it = std::find(vars.begin(), vars.end(), name);
      if (it == vars.end())
        throw input_error("polyalg: unknown variable '" + name + "'");
      int e = 1;
      if (lx.peek() == '^') {
        ++lx.i;
        e = std::stoi(read_number(lx));
      }
      m[it - vars.begin()] += e;
      saw_any = true;
    }
    if (sign < 0) coeff = fe_neg(coeff);
    add_term(result, m, coeff);
    sign = 1;
    expect_term = false;
  }
  if (expect_term && !result.is_zero())
    throw input_error("polyalg: dangling sign at end of polynomial");
  return result;
}

IdealData make_ideal(std::vector<SparsePoly> gens) {
  if (gens.empty()) throw input_error("polyalg: ideal needs at least one generator");
  IdealData ideal;
  ideal.field = gens.front().field;
  ideal.vars = gens.front().vars;
  for (const auto& g : gens) sp_check_compatible(gens.front(), g);
  ideal.gens = std::move(gens);
  return ideal;
}

SparsePoly normal_form(const SparsePoly& f, const std::vector<SparsePoly>& basis) {
  SparsePoly rem = sp_zero(f.field, f.vars);
  SparsePoly work = f;
  while (!work.is_zero()) {
    Mono lm = sp_leading_mono(work);
    FieldElement lc = sp_leading_coeff(work);
    bool reduced = false;
    for (const SparsePoly& g : basis) {
      if (g.is_zero()) continue;
      const Mono& gm = sp_leading_mono(g);
      if (!mono_divides(gm, lm)) continue;
      FieldElement factor = fe_div(lc, sp_leading_coeff(g));
      SparsePoly t = sp_monomial(f.field, f.vars, factor, mono_div(lm, gm));
      work = sp_sub(work, sp_mul(t, g));
      reduced = true;
      break;
    }
    if (!reduced) {
      add_term(rem, lm, lc);
      work.terms.erase(lm);
    }
  }
  return rem;
}

namespace {

SparsePoly s_polynomial(const SparsePoly& f, const SparsePoly& g) {
  Mono lcm = mono_lcm(sp_leading_mono(f), sp_leading_mono(g));
  SparsePoly tf = sp_monomial(f.field, f.vars, fe_inv(sp_leading_coeff(f)),
                              mono_div(lcm, sp_leading_mono(f)));
  SparsePoly tg = sp_monomial(g.field, g.vars, fe_inv(sp_leading_coeff(g)),
                              mono_div(lcm, sp_leading_mono(g)));
  return sp_sub(sp_mul(tf, f), sp_mul(tg, g));
}

}  // namespace

IdealData groebner(const IdealData& ideal, const GroebnerOptions& opt) {
  std::vector<SparsePoly> basis;
  for (const SparsePoly& g : ideal.gens)
    if (!g.is_zero()) basis.push_back(sp_monic(g));
  if (basis.empty()) throw input_error("polyalg: Groebner basis of the zero ideal");

  struct Pair {
    Mono lcm;
    size_t i, j;
  };
  auto pair_less = [](const Pair& a, const Pair& b) {
    int c = grevlex_cmp(a.lcm, b.lcm);
    if (c != 0) return c < 0;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  };
  std::vector<Pair> queue;
  std::set<std::pair<size_t, size_t>> treated;
  auto push_pairs_for = [&](size_t j) {
    for (size_t i = 0; i < j; ++i)
      queue.push_back({mono_lcm(sp_leading_mono(basis[i]), sp_leading_mono(basis[j])), i, j});
  };
  for (size_t j = 1; j < basis.size(); ++j) push_pairs_for(j);

  long long processed = 0;
  while (!queue.empty()) {
    auto it = std::min_element(queue.begin(), queue.end(), pair_less);
    Pair pr = *it;
    queue.erase(it);
    treated.insert({pr.i, pr.j});
    if (++processed > opt.max_pairs)
      throw resource_error("polyalg: Groebner pair budget exhausted after " +
                           std::to_string(processed - 1) + " pairs with basis size " +
                           std::to_string(basis.size()));
    const Mono& mi = sp_leading_mono(basis[pr.i]);
    const Mono& mj = sp_leading_mono(basis[pr.j]);
    if (mono_coprime(mi, mj)) continue;
    bool chained = false;
    for (size_t k = 0; k < basis.size() && !chained; ++k) {
      if (k == pr.i || k == pr.j) continue;
      if (!mono_divides(sp_leading_mono(basis[k]), pr.lcm)) continue;
      auto key1 = std::minmax(pr.i, k);
      auto key2 = std::minmax(pr.j, k);
      if (treated.count({key1.first, key1.second}) &&
          treated.count({key2.first, key2.second}))
        chained = true;
    }
    if (chained) continue;
    SparsePoly s = normal_form(s_polynomial(basis[pr.i], basis[pr.j]), basis);
    if (s.is_zero()) continue;
    if (sp_total_degree(s) > opt.max_degree)
      throw resource_error("polyalg: Groebner degree cap exceeded at degree " +
                           std::to_string(sp_total_degree(s)));
    basis.push_back(sp_monic(s));
    if (static_cast<long long>(basis.size()) > opt.max_basis)
      throw resource_error("polyalg: Groebner basis size cap exceeded");
    push_pairs_for(basis.size() - 1);
  }

  // minimalize: drop elements whose leading monomial another one divides
  std::vector<SparsePoly> minimal;
  for (size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j) continue;
      const Mono& mj = sp_leading_mono(basis[j]);
      const Mono& mi = sp_leading_mono(basis[i]);
      if (mono_divides(mj, mi) && (mi != mj || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(basis[i]);
  }
  // inter-reduce to the unique reduced basis
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < minimal.size(); ++i) {
      std::vector<SparsePoly> others;
      for (size_t j = 0; j < minimal.size(); ++j)
        if (j != i) others.push_back(minimal[j]);
      SparsePoly r = normal_form(minimal[i], others);
      if (!sp_eq(r, minimal[i])) {
        if (r.is_zero()) {
          minimal.erase(minimal.begin() + i);
          changed = true;
          break;
        }
        minimal[i] = sp_monic(r);
        changed = true;
      }
    }
  }
  std::sort(minimal.begin(), minimal.end(), [](const SparsePoly& a, const SparsePoly& b) {
    return grevlex_cmp(sp_leading_mono(a), sp_leading_mono(b)) < 0;
  });

  IdealData out;
  out.field = ideal.field;
  out.vars = ideal.vars;
  out.gens = std::move(minimal);
  return out;
}

bool ideal_member(const SparsePoly& f, const IdealData& reduced_basis) {
  return normal_form(f, reduced_basis.gens).is_zero();
}

bool radical_member(const SparsePoly& f, const IdealData& ideal,
                    const GroebnerOptions& opt) {
  std::vector<std::string> xvars = ideal.vars;
  std::string extra = "_w";
  while (std::find(xvars.begin(), xvars.end(), extra) != xvars.end()) extra += "w";
  xvars.push_back(extra);

  auto lift = [&](const SparsePoly& g) {
    SparsePoly out = sp_zero(g.field, xvars);
    for (const auto& [m, c] : g.terms) {
      Mono mm = m;
      mm.push_back(0);
      out.terms.emplace(mm, c);
    }
    return out;
  };
  std::vector<SparsePoly> gens;
  for (const SparsePoly& g : ideal.gens) gens.push_back(lift(g));
  SparsePoly one = sp_const(ideal.field, xvars, fe_one(ideal.field));
  SparsePoly wf = sp_mul(sp_var(ideal.field, xvars, static_cast<int>(xvars.size()) - 1),
                         lift(f));
  gens.push_back(sp_sub(one, wf));
  IdealData gb = groebner(make_ideal(std::move(gens)), opt);
  return gb.gens.size() == 1 && !gb.gens.front().is_zero() &&
         mono_degree(sp_leading_mono(gb.gens.front())) == 0;
}

bool projective_smooth(const SparsePoly& F, const GroebnerOptions& opt) {
  if (F.is_zero()) throw input_error("polyalg: smoothness of the zero form");
  if (F.vars.size() < 2)
    throw input_error("polyalg: projective smoothness needs at least 2 variables");
  int deg = sp_total_degree(F);
  std::vector<int> all_vars(F.vars.size());
  std::iota(all_vars.begin(), all_vars.end(), 0);
  if (!sp_is_homogeneous(F, all_vars, deg))
    throw input_error("polyalg: smoothness test needs a homogeneous form");

  std::vector<SparsePoly> gens{F};
  for (size_t i = 0; i < F.vars.size(); ++i) {
    SparsePoly d = sp_derivative(F, static_cast<int>(i));
    if (!d.is_zero()) gens.push_back(d);
  }
  IdealData gb = groebner(make_ideal(std::move(gens)), opt);
  // the singular cone is {0} iff each variable has a pure power among the
  // leading monomials
  for (size_t v = 0; v < F.vars.size(); ++v) {
    bool found = false;
    for (const SparsePoly& g : gb.gens) {
      const Mono& m = sp_leading_mono(g);
      bool pure = m[v] > 0;
      for (size_t i = 0; i < m.size() && pure; ++i)
        if (i != v && m[i] != 0) pure = false;
      if (pure) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

RadicalContainmentReport radical_containment_report(const IdealData& ideal,
                                                    const std::vector<int>& target_vars,
                                                    const GroebnerOptions& opt) {
  RadicalContainmentReport rep;
  rep.contains_all = true;
  for (int v : target_vars) {
    if (v < 0 || static_cast<size_t>(v) >= ideal.vars.size())
      throw input_error("polyalg: target variable index out of range");
    bool in = radical_member(sp_var(ideal.field, ideal.vars, v), ideal, opt);
    rep.per_target[ideal.vars[v]] = in;
    rep.contains_all = rep.contains_all && in;
  }
  return rep;
}

namespace {

const std::vector<std::string> kXYZ{"x", "y", "z"};
const std::vector<std::string> kFisherVars{"x", "y", "z", "t", "a", "b"};

// c * x^ex y^ey z^ez t^et a^ea b^eb over the Fisher variable list
SparsePoly fterm(long long c, int ex, int ey, int ez, int et, int ea, int eb) {
  FieldPtr f = FieldDescriptor::rationals();
  return sp_monomial(f, kFisherVars, fe_from_int(f, c), Mono{ex, ey, ez, et, ea, eb});
}

SparsePoly klein_form() {
  FieldPtr f = FieldDescriptor::rationals();
  auto mono = [&](int ex, int ey, int ez) {
    return sp_monomial(f, kXYZ, fe_one(f), Mono{ex, ey, ez});
  };
  return sp_add(sp_add(mono(3, 1, 0), mono(0, 3, 1)), mono(1, 0, 3));
}

SparsePoly hk_105a2_form() {
  FieldPtr f = FieldDescriptor::rationals();
  auto V = [&](int i) { return sp_var(f, kXYZ, i); };
  SparsePoly x = V(0), y = V(1), z = V(2);
  SparsePoly b1 = sp_sub(sp_mul(sp_add(y, z), sp_pow(x, 3)),
                         sp_scale_int(sp_mul(sp_mul(sp_pow(x, 2), y), z), 3));
  SparsePoly b2 = sp_sub(sp_mul(sp_add(z, x), sp_pow(y, 3)),
                         sp_scale_int(sp_mul(sp_mul(sp_pow(y, 2), x), z), 3));
  SparsePoly b3 = sp_sub(sp_mul(sp_add(x, y), sp_pow(z, 3)),
                         sp_scale_int(sp_mul(sp_mul(sp_pow(z, 2), x), y), 3));
  return sp_add(sp_sub(sp_scale_int(b1, 144), sp_scale_int(b2, 189)),
                sp_scale_int(b3, 45));
}

SparsePoly hk_105a2_min_form() {
  FieldPtr f = FieldDescriptor::rationals();
  auto T = [&](long long c, int ex, int ey, int ez) {
    return sp_monomial(f, kXYZ, fe_from_int(f, c), Mono{ex, ey, ez});
  };
  SparsePoly p = sp_zero(f, kXYZ);
  for (const SparsePoly& t :
       {T(1, 3, 1, 0), T(-3, 2, 2, 0), T(-3, 2, 1, 1), T(3, 2, 0, 2), T(4, 1, 3, 0),
        T(6, 1, 2, 1), T(-9, 1, 1, 2), T(7, 1, 0, 3), T(-4, 0, 4, 0), T(9, 0, 3, 1),
        T(-3, 0, 2, 2), T(-2, 0, 1, 3), T(-6, 0, 0, 4)})
    p = sp_add(p, t);
  return p;
}

// (4a^3 + 27b^2), (2a^3 + 9b^2), (a^3 + 9b^2), (2a^3 + 15b^2), (a^3 + 6b^2)
SparsePoly ab_form(long long ca, long long cb) {
  return sp_add(fterm(ca, 0, 0, 0, 0, 3, 0), fterm(cb, 0, 0, 0, 0, 0, 2));
}

SparsePoly fisher_c1p() {
  SparsePoly p = sp_zero(FieldDescriptor::rationals(), kFisherVars);
  for (const SparsePoly& t : {
           fterm(3, 2, 1, 0, 0, 0, 0),     // 3x^2y
           fterm(-9, 1, 0, 2, 0, 0, 1),    // -9bxz^2
           fterm(6, 1, 0, 1, 1, 2, 0),     // 6a^2xzt
           fterm(9, 1, 0, 0, 2, 1, 1),     // 9abxt^2
           fterm(-9, 0, 3, 0, 0, 1, 0),    // -9ay^3
           fterm(-54, 0, 2, 1, 0, 0, 1),   // -54by^2z
           fterm(18, 0, 2, 0, 1, 2, 0),    // 18a^2y^2t
           fterm(9, 0, 1, 2, 0, 2, 0),     // 9a^2yz^2
           fterm(54, 0, 1, 1, 1, 1, 1),    // 54abyzt
           fterm(-9, 0, 1, 0, 2, 3, 0),    // -9a^3yt^2
           // 2a(a^3 + 9b^2)t^3
           sp_mul(sp_mul(fterm(2, 0, 0, 0, 3, 1, 0), ab_form(1, 9)),
                  sp_const_int(FieldDescriptor::rationals(), kFisherVars, 1)),
       })
    p = sp_add(p, t);
  return p;
}

SparsePoly fisher_c2p() {
  SparsePoly p = sp_zero(FieldDescriptor::rationals(), kFisherVars);
  for (const SparsePoly& t : {
           fterm(-1, 3, 0, 0, 0, 0, 0),    // -x^3
           fterm(-6, 2, 0, 1, 0, 1, 0),    // -6ax^2z
           fterm(-9, 1, 2, 0, 0, 1, 0),    // -9axy^2
           fterm(108, 1, 1, 1, 0, 0, 1),   // 108bxyz
           fterm(-9, 1, 0, 2, 0, 2, 0),    // -9a^2xz^2
           fterm(-54, 1, 0, 1, 1, 1, 1),   // -54abxzt
           fterm(-3, 1, 0, 0, 2, 3, 0),    // -3a^3xt^2
           fterm(108, 0, 3, 0, 0, 0, 1),   // 108by^3
           fterm(-162, 0, 2, 0, 1, 1, 1),  // -162aby^2t
           fterm(27, 0, 1, 2, 0, 1, 1),    // 27abyz^2
           fterm(-18, 0, 1, 1, 1, 3, 0),   // -18a^3yzt
           fterm(81, 0, 1, 0, 2, 2, 1),    // 81a^2byt^2
           sp_mul(fterm(-6, 0, 0, 3, 0, 0, 0), ab_form(1, 9)),  // -6(a^3+9b^2)z^3
           fterm(-24, 0, 0, 0, 3, 3, 1),   // -24a^3bt^3
       })
    p = sp_add(p, t);
  return p;
}

SparsePoly fisher_c1m() {
  SparsePoly p = sp_zero(FieldDescriptor::rationals(), kFisherVars);
  for (const SparsePoly& t : {
           fterm(9, 3, 0, 0, 0, 0, 1),    // 9bx^3
           fterm(6, 2, 0, 1, 0, 2, 0),    // 6a^2x^2z
           fterm(9, 2, 0, 0, 1, 1, 1),    // 9abx^2t
           sp_mul(fterm(6, 1, 1, 0, 1, 0, 0), ab_form(4, 27)),  // 6(4a^3+27b^2)xyt
           fterm(-9, 1, 0, 2, 0, 1, 1),   // -9abxz^2
           sp_mul(fterm(6, 1, 0, 1, 1, 0, 0), ab_form(2, 9)),   // 6(2a^3+9b^2)xzt
           fterm(3, 1, 0, 0, 2, 2, 1),    // 3a^2bxt^2
           sp_mul(fterm(6, 0, 3, 0, 0, 0, 0), ab_form(4, 27)),  // 6(4a^3+27b^2)y^3
           sp_mul(fterm(9, 0, 2, 1, 0, 0, 0), ab_form(4, 27)),  // 9(4a^3+27b^2)y^2z
           sp_mul(fterm(6, 0, 1, 2, 0, 0, 0), ab_form(4, 27)),  // 6(4a^3+27b^2)yz^2
           sp_mul(fterm(3, 0, 0, 3, 0, 0, 0), ab_form(2, 15)),  // 3(2a^3+15b^2)z^3
           fterm(-3, 0, 0, 2, 1, 2, 1),   // -3a^2bz^2t
           sp_mul(fterm(1, 0, 0, 1, 2, 1, 0), ab_form(2, 9)),   // a(2a^3+9b^2)zt^2
           sp_mul(fterm(3, 0, 0, 0, 3, 0, 1), ab_form(1, 6)),   // 3b(a^3+6b^2)t^3
       })
    p = sp_add(p, t);
  return p;
}

SparsePoly fisher_c2m() {
  SparsePoly p = sp_zero(FieldDescriptor::rationals(), kFisherVars);
  for (const SparsePoly& t : {
           fterm(6, 3, 0, 0, 0, 2, 0),     // 6a^2x^3
           fterm(-27, 2, 0, 1, 0, 1, 1),   // -27abx^2z
           sp_mul(fterm(-18, 2, 0, 0, 1, 0, 0), ab_form(1, 9)),   // -18(a^3+9b^2)x^2t
           sp_mul(fterm(-27, 1, 2, 0, 0, 0, 0), ab_form(4, 27)),  // -27(4a^3+27b^2)xy^2
           sp_mul(fterm(-18, 1, 1, 1, 0, 0, 0), ab_form(4, 27)),  // -18(4a^3+27b^2)xyz
           sp_mul(fterm(-9, 1, 0, 2, 0, 0, 0), ab_form(2, 9)),    // -9(2a^3+9b^2)xz^2
           fterm(-18, 1, 0, 1, 1, 2, 1),   // -18a^2bxzt
           sp_mul(fterm(3, 1, 0, 0, 2, 1, 0), ab_form(2, 9)),     // 3a(2a^3+9b^2)xt^2
           sp_mul(fterm(9, 0, 2, 0, 1, 1, 0), ab_form(4, 27)),    // 9a(4a^3+27b^2)y^2t
           sp_mul(fterm(-18, 0, 1, 0, 2, 0, 1), ab_form(4, 27)),  // -18b(4a^3+27b^2)yt^2
           fterm(3, 0, 0, 3, 0, 2, 1),     // 3a^2bz^3
           sp_mul(fterm(-3, 0, 0, 2, 1, 1, 0), ab_form(2, 9)),    // -3a(2a^3+9b^2)z^2t
           sp_mul(fterm(-27, 0, 0, 1, 2, 0, 1), ab_form(1, 6)),   // -27b(a^3+6b^2)zt^2
           sp_mul(fterm(-1, 0, 0, 0, 3, 2, 0), ab_form(2, 15)),   // -a^2(2a^3+15b^2)t^3
       })
    p = sp_add(p, t);
  return p;
}

}  // namespace

const std::vector<std::string>& form_registry_names() {
  static const std::vector<std::string> names{
      "klein",       "hk-105a2",    "hk-105a2-min", "fisher9-c1p",
      "fisher9-c2p", "fisher9-c1m", "fisher9-c2m"};
  return names;
}

SparsePoly registry_form(const std::string& name) {
  if (name == "klein") return klein_form();
  if (name == "hk-105a2") return hk_105a2_form();
  if (name == "hk-105a2-min") return hk_105a2_min_form();
  if (name == "fisher9-c1p") return fisher_c1p();
  if (name == "fisher9-c2p") return fisher_c2p();
  if (name == "fisher9-c1m") return fisher_c1m();
  if (name == "fisher9-c2m") return fisher_c2m();
  throw input_error("polyalg: unknown registry form '" + name + "'");
}

std::vector<Fisher9Entry> structural_checks_fisher9() {
  std::vector<Fisher9Entry> out;
  for (const char* name : {"fisher9-c1p", "fisher9-c2p", "fisher9-c1m", "fisher9-c2m"}) {
    SparsePoly p = registry_form(name);
    Fisher9Entry e;
    e.name = name;
    e.homogeneous_deg3_xyzt = sp_is_homogeneous(p, {0, 1, 2, 3}, 3);
    e.integer_coefficients = true;
    e.term_count = p.terms.size();
    for (const auto& [m, c] : p.terms) {
      if (c.rat.get_den() != 1) e.integer_coefficients = false;
      Mono xyzt{m[0], m[1], m[2], m[3]};
      e.profile[xyzt].push_back("a^" + std::to_string(m[4]) + "*b^" +
                                std::to_string(m[5]) + ":" + fe_to_text(c));
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace levellab
