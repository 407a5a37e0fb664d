#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "levellab/errors.hpp"
#include "levellab/gmputil.hpp"
#include "levellab/polyalg.hpp"

namespace levellab {

namespace {

std::vector<std::array<int, 3>> ternary_monomials(int degree) {
  std::vector<std::array<int, 3>> out;
  for (int a = degree; a >= 0; --a)
    for (int b = degree - a; b >= 0; --b)
      out.push_back({a, b, degree - a - b});
  return out;
}

bool coords_fixed_by(const std::vector<FieldElement>& pt, int j) {
  for (const FieldElement& c : pt)
    if (!fe_eq(fe_frobenius(c, j), c)) return false;
  return true;
}

}  // namespace

std::optional<std::vector<FieldElement>> singular_point_search(const SparsePoly& F,
                                                               int j_max) {
  if (F.is_zero()) throw input_error("polyalg: point search on the zero form");
  if (!F.field->is_finite() || F.field->k != 1)
    throw input_error("polyalg: point search needs a prime base field");
  if (F.vars.size() != 3)
    throw input_error("polyalg: point search handles ternary forms");
  int deg = sp_total_degree(F);
  if (!sp_is_homogeneous(F, {0, 1, 2}, deg))
    throw input_error("polyalg: point search needs a homogeneous form");

  long long p = F.field->p;
  std::vector<SparsePoly> polys{F};
  for (int v = 0; v < 3; ++v) {
    SparsePoly d = sp_derivative(F, v);
    if (!d.is_zero()) polys.push_back(d);
  }

  for (int j = 1; j <= j_max; ++j) {
    FieldPtr fj = FieldDescriptor::finite(p, j);
    std::vector<SparsePoly> lifted;
    for (const SparsePoly& g : polys) {
      SparsePoly lg = sp_zero(fj, g.vars);
      for (const auto& [m, c] : g.terms)
        lg = sp_add(lg, sp_monomial(fj, g.vars, fe_from_int(fj, c.c[0]), m));
      lifted.push_back(lg);
    }
    long long q = 1;
    for (int i = 0; i < j; ++i) q *= p;
    auto vanish_all = [&](const std::vector<FieldElement>& pt) {
      for (const SparsePoly& g : lifted)
        if (!sp_eval(g, pt).is_zero()) return false;
      return true;
    };
    // normalized representatives (1,a,b), (0,1,a), (0,0,1)
    for (long long ia = 0; ia < q; ++ia) {
      FieldElement a = fe_at_index(fj, mpz_of(ia));
      for (long long ib = 0; ib < q; ++ib) {
        std::vector<FieldElement> pt{fe_one(fj), a, fe_at_index(fj, mpz_of(ib))};
        if (vanish_all(pt)) return pt;
      }
    }
    for (long long ia = 0; ia < q; ++ia) {
      std::vector<FieldElement> pt{fe_zero(fj), fe_one(fj), fe_at_index(fj, mpz_of(ia))};
      if (vanish_all(pt)) return pt;
    }
    std::vector<FieldElement> pt{fe_zero(fj), fe_zero(fj), fe_one(fj)};
    if (vanish_all(pt)) return pt;
  }
  return std::nullopt;
}

namespace {

struct CensusTables {
  long long p;
  int degree;
  int n;                                      // number of monomials
  std::vector<std::array<int, 3>> monos;
  std::map<std::array<int, 3>, int> mono_index;
  long long total;                            // p^n
};

CensusTables make_tables(long long p, int degree) {
  CensusTables t;
  t.p = p;
  t.degree = degree;
  t.monos = ternary_monomials(degree);
  t.n = static_cast<int>(t.monos.size());
  for (int i = 0; i < t.n; ++i) t.mono_index[t.monos[i]] = i;
  t.total = 1;
  for (int i = 0; i < t.n; ++i) t.total *= p;
  return t;
}

void decode_form(const CensusTables& t, long long idx, int* digits) {
  for (int i = 0; i < t.n; ++i) {
    digits[i] = static_cast<int>(idx % t.p);
    idx /= t.p;
  }
}

long long encode_form(const CensusTables& t, const int* digits) {
  long long idx = 0;
  for (int i = t.n - 1; i >= 0; --i) idx = idx * t.p + digits[i];
  return idx;
}

struct Bitset {
  std::vector<uint64_t> words;
  explicit Bitset(long long bits) : words((bits + 63) / 64, 0) {}
  bool get(long long i) const { return (words[i >> 6] >> (i & 63)) & 1; }
  void set(long long i) { words[i >> 6] |= uint64_t{1} << (i & 63); }
};

// sparse row per source monomial: (target monomial, coefficient) pairs for
// the substitution x_i <- sum_j A[i][j] x_j
using SubstTable = std::vector<std::vector<std::pair<int, int>>>;

SubstTable build_subst(const CensusTables& t, const std::array<std::array<int, 3>, 3>& A) {
  SubstTable table(t.n);
  using Poly3 = std::map<std::array<int, 3>, long long>;
  std::array<Poly3, 3> images;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (A[i][j] % t.p != 0) {
        std::array<int, 3> e{0, 0, 0};
        e[j] = 1;
        images[i][e] = ((A[i][j] % t.p) + t.p) % t.p;
      }
  auto mul = [&](const Poly3& a, const Poly3& b) {
    Poly3 r;
    for (const auto& [ma, ca] : a)
      for (const auto& [mb, cb] : b) {
        std::array<int, 3> m{ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]};
        r[m] = (r[m] + ca * cb) % t.p;
      }
    for (auto it = r.begin(); it != r.end();)
      it = it->second == 0 ? r.erase(it) : std::next(it);
    return r;
  };
  for (int m = 0; m < t.n; ++m) {
    Poly3 acc;
    acc[{0, 0, 0}] = 1;
    for (int v = 0; v < 3; ++v)
      for (int e = 0; e < t.monos[m][v]; ++e) acc = mul(acc, images[v]);
    for (const auto& [mono, c] : acc)
      table[m].push_back({t.mono_index.at(mono), static_cast<int>(c)});
  }
  return table;
}

void apply_subst(const CensusTables& t, const SubstTable& table, const int* in,
                 int* out) {
  for (int i = 0; i < t.n; ++i) out[i] = 0;
  for (int m = 0; m < t.n; ++m) {
    if (in[m] == 0) continue;
    for (const auto& [tm, c] : table[m]) out[tm] = (out[tm] + in[m] * c) % static_cast<int>(t.p);
  }
}

long long gl3_order(long long p) {
  long long p3 = p * p * p;
  return (p3 - 1) * (p3 - p) * (p3 - p * p);
}

// closure of the generator set under multiplication must be all of GL3(F_p)
long long matrix_closure_size(long long p,
                              const std::vector<std::array<std::array<int, 3>, 3>>& gens) {
  auto encode = [&](const std::array<std::array<int, 3>, 3>& m) {
    long long idx = 0;
    for (int i = 2; i >= 0; --i)
      for (int j = 2; j >= 0; --j) idx = idx * p + ((m[i][j] % p) + p) % p;
    return idx;
  };
  auto matmul = [&](const std::array<std::array<int, 3>, 3>& a,
                    const std::array<std::array<int, 3>, 3>& b) {
    std::array<std::array<int, 3>, 3> r{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        int s = 0;
        for (int k = 0; k < 3; ++k) s += a[i][k] * b[k][j];
        r[i][j] = s % static_cast<int>(p);
      }
    return r;
  };
  std::array<std::array<int, 3>, 3> id{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  std::map<long long, std::array<std::array<int, 3>, 3>> seen;
  std::vector<std::array<std::array<int, 3>, 3>> queue{id};
  seen[encode(id)] = id;
  while (!queue.empty()) {
    auto m = queue.back();
    queue.pop_back();
    for (const auto& g : gens) {
      auto r = matmul(m, g);
      long long key = encode(r);
      if (!seen.count(key)) {
        seen[key] = r;
        queue.push_back(r);
      }
    }
  }
  return static_cast<long long>(seen.size());
}

long long primitive_root(long long p) {
  for (long long g = 2; g < p; ++g) {
    long long x = g % p;
    bool primitive = true;
    long long ord = 1;
    while (x != 1) {
      x = x * g % p;
      ++ord;
    }
    primitive = (ord == p - 1);
    if (primitive) return g;
  }
  return 1;  // p == 2
}

// rows of the singularity condition at P: F(P), Fx(P), Fy(P), Fz(P), each
// expanded into base-field coordinates; columns indexed by monomials
std::vector<std::vector<int>> point_condition_matrix(const CensusTables& t,
                                                     const std::vector<FieldElement>& pt) {
  const FieldPtr& fj = pt[0].f;
  int j = fj->k;
  std::vector<std::vector<int>> M(4 * j, std::vector<int>(t.n, 0));
  for (int m = 0; m < t.n; ++m) {
    const auto& e = t.monos[m];
    auto power_at = [&](int var, int drop) {
      FieldElement r = fe_one(fj);
      for (int v = 0; v < 3; ++v) {
        int ee = e[v] - (v == var ? drop : 0);
        for (int i = 0; i < ee; ++i) r = fe_mul(r, pt[v]);
      }
      return r;
    };
    FieldElement full = power_at(-1, 0);
    std::array<FieldElement, 4> vals{full, full, full, full};
    for (int v = 0; v < 3; ++v) {
      if (e[v] == 0) {
        vals[v + 1] = fe_zero(fj);
      } else {
        FieldElement base = power_at(v, 1);
        vals[v + 1] = fe_mul(base, fe_from_int(fj, e[v]));
      }
    }
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < j; ++c)
        M[r * j + c][m] = static_cast<int>(vals[r].c.size() > static_cast<size_t>(c)
                                               ? vals[r].c[c]
                                               : 0);
  }
  return M;
}

// mark every F_p-combination of the kernel of M into the bitset
void mark_kernel(const CensusTables& t, std::vector<std::vector<int>> M, Bitset& bits) {
  const int p = static_cast<int>(t.p);
  const int rows = static_cast<int>(M.size());
  const int cols = t.n;
  auto inv_mod = [&](int a) {
    for (int x = 1; x < p; ++x)
      if (a * x % p == 1) return x;
    throw internal_error("polyalg: no modular inverse");
  };
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int pr = -1;
    for (int i = r; i < rows; ++i)
      if (M[i][c] % p != 0) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    std::swap(M[r], M[pr]);
    int inv = inv_mod(((M[r][c] % p) + p) % p);
    for (int cc = 0; cc < cols; ++cc) M[r][cc] = ((M[r][cc] * inv) % p + p) % p;
    for (int i = 0; i < rows; ++i) {
      if (i == r || M[i][c] % p == 0) continue;
      int f = ((M[i][c] % p) + p) % p;
      for (int cc = 0; cc < cols; ++cc)
        M[i][cc] = ((M[i][cc] - f * M[r][cc]) % p + p) % p;
    }
    pivot_col.push_back(c);
    ++r;
  }
  const int rank = r;
  std::vector<int> is_pivot(cols, -1);
  for (int i = 0; i < rank; ++i) is_pivot[pivot_col[i]] = i;
  std::vector<int> free_cols;
  for (int c = 0; c < cols; ++c)
    if (is_pivot[c] < 0) free_cols.push_back(c);
  const int nf = static_cast<int>(free_cols.size());

  // kernel basis vector for each free column
  std::vector<std::vector<int>> basis(nf, std::vector<int>(cols, 0));
  for (int i = 0; i < nf; ++i) {
    int fcol = free_cols[i];
    basis[i][fcol] = 1;
    for (int rr = 0; rr < rank; ++rr)
      basis[i][pivot_col[rr]] = (p - M[rr][fcol] % p) % p;
  }

  std::vector<int> combo(nf, 0);
  std::vector<int> vec(cols, 0);
  while (true) {
    bits.set(encode_form(t, vec.data()));
    int i = 0;
    for (; i < nf; ++i) {
      ++combo[i];
      for (int c = 0; c < cols; ++c) vec[c] = (vec[c] + basis[i][c]) % p;
      if (combo[i] < p) break;
      combo[i] = 0;  // vec already wrapped around mod p
    }
    if (i == nf) break;
  }
}

SparsePoly form_from_digits(const CensusTables& t, const FieldPtr& f, const int* digits) {
  std::vector<std::string> vars{"x", "y", "z"};
  SparsePoly F = sp_zero(f, vars);
  for (int m = 0; m < t.n; ++m) {
    if (digits[m] == 0) continue;
    F = sp_add(F, sp_monomial(f, vars, fe_from_int(f, digits[m]),
                              Mono{t.monos[m][0], t.monos[m][1], t.monos[m][2]}));
  }
  return F;
}

}  // namespace

SmoothCensus smooth_census(long long p, int degree, const GroebnerOptions& opt) {
  if ((p != 2 && p != 3) || (degree != 3 && degree != 4))
    throw input_error("polyalg: census covers degrees 3 and 4 over F_2 and F_3");
  CensusTables t = make_tables(p, degree);
  FieldPtr fp = FieldDescriptor::finite(p, 1);

  SmoothCensus census;
  census.p = p;
  census.degree = degree;
  census.forms_total = t.total - 1;

  // exact oracle: a singular form of this degree has a singular point of
  // degree at most `degree`, so scanning points of P^2 over F_{p^j} for
  // j <= degree and marking each point's kernel of linear conditions
  // covers every singular coefficient vector
  Bitset singular(t.total);
  const int Jmax = degree;
  for (int j = 1; j <= Jmax; ++j) {
    FieldPtr fj = FieldDescriptor::finite(p, j);
    long long q = 1;
    for (int i = 0; i < j; ++i) q *= p;
    auto proper_subfield_point = [&](const std::vector<FieldElement>& pt) {
      for (int d = 1; d < j; ++d)
        if (j % d == 0 && coords_fixed_by(pt, d)) return true;
      return false;
    };
    auto galois_minimal = [&](const std::vector<FieldElement>& pt) {
      std::vector<mpz_class> self{fe_index(pt[0]), fe_index(pt[1]), fe_index(pt[2])};
      std::vector<FieldElement> c = pt;
      for (int s = 1; s < j; ++s) {
        for (auto& x : c) x = fe_frobenius(x, 1);
        std::vector<mpz_class> other{fe_index(c[0]), fe_index(c[1]), fe_index(c[2])};
        if (other < self) return false;
      }
      return true;
    };
    auto consider = [&](const std::vector<FieldElement>& pt) {
      if (j > 1 && proper_subfield_point(pt)) return;
      if (!galois_minimal(pt)) return;
      mark_kernel(t, point_condition_matrix(t, pt), singular);
    };
    for (long long ia = 0; ia < q; ++ia)
      for (long long ib = 0; ib < q; ++ib)
        consider({fe_one(fj), fe_at_index(fj, mpz_of(ia)), fe_at_index(fj, mpz_of(ib))});
    for (long long ia = 0; ia < q; ++ia)
      consider({fe_zero(fj), fe_one(fj), fe_at_index(fj, mpz_of(ia))});
    consider({fe_zero(fj), fe_zero(fj), fe_one(fj)});
  }
  for (long long i = 1; i < t.total; ++i)
    if (singular.get(i)) ++census.singular_forms;

  // GL3 orbit decomposition; verify the generators reach the whole group
  long long lambda = primitive_root(p);
  std::vector<std::array<std::array<int, 3>, 3>> gens{
      {{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}},
      {{{1, 0, 0}, {0, 1, 1}, {0, 0, 1}}},
      {{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}},
      {{{static_cast<int>(lambda), 0, 0}, {0, 1, 0}, {0, 0, 1}}},
  };
  if (matrix_closure_size(p, gens) != gl3_order(p))
    throw internal_error("polyalg: census generators do not span the matrix group");
  std::vector<SubstTable> tables;
  for (const auto& g : gens) tables.push_back(build_subst(t, g));

  Bitset visited(t.total);
  visited.set(0);
  std::vector<long long> stack;
  std::vector<int> digits(t.n), image(t.n);
  for (long long seed = 1; seed < t.total; ++seed) {
    if (visited.get(seed)) continue;
    ++census.orbit_count;
    bool oracle_singular = singular.get(seed);
    visited.set(seed);
    stack.push_back(seed);
    while (!stack.empty()) {
      long long cur = stack.back();
      stack.pop_back();
      if (singular.get(cur) != oracle_singular) census.oracle_constant_on_orbits = false;
      decode_form(t, cur, digits.data());
      for (const SubstTable& tab : tables) {
        apply_subst(t, tab, digits.data(), image.data());
        long long nxt = encode_form(t, image.data());
        if (!visited.get(nxt)) {
          visited.set(nxt);
          stack.push_back(nxt);
        }
      }
    }
    decode_form(t, seed, digits.data());
    bool gb_smooth = projective_smooth(form_from_digits(t, fp, digits.data()), opt);
    if (gb_smooth == !oracle_singular) ++census.reps_agreeing;
  }
  census.groebner_matches_oracle = (census.reps_agreeing == census.orbit_count);
  return census;
}

}  // namespace levellab
