#include "levellab/moduli.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "levellab/errors.hpp"
#include "levellab/numutil.hpp"

namespace levellab {

MatrixModN mat_make(long long N, long long a, long long b, long long c,
                    long long d) {
  if (N < 1) throw input_error("matrix modulus must be positive");
  return MatrixModN{N, mod_norm(a, N), mod_norm(b, N), mod_norm(c, N),
                    mod_norm(d, N)};
}

MatrixModN mat_identity(long long N) { return mat_make(N, 1, 0, 0, 1); }

MatrixModN mat_scalar(long long N, long long n) {
  return mat_make(N, n, 0, 0, n);
}

MatrixModN mat_mul(const MatrixModN& x, const MatrixModN& y) {
  if (x.N != y.N) throw input_error("matrix moduli differ");
  return mat_make(x.N, x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                  x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d);
}

MatrixModN mat_pow(const MatrixModN& x, long long e) {
  if (e < 0) return mat_pow(mat_inv(x), -e);
  MatrixModN r = mat_identity(x.N), base = x;
  while (e > 0) {
    if (e & 1) r = mat_mul(r, base);
    base = mat_mul(base, base);
    e >>= 1;
  }
  return r;
}

long long mat_det(const MatrixModN& x) {
  return mod_norm(x.a * x.d - x.b * x.c, x.N);
}

long long mat_trace(const MatrixModN& x) { return mod_norm(x.a + x.d, x.N); }

bool mat_eq(const MatrixModN& x, const MatrixModN& y) {
  return x.N == y.N && x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
}

bool mat_is_unit(const MatrixModN& x) {
  return inv_mod_ll(mat_det(x), x.N) != 0 || x.N == 1;
}

MatrixModN mat_inv(const MatrixModN& x) {
  long long di = inv_mod_ll(mat_det(x), x.N);
  if (di == 0 && x.N != 1) throw input_error("matrix is not invertible");
  return mat_make(x.N, di * x.d, -di * x.b, -di * x.c, di * x.a);
}

std::string mat_to_text(const MatrixModN& x) {
  return std::to_string(x.a) + "," + std::to_string(x.b) + ";" +
         std::to_string(x.c) + "," + std::to_string(x.d);
}

std::vector<MatrixModN> gl2_elements(long long N) {
  std::vector<MatrixModN> out;
  for (long long a = 0; a < N; ++a)
    for (long long b = 0; b < N; ++b)
      for (long long c = 0; c < N; ++c)
        for (long long d = 0; d < N; ++d) {
          MatrixModN g = mat_make(N, a, b, c, d);
          if (mat_is_unit(g)) out.push_back(g);
        }
  return out;
}

namespace {

bool has_exact_order(const CurvePoint& P, long long n) {
  if (P.infinity) return n == 1;
  if (!scalar_mul(n, P).infinity) return false;
  for (long long l : prime_divisors(n))
    if (scalar_mul(n / l, P).infinity) return false;
  return true;
}

bool primitive_root_of_unity(const FieldElement& z, long long n) {
  if (!fe_pow(z, mpz_of(n)).is_one()) return false;
  for (long long l : prime_divisors(n))
    if (fe_pow(z, mpz_of(n / l)).is_one()) return false;
  return true;
}

}  // namespace

void validate_moduli_point(const ModuliPoint& M) {
  if (!M.curve) throw input_error("moduli point needs a curve");
  const FieldPtr& f = M.curve->field;
  if (!f->is_finite() || f->p < 5)
    throw input_error("moduli points live over finite fields of char >= 5");
  if (!M.curve->short_form)
    throw input_error("moduli points need a short curve model");
  if (M.N < 3) throw input_error("level must be at least 3");
  if (M.N % f->p == 0) throw input_error("level shares the field characteristic");
  if (!curve_same(M.P.curve, M.curve) || !curve_same(M.Q.curve, M.curve))
    throw input_error("basis points are not on the moduli curve");
  if (!has_exact_order(M.P, M.N) || !has_exact_order(M.Q, M.N))
    throw input_error("basis points must have exact order N");
  FieldElement z = weil_pairing(M.N, M.P, M.Q);
  if (!primitive_root_of_unity(z, M.N))
    throw input_error("basis pairing is not primitive");
  if (M.has_gamma0) {
    if (!curve_same(M.C.curve, M.curve))
      throw input_error("cyclic datum is not on the moduli curve");
    if (std::gcd(M.C.order, static_cast<long long>(M.N)) != 1)
      throw input_error("cyclic datum order must be coprime to the level");
    make_cyclic_subgroup(M.C.generator, M.C.order);
  }
}

ModuliPoint make_moduli_point(const CurvePtr& E, int N, CurvePoint P,
                              CurvePoint Q) {
  ModuliPoint M;
  M.curve = E;
  M.N = N;
  M.P = std::move(P);
  M.Q = std::move(Q);
  M.has_gamma0 = false;
  M.C = trivial_subgroup(E);
  validate_moduli_point(M);
  return M;
}

ModuliPoint make_moduli_point(const CurvePtr& E, int N, CurvePoint P,
                              CurvePoint Q, CyclicSubgroup C) {
  ModuliPoint M;
  M.curve = E;
  M.N = N;
  M.P = std::move(P);
  M.Q = std::move(Q);
  M.has_gamma0 = true;
  M.C = std::move(C);
  validate_moduli_point(M);
  return M;
}

long long det_index(const ModuliPoint& M) {
  const FieldPtr& f = M.curve->field;
  FieldElement z = weil_pairing(M.N, M.P, M.Q);
  FieldElement zr = zeta_ref(f, M.N);
  long long idx = discrete_log(zr, z, M.N);
  if (idx < 0 || std::gcd(idx, static_cast<long long>(M.N)) != 1)
    throw input_error("basis pairing is not primitive");
  return idx;
}

ModuliPoint act_unit(long long n, const ModuliPoint& M) {
  n = mod_norm(n, M.N);
  if (inv_mod_ll(n, M.N) == 0)
    throw input_error("scalar action needs a unit mod N");
  ModuliPoint out = M;
  out.P = scalar_mul(n, M.P);
  out.Q = scalar_mul(n, M.Q);
  validate_moduli_point(out);
  return out;
}

ModuliPoint act_gl2(const MatrixModN& g, const ModuliPoint& M) {
  if (g.N != M.N) throw input_error("matrix modulus differs from the level");
  if (!mat_is_unit(g)) throw input_error("matrix action needs unit determinant");
  ModuliPoint out = M;
  out.P = add_points(scalar_mul(g.a, M.P), scalar_mul(g.b, M.Q));
  out.Q = add_points(scalar_mul(g.c, M.P), scalar_mul(g.d, M.Q));
  validate_moduli_point(out);
  return out;
}

ModuliPoint degeneracy(long long d, long long t, const ModuliPoint& M) {
  if (!M.has_gamma0) throw input_error("degeneracy needs a cyclic datum");
  long long m = M.C.order;
  if (d < 1 || t < 1 || m % (d * t) != 0)
    throw input_error("degeneracy needs d*t dividing m");
  Isogeny phi = velu_quotient(M.curve, standard_subgroup(M.C, d));
  CyclicSubgroup pushed = push_subgroup(phi, M.C);
  ModuliPoint out;
  out.curve = phi.codomain;
  out.N = M.N;
  out.P = push_point(phi, M.P);
  out.Q = push_point(phi, M.Q);
  out.has_gamma0 = true;
  out.C = standard_subgroup(pushed, t);
  validate_moduli_point(out);
  return out;
}

namespace {

// Generator of the dual kernel pi(E[d]): found over the smallest extension
// where E[d] is fully rational, then coerced back down.
CurvePoint dual_kernel_generator(const ModuliPoint& M, long long d,
                                 const Isogeny& phi) {
  const FieldPtr& f = M.curve->field;
  mpz_class q = f->order();
  if (q % mpz_of(d) != 1)
    throw unsupported_error("dual kernel needs q = 1 mod d to be rational");
  CyclicSubgroup Cd = standard_subgroup(M.C, d);
  for (int s = 1; s <= static_cast<int>(d); ++s) {
    FieldPtr Fs = FieldDescriptor::finite(f->p, f->k * s);
    CurvePtr Es = base_change(M.curve, Fs);
    std::vector<CurvePoint> pts = torsion_points(Es, static_cast<int>(d));
    if (pts.size() != static_cast<size_t>(d) * static_cast<size_t>(d)) continue;
    CyclicSubgroup Cs =
        make_cyclic_subgroup(point_embed(Cd.generator, Es), d);
    Isogeny phis = velu_quotient(Es, Cs);
    std::vector<CurvePoint> images;
    for (const CurvePoint& T : pts) {
      CurvePoint img = push_point(phis, T);
      if (img.infinity) continue;
      CurvePoint down = point_coerce(img, phi.codomain);
      if (has_exact_order(down, d)) images.push_back(down);
    }
    if (images.empty())
      throw internal_error("dual kernel has no generator");
    std::sort(images.begin(), images.end(),
              [](const CurvePoint& a, const CurvePoint& b) {
                return point_cmp(a, b) < 0;
              });
    return images.front();
  }
  throw internal_error("d-torsion stayed irrational within degree d");
}

}  // namespace

ModuliPoint atkin_lehner(long long d, const ModuliPoint& M) {
  if (!M.has_gamma0) throw input_error("Atkin-Lehner needs a cyclic datum");
  long long m = M.C.order;
  if (d < 1 || m % d != 0 || std::gcd(d, m / d) != 1)
    throw input_error("Atkin-Lehner needs d || m");
  if (d == 1) {
    validate_moduli_point(M);
    return M;
  }
  Isogeny phi = velu_quotient(M.curve, standard_subgroup(M.C, d));
  CurvePoint g1 = dual_kernel_generator(M, d, phi);
  CurvePoint g2 = push_point(phi, scalar_mul(d, M.C.generator));
  ModuliPoint out;
  out.curve = phi.codomain;
  out.N = M.N;
  out.P = push_point(phi, M.P);
  out.Q = push_point(phi, M.Q);
  out.has_gamma0 = true;
  out.C = make_cyclic_subgroup(add_points(g1, g2), m);
  validate_moduli_point(out);
  return out;
}

MatrixModN frobenius_matrix(const ModuliPoint& M, long long q0) {
  const FieldPtr& f = M.curve->field;
  long long p = f->p;
  int j = 0;
  for (long long t = q0; t > 1; t /= p, ++j)
    if (t % p != 0)
      throw input_error("base order is not a power of the characteristic");
  if (j == 0)
    throw input_error("base order must be a positive power of the characteristic");
  long long N = M.N;
  std::map<std::string, std::pair<long long, long long>> span;
  CurvePoint Pi = point_infinity(M.curve);
  for (long long a = 0; a < N; ++a) {
    CurvePoint R = Pi;
    for (long long b = 0; b < N; ++b) {
      span.emplace(point_to_text(R), std::make_pair(a, b));
      R = add_points(R, M.Q);
    }
    Pi = add_points(Pi, M.P);
  }
  auto solve = [&](const CurvePoint& T) {
    auto it = span.find(point_to_text(T));
    if (it == span.end())
      throw internal_error("Frobenius image left the basis span");
    return it->second;
  };
  auto [a, b] = solve(frobenius_point(M.P, j));
  auto [c, d] = solve(frobenius_point(M.Q, j));
  return mat_make(N, a, b, c, d);
}

IsoWitness isomorphic(const ModuliPoint& M1, const ModuliPoint& M2) {
  const FieldPtr& f = M1.curve->field;
  if (!f->same(*M2.curve->field))
    throw input_error("isomorphism test needs one working field");
  IsoWitness no{false, fe_zero(f)};
  if (M1.N != M2.N || M1.has_gamma0 != M2.has_gamma0 || M1.m() != M2.m())
    return no;
  const FieldElement &A1 = M1.curve->a4, &B1 = M1.curve->a6;
  const FieldElement &A2 = M2.curve->a4, &B2 = M2.curve->a6;
  std::vector<FieldElement> cands;
  if (!A1.is_zero())
    cands = fe_nth_roots(fe_div(A2, A1), 4);
  else if (!B1.is_zero())
    cands = fe_nth_roots(fe_div(B2, B1), 6);
  else
    throw internal_error("curve with A = B = 0 is singular");
  for (const FieldElement& u : cands) {
    if (u.is_zero()) continue;
    FieldElement u2 = u * u, u3 = u2 * u;
    FieldElement u4 = u2 * u2, u6 = u3 * u3;
    if (!(u4 * A1 == A2) || !(u6 * B1 == B2)) continue;
    auto map_pt = [&](const CurvePoint& P) {
      if (P.infinity) return point_infinity(M2.curve);
      return point_make(M2.curve, u2 * P.x, u3 * P.y);
    };
    if (!point_eq(map_pt(M1.P), M2.P)) continue;
    if (!point_eq(map_pt(M1.Q), M2.Q)) continue;
    if (M1.has_gamma0) {
      CyclicSubgroup mapped =
          make_cyclic_subgroup(map_pt(M1.C.generator), M1.C.order);
      if (!subgroup_eq(mapped, M2.C)) continue;
    }
    return IsoWitness{true, u};
  }
  return no;
}

namespace {

std::vector<CyclicSubgroup> order_m_subgroups(const CurvePtr& E, long long m,
                                              long long count_cap) {
  std::vector<CyclicSubgroup> subs;
  if (m == 1) {
    subs.push_back(trivial_subgroup(E));
    return subs;
  }
  std::set<std::string> seen;
  for (const CurvePoint& P : all_points(E, count_cap)) {
    if (P.infinity || !has_exact_order(P, m)) continue;
    CyclicSubgroup C = make_cyclic_subgroup(P, m);
    std::string key;
    for (const CurvePoint& T : subgroup_points(C)) key += point_to_text(T) + "|";
    if (seen.insert(key).second) subs.push_back(C);
  }
  return subs;
}

}  // namespace

std::vector<ModuliPoint> enumerate_points(int N, long long m, const FieldPtr& f,
                                          const EnumerateOptions& opt) {
  if (!f->is_finite() || f->p < 5)
    throw input_error("enumeration needs a finite field of char >= 5");
  if (N < 3 || m < 1) throw input_error("bad level data");
  if (std::gcd(static_cast<long long>(N), m) != 1)
    throw input_error("level and cyclic order must be coprime");
  mpz_class q = f->order();
  if (q > mpz_of(opt.q_cap)) throw resource_error("enumeration field exceeds cap");
  long long qn = mpz_to_ll(q);
  if ((qn - 1) % N != 0) return {};
  std::vector<ModuliPoint> reps;
  for (long long ai = 0; ai < qn; ++ai) {
    for (long long bi = 0; bi < qn; ++bi) {
      FieldElement A = fe_at_index(f, mpz_of(ai));
      FieldElement B = fe_at_index(f, mpz_of(bi));
      FieldElement disc = fe_mul(A * A * A, fe_from_int(f, 4)) +
                          fe_mul(B * B, fe_from_int(f, 27));
      if (disc.is_zero()) continue;
      CurvePtr E = EllipticCurve::make_short(f, A, B);
      std::vector<CurvePoint> tors = torsion_points(E, N, opt.count_cap);
      if (tors.size() != static_cast<size_t>(N) * static_cast<size_t>(N))
        continue;
      std::vector<CyclicSubgroup> subs = order_m_subgroups(E, m, opt.count_cap);
      if (subs.empty()) continue;
      std::vector<CurvePoint> gens;
      for (const CurvePoint& P : tors)
        if (has_exact_order(P, N)) gens.push_back(P);
      for (const CyclicSubgroup& C : subs) {
        for (const CurvePoint& P : gens) {
          for (const CurvePoint& Q : gens) {
            FieldElement z = weil_pairing(N, P, Q);
            if (!primitive_root_of_unity(z, N)) continue;
            ModuliPoint M;
            M.curve = E;
            M.N = N;
            M.P = P;
            M.Q = Q;
            M.has_gamma0 = (m > 1);
            M.C = (m > 1) ? C : trivial_subgroup(E);
            bool fresh = true;
            for (const ModuliPoint& R : reps) {
              if (isomorphic(M, R).isomorphic) {
                fresh = false;
                break;
              }
            }
            if (fresh) {
              validate_moduli_point(M);
              reps.push_back(M);
            }
          }
        }
      }
    }
  }
  return reps;
}

std::optional<ModuliPoint> sample_moduli_point(SplitMix64& rng, long long p,
                                               int N, long long m,
                                               const SampleOptions& opt) {
  if (p < 5 || !is_prime_ll(p)) throw input_error("sampling needs a prime p >= 5");
  FieldPtr fp = FieldDescriptor::finite(p, 1);
  FieldElement A = fe_at_index(fp, mpz_of(static_cast<long long>(rng.below(
                                       static_cast<uint64_t>(p)))));
  FieldElement B = fe_at_index(fp, mpz_of(static_cast<long long>(rng.below(
                                       static_cast<uint64_t>(p)))));
  FieldElement disc = fe_mul(A * A * A, fe_from_int(fp, 4)) +
                      fe_mul(B * B, fe_from_int(fp, 27));
  if (disc.is_zero()) return std::nullopt;
  CurvePtr E = EllipticCurve::make_short(fp, A, B);
  TorsionBasis tb;
  try {
    tb = torsion_basis(E, N, TorsionOptions{opt.k_cap, kDefaultDivisionCap,
                                            opt.count_cap});
  } catch (const resource_error&) {
    return std::nullopt;
  }
  if (m == 1) {
    return make_moduli_point(tb.curve, N, tb.P, tb.Q);
  }
  mpz_class mm = mpz_of(m * m);
  for (int s = 1; tb.k * s <= opt.k_cap; ++s) {
    mpz_class qk;
    mpz_class pz = mpz_of(p);
    mpz_pow_ui(qk.get_mpz_t(), pz.get_mpz_t(),
               static_cast<unsigned long>(tb.k * s));
    if (qk % mpz_of(m) != 1) continue;
    if (trace_power(E, tb.k * s, opt.count_cap).count % mm != 0) continue;
    FieldPtr F = FieldDescriptor::finite(p, tb.k * s);
    CurvePtr Ek = base_change(E, F);
    std::vector<CurvePoint> mpts =
        torsion_points(Ek, static_cast<int>(m), opt.count_cap);
    if (mpts.size() != static_cast<size_t>(m) * static_cast<size_t>(m)) continue;
    CurvePoint gen = point_infinity(Ek);
    bool found = false;
    for (const CurvePoint& T : mpts) {
      if (has_exact_order(T, m)) {
        gen = T;
        found = true;
        break;
      }
    }
    if (!found) return std::nullopt;
    CurvePoint P = point_embed(tb.P, Ek);
    CurvePoint Q = point_embed(tb.Q, Ek);
    return make_moduli_point(Ek, N, P, Q, make_cyclic_subgroup(gen, m));
  }
  return std::nullopt;
}

}  // namespace levellab
