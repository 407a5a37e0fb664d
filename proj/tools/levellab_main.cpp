#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "levellab/charp.hpp"
#include "levellab/congruence.hpp"
#include "levellab/errors.hpp"
#include "levellab/gmputil.hpp"
#include "levellab/moduli.hpp"
#include "levellab/numutil.hpp"
#include "levellab/polyalg.hpp"
#include "levellab/report.hpp"
#include "levellab/rng.hpp"

namespace {

using namespace levellab;

CurvePtr resolve_rational_curve(const std::string& spec) {
  const auto& names = registry_names();
  if (std::find(names.begin(), names.end(), spec) != names.end())
    return registry_curve(spec);
  auto colon = spec.find(':');
  if (colon != std::string::npos) {
    std::string kind = spec.substr(0, colon);
    std::string coeffs = spec.substr(colon + 1);
    if (kind == "short")
      return parse_curve(FieldDescriptor::rationals(), true, coeffs);
    if (kind == "long")
      return parse_curve(FieldDescriptor::rationals(), false, coeffs);
  }
  std::string known;
  for (const auto& n : names) known += (known.empty() ? "" : ", ") + n;
  throw input_error("curve must be a registry name (" + known +
                    "), short:A,B, or long:a1,a2,a3,a4,a6");
}

FieldPtr field_of_order(long long q) {
  if (q < 2) throw input_error("field order must be at least 2");
  for (long long p = 2; p * p <= q; ++p) {
    if (q % p) continue;
    long long r = q;
    int k = 0;
    while (r % p == 0) r /= p, ++k;
    if (r != 1) throw input_error("field order must be a prime power");
    return FieldDescriptor::finite(p, k);
  }
  return FieldDescriptor::finite(q, 1);
}

std::vector<long long> parse_ll_list(const std::string& csv) {
  std::vector<long long> out;
  std::string cur;
  for (char ch : csv + ",") {
    if (ch == ',') {
      if (!cur.empty()) out.push_back(std::stoll(cur));
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      cur += ch;
    }
  }
  return out;
}

std::vector<std::string> split_list(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text + std::string(1, sep)) {
    if (ch == sep) {
      size_t b = cur.find_first_not_of(" \t");
      size_t e = cur.find_last_not_of(" \t");
      if (b != std::string::npos) out.push_back(cur.substr(b, e - b + 1));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  return out;
}

ordered_json point_json(const CurvePoint& P) { return point_to_text(P); }

ordered_json moduli_json(const ModuliPoint& M) {
  ordered_json j;
  j["field"] = format_field_selector(M.curve->field);
  j["curve"] = curve_to_text(M.curve);
  j["P"] = point_json(M.P);
  j["Q"] = point_json(M.Q);
  j["m"] = M.m();
  if (M.has_gamma0) j["gamma0_generator"] = point_json(M.C.generator);
  return j;
}

// ---------------------------------------------------------------- invariants

struct InvariantsArgs {
  std::string name, field = "Q", model = "short", coeffs;
};

ReportEnvelope run_invariants(const InvariantsArgs& a) {
  ReportEnvelope env;
  env.command = "invariants";
  env.config = {{"name", a.name},
                {"field", a.field},
                {"model", a.model},
                {"coeffs", a.coeffs}};
  CurvePtr E;
  if (!a.name.empty()) {
    E = resolve_rational_curve(a.name);
  } else {
    if (a.coeffs.empty()) throw input_error("need --name or --coeffs");
    if (a.model != "short" && a.model != "long")
      throw input_error("model must be short or long");
    E = parse_curve(parse_field_selector(a.field), a.model == "short", a.coeffs);
  }
  CurveInvariants inv = curve_invariants(E);
  ordered_json d;
  d["curve"] = curve_to_text(E);
  d["field"] = format_field_selector(E->field);
  d["b2"] = fe_to_text(inv.b2);
  d["b4"] = fe_to_text(inv.b4);
  d["b6"] = fe_to_text(inv.b6);
  d["b8"] = fe_to_text(inv.b8);
  d["c4"] = fe_to_text(inv.c4);
  d["c6"] = fe_to_text(inv.c6);
  d["disc"] = fe_to_text(inv.disc);
  d["j"] = fe_to_text(inv.j);
  FieldElement lhs = fe_mul(fe_from_int(E->field, 1728), inv.disc);
  FieldElement rhs = fe_sub(inv.c4 * inv.c4 * inv.c4, inv.c6 * inv.c6);
  bool identity = fe_eq(lhs, rhs);
  d["identity_1728_disc"] = identity;
  if (E->field->is_finite()) {
    d["count"] = count_points(E);
    d["trace"] = trace_of_frobenius(E);
    d["supersingular"] = is_supersingular(E);
  }
  env.details = d;
  if (!identity) env.verdict = "FAIL";
  return env;
}

// ------------------------------------------------------------------------ ap

struct ApArgs {
  std::string curve;
  long long p = 0, pmax = 0;
};

ReportEnvelope run_ap(const ApArgs& a) {
  ReportEnvelope env;
  env.command = "ap";
  env.config = {{"curve", a.curve}, {"p", a.p}, {"pmax", a.pmax}};
  CurvePtr E = resolve_rational_curve(a.curve);
  ordered_json d;
  d["curve"] = curve_to_text(E);
  d["disc"] = integral_discriminant(E).get_str();
  if (a.p > 0) {
    d["p"] = a.p;
    d["ap"] = ap_of_reduction(E, a.p);
  } else if (a.pmax > 0) {
    mpz_class disc = integral_discriminant(E);
    ordered_json rows = ordered_json::array();
    ordered_json skipped = ordered_json::array();
    for (long long p = 2; p <= a.pmax; ++p) {
      if (!is_prime_ll(p)) continue;
      if (disc % mpz_of(p) == 0) {
        skipped.push_back(p);
        continue;
      }
      rows.push_back({{"p", p}, {"ap", ap_of_reduction(E, p)}});
    }
    d["good_primes"] = rows;
    d["skipped"] = skipped;
  } else {
    throw input_error("need -p or --pmax");
  }
  env.details = d;
  return env;
}

// ---------------------------------------------------------------- congruence

struct CongruenceArgs {
  std::string e1, e2;
  long long N = 0, pmax = 0;
};

ReportEnvelope run_congruence(const CongruenceArgs& a) {
  ReportEnvelope env;
  env.command = "congruence";
  env.config = {{"e1", a.e1}, {"e2", a.e2}, {"N", a.N}, {"pmax", a.pmax}};
  CurvePtr E1 = resolve_rational_curve(a.e1);
  CurvePtr E2 = resolve_rational_curve(a.e2);
  CongruenceReport rep = ap_congruence(E1, E2, a.N, a.pmax);
  ordered_json rows = ordered_json::array();
  ordered_json skipped = ordered_json::array();
  long long compared = 0;
  for (const PrimeComparison& pc : rep.primes) {
    if (pc.verdict == PrimeVerdict::Skipped) {
      skipped.push_back(pc.p);
      continue;
    }
    ++compared;
    rows.push_back({{"p", pc.p},
                    {"ap1_mod", pc.ap1_mod},
                    {"ap2_mod", pc.ap2_mod},
                    {"agree", pc.verdict == PrimeVerdict::Agree}});
  }
  ordered_json d;
  d["compared"] = compared;
  d["skipped"] = skipped;
  d["all_good_agree"] = rep.all_good_agree;
  if (rep.first_disagreement)
    d["first_disagreement"] = *rep.first_disagreement;
  else
    d["first_disagreement"] = nullptr;
  d["primes"] = rows;
  env.details = d;
  if (!rep.all_good_agree) env.verdict = "FAIL";
  return env;
}

// ---------------------------------------------------------------- detclasses

struct DetClassArgs {
  std::string e1, e2;
  long long N = 0, p = 0, kmax = 64;
};

ReportEnvelope run_detclasses(const DetClassArgs& a) {
  ReportEnvelope env;
  env.command = "detclasses";
  env.config = {{"e1", a.e1}, {"e2", a.e2}, {"N", a.N}, {"p", a.p}, {"kmax", a.kmax}};
  CurvePtr E1 = resolve_rational_curve(a.e1);
  CurvePtr E2 = resolve_rational_curve(a.e2);
  DetClassReport rep = determinant_classes(E1, E2, a.N, a.p, {.k_max = a.kmax});
  ordered_json d;
  d["k"] = rep.k;
  d["frobenius_1"] = mat_to_text(rep.frob1);
  d["frobenius_2"] = mat_to_text(rep.frob2);
  d["det_index_1"] = rep.det_index1;
  d["det_index_2"] = rep.det_index2;
  d["intertwiner_dets"] = std::vector<long long>(rep.intertwiner_dets.begin(),
                                                 rep.intertwiner_dets.end());
  d["alpha_set"] =
      std::vector<long long>(rep.alpha_set.begin(), rep.alpha_set.end());
  d["local_isomorphism_exists"] = rep.local_isomorphism_exists;
  d["symplectic_possible"] = rep.symplectic_possible;
  d["antisymplectic_possible"] = rep.antisymplectic_possible;
  env.details = d;
  if (!rep.local_isomorphism_exists) env.verdict = "FAIL";
  return env;
}

// -------------------------------------------------------------- moduli-props

struct ModuliPropsArgs {
  long long N = 0, m = 1, q = 0, trials = 200, kcap = 12;
  std::uint64_t seed = 0;
};

struct IdentityTally {
  std::map<std::string, long long> checks;
  std::optional<ordered_json> witness;

  bool record(const std::string& identity, bool ok, const ModuliPoint& M,
              const ordered_json& params, const std::string& lhs,
              const std::string& rhs, long long trial) {
    ++checks[identity];
    if (ok || witness) return ok;
    ordered_json w;
    w["trial"] = trial;
    w["identity"] = identity;
    w["point"] = moduli_json(M);
    w["params"] = params;
    w["lhs"] = lhs;
    w["rhs"] = rhs;
    witness = w;
    return ok;
  }
};

long long draw_from(SplitMix64& rng, const std::vector<long long>& xs) {
  return xs[rng.below(xs.size())];
}

std::vector<long long> unitary_divisors(long long m) {
  std::vector<long long> out;
  for (long long d : divisors_sorted(m))
    if (std::gcd(d, m / d) == 1) out.push_back(d);
  return out;
}

ReportEnvelope run_moduli_props(const ModuliPropsArgs& a) {
  ReportEnvelope env;
  env.command = "moduli-props";
  env.config = {{"N", a.N},   {"m", a.m},       {"q", a.q},
                {"trials", a.trials}, {"seed", a.seed}, {"k_cap", a.kcap}};
  if (a.N < 3 || a.m < 1 || a.q < 5) throw input_error("need -N >= 3, -m >= 1, -q >= 5");
  if (std::gcd(a.N, a.m) != 1) throw input_error("N and m must be coprime");
  SplitMix64 rng(derive_seed(a.seed, 0x6d70ull));
  std::vector<long long> units;
  for (long long n = 1; n < a.N; ++n)
    if (std::gcd(n, a.N) == 1) units.push_back(n);
  std::vector<long long> udivs = unitary_divisors(a.m);
  IdentityTally tally;
  long long done = 0, rejected = 0;
  long long attempts_cap = a.trials * 200;
  for (long long attempt = 0; attempt < attempts_cap && done < a.trials;
       ++attempt) {
    if (tally.witness) break;
    auto Mo = sample_moduli_point(rng, a.q, static_cast<int>(a.N), a.m,
                                  {.k_cap = static_cast<int>(a.kcap)});
    if (!Mo) {
      ++rejected;
      continue;
    }
    const ModuliPoint& M = *Mo;
    long long trial = done++;
    long long base = det_index(M);

    for (long long n : units) {
      long long got = det_index(act_unit(n, M));
      tally.record("det_scalar", got == mod_norm(n * n * base, a.N), M,
                   {{"n", n}}, std::to_string(got),
                   std::to_string(mod_norm(n * n * base, a.N)), trial);
      if (tally.witness) break;
    }
    if (tally.witness) break;

    long long d = draw_from(rng, divisors_sorted(a.m));
    long long t = draw_from(rng, divisors_sorted(a.m / d));
    ModuliPoint Mdt = degeneracy(d, t, M);
    {
      long long got = det_index(Mdt);
      if (!tally.record("det_degeneracy", got == mod_norm(d * base, a.N), M,
                        {{"d", d}, {"t", t}}, std::to_string(got),
                        std::to_string(mod_norm(d * base, a.N)), trial))
        break;
    }
    {
      long long r = draw_from(rng, divisors_sorted(t));
      long long s = draw_from(rng, divisors_sorted(t / r));
      ModuliPoint lhs = degeneracy(r, s, Mdt);
      ModuliPoint rhs = degeneracy(d * r, s, M);
      if (!tally.record("degeneracy_composition",
                        isomorphic(lhs, rhs).isomorphic, M,
                        {{"d", d}, {"t", t}, {"r", r}, {"s", s}},
                        moduli_json(lhs).dump(), moduli_json(rhs).dump(),
                        trial))
        break;
    }

    long long d1 = draw_from(rng, udivs);
    long long d2 = draw_from(rng, udivs);
    ModuliPoint W1 = atkin_lehner(d1, M);
    {
      long long got = det_index(W1);
      if (!tally.record("det_atkin_lehner", got == mod_norm(d1 * base, a.N), M,
                        {{"d", d1}}, std::to_string(got),
                        std::to_string(mod_norm(d1 * base, a.N)), trial))
        break;
    }
    {
      long long delta = std::gcd(d1, d2);
      ModuliPoint lhs = atkin_lehner(d1, atkin_lehner(d2, M));
      ModuliPoint rhs =
          act_unit(mod_norm(delta, a.N), atkin_lehner(d1 * d2 / (delta * delta), M));
      if (!tally.record("atkin_lehner_composition",
                        isomorphic(lhs, rhs).isomorphic, M,
                        {{"d1", d1}, {"d2", d2}, {"delta", delta}},
                        moduli_json(lhs).dump(), moduli_json(rhs).dump(),
                        trial))
        break;
    }
    {
      long long t2 = draw_from(rng, divisors_sorted(a.m / d1));
      ModuliPoint lhs = degeneracy(d1, t2, M);
      ModuliPoint rhs = degeneracy(1, t2, W1);
      if (!tally.record("degeneracy_via_atkin_lehner",
                        isomorphic(lhs, rhs).isomorphic, M,
                        {{"d", d1}, {"t", t2}}, moduli_json(lhs).dump(),
                        moduli_json(rhs).dump(), trial))
        break;
    }
    {
      long long sp = draw_from(rng, divisors_sorted(a.m));
      std::vector<long long> coprime;
      for (long long v : divisors_sorted(a.m))
        if (std::gcd(v, sp) == 1) coprime.push_back(v);
      long long tp = draw_from(rng, coprime);
      long long s = draw_from(rng, divisors_sorted(sp));
      long long t = draw_from(rng, divisors_sorted(tp));
      ModuliPoint lhs =
          degeneracy(t, a.m / (sp * tp), degeneracy(s, a.m / sp, M));
      ModuliPoint rhs =
          degeneracy(s, a.m / (sp * tp), degeneracy(t, a.m / tp, M));
      if (!tally.record(
              "two_sided_square", isomorphic(lhs, rhs).isomorphic, M,
              {{"s_prime", sp}, {"t_prime", tp}, {"s", s}, {"t", t}},
              moduli_json(lhs).dump(), moduli_json(rhs).dump(), trial))
        break;
    }
  }
  ordered_json d;
  d["trials_run"] = done;
  d["samples_rejected"] = rejected;
  ordered_json checks;
  for (const auto& [name, count] : tally.checks) checks[name] = count;
  d["checks"] = checks;
  d["violation"] = tally.witness ? *tally.witness : ordered_json(nullptr);
  env.details = d;
  if (tally.witness)
    env.verdict = "FAIL";
  else if (done < a.trials)
    throw resource_error("could not draw enough samples for the trial budget");
  return env;
}

// -------------------------------------------------------------------- fibres

struct FibresArgs {
  long long N = 0, m = 1, p = 0, k = 1, qcap = 256;
};

ReportEnvelope run_fibres(const FibresArgs& a) {
  ReportEnvelope env;
  env.command = "fibres";
  env.config = {{"N", a.N}, {"m", a.m}, {"p", a.p}, {"k", a.k}, {"q_cap", a.qcap}};
  FieldPtr f = FieldDescriptor::finite(a.p, static_cast<int>(a.k));
  std::vector<ModuliPoint> pts =
      enumerate_points(static_cast<int>(a.N), a.m, f, {.q_cap = a.qcap});
  std::map<long long, long long> fibres;
  for (const ModuliPoint& M : pts) ++fibres[det_index(M)];
  ordered_json fj;
  bool all_units_hit = true;
  for (long long n = 1; n < a.N; ++n) {
    if (std::gcd(n, a.N) != 1) continue;
    long long c = fibres.count(n) ? fibres[n] : 0;
    fj[std::to_string(n)] = c;
    if (c == 0) all_units_hit = false;
  }
  ordered_json d;
  d["points"] = static_cast<long long>(pts.size());
  d["fibres"] = fj;
  d["all_unit_values_realized"] = all_units_hit;
  env.details = d;
  if (!all_units_hit) env.verdict = "FAIL";
  return env;
}

// ------------------------------------------------------------ frobenius-laws

struct FrobLawArgs {
  long long N = 0, p = 0, curves = 20, jmax = 3;
  std::uint64_t seed = 0;
};

ReportEnvelope run_frobenius_laws(const FrobLawArgs& a) {
  ReportEnvelope env;
  env.command = "frobenius-laws";
  env.config = {{"N", a.N},     {"p", a.p},       {"curves", a.curves},
                {"jmax", a.jmax}, {"seed", a.seed}};
  if (a.p < 5 || !is_prime_ll(a.p)) throw input_error("need a prime p >= 5");
  if (a.N < 2 || a.N % a.p == 0) throw input_error("N must be >= 2 and prime to p");
  FieldPtr fp = FieldDescriptor::finite(a.p, 1);
  SplitMix64 rng(derive_seed(a.seed, 0xf12bull));
  long long done = 0, skipped = 0;
  std::optional<ordered_json> witness;
  std::map<long long, long long> k_histogram;
  long long attempts_cap = a.curves * 400;
  for (long long attempt = 0; attempt < attempts_cap && done < a.curves;
       ++attempt) {
    if (witness) break;
    long long A = static_cast<long long>(rng.below(a.p));
    long long B = static_cast<long long>(rng.below(a.p));
    if (mod_norm(4 * A * A * A + 27 * B * B, a.p) == 0) continue;
    CurvePtr E = EllipticCurve::make_short_int(fp, A, B);
    TorsionBasis tb;
    try {
      tb = torsion_basis(E, static_cast<int>(a.N));
    } catch (const resource_error&) {
      ++skipped;
      continue;
    } catch (const membership_error&) {
      ++skipped;
      continue;
    }
    ++k_histogram[tb.k];
    ModuliPoint M = make_moduli_point(tb.curve, static_cast<int>(a.N), tb.P, tb.Q);
    MatrixModN D = frobenius_matrix(M, a.p);
    long long ap = trace_of_frobenius(E);
    auto fail = [&](const std::string& law, const std::string& lhs,
                    const std::string& rhs) {
      ordered_json w;
      w["curve"] = curve_to_text(E);
      w["k"] = tb.k;
      w["law"] = law;
      w["frobenius"] = mat_to_text(D);
      w["lhs"] = lhs;
      w["rhs"] = rhs;
      witness = w;
    };
    if (mat_det(D) != mod_norm(a.p, a.N)) {
      fail("det", std::to_string(mat_det(D)), std::to_string(mod_norm(a.p, a.N)));
      break;
    }
    if (mat_trace(D) != mod_norm(ap, a.N)) {
      fail("trace", std::to_string(mat_trace(D)), std::to_string(mod_norm(ap, a.N)));
      break;
    }
    bool powers_ok = true;
    long long q0 = a.p;
    for (long long j = 2; j <= a.jmax; ++j) {
      q0 *= a.p;
      MatrixModN Dj = frobenius_matrix(M, q0);
      if (!mat_eq(Dj, mat_pow(D, j))) {
        fail("power_" + std::to_string(j), mat_to_text(Dj),
             mat_to_text(mat_pow(D, j)));
        powers_ok = false;
        break;
      }
    }
    if (!powers_ok) break;
    ++done;
  }
  ordered_json d;
  d["curves_checked"] = done;
  d["samples_skipped"] = skipped;
  ordered_json kh;
  for (const auto& [k, c] : k_histogram) kh[std::to_string(k)] = c;
  d["field_degrees"] = kh;
  d["violation"] = witness ? *witness : ordered_json(nullptr);
  env.details = d;
  if (witness)
    env.verdict = "FAIL";
  else if (done < a.curves)
    throw resource_error("could not sample enough curves within the attempt cap");
  return env;
}

// ------------------------------------------------------------- quartic-check

struct QuarticArgs {
  std::string name;
  std::string primes;
  long long witness_extensions = 2;
};

ReportEnvelope run_quartic_check(const QuarticArgs& a) {
  ReportEnvelope env;
  env.command = "quartic-check";
  env.config = {{"name", a.name}, {"primes", a.primes}};
  SparsePoly F = registry_form(a.name);
  ordered_json d;
  d["form"] = sp_to_text(F);
  d["degree"] = sp_total_degree(F);
  d["smooth_over_Q"] = projective_smooth(F);
  ordered_json rows = ordered_json::array();
  for (long long p : parse_ll_list(a.primes)) {
    if (!is_prime_ll(p)) throw input_error("prime list contains a composite");
    ordered_json row;
    row["p"] = p;
    SparsePoly Fp = sp_map_field(F, FieldDescriptor::finite(p, 1));
    if (Fp.is_zero()) {
      row["status"] = "zero";
    } else if (projective_smooth(Fp)) {
      row["status"] = "smooth";
    } else {
      row["status"] = "singular";
      if (F.vars.size() == 3) {
        auto pt = singular_point_search(
            Fp, static_cast<int>(a.witness_extensions));
        if (pt) {
          std::string coords;
          for (const FieldElement& c : *pt)
            coords += (coords.empty() ? "(" : ", ") + fe_to_text(c);
          row["witness"] = coords + ")";
        }
      }
    }
    rows.push_back(row);
  }
  d["primes"] = rows;
  env.details = d;
  return env;
}

// ------------------------------------------------------------- radical-check

struct RadicalArgs {
  std::string name;
  long long modp = 0;
  std::string field = "Q", vars, ideal, target;
};

ReportEnvelope run_radical_check(const RadicalArgs& a) {
  ReportEnvelope env;
  env.command = "radical-check";
  env.config = {{"name", a.name}, {"modp", a.modp},   {"field", a.field},
                {"vars", a.vars}, {"ideal", a.ideal}, {"target", a.target}};
  ordered_json d;
  if (!a.name.empty()) {
    SparsePoly F = registry_form(a.name);
    if (a.modp > 0) F = sp_map_field(F, FieldDescriptor::finite(a.modp, 1));
    if (F.is_zero()) throw input_error("form reduces to zero over this field");
    std::vector<SparsePoly> gens{F};
    std::vector<int> targets;
    for (size_t v = 0; v < F.vars.size(); ++v) {
      gens.push_back(sp_derivative(F, static_cast<int>(v)));
      targets.push_back(static_cast<int>(v));
    }
    RadicalContainmentReport rep =
        radical_containment_report(make_ideal(gens), targets);
    d["ideal"] = "jacobian of " + a.name;
    ordered_json per;
    for (const auto& [var, ok] : rep.per_target) per[var] = ok;
    d["vars_in_radical"] = per;
    d["all_vars_in_radical"] = rep.contains_all;
    env.details = d;
    if (!rep.contains_all) env.verdict = "FAIL";
    return env;
  }
  if (a.vars.empty() || a.ideal.empty() || a.target.empty())
    throw input_error("need --name or all of --vars, --ideal, --target");
  FieldPtr f = parse_field_selector(a.field);
  std::vector<std::string> vars = split_list(a.vars, ',');
  std::vector<SparsePoly> gens;
  for (const std::string& g : split_list(a.ideal, ';'))
    gens.push_back(sp_parse(f, vars, g));
  IdealData I = make_ideal(gens);
  ordered_json per;
  bool all = true;
  for (const std::string& ttext : split_list(a.target, ';')) {
    bool ok = radical_member(sp_parse(f, vars, ttext), I);
    per[ttext] = ok;
    all = all && ok;
  }
  d["targets_in_radical"] = per;
  d["all_in_radical"] = all;
  env.details = d;
  if (!all) env.verdict = "FAIL";
  return env;
}

// ------------------------------------------------------------- smooth-census

struct CensusArgs {
  long long p = 0, degree = 3;
};

ReportEnvelope run_smooth_census(const CensusArgs& a) {
  ReportEnvelope env;
  env.command = "smooth-census";
  env.config = {{"p", a.p}, {"degree", a.degree}};
  SmoothCensus c = smooth_census(a.p, static_cast<int>(a.degree));
  ordered_json d;
  d["forms_total"] = c.forms_total;
  d["singular_forms"] = c.singular_forms;
  d["smooth_forms"] = c.forms_total - c.singular_forms;
  d["orbit_count"] = c.orbit_count;
  d["reps_agreeing"] = c.reps_agreeing;
  d["oracle_constant_on_orbits"] = c.oracle_constant_on_orbits;
  d["groebner_matches_oracle"] = c.groebner_matches_oracle;
  env.details = d;
  if (!c.oracle_constant_on_orbits || !c.groebner_matches_oracle ||
      c.reps_agreeing != c.orbit_count)
    env.verdict = "FAIL";
  return env;
}

// --------------------------------------------------------------- charp endos

struct EndosArgs {
  long long N = 0, q = 0;
};

ReportEnvelope run_charp_endos(const EndosArgs& a) {
  ReportEnvelope env;
  env.command = "charp endos";
  env.config = {{"N", a.N}, {"q", a.q}};
  FieldPtr f = a.q > 0 ? field_of_order(a.q) : smallest_mu_field(a.N);
  std::vector<TriangularEndo> all = enumerate_endos(f, a.N);
  TriangularEndo id = endo_identity(f, a.N);
  long long invertible = 0;
  std::optional<ordered_json> witness;
  auto fail = [&](const std::string& law, const std::string& note) {
    if (!witness) witness = ordered_json{{"law", law}, {"note", note}};
  };
  for (size_t i = 0; i < all.size() && !witness; ++i) {
    const TriangularEndo& x = all[i];
    if (!endo_eq(endo_compose(x, id), x) || !endo_eq(endo_compose(id, x), x))
      fail("identity_neutral", "element " + std::to_string(i));
    auto inv = endo_inverse(x);
    bool unit_det = std::gcd(endo_det(x), a.N) == 1;
    if (inv.has_value() != unit_det)
      fail("unit_criterion", "element " + std::to_string(i));
    if (inv && (!endo_eq(endo_compose(x, *inv), id) ||
                !endo_eq(endo_compose(*inv, x), id)))
      fail("inverse_law", "element " + std::to_string(i));
    if (unit_det) ++invertible;
  }
  long long total = static_cast<long long>(all.size());
  long long pair_budget = 2000000;
  long long stride = 1;
  while ((total * total) / (stride * stride) > pair_budget) ++stride;
  long long pairs = 0;
  for (long long i = 0; i < total && !witness; i += stride)
    for (long long j = 0; j < total; j += stride) {
      ++pairs;
      long long lhs = endo_det(endo_compose(all[i], all[j]));
      long long rhs = (endo_det(all[i]) * endo_det(all[j])) % a.N;
      if (lhs != rhs) {
        fail("det_multiplicative",
             "pair " + std::to_string(i) + "," + std::to_string(j));
        break;
      }
    }
  ordered_json d;
  d["q"] = mpz_to_ll(f->order());
  d["endomorphisms"] = total;
  d["invertible"] = invertible;
  d["det_pairs_checked"] = pairs;
  d["pair_mode"] = stride == 1 ? "exhaustive" : "strided";
  d["violation"] = witness ? *witness : ordered_json(nullptr);
  env.details = d;
  if (witness) env.verdict = "FAIL";
  return env;
}

// ---------------------------------------------------------- charp pairing-eq

struct PairingEqArgs {
  long long N = 0, q = 0;
};

ReportEnvelope run_charp_pairing(const PairingEqArgs& a) {
  ReportEnvelope env;
  env.command = "charp pairing-eq";
  env.config = {{"N", a.N}, {"q", a.q}};
  FieldPtr f = a.q > 0 ? field_of_order(a.q) : smallest_mu_field(a.N);
  PairingCheckReport rep = pairing_equality_check(f, a.N);
  ordered_json d;
  d["q"] = rep.q;
  d["pairs_checked"] = rep.pairs_checked;
  d["all_equal"] = rep.all_equal;
  env.details = d;
  if (!rep.all_equal) env.verdict = "FAIL";
  return env;
}

// ---------------------------------------------------------- charp quaternion

struct QuaternionArgs {
  long long p = 0, r = 1, cap = 10000000;
};

ReportEnvelope run_charp_quaternion(const QuaternionArgs& a) {
  ReportEnvelope env;
  env.command = "charp quaternion";
  env.config = {{"p", a.p}, {"r", a.r}, {"cap", a.cap}};
  QuaternionQuotient main = quaternion_quotient_count(a.p, static_cast<int>(a.r), a.cap);
  QuaternionQuotient alt = quaternion_quotient_count_over(
      GaloisRingDescriptor::make_alternative(a.p, static_cast<int>(a.r)), a.cap);
  ordered_json d;
  d["elements"] = main.elements;
  d["units"] = main.units;
  d["kernel"] = main.kernel;
  d["quotient"] = main.quotient;
  d["kernel_expected"] = a.p * a.p;
  d["alternative_modulus_quotient"] = alt.quotient;
  env.details = d;
  bool ok = main.kernel == a.p * a.p && alt.quotient == main.quotient &&
            alt.units == main.units;
  if (!ok) env.verdict = "FAIL";
  return env;
}

// ------------------------------------------------------------ charp ss-count

struct SsCountArgs {
  long long p = 0, cap = 200;
};

ReportEnvelope run_charp_ss_count(const SsCountArgs& a) {
  ReportEnvelope env;
  env.command = "charp ss-count";
  env.config = {{"p", a.p}, {"cap", a.cap}};
  std::vector<FieldElement> js =
      supersingular_j_enumeration(a.p, static_cast<int>(a.cap));
  ordered_json list = ordered_json::array();
  bool stable = true;
  long long weight = 0;
  for (const FieldElement& j : js) {
    list.push_back(fe_to_text(j));
    FieldElement conj = fe_frobenius(j, 1);
    bool found = false;
    for (const FieldElement& jj : js)
      if (fe_eq(jj, conj)) found = true;
    stable = stable && found;
    if (j.is_zero())
      weight += 4;
    else if (fe_eq(j, fe_from_int(j.f, 1728)))
      weight += 6;
    else
      weight += 12;
  }
  ordered_json d;
  d["count"] = static_cast<long long>(js.size());
  d["j_values"] = list;
  d["frobenius_stable"] = stable;
  bool mass_ok = true;
  if (a.p >= 5) {
    mass_ok = weight == a.p - 1;
    d["mass_24"] = weight;
    d["mass_expected"] = a.p - 1;
  } else {
    mass_ok = js.size() == 1 && js[0].is_zero();
  }
  d["mass_ok"] = mass_ok;
  env.details = d;
  if (!stable || !mass_ok || js.empty()) env.verdict = "FAIL";
  return env;
}

// -------------------------------------------------------------- charp census

struct SsCensusArgs {
  long long p = 0, r = 1, structure = 1;
};

ReportEnvelope run_charp_census(const SsCensusArgs& a) {
  ReportEnvelope env;
  env.command = "charp census";
  env.config = {{"p", a.p}, {"r", a.r}, {"structure_size", a.structure}};
  SsComponentCensus c =
      ss_component_census(a.p, static_cast<int>(a.r), a.structure);
  ordered_json d;
  d["curve_count"] = c.curve_count;
  d["quotient"] = c.quotient;
  d["structure_size"] = c.structure_size;
  d["upper_bound"] = c.upper_bound;
  d["aut_ambiguous"] = c.aut_ambiguous;
  env.details = d;
  if (c.upper_bound != c.curve_count * c.structure_size * c.quotient)
    env.verdict = "FAIL";
  return env;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact-arithmetic toolkit for elliptic-curve level structures"};
  app.require_subcommand(1);
  std::string out_path;

  InvariantsArgs inv_args;
  CLI::App* inv = app.add_subcommand("invariants", "Weierstrass invariants of a curve");
  inv->add_option("--name", inv_args.name, "registry curve name");
  inv->add_option("--field", inv_args.field, "field selector: Q, Fp:<p>, Fq:<p>^<k>");
  inv->add_option("--model", inv_args.model, "short or long");
  inv->add_option("--coeffs", inv_args.coeffs, "comma list of coefficients");

  ApArgs ap_args;
  CLI::App* ap = app.add_subcommand("ap", "trace of Frobenius of a reduction");
  ap->add_option("--curve", ap_args.curve)->required();
  ap->add_option("-p", ap_args.p, "single prime");
  ap->add_option("--pmax", ap_args.pmax, "table up to this bound");

  CongruenceArgs cong_args;
  std::string cong_pos1, cong_pos2;
  CLI::App* cong = app.add_subcommand("congruence", "mod-N trace comparison of two curves");
  cong->add_option("E1", cong_pos1, "first curve");
  cong->add_option("E2", cong_pos2, "second curve");
  cong->add_option("--e1", cong_args.e1, "first curve");
  cong->add_option("--e2", cong_args.e2, "second curve");
  cong->add_option("-N", cong_args.N)->required();
  cong->add_option("--pmax", cong_args.pmax)->required();

  DetClassArgs det_args;
  CLI::App* det = app.add_subcommand("detclasses", "intertwiner determinant classes at one prime");
  det->add_option("--e1", det_args.e1)->required();
  det->add_option("--e2", det_args.e2)->required();
  det->add_option("-N", det_args.N)->required();
  det->add_option("-p", det_args.p)->required();
  det->add_option("--kmax", det_args.kmax);

  ModuliPropsArgs mp_args;
  CLI::App* mp = app.add_subcommand("moduli-props", "seeded identity suite for level-structure operators");
  mp->add_option("-N", mp_args.N)->required();
  mp->add_option("-m", mp_args.m)->required();
  mp->add_option("-q", mp_args.q)->required();
  mp->add_option("--trials", mp_args.trials);
  mp->add_option("--seed", mp_args.seed)->required();
  mp->add_option("--k-cap", mp_args.kcap);

  FibresArgs fib_args;
  CLI::App* fib = app.add_subcommand("fibres", "determinant fibre census by full enumeration");
  fib->add_option("-N", fib_args.N)->required();
  fib->add_option("-m", fib_args.m);
  fib->add_option("-p", fib_args.p)->required();
  fib->add_option("-k", fib_args.k);
  fib->add_option("--q-cap", fib_args.qcap);

  FrobLawArgs fl_args;
  CLI::App* fl = app.add_subcommand("frobenius-laws", "Frobenius matrix det/trace/power laws on seeded curves");
  fl->add_option("-N", fl_args.N)->required();
  fl->add_option("-p", fl_args.p)->required();
  fl->add_option("--curves", fl_args.curves);
  fl->add_option("--jmax", fl_args.jmax);
  fl->add_option("--seed", fl_args.seed)->required();

  QuarticArgs q_args;
  CLI::App* qc = app.add_subcommand("quartic-check", "projective smoothness of a registry form");
  qc->add_option("--name", q_args.name)->required();
  qc->add_option("--primes", q_args.primes)->required();

  RadicalArgs rad_args;
  CLI::App* rad = app.add_subcommand("radical-check", "radical ideal membership");
  rad->add_option("--name", rad_args.name, "registry form: test vars against its jacobian ideal");
  rad->add_option("--modp", rad_args.modp, "reduce the named form mod p first");
  rad->add_option("--field", rad_args.field);
  rad->add_option("--vars", rad_args.vars, "comma list");
  rad->add_option("--ideal", rad_args.ideal, "semicolon list of generators");
  rad->add_option("--target", rad_args.target, "semicolon list of test polynomials");

  CensusArgs cen_args;
  CLI::App* cen = app.add_subcommand("smooth-census", "exhaustive plane-form smoothness census");
  cen->add_option("-p", cen_args.p)->required();
  cen->add_option("--degree", cen_args.degree);

  CLI::App* charp = app.add_subcommand("charp", "p-divisible level structure checks");
  charp->require_subcommand(1);

  EndosArgs en_args;
  CLI::App* en = charp->add_subcommand("endos", "triangular endomorphism ring laws");
  en->add_option("-N", en_args.N)->required();
  en->add_option("-q", en_args.q);

  PairingEqArgs pe_args;
  CLI::App* pe = charp->add_subcommand("pairing-eq", "equality of the two pairing formulas");
  pe->add_option("-N", pe_args.N)->required();
  pe->add_option("-q", pe_args.q);

  QuaternionArgs qa_args;
  CLI::App* qa = charp->add_subcommand("quaternion", "quaternion order quotient counts");
  qa->add_option("-p", qa_args.p)->required();
  qa->add_option("-r", qa_args.r);
  qa->add_option("--cap", qa_args.cap);

  SsCountArgs ss_args;
  CLI::App* ss = charp->add_subcommand("ss-count", "supersingular j-invariant enumeration");
  ss->add_option("-p", ss_args.p)->required();
  ss->add_option("--cap", ss_args.cap);

  SsCensusArgs sc_args;
  CLI::App* sc = charp->add_subcommand("census", "supersingular component bookkeeping");
  sc->add_option("-p", sc_args.p)->required();
  sc->add_option("-r", sc_args.r);
  sc->add_option("--structure-size", sc_args.structure);

  for (CLI::App* sub : {inv, ap, cong, det, mp, fib, fl, qc, rad, cen, en, pe, qa, ss, sc})
    sub->add_option("--out", out_path, "write the JSON report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << std::endl;
    return 2;
  }

  ReportEnvelope env;
  try {
    if (*inv) env = run_invariants(inv_args);
    else if (*ap) env = run_ap(ap_args);
    else if (*cong) {
      if (!cong_pos1.empty()) cong_args.e1 = cong_pos1;
      if (!cong_pos2.empty()) cong_args.e2 = cong_pos2;
      if (cong_args.e1.empty() || cong_args.e2.empty())
        throw input_error("need two curves (positional or --e1/--e2)");
      env = run_congruence(cong_args);
    } else if (*det) env = run_detclasses(det_args);
    else if (*mp) env = run_moduli_props(mp_args);
    else if (*fib) env = run_fibres(fib_args);
    else if (*fl) env = run_frobenius_laws(fl_args);
    else if (*qc) env = run_quartic_check(q_args);
    else if (*rad) env = run_radical_check(rad_args);
    else if (*cen) env = run_smooth_census(cen_args);
    else if (*en) env = run_charp_endos(en_args);
    else if (*pe) env = run_charp_pairing(pe_args);
    else if (*qa) env = run_charp_quaternion(qa_args);
    else if (*ss) env = run_charp_ss_count(ss_args);
    else if (*sc) env = run_charp_census(sc_args);
    else throw input_error("no subcommand selected");
  } catch (const input_error& e) {
    env.verdict = "ERROR";
    env.details = {{"error", "input"}, {"message", e.what()}};
  } catch (const unsupported_error& e) {
    env.verdict = "ERROR";
    env.details = {{"error", "unsupported"}, {"message", e.what()}};
  } catch (const membership_error& e) {
    env.verdict = "ERROR";
    env.details = {{"error", "membership"}, {"message", e.what()}};
  } catch (const resource_error& e) {
    env.verdict = "ERROR";
    env.details = {{"error", "resource"}, {"message", e.what()}};
  } catch (const std::exception& e) {
    env.verdict = "ERROR";
    env.details = {{"error", "internal"}, {"message", e.what()}};
  }

  std::string text = env.to_json().dump(2) + "\n";
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) {
      std::cerr << "cannot open output path: " << out_path << std::endl;
      return 2;
    }
    f << text;
  } else {
    std::cout << text;
  }
  return exit_code_for(env.verdict);
}
