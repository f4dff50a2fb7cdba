/*
 * Copyright 2026 The norml Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "norml/error.hpp"
#include "norml/harness/experiments.hpp"

using namespace norml;

namespace {

struct Globals {
  u64 seed = 20261016;
  int precision = 12;
  int max_bits = 0;
  std::string json_path;
  unsigned jobs = 1;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PrimePower {
  u64 p = 0;
  int k = 0;
};

PrimePower parse_q(const std::string& s) {
  static const std::regex re(R"(^(\d+)(?:\^(\d+))?$)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw UsageError("bad --q '" + s + "', expected p or p^k");
  const u64 v = std::stoull(m[1]);
  if (m[2].matched) {
    const int k = std::stoi(m[2]);
    if (!is_prime(v) || k < 1) throw UsageError("bad --q '" + s + "'");
    return {v, k};
  }
  for (u64 p = 2; p <= v; ++p) {
    if (v % p) continue;
    if (!is_prime(p)) break;
    u64 w = v;
    int k = 0;
    while (w % p == 0) {
      w /= p;
      ++k;
    }
    if (w != 1) break;
    return {p, k};
  }
  throw UsageError("--q " + s + " is not a prime power");
}

void emit(const Globals& g, const json& doc, const std::string& text) {
  if (g.json_path == "-") {
    std::cout << doc.dump(2) << "\n";
    return;
  }
  if (!g.json_path.empty()) {
    std::ofstream out(g.json_path);
    if (!out) throw UsageError("cannot write " + g.json_path);
    out << doc.dump(2) << "\n";
  }
  std::cout << text;
}

json field_json(u64 p, int n) {
  FieldPtr F = build_field(p, n, 0);
  json mod = json::array();
  for (auto c : F->modulus()) mod.push_back(c);
  return {{"descriptor", F->descriptor()}, {"modulus", mod}, {"generator", F->encode(F->generator())}};
}

struct SumArgs {
  std::string expr, group = "gm", q;
  int m = 1, r = 1;
  u64 t = 0;
};

SumSpec to_spec(const SumArgs& a) {
  const PrimePower pq = parse_q(a.q);
  SumSpec s;
  s.expr = parse_expr(a.expr);
  s.kind = parse_group(a.group);
  s.p = pq.p;
  s.m0 = pq.k;
  s.m = a.m;
  s.r = a.r;
  s.t = a.t;
  validate(s);
  return s;
}

json spec_json(const SumSpec& s) {
  return {{"expression", to_sexpr(*s.expr)}, {"group", group_name(s.kind)}, {"q", sum_q(s)},
          {"m", s.m}, {"r", s.r}, {"t", s.t}, {"field", field_json(s.p, s.m0 * s.m)}};
}

void add_sum_options(CLI::App* sub, SumArgs& a) {
  sub->add_option("--expr", a.expr, "trace-function expression")->required();
  sub->add_option("--group", a.group, "gm or a1");
  sub->add_option("--q", a.q, "base field order p^m0")->required();
  sub->add_option("--m", a.m, "level of t");
  sub->add_option("--r", a.r, "norm degree");
  sub->add_option("--t", a.t, "encoding of t in F_{q^m}");
}

int run_fields(const Globals& g, const std::string& q) {
  const PrimePower pq = parse_q(q);
  FieldPtr F = build_field(pq.p, pq.k, 0);
  json doc = field_json(pq.p, pq.k);
  json subs = json::array();
  for (int d : F->divisor_degrees()) subs.push_back({{"degree", d}, {"order", F->subfield_order(d)}});
  doc["subfields"] = subs;
  doc["order"] = F->order();
  std::ostringstream os;
  os << F->descriptor() << " modulus";
  for (auto c : F->modulus()) os << " " << c;
  os << " generator " << F->encode(F->generator()) << "\n";
  emit(g, doc, os.str());
  return 0;
}

int run_sum(const Globals& g, const SumArgs& a, int series, bool oracle) {
  const SumSpec s = to_spec(a);
  const SumOptions opt{g.jobs};
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<CycNumber> values;
  if (series > 0) {
    values = sum_sequence(s, series, opt).values;
  } else {
    values.push_back(norm_power_sum(s, opt));
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  json doc = {{"schema", kReportSchema}, {"spec", spec_json(s)},
              {"values", sequence_to_json(values, g.precision)}, {"timing", {{"runtime_s", dt}}}};
  int rc = 0;
  if (oracle) {
    const CycNumber o = brute_force_oracle(s);
    const bool ok = values[0] == o;
    doc["oracle"] = {{"value", cyc_to_json(o, g.precision)}, {"agrees", ok}};
    rc = ok ? 0 : 1;
  }
  std::ostringstream os;
  for (std::size_t i = 0; i < values.size(); ++i) os << (i ? " " : "") << values[i].normalized().to_string();
  os << "\n";
  if (oracle) os << "oracle " << (rc == 0 ? "agrees" : "DISAGREES") << "\n";
  emit(g, doc, os.str());
  return rc;
}

int run_lfun(const Globals& g, const SumArgs& a, int terms, int power) {
  const SumSpec s = to_spec(a);
  const auto seq = sum_sequence(s, terms, SumOptions{g.jobs});
  const u64 qm = *checked_pow(sum_q(s), s.m);
  json doc = {{"schema", kReportSchema}, {"spec", spec_json(s)},
              {"coefficients", sequence_to_json(seq.values, g.precision)}};
  const HeldOut h = held_out_prediction(seq.values, 2);
  json conn = json::array();
  for (const auto& c : h.recurrence.connection) conn.push_back(c.normalized().to_string());
  doc["recurrence"] = {{"order", h.recurrence.order}, {"connection", conn}, {"certified", h.certified}};
  doc["prediction"] = {{"predicted", sequence_to_json(h.predicted, g.precision)},
                       {"actual", sequence_to_json(h.actual, g.precision)},
                       {"ok", h.ok}};
  int rc = h.ok ? 0 : 1;
  try {
    const RationalModel model = power > 1 ? rth_power_check(seq, power) : fit_rational_model(seq);
    const WeightReport w = classify_weights(model, qm);
    doc["model"] = model_to_json(model, g.precision);
    doc["weights"] = weights_to_json(w);
    if (!w.integral_weights_ok) rc = 1;
  } catch (const Error& e) {
    doc["model"] = nullptr;
    doc["fit"] = std::string("no rational fit at tested depth: ") + e.what();
    rc = 1;
  }
  if (power > 1) doc["power"] = power;
  emit(g, doc, g.json_path == "-" ? "" : doc.dump(2) + "\n");
  return rc;
}

MonodromyProfile profile_from_json(const json& j) {
  MonodromyProfile prof;
  prof.n = j.at("n").get<int>();
  for (const auto& b : j.at("blocks")) {
    prof.blocks[b.at("chi").get<std::string>()][b.at("j").get<int>()] += b.at("mult").get<int>();
  }
  prof.validate();
  return prof;
}

int run_bounds(const Globals& g, const std::string& preset, const std::string& profile, long d,
               long a, bool same, long r) {
  MonodromyProfile prof;
  std::optional<mpq_class> closed;
  json params;
  if (!preset.empty() && !profile.empty()) throw UsageError("give --preset or --profile, not both");
  if (preset == "pushforward-kernel") {
    prof = pushforward_kernel_profile(d);
    closed = normexa1_bound(d, r);
    params = {{"preset", preset}, {"d", d}};
  } else if (preset == "kummer") {
    prof = kummer_profile(a, same);
    closed = normexa2_bound(a, r, same);
    params = {{"preset", preset}, {"a", a}, {"same_char", same}};
  } else if (!preset.empty()) {
    throw UsageError("unknown preset '" + preset + "'");
  } else if (!profile.empty()) {
    json j;
    std::ifstream in(profile);
    try {
      j = in ? json::parse(in) : json::parse(profile);
    } catch (const json::exception& e) {
      throw UsageError(std::string("bad profile: ") + e.what());
    }
    try {
      prof = profile_from_json(j);
    } catch (const json::exception& e) {
      throw UsageError(std::string("bad profile: ") + e.what());
    }
    params = {{"profile", j}};
  } else {
    throw UsageError("give --preset or --profile");
  }
  params["r"] = r;
  json A = json::object(), B = json::object(), M = json::object();
  for (long k = 1; k <= r; ++k) A[std::to_string(k)] = formula_A(prof, k).get_str();
  for (long i = 0; i <= r; ++i) {
    B[std::to_string(i)] = formula_B(prof, i).get_str();
    M[std::to_string(i)] = formula_M(prof, r, i).get_str();
  }
  const mpq_class C = C_bound_mult(prof, r);
  json doc = {{"schema", kReportSchema}, {"parameters", params}, {"n", prof.n},
              {"A", A}, {"B", B}, {"M", M}, {"C", C.get_str()}};
  int rc = 0;
  if (closed) {
    doc["closed_form"] = closed->get_str();
    doc["agreement"] = *closed == C;
    rc = *closed == C ? 0 : 1;
  }
  emit(g, doc, g.json_path == "-" ? "" : doc.dump(2) + "\n");
  return rc;
}

BasePoly default_poly(u64 p) {
  if (p == 3) return {0, 0, 1};
  return {0, -3, 0, 1};
}

std::vector<ExperimentReport> plan(const std::string& name, const std::optional<PrimePower>& q,
                                   const Globals& g) {
  HarnessOptions opt{g.seed, g.jobs, g.precision};
  std::vector<ExperimentReport> out;
  const bool all = name == "all";
  auto want = [&](const char* n) { return all || name == n; };
  const std::vector<PrimePower> qs =
      q ? std::vector<PrimePower>{*q} : std::vector<PrimePower>{{3, 1}, {5, 1}, {7, 1}};
  bool known = all;

  if (want("fibers")) {
    known = true;
    for (auto pq : qs) {
      for (int m : {1, 2}) {
        for (int r : {2, 3}) {
          if (checked_pow(pq.p, pq.k * m * r, 531441)) out.push_back(exp_fibers(pq.p, pq.k, m, r));
        }
      }
    }
  }
  if (want("negligible-kummer")) {
    known = true;
    for (auto pq : qs) {
      if (q && pq.p == 2 && pq.k == 1) continue;
      const u64 Q = *checked_pow(pq.p, pq.k);
      std::vector<std::pair<MultiplicativeCharacter, int>> chars;
      for (u64 n = 2; n <= Q - 1; ++n) {
        if ((Q - 1) % n == 0 && (n <= 4 || n == Q - 1)) chars.push_back({{pq.p, pq.k, (Q - 1) / n}, 1});
      }
      chars.push_back({{pq.p, 2 * pq.k, 1}, 2});
      for (const auto& [chi, d] : chars) {
        for (int m : {1, 2}) {
          for (int r : {2, 3}) {
            if (checked_pow(pq.p, pq.k * m * r * d, u64{1} << 22)) {
              out.push_back(exp_negligible_kummer(pq.p, pq.k, chi, d, m, r, opt));
            }
          }
        }
      }
    }
  }
  if (want("artin-schreier-scaling")) {
    known = true;
    for (auto pq : qs) {
      for (int m : {1, 2}) {
        for (int r : {2, 3}) {
          if (!checked_pow(pq.p, pq.k * m * r, u64{1} << 20)) continue;
          out.push_back(exp_artin_schreier_scaling(pq.p, pq.k, 1, {0, 1}, m, r, opt));
          if (pq.p > 2) out.push_back(exp_artin_schreier_scaling(pq.p, pq.k, 2 % pq.p, {0, 2}, m, r, opt));
        }
      }
    }
  }
  if (want("rationality")) {
    known = true;
    for (auto pq : qs) {
      const std::string qs_ = std::to_string(pq.p) + "^" + std::to_string(pq.k);
      const u64 Q = *checked_pow(pq.p, pq.k);
      std::vector<std::pair<std::string, GroupKind>> suite = {
          {"(const)", GroupKind::kMultiplicative},
          {"(const)", GroupKind::kAdditive},
          {"(as (psi a=1) (poly 0 1))", GroupKind::kAdditive},
      };
      if (pq.p > 2) {
        suite.push_back({"(kummer (chi e=" + std::to_string((Q - 1) / 2) + "@" + qs_ + ") (poly 0 1))",
                         GroupKind::kMultiplicative});
      }
      for (const auto& [e, kind] : suite) {
        SumSpec s;
        s.expr = parse_expr(e);
        s.kind = kind;
        s.p = pq.p;
        s.m0 = pq.k;
        s.r = 2;
        s.t = 1;
        if (checked_pow(pq.p, pq.k * 16, u64{1} << max_field_bits())) {
          out.push_back(exp_rationality(s, {1}, 8, {}, opt));
        }
      }
    }
  }
  if (want("weight-ceiling") && (!q || (q->p == 7 && q->k == 1))) {
    known = true;
    SumSpec s;
    s.expr = ex::kernel({0, -3, 0, 1});
    s.p = 7;
    s.r = 2;
    RationalityLimits lim;
    lim.degree_bound = 16;
    lim.weight_ceiling = 1.0;
    auto R = exp_rationality(s, {1, 2, 5, 6}, 6, lim, opt);
    R.id = "weight-ceiling";
    out.push_back(std::move(R));
  }
  if (want("power-asymmetry")) {
    known = true;
    for (auto pq : qs) {
      FieldPtr F2 = build_field(pq.p, 2 * pq.k, 0);
      FieldPtr K = pq.k == 1 ? F2->subfield(1).standalone : F2->subfield(pq.k).standalone;
      SumSpec s;
      s.expr = ex::punctual(pq.p, 2 * pq.k, F2->encode(F2->x()));
      s.kind = GroupKind::kAdditive;
      s.p = pq.p;
      s.m0 = pq.k;
      s.r = 2;
      s.t = K->encode(F2->restrict_to(pq.k, F2->trace_to(F2->x(), pq.k)));
      if (checked_pow(pq.p, pq.k * 16, u64{1} << max_field_bits())) {
        out.push_back(exp_power_asymmetry(s, 8, 2, opt));
      }
    }
  }
  if (want("additive-bound")) {
    known = true;
    for (auto pq : qs) out.push_back(exp_additive_bound(pq.p, pq.k, default_poly(pq.p), 1, 2, opt));
  }
  if (want("multiplicative-bound")) {
    known = true;
    for (auto pq : qs) {
      out.push_back(exp_multiplicative_bound(pq.p, pq.k, default_poly(pq.p), 1, 2, pq.p > 2 ? 2 : 1, opt));
    }
  }
  if (want("kummer-bound")) {
    known = true;
    for (auto pq : qs) {
      if (pq.p == 2) continue;
      const u64 Q = *checked_pow(pq.p, pq.k);
      out.push_back(exp_kummer_bound(pq.p, pq.k, {pq.p, pq.k, (Q - 1) / 2}, {1, 1}, 1, 2, opt));
    }
  }
  if (want("weil-descent")) {
    known = true;
    for (auto pq : qs) out.push_back(exp_weil_descent_comparison(pq.p, pq.k, 3));
  }
  if (want("oracle")) {
    known = true;
    out.push_back(exp_oracle_equivalence(g.seed, 100, opt));
  }
  if (want("formulas")) {
    known = true;
    out.push_back(exp_formula_crosscheck(4, 3));
  }
  if (!known) throw UsageError("unknown experiment '" + name + "'");
  return out;
}

int run_verify(const Globals& g, const std::string& name, const std::string& q) {
  std::optional<PrimePower> pq;
  if (!q.empty()) pq = parse_q(q);
  const auto reports = plan(name, pq, g);
  const HarnessOptions opt{g.seed, g.jobs, g.precision};
  const json doc = report_document(reports, opt);
  std::ostringstream os;
  int failed = 0;
  for (const auto& R : reports) {
    os << (R.pass() ? "[PASS] " : "[FAIL] ") << R.id << " " << R.parameters.dump();
    if (!R.pass()) os << " : " << R.failures.front();
    os << "\n";
    failed += !R.pass();
  }
  os << reports.size() - failed << "/" << reports.size() << " experiments passed\n";
  emit(g, doc, g.json_path == "-" ? "" : os.str());
  return failed ? 1 : 0;
}

bool is_usage(ErrorCode c) {
  switch (c) {
    case ErrorCode::kParseError:
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kDomainViolation:
    case ErrorCode::kNotPrime:
    case ErrorCode::kNotADivisor:
    case ErrorCode::kFieldMismatch:
    case ErrorCode::kZeroArgument:
    case ErrorCode::kTwistNotIntegral:
    case ErrorCode::kNotInSubfield:
      return true;
    default:
      return false;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"norml: norm power sums, norm L-functions and their bounds"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "experiment seed");
  app.add_option("--precision", g.precision, "decimal places of approximations");
  app.add_option("--max-field-bits", g.max_bits, "ceiling on field size in bits");
  app.add_option("--json", g.json_path, "write the JSON report here ('-' for stdout)");
  app.add_option("--jobs", g.jobs, "worker threads")->check(CLI::PositiveNumber);

  std::string fq;
  auto* fields = app.add_subcommand("fields", "describe a finite field");
  fields->add_option("--q", fq, "field order p^n")->required();

  SumArgs sa;
  int series = 0;
  bool oracle = false;
  auto* sum = app.add_subcommand("sum", "norm power sum f^{N,r}(k_m, t)");
  add_sum_options(sum, sa);
  sum->add_option("--series", series, "return the first S terms instead");
  sum->add_flag("--oracle", oracle, "compare against brute force");

  SumArgs la;
  int terms = 8, power = 1;
  auto* lfun = app.add_subcommand("lfun", "fit the norm L-function");
  add_sum_options(lfun, la);
  lfun->add_option("--terms", terms, "series depth S");
  lfun->add_option("--power", power, "fit the r-th power instead");

  std::string preset, profile;
  long bd = 3, ba = 1, br = 2;
  bool same = false;
  auto* bounds = app.add_subcommand("bounds", "degree bounds from a monodromy profile");
  bounds->add_option("--preset", preset, "pushforward-kernel or kummer");
  bounds->add_option("--profile", profile, "profile JSON file or literal");
  bounds->add_option("--d", bd, "degree for pushforward-kernel");
  bounds->add_option("--a", ba, "root count for kummer");
  bounds->add_flag("--same-char", same, "kummer with equal monodromy at 0 and infinity");
  bounds->add_option("--r", br, "norm degree");

  std::string exp_name, vq;
  auto* verify = app.add_subcommand("verify", "run verification experiments");
  verify->add_option("experiment", exp_name, "experiment name or 'all'")->required();
  verify->add_option("--q", vq, "restrict to this base field");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (const char* env = std::getenv("NORML_MAX_FIELD_BITS")) set_max_field_bits(std::atoi(env));
    if (g.max_bits > 0) set_max_field_bits(g.max_bits);
    if (*fields) return run_fields(g, fq);
    if (*sum) return run_sum(g, sa, series, oracle);
    if (*lfun) return run_lfun(g, la, terms, power);
    if (*bounds) return run_bounds(g, preset, profile, bd, ba, same, br);
    if (*verify) return run_verify(g, exp_name, vq);
  } catch (const UsageError& e) {
    std::cerr << "norml: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "norml: " << e.what() << "\n";
    return is_usage(e.code()) ? 2 : 1;
  }
  return 2;
}
