//
// Copyright 2026 The ppres Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// ppres: parse, evaluate, bound and check parametric Presburger formulas.
//
//   ppres parse F
//   ppres eval F --t 2 --assign x=5
//   ppres eliminate F [--qfree]
//   ppres qfree F
//   ppres check F G --t-max 12 --box 15
//   ppres count F --t-range 1:8 --box 0:2t^2+t [--fit 1 2]
//
// F and G are file names, or formula text with --inline.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ppres/count.hpp"
#include "ppres/eliminate.hpp"
#include "ppres/error.hpp"
#include "ppres/oracle.hpp"
#include "ppres/parser.hpp"
#include "ppres/qfree.hpp"

namespace {

using json = nlohmann::json;
using namespace ppres;

enum Exit {
  kOk = 0,
  kCounterexample = 1,
  kParseError = 2,
  kIneligible = 3,
  kMissingBinding = 4,
  kInconclusive = 5,
  kFailure = 6,
};

struct Globals {
  bool json = false;
  bool inline_text = false;
};

// Thrown for malformed arguments that are not formula syntax errors.
class UsageError : public Error {
 public:
  using Error::Error;
};

SourceFormula load(const Globals& g, const std::string& arg) {
  return g.inline_text ? inline_source(arg) : load_source(arg);
}

json stats_json(const PipelineStats& s, const Formula& out) {
  return {{"eliminated", s.eliminated},
          {"sign_cases", s.sign_cases},
          {"div_cases", s.div_cases},
          {"fresh_vars", s.fresh_vars},
          {"output_nodes", node_count(out)},
          {"unbounded_quantifiers", count_unbounded_quantifiers(out)},
          {"quantifiers", count_quantifiers(out)}};
}

json witness_json(const Assignment& a) {
  json w = json::object();
  for (const auto& [v, x] : a) w[v.display()] = x.str();
  return w;
}

void emit(const Globals& g, const std::string& command, const json& input, const json& result,
          const json& stats, const json* witness, const std::string& text) {
  if (!g.json) {
    std::cout << text;
    return;
  }
  json out = {{"command", command}, {"input", input}, {"result", result}, {"stats", stats}};
  if (witness) out["witness"] = *witness;
  std::cout << out.dump(2) << "\n";
}

std::string stats_text(const json& stats) {
  std::string out;
  for (const auto& [k, v] : stats.items()) out += "# " + k + ": " + v.dump() + "\n";
  return out;
}

Assignment parse_assignments(const std::vector<std::string>& items) {
  Assignment env;
  for (const auto& item : items) {
    std::size_t start = 0;
    while (start <= item.size()) {
      std::size_t end = item.find(',', start);
      if (end == std::string::npos) end = item.size();
      const std::string part = item.substr(start, end - start);
      const std::size_t eq = part.find('=');
      if (eq == std::string::npos || eq == 0) throw UsageError("bad assignment '" + part + "'");
      try {
        env[VarId{part.substr(0, eq)}] = BigInt(part.substr(eq + 1));
      } catch (const std::exception&) {
        throw UsageError("bad value in '" + part + "'");
      }
      start = end + 1;
    }
  }
  return env;
}

std::pair<std::string, std::string> split_range(const std::string& s) {
  const std::size_t colon = s.find(':');
  if (colon == std::string::npos) throw UsageError("expected lo:hi, got '" + s + "'");
  return {s.substr(0, colon), s.substr(colon + 1)};
}

int run_parse(const Globals& g, const std::string& arg) {
  SourceFormula src = load(g, arg);
  const std::string text = print(src.formula);
  emit(g, "parse", src.origin, text,
       {{"nodes", node_count(src.formula)},
        {"quantifiers", count_quantifiers(src.formula)},
        {"unbounded_quantifiers", count_unbounded_quantifiers(src.formula)}},
       nullptr, text + "\n");
  return kOk;
}

int run_eval(const Globals& g, const std::string& arg, std::uint64_t t,
             const std::vector<std::string>& assign) {
  SourceFormula src = load(g, arg);
  const Assignment env = parse_assignments(assign);
  bool value;
  std::string method;
  for (const auto& v : free_vars(src.formula)) {
    if (!env.contains(v)) throw MissingBindingError(v.display());
  }
  if (count_unbounded_quantifiers(src.formula) == 0) {
    method = "enumeration";
    try {
      value = eval_bounded(src.formula, t, env);
    } catch (const OverflowError&) {
      value = evaluate(src.formula, t, env);
    }
  } else {
    method = "cooper";
    value = classical_cooper_decide(ground(src.formula, t), env);
  }
  emit(g, "eval", src.origin, value, {{"t", t}, {"method", method}}, nullptr,
       std::string(value ? "true" : "false") + "\n");
  return kOk;
}

int report_ineligible(const Globals& g, const std::string& command, const SourceFormula& src,
                      const EligibilityReport& report) {
  json violations = json::array();
  std::string text;
  for (const auto& v : report.violations) {
    violations.push_back({{"location", v.location}, {"condition", v.condition}, {"offending", v.offending}});
    text += describe(v) + "\n";
  }
  if (g.json) {
    emit(g, command, src.origin, {{"eligible", false}, {"violations", violations}}, json::object(),
         nullptr, "");
  } else {
    std::cerr << "not eligible for quantifier-free elimination\n" << text;
  }
  return kIneligible;
}

int run_qfree(const Globals& g, const std::string& command, const std::string& arg,
              std::size_t limit) {
  SourceFormula src = load(g, arg);
  const EligibilityReport report = qfree_eligible(src.formula);
  if (!report.eligible) return report_ineligible(g, command, src, report);
  const Formula out = eliminate_to_qfree(src.formula, limit);
  const json stats = {{"output_nodes", node_count(out)}, {"quantifiers", count_quantifiers(out)}};
  const std::string text = print(out);
  emit(g, command, src.origin, text, stats, nullptr, text + "\n" + stats_text(stats));
  return kOk;
}

int run_eliminate(const Globals& g, const std::string& arg, bool qfree, std::size_t expand,
                  std::size_t limit) {
  if (qfree) return run_qfree(g, "eliminate", arg, limit);
  SourceFormula src = load(g, arg);
  PipelineOptions options;
  options.simplify.expansion_limit = expand;
  PipelineStats stats;
  const Formula out = bound_all_quantifiers(src.formula, options, &stats);
  const json s = stats_json(stats, out);
  const std::string text = print(out);
  emit(g, "eliminate", src.origin, text, s, nullptr, text + "\n" + stats_text(s));
  return kOk;
}

int run_check(const Globals& g, const std::string& a, const std::string& b, const GridSpec& grid) {
  SourceFormula fa = load(g, a), fb = load(g, b);
  const auto va = free_vars(fa.formula), vb = free_vars(fb.formula);
  const bool a_in_b = std::includes(vb.begin(), vb.end(), va.begin(), va.end());
  const bool b_in_a = std::includes(va.begin(), va.end(), vb.begin(), vb.end());
  if (!a_in_b && !b_in_a) {
    throw UsageError("free variables differ: neither formula's variables contain the other's");
  }
  const EquivReport r = check_equiv(fa.formula, fb.formula, grid);
  json stats = {{"t_min", grid.t_min}, {"t_max", grid.t_max}, {"box", grid.radius}, {"points", r.points}};
  std::string text;
  json witness;
  switch (r.status) {
    case EquivReport::Status::kPass:
      text = "pass (" + std::to_string(r.points) + " points)\n";
      break;
    case EquivReport::Status::kCounterexample: {
      witness = witness_json(r.witness);
      witness["t"] = *r.t;
      text = "counterexample at t=" + std::to_string(*r.t);
      for (const auto& [v, x] : r.witness) text += ", " + v.display() + "=" + x.str();
      text += "\n";
      break;
    }
    case EquivReport::Status::kInconclusive:
      text = "inconclusive: " + r.note + "\n";
      stats["note"] = r.note;
      break;
  }
  emit(g, "check", json::array({fa.origin, fb.origin}), to_string(r.status), stats,
       r.t ? &witness : nullptr, text);
  switch (r.status) {
    case EquivReport::Status::kPass:
      return kOk;
    case EquivReport::Status::kCounterexample:
      return kCounterexample;
    default:
      return kInconclusive;
  }
}

int run_count(const Globals& g, const std::string& arg, const std::string& t_range,
              const std::string& box_text, const std::vector<unsigned>& fit_args) {
  SourceFormula src = load(g, arg);
  const auto [t0, t1] = split_range(t_range);
  std::uint64_t t_min, t_max;
  try {
    t_min = std::stoull(t0);
    t_max = std::stoull(t1);
  } catch (const std::exception&) {
    throw UsageError("bad --t-range '" + t_range + "'");
  }
  const auto [lo, hi] = split_range(box_text);
  const CountBox box{parse_polynomial(lo), parse_polynomial(hi)};
  const CountTable table = count_family(src.formula, t_min, t_max, box);

  json rows = json::array();
  std::string text = "# t count\n";
  for (const auto& row : table.rows) {
    rows.push_back({{"t", row.t}, {"count", row.count.str()}, {"truncated", row.truncated}});
    text += std::to_string(row.t) + " " + row.count.str() + (row.truncated ? " truncated" : "") + "\n";
  }
  json result = {{"rows", rows}, {"box", {box.lo.to_string(), box.hi.to_string()}}};
  if (!fit_args.empty()) {
    const QuasiPolynomialFit fit = fit_quasi_polynomial(table, fit_args[0], fit_args[1]);
    json classes = json::array();
    text += "# empirical fit, period " + std::to_string(fit.period) + ", degree " +
            std::to_string(fit.degree) + "\n";
    for (const auto& c : fit.classes) {
      json residuals = json::array();
      for (const auto& r : c.residuals) residuals.push_back(r.str());
      const std::string poly = c.coeffs.empty() ? "" : format_polynomial(c.coeffs);
      classes.push_back({{"residue", c.residue}, {"polynomial", poly}, {"points", c.ts.size()},
                         {"exact", c.exact}, {"integral", c.integral}, {"residuals", residuals}});
      text += "t = " + std::to_string(c.residue) + " mod " + std::to_string(fit.period) + ": ";
      if (c.coeffs.empty()) {
        text += "underdetermined (" + std::to_string(c.ts.size()) + " points)\n";
      } else {
        text += poly + (c.exact ? (c.integral ? "  exact, integer coefficients" : "  exact")
                                : "  residuals:");
        if (!c.exact) {
          for (const auto& r : c.residuals) text += " " + r.str();
        }
        text += "\n";
      }
    }
    result["fit"] = {{"period", fit.period}, {"degree", fit.degree}, {"exact", fit.exact},
                     {"classes", classes}};
  }
  emit(g, "count", src.origin, result, {{"t_min", t_min}, {"t_max", t_max}}, nullptr, text);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bound the quantifiers of parametric Presburger formulas"};
  app.require_subcommand(1);
  Globals g;
  app.add_flag("--json", g.json, "Machine-readable output");
  app.add_flag("--inline", g.inline_text, "Treat inputs as formula text instead of file names");
  app.fallthrough();

  std::string in1, in2;
  auto* parse = app.add_subcommand("parse", "Parse and print in canonical form");
  parse->add_option("input", in1)->required();

  std::uint64_t t = 0;
  std::vector<std::string> assign;
  auto* eval = app.add_subcommand("eval", "Truth value at one parameter value");
  eval->add_option("input", in1)->required();
  eval->add_option("--t", t, "Parameter value")->required();
  eval->add_option("--assign", assign, "var=value, repeatable or comma separated");

  bool qfree = false;
  std::size_t expand = 0;
  std::size_t limit = 1'000'000;
  auto* elim = app.add_subcommand("eliminate", "Replace unbounded quantifiers by bounded ones");
  elim->add_option("input", in1)->required();
  elim->add_flag("--qfree", qfree, "Produce a quantifier-free formula (eligible inputs only)");
  elim->add_option("--expand", expand, "Unroll bounded quantifiers with constant bound up to this");
  elim->add_option("--limit", limit, "Largest range unrolled with --qfree");

  auto* qf = app.add_subcommand("qfree", "Eligibility check and quantifier-free elimination");
  qf->add_option("input", in1)->required();
  qf->add_option("--limit", limit, "Largest range unrolled");

  GridSpec grid;
  auto* check = app.add_subcommand("check", "Compare two formulas on a finite grid");
  check->add_option("first", in1)->required();
  check->add_option("second", in2)->required();
  check->add_option("--t-min", grid.t_min, "Smallest parameter value");
  check->add_option("--t-max", grid.t_max, "Largest parameter value");
  check->add_option("--box", grid.radius, "Free variables range over [-box, box]");

  std::string t_range = "0:8", box = "-15:15";
  std::vector<unsigned> fit;
  auto* count = app.add_subcommand("count", "Count the members of a family inside a box");
  count->add_option("input", in1)->required();
  count->add_option("--t-range", t_range, "lo:hi");
  count->add_option("--box", box, "lo:hi, polynomials in t");
  count->add_option("--fit", fit, "Period and degree of a quasi-polynomial fit")->expected(2);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kParseError;
  }

  try {
    if (*parse) return run_parse(g, in1);
    if (*eval) return run_eval(g, in1, t, assign);
    if (*elim) return run_eliminate(g, in1, qfree, expand, limit);
    if (*qf) return run_qfree(g, "qfree", in1, limit);
    if (*check) return run_check(g, in1, in2, grid);
    if (*count) return run_count(g, in1, t_range, box, fit);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const UnboundedQuantifierError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const IneligibleError& e) {
    std::cerr << e.what() << "\n";
    return kIneligible;
  } catch (const MissingBindingError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMissingBinding;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kOk;
}
