#include "neutro/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "neutro/calc.hpp"
#include "neutro/contin.hpp"
#include "neutro/evaluate.hpp"
#include "neutro/json_io.hpp"
#include "neutro/limits.hpp"
#include "neutro/textparse.hpp"

namespace neutro::cli {

namespace {

using json_io::json;
using json_io::to_json;

struct Options {
  std::string defs;
  bool json = false;
  LimitConfig lim;
  int n = 4096;
  std::string rule = "mid";
  int grid = 1024;

  std::string fn;
  std::string at_text;
  double at = 0.0;
  std::string side = "both";
  double a = 0.0;
  double b = 0.0;
  std::optional<double> k;
  std::optional<double> k1;
  std::optional<double> k2;
  std::string set_a;
  std::string set_b;
  std::string expr;
  std::optional<double> diff_at;
};

// What a command produced, before rendering.
struct Record {
  Record(std::string k, std::string t) : kind(std::move(k)), text(std::move(t)) {}
  std::string kind;
  std::string text;
  json result = json::object();
  std::vector<std::string> diagnostics;
};

using Defs = std::vector<std::pair<std::string, FuncSpec>>;

Defs load_defs(const std::string& path) {
  if (path.empty()) throw Error(Errc::UsageError, "--defs is required for this command");
  std::ifstream in(path);
  if (!in) throw Error(Errc::UsageError, "cannot read definitions file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_defs(ss.str());
}

FuncSpec lookup(const Defs& defs, const std::string& name) {
  for (const auto& [n, f] : defs) {
    if (n == name) return f;
  }
  throw Error(Errc::UsageError, "unknown function '" + name + "'");
}

std::string points_text(const std::vector<double>& xs) {
  std::string s;
  for (double x : xs) s += (s.empty() ? "" : ", ") + format_number(x);
  return "{" + s + "}";
}

Record limit_record(const std::string& kind, const LimitOutcome& o) {
  Record r{kind, to_string(o)};
  r.result["limit"] = to_json(o);
  return r;
}

class Runner {
 public:
  explicit Runner(const Options& o) : o_(o) {}

  Record eval_cmd() {
    const NeutroValue v = eval(f(), parse_value(o_.at_text));
    Record r{"eval", to_string(v)};
    r.result["value"] = to_json(v);
    return r;
  }

  Record limit_cmd() {
    if (o_.side == "both") return limit_record("limit", full_limit(f(), o_.at, o_.lim));
    const Side side = o_.side == "left" ? Side::Left : Side::Right;
    const FuncSpec fn = f();
    Record r = limit_record("limit", directional_limit(fn, o_.at, side, o_.lim));
    const auto branches = branch_limits(fn, o_.at, side, o_.lim);
    if (branches.size() > 1) {
      json arr = json::array();
      for (std::size_t i = 0; i < branches.size(); ++i) {
        arr.push_back(to_json(branches[i]));
        r.diagnostics.push_back("branch " + std::to_string(i + 1) + ": " + to_string(branches[i]));
      }
      r.result["branches"] = arr;
    }
    return r;
  }

  Record mereo_cmd() { return limit_record("mereo-limit", mereo_limit(f(), o_.at, o_.lim)); }

  Record classify_cmd() {
    const ContinuityClass c = classify_at(f(), o_.at, o_.lim);
    Record r{"classify", to_string(c)};
    r.result = to_json(c);
    return r;
  }

  Record diff_cmd() {
    const FuncSpec fn = f();
    if (o_.diff_at) {
      const DerivClass d = derivative_classify(fn, *o_.diff_at, o_.lim.tol);
      Record r{"diff", to_string(d)};
      static constexpr const char* names[] = {"differentiable", "mereo-derivative",
                                              "not-differentiable"};
      r.result["class"] = names[static_cast<int>(d.kind)];
      r.result["left"] = to_json(d.left);
      r.result["right"] = to_json(d.right);
      if (d.kind != DerivClass::Kind::NotDifferentiable) r.result["value"] = to_json(d.value);
      return r;
    }
    const FuncSpec d = derivative_thick(fn);
    Record r{"diff", to_string(d)};
    r.result["derivative"] = to_string(d);
    return r;
  }

  Record diff_nn_cmd() {
    const FuncSpec d = derivative_nn(f());
    Record r{"diff-nn", to_string(d)};
    r.result["derivative"] = to_string(d);
    return r;
  }

  Record antideriv_cmd() {
    const Antiderivative a = antiderivative_nn(f());
    Record r{"antideriv", to_string(a)};
    r.result["primitive"] = to_string(a.primitive);
    r.result["constant"] = a.constant;
    return r;
  }

  Record integrate_cmd() {
    const IntegralReport rep = integrate_thick_report(f(), o_.a, o_.b, icfg());
    Record r{"integrate", to_string(rep.value)};
    const Interpretations in = integral_interpretations(rep.value.inf(), rep.value.sup());
    r.result["value"] = to_json(rep.value);
    r.result["interpretations"] = {{"min", in.min}, {"mid", in.mid}, {"max", in.max}};
    r.result["error_estimate"] = rep.error_estimate;
    r.diagnostics.push_back("interpretations: min " + format_number(in.min) + ", mid " +
                            format_number(in.mid) + ", max " + format_number(in.max));
    r.diagnostics.push_back("richardson estimate " + to_string(rep.extrapolated) +
                            ", error " + format_number(rep.error_estimate));
    return r;
  }

  Record integrate_set_cmd() {
    const RealSet v =
        integrate_setbounds(f(), parse_realset(o_.set_a), parse_realset(o_.set_b), icfg());
    Record r{"integrate-set", to_string(v)};
    r.result["value"] = to_json(v);
    return r;
  }

  Record ivt_cmd(const std::string& kind) {
    std::vector<double> cs;
    if (o_.k) {
      cs.push_back(ivt_find(f(), o_.a, o_.b, *o_.k, o_.grid));
    } else if (o_.k1 && o_.k2) {
      cs = ivt_cover(f(), o_.a, o_.b, *o_.k1, *o_.k2, o_.grid);
    } else {
      throw Error(Errc::UsageError, "give --k, or both --k1 and --k2");
    }
    Record r{kind, o_.k ? format_number(cs.front()) : points_text(cs)};
    r.result["points"] = cs;
    return r;
  }

  Record metric_cmd() {
    const double d = eta_metric(parse_realset(o_.set_a), parse_realset(o_.set_b));
    Record r{"metric", format_number(d)};
    r.result["eta"] = d;
    return r;
  }

  Record norm_cmd() {
    const double m = mu_norm(parse_realset(o_.set_a));
    Record r{"norm", format_number(m)};
    r.result["mu"] = m;
    return r;
  }

  Record parse_check_cmd() {
    Record r{"parse-check", ""};
    if (!o_.expr.empty()) {
      r.text = to_string(parse_expr(o_.expr));
      r.result["expr"] = r.text;
      return r;
    }
    json arr = json::array();
    for (const auto& [name, fn] : defs()) {
      const std::string line = name + "(x) = " + to_string(fn);
      r.text += (r.text.empty() ? "" : "\n") + line;
      arr.push_back({{"name", name}, {"body", to_string(fn)}});
    }
    r.result["definitions"] = arr;
    return r;
  }

 private:
  const Defs& defs() {
    if (!defs_) defs_ = load_defs(o_.defs);
    return *defs_;
  }
  FuncSpec f() { return lookup(defs(), o_.fn); }
  IntegralConfig icfg() const {
    return {o_.n, o_.rule == "left" ? Rule::LeftEndpoint : Rule::Midpoint};
  }

  const Options& o_;
  std::optional<Defs> defs_;
};

std::string join(const std::vector<std::string>& args) {
  std::string s;
  for (const auto& a : args) s += (s.empty() ? "" : " ") + a;
  return s;
}

void emit(const Options& o, const std::string& input, const Record& r, std::ostream& out,
          std::ostream& err) {
  if (o.json) {
    json doc = {{"kind", r.kind}, {"input", input}, {"result", r.result},
                {"diagnostics", r.diagnostics}};
    out << doc.dump(2) << "\n";
    return;
  }
  out << r.text << "\n";
  for (const auto& d : r.diagnostics) err << "note: " << d << "\n";
}

int fail(const Options& o, const std::string& input, const std::string& code,
         const std::string& message, int status, std::ostream& out, std::ostream& err) {
  if (o.json) {
    json doc = {{"kind", "error"},
                {"input", input},
                {"result", {{"error", code}, {"message", message}}},
                {"diagnostics", json::array()}};
    out << doc.dump(2) << "\n";
  } else {
    err << "error: " << message << "\n";
  }
  return status;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Set-valued and indeterminate precalculus and calculus", "neutro"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--defs", o.defs, "Definitions file");
  app.add_flag("--json", o.json, "Emit one JSON document");
  app.add_option("--tol", o.lim.tol, "Limit tolerance")->check(CLI::PositiveNumber);
  app.add_option("--h0", o.lim.h0, "Initial limit offset")->check(CLI::PositiveNumber);
  app.add_option("--ratio", o.lim.ratio, "Offset shrink ratio")->check(CLI::Range(0.0, 1.0));
  app.add_option("--max-steps", o.lim.max_steps, "Limit step budget")->check(CLI::Range(4, 100000));
  app.add_option("--blowup", o.lim.blowup, "Divergence threshold")->check(CLI::PositiveNumber);
  app.add_option("--n", o.n, "Riemann subdivisions")->check(CLI::PositiveNumber);
  app.add_option("--rule", o.rule, "Riemann sample rule")->check(CLI::IsMember({"left", "mid"}));
  app.add_option("--grid", o.grid, "IVT grid cells")->check(CLI::PositiveNumber);

  auto fn_opt = [&](CLI::App* sub) { sub->add_option("--fn", o.fn, "Function name")->required(); };
  auto at_opt = [&](CLI::App* sub) { sub->add_option("--at", o.at, "Point c")->required(); };

  Runner runner(o);
  std::vector<std::pair<CLI::App*, std::function<Record()>>> cmds;

  auto* eval = app.add_subcommand("eval", "Evaluate a function");
  fn_opt(eval);
  eval->add_option("--at", o.at_text, "Argument value, e.g. 3, [1,2], 2+3*I")->required();
  cmds.emplace_back(eval, [&] { return runner.eval_cmd(); });

  auto* limit = app.add_subcommand("limit", "Directional or two-sided limit");
  fn_opt(limit);
  at_opt(limit);
  limit->add_option("--side", o.side, "left, right or both")
      ->check(CLI::IsMember({"left", "right", "both"}));
  cmds.emplace_back(limit, [&] { return runner.limit_cmd(); });

  auto* mereo = app.add_subcommand("mereo-limit", "Intersection of the one-sided limits");
  fn_opt(mereo);
  at_opt(mereo);
  cmds.emplace_back(mereo, [&] { return runner.mereo_cmd(); });

  auto* classify = app.add_subcommand("classify", "Continuity class at a point");
  fn_opt(classify);
  at_opt(classify);
  cmds.emplace_back(classify, [&] { return runner.classify_cmd(); });

  auto* diff = app.add_subcommand("diff", "Envelope derivative, or its class at --at");
  fn_opt(diff);
  diff->add_option("--at", o.diff_at, "Junction to classify");
  cmds.emplace_back(diff, [&] { return runner.diff_cmd(); });

  auto* diff_nn = app.add_subcommand("diff-nn", "Derivative of a polynomial with I coefficients");
  fn_opt(diff_nn);
  cmds.emplace_back(diff_nn, [&] { return runner.diff_nn_cmd(); });

  auto* anti = app.add_subcommand("antideriv", "Antiderivative of a polynomial with I coefficients");
  fn_opt(anti);
  cmds.emplace_back(anti, [&] { return runner.antideriv_cmd(); });

  auto* integ = app.add_subcommand("integrate", "Definite integral over [a,b]");
  fn_opt(integ);
  integ->add_option("--a", o.a, "Lower bound")->required();
  integ->add_option("--b", o.b, "Upper bound")->required();
  cmds.emplace_back(integ, [&] { return runner.integrate_cmd(); });

  auto* integ_set = app.add_subcommand("integrate-set", "Integral between set-valued bounds");
  fn_opt(integ_set);
  integ_set->add_option("--A", o.set_a, "Lower bound set")->required();
  integ_set->add_option("--B", o.set_b, "Upper bound set")->required();
  cmds.emplace_back(integ_set, [&] { return runner.integrate_set_cmd(); });

  for (const char* name : {"ivt", "ivt-cover"}) {
    auto* sub = app.add_subcommand(name, std::string(name) == "ivt"
                                             ? "Intermediate value witness (or cover)"
                                             : "Points whose values cover [k1,k2]");
    fn_opt(sub);
    sub->add_option("--a", o.a, "Left end")->required();
    sub->add_option("--b", o.b, "Right end")->required();
    sub->add_option("--k", o.k, "Target value");
    sub->add_option("--k1", o.k1, "Target interval start");
    sub->add_option("--k2", o.k2, "Target interval end");
    cmds.emplace_back(sub, [&, kind = std::string(name)] { return runner.ivt_cmd(kind); });
  }

  auto* metric = app.add_subcommand("metric", "Partial metric between two sets");
  metric->add_option("--A", o.set_a, "First set")->required();
  metric->add_option("--B", o.set_b, "Second set")->required();
  cmds.emplace_back(metric, [&] { return runner.metric_cmd(); });

  auto* norm = app.add_subcommand("norm", "Norm of a set");
  norm->add_option("--A", o.set_a, "Set")->required();
  cmds.emplace_back(norm, [&] { return runner.norm_cmd(); });

  auto* check = app.add_subcommand("parse-check", "Parse and echo definitions or --expr");
  check->add_option("--expr", o.expr, "Expression to parse instead of --defs");
  cmds.emplace_back(check, [&] { return runner.parse_check_cmd(); });

  const std::string input = join(args);
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    return fail(o, input, "UsageError", e.what(), kUsageError, out, err);
  }

  try {
    o.lim.validate();
  } catch (const Error& e) {
    return fail(o, input, "UsageError", e.detail(), kUsageError, out, err);
  }

  for (auto& [sub, handler] : cmds) {
    if (!sub->parsed()) continue;
    try {
      emit(o, input, handler(), out, err);
      return kOk;
    } catch (const Error& e) {
      const bool usage = e.code() == Errc::UsageError || e.code() == Errc::ParseError;
      return fail(o, input, std::string(errc_name(e.code())), e.what(),
                  usage ? kUsageError : kEngineError, out, err);
    } catch (const std::exception& e) {
      return fail(o, input, "InternalError", e.what(), kEngineError, out, err);
    }
  }
  return fail(o, input, "UsageError", "no command given", kUsageError, out, err);
}

}  // namespace neutro::cli
