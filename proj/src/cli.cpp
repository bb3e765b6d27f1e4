#include "chebias/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chebias/bounds.hpp"
#include "chebias/constants.hpp"
#include "chebias/kernels.hpp"
#include "chebias/multfun.hpp"
#include "chebias/report_json.hpp"
#include "chebias/sieve.hpp"
#include "chebias/verifier.hpp"

namespace chebias::cli {

namespace {

using nlohmann::ordered_json;
using report::decimal;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  int digits = kDefaultDigits;
  int threads = 0;
  bool timestamp = true;
  bool quiet = false;
  std::string format = "auto";
  std::string output;
};

int env_digits() {
  const char* v = std::getenv("CHEBIAS_PRECISION");
  if (!v || !*v) return kDefaultDigits;
  try {
    std::size_t used = 0;
    const int d = std::stoi(v, &used);
    if (used != std::strlen(v)) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw UsageError(std::string("CHEBIAS_PRECISION must be an integer, got '") + v + "'");
  }
}

std::uint64_t to_index(double x, const char* what) {
  if (!(x >= 0) || x > 1e18) throw UsageError(std::string(what) + " out of range");
  return static_cast<std::uint64_t>(std::floor(x));
}

class Session {
 public:
  Session(const Config& cfg, std::ostream& out, std::ostream& err) : cfg_(cfg), out_(out), err_(err) {}

  std::shared_ptr<const SieveTables> tables(std::uint64_t x_max) {
    x_max = std::max<std::uint64_t>(x_max, 2);
    if (tables_ && tables_->x_max() >= x_max) return tables_;
    progress("sieving to " + std::to_string(x_max));
    tables_ = SieveTables::build(x_max);
    return tables_;
  }

  void progress(const std::string& msg) {
    if (!cfg_.quiet) err_ << "[chebias] " << msg << '\n' << std::flush;
  }

  void emit_json(const std::string& command, ordered_json params, ordered_json result) {
    write(report::envelope(command, std::move(params), std::move(result), cfg_.timestamp).dump(2) + "\n");
  }

  void write(const std::string& text) {
    if (cfg_.output.empty()) {
      out_ << text;
      return;
    }
    std::ofstream f(cfg_.output, std::ios::binary);
    if (!f) throw UsageError("cannot open output file " + cfg_.output);
    f << text;
  }

  std::string format(const std::string& fallback) const { return cfg_.format == "auto" ? fallback : cfg_.format; }
  const Config& config() const { return cfg_; }

 private:
  const Config& cfg_;
  std::ostream& out_;
  std::ostream& err_;
  std::shared_ptr<const SieveTables> tables_;
};

std::string conditional_label(const SemigroupSpec& s) {
  if (s.kind == SemigroupKind::residue_class) {
    return "conditional: RH(" + std::to_string(s.d) +
           ") for the extremum over all x >= 1; values verified over the scanned interval";
  }
  return "none; extremum over the scanned interval only";
}

std::string verdict_text(const BiasVerdict& v) {
  std::ostringstream os;
  os << v.metric << " " << v.left << " vs " << v.right << " on [" << decimal(v.x_from) << ", " << decimal(v.x_to)
     << "]: ";
  if (v.holds) {
    os << "holds";
  } else {
    os << "violated at x = " << decimal(*v.first_violation) << " (" << v.left_value << " vs " << v.right_value << ")";
    if (v.last_violation) os << ", last violation at x = " << decimal(*v.last_violation);
  }
  if (!v.note.empty()) os << "; " << v.note;
  return os.str() + "\n";
}

// ---- constants

struct ConstantsArgs {
  std::vector<std::string> names;
  int digits = 0;
  bool list = false;
};

int cmd_constants(Session& s, const ConstantsArgs& a) {
  if (a.list) {
    std::string text;
    for (const auto& n : constant_names()) text += n + "\n";
    s.write(text);
    return kOk;
  }
  const int digits = a.digits > 0 ? a.digits : s.config().digits;
  if (digits < 10) throw UsageError("--digits must be at least 10");
  const std::vector<std::string> names = a.names.empty() ? constant_names() : a.names;
  std::vector<ConstantResult> res;
  for (const auto& n : names) res.push_back(constant_by_name(n, digits + 5));
  if (s.format("text") == "json") {
    ordered_json arr = ordered_json::array();
    for (const auto& r : res) arr.push_back(report::to_json(r, digits));
    s.emit_json("constants", {{"digits", std::to_string(digits)}}, arr);
  } else {
    std::string text;
    for (const auto& r : res) {
      text += names.size() == 1 ? r.value.to_string(digits) + "\n" : r.name + " " + r.value.to_string(digits) + "\n";
    }
    s.write(text);
  }
  return kOk;
}

// ---- scan

struct ScanArgs {
  std::string drift;
  double to = 1e5;
};

int cmd_scan(Session& s, const ScanArgs& a) {
  const SemigroupSpec spec = SemigroupSpec::parse(a.drift);
  const std::uint64_t x = to_index(a.to, "--to");
  if (x < 2) throw UsageError("--to must be at least 2");
  const SummatorySeries series(s.tables(x), spec);
  s.progress("drift scan of " + spec.name());
  const ScanResult r = drift_scan(series, x, std::max(s.config().digits, 20));
  const std::string quantity = "sum_{n<=x} Lambda_" + spec.name() + "(n)/n - " +
                               (spec.tau_den() == 1 ? std::string("log x") : "log(x)/" + std::to_string(spec.tau_den()));
  if (s.format("json") == "text") {
    std::ostringstream os;
    os << quantity << " on [1, " << x << "]\n"
       << "sup " << r.sup_value.to_string(20) << " at x = " << decimal(r.sup_arg) << "\n"
       << "sup over change points " << r.sup_changepoint_value.to_string(20) << " at x = "
       << decimal(r.sup_changepoint_arg) << "\n"
       << "inf " << r.inf_value.to_string(20) << " as x -> " << decimal(r.inf_limit_arg) << " from x = "
       << decimal(r.inf_arg) << "\n"
       << conditional_label(spec) << "\n";
    s.write(os.str());
  } else {
    s.emit_json("scan", {{"drift", spec.name()}, {"to", std::to_string(x)}},
                report::to_json(r, quantity, conditional_label(spec)));
  }
  return kOk;
}

// ---- bounds

struct BoundsArgs {
  std::string sandwich, squarefree, psi;
  std::vector<double> at;
  bool scanned = false;
  double from = 0, to = 1e6;
  double alpha = 1, beta = 0, gamma = 0;
  bool strict = false;
  std::string slope = "0.50456";
  std::string direction = "le";
  double grh = 0;
  int modulus = 4;
};

int cmd_bounds(Session& s, const BoundsArgs& a) {
  const int modes = !a.sandwich.empty() + !a.squarefree.empty() + !a.psi.empty() + (a.grh > 0);
  if (modes != 1) throw UsageError("bounds needs exactly one of --sandwich, --squarefree, --psi, --grh");
  const int digits = std::max(s.config().digits, 20);
  const bool text = s.format("json") == "text";

  if (a.grh > 0) {
    const HPReal v = grh_envelope(a.grh, a.modulus, digits);
    if (text) {
      s.write(v.to_string(20) + "\n");
    } else {
      s.emit_json("bounds", {{"grh", decimal(a.grh)}, {"modulus", std::to_string(a.modulus)}},
                  {{"envelope", v.to_string(20)}, {"conditional", "GRH"}});
    }
    return kOk;
  }

  if (!a.sandwich.empty()) {
    const SemigroupSpec spec = SemigroupSpec::parse(a.sandwich);
    const std::vector<double> xs = a.at.empty() ? std::vector<double>{1e3, 1e4, 1e5, 1e6} : a.at;
    const double top = *std::max_element(xs.begin(), xs.end());
    const std::uint64_t need = std::max(to_index(top, "--at"), a.scanned ? to_index(a.to, "--to") : 0);
    const SummatorySeries series(s.tables(need), spec);
    const SandwichBounds b = a.scanned ? scanned_bounds(series, to_index(a.to, "--to"), digits)
                                       : cited_bounds(spec, digits);
    bool all = true;
    ordered_json rows = ordered_json::array();
    std::string out;
    for (const double x : xs) {
      const Sandwich sw = mu_sandwich(b, x, digits);
      const HPReal mu = series.mu_f(x, digits);
      const bool ok = sw.lower <= mu && mu <= sw.upper;
      all = all && ok;
      ordered_json r = report::to_json(sw);
      r["x"] = decimal(x);
      r["mu"] = mu.to_string(20);
      r["brackets"] = ok;
      rows.push_back(r);
      out += decimal(x) + " " + sw.lower.to_string(15) + " <= " + mu.to_string(15) + " <= " + sw.upper.to_string(15) +
             (ok ? "  ok\n" : "  FAILS\n");
    }
    if (text) {
      s.write(out);
    } else {
      s.emit_json("bounds",
                  {{"sandwich", spec.name()},
                   {"c_minus", b.c_minus.to_string(20)},
                   {"c_plus", b.c_plus.to_string(20)},
                   {"provenance", b.provenance}},
                  {{"holds", all}, {"rows", rows}});
    }
    return all ? kOk : kVerificationFailed;
  }

  BiasVerdict v;
  ordered_json params;
  const std::uint64_t top = to_index(a.to, "--to");
  if (!a.squarefree.empty()) {
    SquarefreeVariant var;
    if (a.squarefree == "Q") {
      var = SquarefreeVariant::all;
    } else if (a.squarefree == "Q_odd") {
      var = SquarefreeVariant::odd;
    } else if (a.squarefree == "Q_chi3") {
      var = SquarefreeVariant::coprime3;
    } else {
      throw UsageError("--squarefree expects Q, Q_odd or Q_chi3");
    }
    std::ostringstream label;
    label << a.alpha << "*sqrt(x) + " << a.beta << "*x^(1/4) + " << a.gamma;
    const RemainderBound rb{a.alpha, a.beta, a.gamma, a.strict, label.str()};
    auto t = s.tables(top);
    s.progress(std::string("squarefree scan of ") + variant_name(var));
    v = squarefree_remainder_scan(*t, var, rb, a.from, a.to);
    params = {{"squarefree", variant_name(var)}, {"bound", rb.label}, {"strict", a.strict}};
  } else {
    const SemigroupSpec spec = SemigroupSpec::parse(a.psi);
    if (a.direction != "le" && a.direction != "ge") throw UsageError("--direction expects le or ge");
    const SummatorySeries series(s.tables(top), spec);
    v = psi_linear_check(series, HPReal::parse(a.slope, digits),
                         a.direction == "le" ? Direction::at_most : Direction::at_least, a.from, a.to);
    params = {{"psi", spec.name()}, {"slope", a.slope}, {"direction", a.direction}};
  }
  params["from"] = decimal(a.from);
  params["to"] = decimal(a.to);
  if (text) {
    s.write(verdict_text(v));
  } else {
    s.emit_json("bounds", params, report::to_json(v));
  }
  return v.holds ? kOk : kVerificationFailed;
}

// ---- verify

struct VerifyArgs {
  std::string pair;
  std::string metric = "N";
  double from = 1, to = 1e6;
  bool pipeline = false;
  std::string transfer, corollary2;
};

std::vector<int> parse_triple(const std::string& text) {
  std::vector<int> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      v.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw UsageError("expected d,a,b but got '" + text + "'");
    }
  }
  if (v.size() != 3) throw UsageError("expected d,a,b but got '" + text + "'");
  return v;
}

int cmd_verify(Session& s, const VerifyArgs& a) {
  const int modes = a.pipeline + !a.transfer.empty() + !a.corollary2.empty();
  if (modes > 1) throw UsageError("--pipeline, --transfer and --corollary2 are exclusive");
  const std::uint64_t to = to_index(a.to, "--to");
  const bool text = s.format("json") == "text";

  if (a.pipeline) {
    std::vector<RacePair> pairs = a.pair.empty() ? theorem_pairs() : std::vector<RacePair>{parse_pair(a.pair)};
    auto t = s.tables(to);
    ordered_json arr = ordered_json::array();
    std::string out;
    bool ok = true;
    for (const auto& p : pairs) {
      s.progress("pipeline " + p.name());
      const PipelineReport r = theorem2_pipeline(t, p, to, std::max(s.config().digits, 30));
      ok = ok && r.ok();
      arr.push_back(report::to_json(r));
      out += p.name() + ": " + r.status + "\n";
      for (const auto& c : r.claims) out += "  " + c.id + " [" + c.status + "] " + c.statement + "\n";
    }
    if (text) {
      s.write(out);
    } else {
      s.emit_json("verify", {{"mode", "pipeline"}, {"to", std::to_string(to)}}, arr);
    }
    return ok ? kOk : kVerificationFailed;
  }

  if (!a.transfer.empty() || !a.corollary2.empty()) {
    const bool transfer = !a.transfer.empty();
    const std::vector<int> t3 = parse_triple(transfer ? a.transfer : a.corollary2);
    auto t = s.tables(to);
    ordered_json params = {{"mode", transfer ? "transfer" : "corollary2"},
                           {"d", std::to_string(t3[0])},
                           {"a", std::to_string(t3[1])},
                           {"b", std::to_string(t3[2])},
                           {"x0", std::to_string(to)}};
    bool ok;
    std::string out;
    ordered_json res;
    if (transfer) {
      const TransferReport r = transfer_check(t, t3[0], t3[1], t3[2], to);
      ok = r.hypothesis_holds && std::all_of(r.conclusions.begin(), r.conclusions.end(),
                                             [](const BiasVerdict& v) { return v.holds; });
      res = report::to_json(r);
      out = verdict_text(r.hypothesis);
      for (const auto& c : r.conclusions) out += verdict_text(c);
    } else {
      const Corollary2Report r = corollary2_check(t, t3[0], t3[1], t3[2], to);
      ok = r.hypotheses_hold && r.lambda_conclusion.holds;
      res = report::to_json(r);
      out = verdict_text(r.pi_hypothesis) + verdict_text(r.psi_hypothesis) + verdict_text(r.lambda_conclusion);
    }
    if (text) {
      s.write(out);
    } else {
      s.emit_json("verify", params, res);
    }
    return ok ? kOk : kVerificationFailed;
  }

  if (a.pair.empty()) throw UsageError("verify needs --pair, --pipeline, --transfer or --corollary2");
  const auto colon = a.pair.find(':');
  if (colon == std::string::npos) throw UsageError("--pair must look like 4,3:4,1");
  const SemigroupSpec l = SemigroupSpec::parse(a.pair.substr(0, colon));
  const SemigroupSpec r = SemigroupSpec::parse(a.pair.substr(colon + 1));
  const Metric m = parse_metric(a.metric);
  auto t = s.tables(to);
  const SummatorySeries sl(t, l), sr(t, r);
  s.progress(std::string("race ") + metric_name(m) + " " + l.name() + " vs " + r.name());
  const BiasVerdict v = race(m, sl, sr, to_index(a.from, "--from"), to);
  if (text) {
    s.write(verdict_text(v));
  } else {
    s.emit_json("verify",
                {{"mode", "race"}, {"pair", a.pair}, {"metric", a.metric}, {"from", decimal(a.from)},
                 {"to", std::to_string(to)}},
                report::to_json(v));
  }
  return v.holds ? kOk : kVerificationFailed;
}

// ---- sieve-export

struct ExportArgs {
  std::string spec = "g_4_3";
  double to = 1e4;
  std::vector<double> at;
  double every = 0;
  std::string save;
};

int cmd_export(Session& s, const ExportArgs& a) {
  const std::uint64_t to = to_index(a.to, "--to");
  auto t = s.tables(to);
  if (!a.save.empty()) {
    t->save(a.save);
    s.progress("saved sieve tables to " + a.save);
  }
  const SummatorySeries series(t, SemigroupSpec::parse(a.spec));
  std::vector<double> xs = a.at;
  if (xs.empty()) {
    if (a.every > 0) {
      for (double x = a.every; x <= a.to; x += a.every) xs.push_back(x);
    } else {
      for (double x = 10; x <= a.to; x *= 10) xs.push_back(x);
      if (xs.empty() || xs.back() != a.to) xs.push_back(a.to);
    }
  }
  const std::string fmt = s.format("csv");
  if (fmt != "csv" && fmt != "json") throw UsageError("sieve-export writes csv or json");
  std::ostringstream os;
  export_grid(series, xs, std::min(s.config().digits, 30), fmt == "csv" ? GridFormat::csv : GridFormat::json, os);
  s.write(os.str());
  return kOk;
}

// ---- report

struct ReportArgs {
  double to = 1.1e6;
  double drift_to = 1e5;
};

int cmd_report(Session& s, const ReportArgs& a) {
  const std::uint64_t to = std::max<std::uint64_t>(to_index(a.to, "--to"), 1'100'000);
  const std::uint64_t drift_to = std::min<std::uint64_t>(to_index(a.drift_to, "--drift-to"), to);
  const int digits = std::max(s.config().digits, 30);
  auto t = s.tables(to);
  bool ok = true;
  ordered_json res;

  s.progress("constants");
  ordered_json consts = ordered_json::array();
  for (const auto& n : constant_names()) consts.push_back(report::to_json(constant_by_name(n, digits + 5), digits));
  res["constants"] = consts;

  s.progress("drift scans");
  ordered_json drift = ordered_json::array();
  for (const char* name : {"one", "g_3_1", "g_3_2", "g_4_1", "g_4_3", "b1"}) {
    const SummatorySeries series(t, SemigroupSpec::parse(name));
    const ScanResult r = drift_scan(series, drift_to, digits);
    drift.push_back(report::to_json(r, std::string("drift ") + name, conditional_label(series.spec())));
  }
  res["drift"] = drift;

  s.progress("squarefree remainder scans");
  const double pi2 = std::numbers::pi * std::numbers::pi;
  struct SqCheck {
    SquarefreeVariant v;
    RemainderBound b;
    double from;
  };
  const std::vector<SqCheck> sq = {
      {SquarefreeVariant::all, {1, 0, 0, true, "sqrt(x)"}, 1},
      {SquarefreeVariant::all, {0.1333, 0, 0, true, "0.1333 sqrt(x)"}, 1664},
      {SquarefreeVariant::coprime3, {0.5, 0, 1, false, "sqrt(x)/2 + 1"}, 0},
      {SquarefreeVariant::odd, {0.5, 0, 1, false, "sqrt(x)/2 + 1"}, 0},
      {SquarefreeVariant::odd, {2 / pi2 + 0.25, 0.25, 2, false, "(2/pi^2 + 1/4) sqrt(x) + x^(1/4)/4 + 2"}, 0},
  };
  ordered_json sqr = ordered_json::array();
  for (const auto& c : sq) {
    const BiasVerdict v = squarefree_remainder_scan(*t, c.v, c.b, c.from, 1e6);
    ok = ok && v.holds;
    sqr.push_back(report::to_json(v));
  }
  res["squarefree"] = sqr;

  s.progress("psi linear bounds");
  struct PsiCheck {
    const char* spec;
    const char* slope;
    Direction dir;
    double from;
  };
  const std::vector<PsiCheck> pc = {{"g_3_1", "0.50456", Direction::at_most, 0},
                                    {"g_3_2", "0.335", Direction::at_least, 5},
                                    {"g_4_1", "0.50456", Direction::at_most, 0},
                                    {"g_4_3", "0.48508", Direction::at_least, 127}};
  ordered_json psi = ordered_json::array();
  for (const auto& c : pc) {
    const SummatorySeries series(t, SemigroupSpec::parse(c.spec));
    const BiasVerdict v = psi_linear_check(series, HPReal::parse(c.slope, digits), c.dir, c.from, 1e6);
    ok = ok && v.holds;
    psi.push_back(report::to_json(v));
  }
  res["psi_linear"] = psi;

  ordered_json pipes = ordered_json::array();
  for (const auto& p : theorem_pairs()) {
    s.progress("pipeline " + p.name());
    const PipelineReport r = theorem2_pipeline(t, p, to, digits);
    ok = ok && r.ok();
    pipes.push_back(report::to_json(r));
  }
  res["pipelines"] = pipes;
  res["all_hold"] = ok;

  s.emit_json("report", {{"to", std::to_string(to)}, {"drift_to", std::to_string(drift_to)},
                         {"digits", std::to_string(digits)}},
              res);
  return ok ? kOk : kVerificationFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"chebias: exact Chebyshev-bias computations for multiplicative semigroups", "chebias"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--threads", cfg.threads, "OpenMP threads (0 = runtime default)")->check(CLI::NonNegativeNumber);
  app.add_option("--digits,--precision", cfg.digits, "decimal digits (default $CHEBIAS_PRECISION or 50)");
  app.add_flag("--no-timestamp", "omit generated_at from JSON");
  app.add_flag("--quiet,-q", cfg.quiet, "no progress on stderr");
  app.add_option("--format", cfg.format, "json, text or csv")->check(CLI::IsMember({"auto", "json", "text", "csv"}));
  app.add_option("--output,-o", cfg.output, "write the report to a file");

  ConstantsArgs ca;
  auto* constants = app.add_subcommand("constants", "high-precision constants");
  constants->add_option("--name", ca.names, "constant name (repeatable); default all");
  constants->add_option("--digits", ca.digits, "significant digits");
  constants->add_flag("--list", ca.list, "list constant names");

  ScanArgs sa;
  auto* scan = app.add_subcommand("scan", "drift extrema of sum Lambda_f(n)/n - tau log x");
  scan->add_option("--drift", sa.drift, "semigroup: g_3_1, g_3_2, g_4_1, g_4_3, b1, one")->required();
  scan->add_option("--to", sa.to, "upper end of the scan");

  BoundsArgs ba;
  auto* bounds = app.add_subcommand("bounds", "effective bounds: sandwich, squarefree, psi, grh");
  bounds->add_option("--sandwich", ba.sandwich, "mu_f sandwich for a residue semigroup");
  bounds->add_option("--at", ba.at, "evaluation points for --sandwich");
  bounds->add_flag("--scanned", ba.scanned, "use drift constants scanned to --to");
  bounds->add_option("--squarefree", ba.squarefree, "Q, Q_odd or Q_chi3");
  bounds->add_option("--alpha", ba.alpha, "bound alpha*sqrt(x) + beta*x^(1/4) + gamma");
  bounds->add_option("--beta", ba.beta);
  bounds->add_option("--gamma", ba.gamma);
  bounds->add_flag("--strict", ba.strict, "strict inequality");
  bounds->add_option("--psi", ba.psi, "psi_f linear bound for a semigroup");
  bounds->add_option("--slope", ba.slope, "slope for --psi");
  bounds->add_option("--direction", ba.direction, "le or ge");
  bounds->add_option("--grh", ba.grh, "GRH envelope at x");
  bounds->add_option("--modulus", ba.modulus, "modulus d for --grh");
  bounds->add_option("--from", ba.from);
  bounds->add_option("--to", ba.to);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "exact races and the main-theorem pipeline");
  verify->add_option("--pair", va.pair, "left:right, e.g. 4,3:4,1");
  verify->add_option("--metric", va.metric, "pi, theta_pp, psi, N, lambda, mu");
  verify->add_option("--from", va.from);
  verify->add_option("--to", va.to);
  verify->add_flag("--pipeline", va.pipeline, "certificate for the theorem pairs");
  verify->add_option("--transfer", va.transfer, "d,a,b: pi hypothesis then N and mu conclusions on [1, to]");
  verify->add_option("--corollary2", va.corollary2, "d,a,b: pi and psi hypotheses, lambda conclusion on [1, to]");

  ExportArgs ea;
  auto* exp = app.add_subcommand("sieve-export", "psi, mu, lambda, M on a grid (csv or json)");
  exp->add_option("--spec", ea.spec);
  exp->add_option("--to", ea.to);
  exp->add_option("--at", ea.at, "sample points");
  exp->add_option("--every", ea.every, "sample every step up to --to");
  exp->add_option("--save-sieve", ea.save, "write the binary sieve tables");

  ReportArgs ra;
  auto* rep = app.add_subcommand("report", "full JSON report of every check");
  rep->add_option("--to", ra.to, "pipeline range (at least 1.1e6)");
  rep->add_option("--drift-to", ra.drift_to);

  try {
    cfg.digits = env_digits();
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  cfg.timestamp = app.count("--no-timestamp") == 0;
  if (cfg.digits < 10) {
    err << "error: precision must be at least 10 digits\n";
    return kUsage;
  }
  if (cfg.threads > 0) kernels::set_threads(cfg.threads);

  Session session(cfg, out, err);
  try {
    if (*constants) return cmd_constants(session, ca);
    if (*scan) return cmd_scan(session, sa);
    if (*bounds) return cmd_bounds(session, ba);
    if (*verify) return cmd_verify(session, va);
    if (*exp) return cmd_export(session, ea);
    if (*rep) return cmd_report(session, ra);
  } catch (const SieveResourceError& e) {
    err << "error: " << e.what() << "; try --to " << e.advisory_x_max() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::logic_error& e) {  // invalid_argument, domain_error, out_of_range
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace chebias::cli
