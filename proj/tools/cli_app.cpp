#include "cli_app.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "karamata/error.hpp"
#include "karamata/io.hpp"
#include "karamata/scalar_bounds.hpp"
#include "karamata/verification.hpp"

namespace karamata::cli {

namespace {

std::string fmt(double v) { return format_csv_real(v); }

OracleRow make_row(std::string name, std::string params, double closed, double oracle) {
  return {std::move(name), std::move(params), closed, oracle, std::abs(closed - oracle)};
}

void add_neglog(std::vector<OracleRow>& rows, double eps, double fault) {
  const Interval iv = Interval::closed(eps, 1.0);
  const std::string p = "eps=" + fmt(eps);
  rows.push_back(make_row("K_neglog", p, neglog_ratio_constant(eps) + fault,
                          ratio_oracle(FunctionSpec::neg_log(), iv)));
  rows.push_back(make_row("C_neglog", p, log_specht(eps) + fault,
                          beta_oracle(FunctionSpec::neg_log(), iv, 1.0)));
}

void add_lnr(std::vector<OracleRow>& rows, double eps, double r, double fault) {
  const Interval iv = Interval::closed(eps, 1.0);
  const FunctionSpec f = FunctionSpec::lnr_reciprocal(r);
  const std::string p = "eps=" + fmt(eps) + ";r=" + fmt(r);
  rows.push_back(make_row("K_lnr", p, lnr_ratio_constant(eps, r) + fault, ratio_oracle(f, iv)));
  rows.push_back(make_row("ls_r", p, ls_r_constant(eps, r) + fault, beta_oracle(f, iv, 1.0)));
}

void add_power(std::vector<OracleRow>& rows, double m, double big_m, double r, double fault) {
  const Interval iv = Interval::closed(m, big_m);
  const FunctionSpec f = FunctionSpec::power(r);
  const double h = big_m / m;
  const std::string p = "m=" + fmt(m) + ";M=" + fmt(big_m) + ";r=" + fmt(r);
  rows.push_back(make_row("kantorovich", p, kantorovich(h, r) + fault, ratio_oracle(f, iv)));
  rows.push_back(make_row("C_hr", p, c_of_hr(m, h, r) + fault, beta_oracle(f, iv, 1.0)));
}

void add_specht(std::vector<OracleRow>& rows, double m, double big_m, double fault) {
  const double h = big_m / m;
  rows.push_back(make_row("log_specht", "h=" + fmt(h), log_specht(h) + fault,
                          beta_oracle(FunctionSpec::neg_log(), Interval::closed(m, big_m), 1.0)));
}

void add_beta_tlogt(std::vector<OracleRow>& rows, double alpha, double fault) {
  const Interval iv = Interval::closed(0.0, 1.0);
  rows.push_back(make_row("beta_tlogt", "alpha=" + fmt(alpha), alpha / std::exp(1.0) + fault,
                          beta_oracle(FunctionSpec::t_log_t(), iv, alpha)));
}

void add_beta_tsallis(std::vector<OracleRow>& rows, double alpha, double r, double fault) {
  const Interval iv = Interval::closed(0.0, 1.0);
  rows.push_back(make_row("beta_tsallis", "alpha=" + fmt(alpha) + ";r=" + fmt(r),
                          alpha * std::pow(1.0 - r, (1.0 - r) / r) + fault,
                          beta_oracle(FunctionSpec::tsallis(r), iv, alpha)));
}

// The same flag registered on several subcommands.
using OptionSet = std::vector<CLI::Option*>;

bool given(const OptionSet& opts) {
  for (const CLI::Option* opt : opts)
    if (opt->count() > 0) return true;
  return false;
}

// Optional numeric flag: the value plus whether it was given.
struct Param {
  double value = 0.0;
  OptionSet opts;
  bool set = false;
  std::optional<double> get() const { return set ? std::optional<double>(value) : std::nullopt; }
};

struct Options {
  std::string suite = "all";
  std::uint64_t trials = 100;
  std::uint64_t seed = 0;
  std::string dims;
  Param r, alpha, eps, m, big_m;
  std::string out;
  std::string format = "json";
  std::string config;
  std::string function;
  int workers = 1;
  bool timing = false;
  std::string matrix_a, matrix_b;
  // scan
  std::string axis;
  double from = 0.0, to = 0.0;
  int steps = 10;
  Param h;
  double t1 = 1.0;
  // oracle
  bool single = false;
  double fault = 0.0;

  OptionSet suite_opt;
  OptionSet trials_opt;
  OptionSet seed_opt;
  OptionSet dims_opt;
  OptionSet out_opt;
  OptionSet format_opt;
  OptionSet function_opt;
  OptionSet workers_opt;
  OptionSet from_opt;
  OptionSet to_opt;
};

void add_params(CLI::App* sub, Options& o) {
  o.r.opts.push_back(sub->add_option("--r", o.r.value, "Deformation / power parameter r"));
  o.alpha.opts.push_back(sub->add_option("--alpha", o.alpha.value, "alpha >= 0"));
  o.eps.opts.push_back(sub->add_option("--eps", o.eps.value, "Floor eps in (0, 1)"));
  o.m.opts.push_back(sub->add_option("--m", o.m.value, "Lower spectral bound m > 0"));
  o.big_m.opts.push_back(sub->add_option("--M", o.big_m.value, "Upper spectral bound M > m"));
}

void add_output(CLI::App* sub, Options& o) {
  o.out_opt.push_back(sub->add_option("--out", o.out, "Output file (default stdout)"));
  o.format_opt.push_back(
      sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"})));
  sub->add_option("--config", o.config, "JSON config; explicit flags take precedence");
}

std::vector<int> parse_dims(const std::string& text) {
  std::vector<int> dims;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto dash = item.find('-');
    try {
      if (dash != std::string::npos && dash > 0) {
        const int lo = std::stoi(item.substr(0, dash));
        const int hi = std::stoi(item.substr(dash + 1));
        if (hi < lo) throw UsageError("empty dims range '" + item + "'");
        for (int d = lo; d <= hi; ++d) dims.push_back(d);
      } else {
        dims.push_back(std::stoi(item));
      }
    } catch (const std::logic_error&) {
      throw UsageError("bad dims entry '" + item + "'");
    }
  }
  if (dims.empty()) throw UsageError("dims must not be empty");
  for (int d : dims)
    if (d < 1 || d > 64) throw UsageError("dims must lie in [1, 64]");
  return dims;
}

void apply_config(Options& o) {
  for (Param* p : {&o.r, &o.alpha, &o.eps, &o.m, &o.big_m, &o.h})
    p->set = given(p->opts);
  if (o.config.empty()) return;
  std::ifstream in(o.config);
  if (!in) throw UsageError("cannot open config '" + o.config + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw UsageError(std::string("malformed config: ") + e.what());
  }
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  try {
    if (j.contains("suite") && !given(o.suite_opt)) o.suite = j["suite"].get<std::string>();
    if (j.contains("trials") && !given(o.trials_opt)) o.trials = j["trials"].get<std::uint64_t>();
    if (j.contains("seed") && !given(o.seed_opt)) o.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("dims") && !given(o.dims_opt)) {
      std::string joined;
      for (const auto& d : j["dims"]) joined += (joined.empty() ? "" : ",") + std::to_string(d.get<int>());
      o.dims = joined;
    }
    if (j.contains("out") && !given(o.out_opt)) o.out = j["out"].get<std::string>();
    if (j.contains("format") && !given(o.format_opt)) o.format = j["format"].get<std::string>();
    if (j.contains("function") && !given(o.function_opt)) o.function = j["function"].get<std::string>();
    if (j.contains("workers") && !given(o.workers_opt)) o.workers = j["workers"].get<int>();
    const Json params = j.contains("params") ? j["params"] : j;
    const std::pair<const char*, Param*> keys[] = {
        {"r", &o.r}, {"alpha", &o.alpha}, {"eps", &o.eps}, {"m", &o.m}, {"M", &o.big_m}};
    for (const auto& [key, p] : keys)
      if (params.contains(key) && !p->set) {
        p->value = params[key].get<double>();
        p->set = true;
      }
  } catch (const Json::exception& e) {
    throw UsageError(std::string("bad config value: ") + e.what());
  }
  if (o.format != "json" && o.format != "csv") throw UsageError("format must be json or csv");
}

void validate_bounds(const Options& o) {
  if (o.m.set && !(o.m.value > 0.0)) throw UsageError("--m must be positive");
  if (o.m.set && o.big_m.set && !(o.m.value < o.big_m.value)) throw UsageError("need 0 < m < M");
  if (o.alpha.set && !(o.alpha.value >= 0.0)) throw UsageError("--alpha must be non-negative");
  if (o.eps.set && !(o.eps.value > 0.0 && o.eps.value < 1.0)) throw UsageError("--eps must lie in (0, 1)");
}

// Writes to --out when given, otherwise to the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("cannot open output '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

std::string csv_cell(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_float()) return fmt(v.get<double>());
  return v.dump();
}

void write_table(std::ostream& os, const std::vector<Json>& rows, const std::string& format) {
  if (format == "json") {
    os << Json(rows).dump(2) << "\n";
    return;
  }
  if (rows.empty()) return;
  bool first = true;
  for (const auto& [key, _] : rows.front().items()) {
    os << (first ? "" : ",") << key;
    first = false;
  }
  os << "\n";
  for (const auto& row : rows) {
    first = true;
    for (const auto& [_, v] : row.items()) {
      os << (first ? "" : ",") << csv_cell(v);
      first = false;
    }
    os << "\n";
  }
}

Json oracle_json(const OracleRow& r) {
  Json j;
  j["name"] = r.name;
  j["params"] = r.params;
  j["closed_form"] = r.closed_form;
  j["oracle_value"] = r.oracle_value;
  j["abs_diff"] = r.abs_diff;
  return j;
}

int cmd_constants(Options& o, std::ostream& out) {
  std::vector<OracleRow> rows;
  if (o.eps.set) add_neglog(rows, o.eps.value, 0.0);
  if (o.eps.set && o.r.set) add_lnr(rows, o.eps.value, o.r.value, 0.0);
  if (o.m.set && o.big_m.set) {
    add_specht(rows, o.m.value, o.big_m.value, 0.0);
    if (o.r.set) add_power(rows, o.m.value, o.big_m.value, o.r.value, 0.0);
  }
  if (o.alpha.set) {
    add_beta_tlogt(rows, o.alpha.value, 0.0);
    if (o.r.set && o.r.value > 0.0 && o.r.value < 1.0) add_beta_tsallis(rows, o.alpha.value, o.r.value, 0.0);
  }
  if (o.function == "linear") {
    const double m = o.m.set ? o.m.value : 1.0;
    const double big_m = o.big_m.set ? o.big_m.value : 2.0;
    add_power(rows, m, big_m, 1.0, 0.0);
  } else if (!o.function.empty()) {
    throw UsageError("constants supports --function linear only");
  }
  if (rows.empty())
    throw UsageError("constants needs --eps, --m/--M (with --r), --alpha or --function linear");
  std::vector<Json> table;
  for (const auto& r : rows) table.push_back(oracle_json(r));
  Sink sink(o.out, out);
  write_table(sink.get(), table, o.format);
  return kExitOk;
}

SuiteParams suite_params(const Options& o) {
  SuiteParams p;
  if (!o.dims.empty()) p.dims = parse_dims(o.dims);
  p.r = o.r.get();
  p.alpha = o.alpha.get();
  p.eps = o.eps.get();
  p.lower = o.m.get();
  p.upper = o.big_m.get();
  if (!o.function.empty()) p.function = o.function;
  if (o.workers < 1) throw UsageError("--workers must be positive");
  p.workers = o.workers;
  return p;
}

int verify_pair(const Options& o, std::ostream& out) {
  if (o.matrix_a.empty() || o.matrix_b.empty())
    throw UsageError("--matrix-a and --matrix-b must be given together");
  const DensityMatrix a(read_matrix_file(o.matrix_a));
  const DensityMatrix b(read_matrix_file(o.matrix_b));
  const double alpha = o.alpha.set ? o.alpha.value : 1.0;
  std::vector<InequalityVerdict> verdicts = check_entropy_vonneumann(a, b, alpha);
  if (o.r.set)
    for (auto& v : check_entropy_tsallis(a, b, alpha, o.r.value)) verdicts.push_back(std::move(v));
  std::vector<Json> table;
  bool ok = true;
  for (const auto& v : verdicts) {
    table.push_back(to_json(v));
    ok = ok && v.pass;
  }
  Sink sink(o.out, out);
  write_table(sink.get(), table, "json");
  return ok ? kExitOk : kExitFailure;
}

int cmd_verify(Options& o, std::ostream& out, std::ostream& err) {
  if (!o.matrix_a.empty() || !o.matrix_b.empty()) return verify_pair(o, out);
  const SuiteParams params = suite_params(o);
  std::vector<std::string> suites;
  if (o.suite == "all") {
    suites = standard_suites();
  } else {
    std::stringstream ss(o.suite);
    std::string id;
    while (std::getline(ss, id, ',')) suites.push_back(id);
  }
  for (const auto& id : suites) {
    const auto& known = known_suites();
    if (std::find(known.begin(), known.end(), id) == known.end())
      throw UsageError("unknown suite '" + id + "'");
  }

  Sink sink(o.out, out);
  std::ostream& os = sink.get();
  const bool csv = o.format == "csv";
  if (csv) os << csv_header() << "\n";
  TrialSink rows;
  if (csv) rows = [&os](const TrialRecord& rec) { os << csv_row(rec) << "\n"; };

  Json reports = Json::array();
  std::uint64_t failures = 0;
  for (const auto& id : suites) {
    const TrialReport rep = run_suite(id, o.trials, o.seed, params, rows);
    failures += rep.failures;
    reports.push_back(to_json(rep, o.timing));
    if (o.timing) err << id << ": " << rep.trials << " trials in " << rep.elapsed_ms << " ms\n";
    if (csv)
      err << id << ": trials=" << rep.trials << " failures=" << rep.failures
          << " min_margin=" << fmt(rep.min_margin) << "\n";
  }
  if (!csv) os << reports.dump(2) << "\n";
  return failures == 0 ? kExitOk : kExitFailure;
}

std::vector<double> linspace(double from, double to, int steps) {
  if (steps < 1 || !(from <= to)) throw UsageError("empty scan range");
  if (steps == 1) return {from};
  std::vector<double> out;
  for (int i = 0; i < steps; ++i) out.push_back(from + (to - from) * i / (steps - 1));
  return out;
}

int cmd_scan(Options& o, std::ostream& out) {
  std::vector<Json> table;
  if (o.axis == "fannes") {
    const int lo = given(o.from_opt) ? static_cast<int>(o.from) : 1;
    const int hi = given(o.to_opt) ? static_cast<int>(o.to) : 10;
    if (lo < 1 || hi < lo) throw UsageError("empty scan range");
    for (const auto& row : check_fannes_comparison(lo, hi, o.t1)) {
      Json j;
      j["dim"] = row.dim;
      j["ours"] = row.ours;
      j["fannes_weak"] = row.fannes_weak;
      j["tighter"] = row.tighter;
      table.push_back(j);
    }
  } else if (o.axis == "ls_r") {
    const double eps = o.eps.set ? o.eps.value : 0.1;
    for (double r : linspace(given(o.from_opt) ? o.from : 0.1, given(o.to_opt) ? o.to : 3.0, o.steps)) {
      const double v = ls_r_constant(eps, r);
      Json j;
      j["eps"] = eps;
      j["r"] = r;
      j["ls_r"] = v;
      j["log_specht"] = log_specht(eps);
      j["in_bounds"] = v >= 0.0 && v <= 1.0 / r;
      table.push_back(j);
    }
  } else if (o.axis == "specht") {
    for (double h : linspace(given(o.from_opt) ? o.from : 1.0, given(o.to_opt) ? o.to : 10.0, o.steps)) {
      if (!(h > 0.0)) throw UsageError("specht scan needs h > 0");
      Json j;
      j["h"] = h;
      j["specht"] = specht(h);
      j["specht_inverse"] = specht(1.0 / h);
      j["abs_diff"] = std::abs(specht(h) - specht(1.0 / h));
      table.push_back(j);
    }
  } else if (o.axis == "kantorovich") {
    const double h = o.h.set ? o.h.value : 2.0;
    const double m = o.m.set ? o.m.value : 1.0;
    if (!(h >= 1.0) || !(m > 0.0)) throw UsageError("kantorovich scan needs h >= 1 and m > 0");
    for (double r : linspace(given(o.from_opt) ? o.from : -2.0, given(o.to_opt) ? o.to : 3.0, o.steps)) {
      Json j;
      j["h"] = h;
      j["r"] = r;
      j["kantorovich"] = kantorovich(h, r);
      j["C_hr"] = c_of_hr(m, h, r);
      table.push_back(j);
    }
  } else {
    throw UsageError("--axis must be fannes, ls_r, specht or kantorovich");
  }
  Sink sink(o.out, out);
  write_table(sink.get(), table, o.format);
  return kExitOk;
}

int cmd_oracle(Options& o, std::ostream& out, std::ostream& err) {
  const std::vector<OracleRow> rows = oracle_sweep(o.single, o.fault);
  std::vector<Json> table;
  std::size_t bad = 0;
  for (const auto& r : rows) {
    table.push_back(oracle_json(r));
    if (!(r.abs_diff <= kOracleTol)) ++bad;
  }
  Sink sink(o.out, out);
  write_table(sink.get(), table, o.format);
  if (bad > 0) err << bad << " of " << rows.size() << " closed forms differ from the oracle by more than "
                   << fmt(kOracleTol) << "\n";
  return bad == 0 ? kExitOk : kExitFailure;
}

}  // namespace

std::vector<OracleRow> oracle_sweep(bool single_point, double fault) {
  std::vector<OracleRow> rows;
  if (single_point) {
    add_beta_tlogt(rows, 1.0, fault);
    return rows;
  }
  const double alphas[] = {0.0, 0.5, 1.0, 2.0};
  for (double a : alphas) add_beta_tlogt(rows, a, fault);
  for (int k = 1; k <= 9; ++k)
    for (double a : alphas) add_beta_tsallis(rows, a, k / 10.0, fault);
  const double epss[] = {0.01, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  const double rs[] = {0.1, 0.25, 0.5, 1.0, 2.0, 3.0};
  for (double eps : epss) {
    add_neglog(rows, eps, fault);
    for (double r : rs) add_lnr(rows, eps, r, fault);
  }
  const double powers[] = {-2.0, -1.0, -0.5, 0.25, 0.5, 0.75, 1.5, 2.0, 3.0};
  const double hs[] = {1.1, 1.5, 2.0, 4.0, 10.0, 100.0};
  for (double m : {0.5, 1.0})
    for (double h : hs)
      for (double r : powers) add_power(rows, m, m * h, r, fault);
  for (double h : hs) add_specht(rows, 1.0, h, fault);
  return rows;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reverse Karamata / Jensen inequality toolkit"};
  app.require_subcommand(1);
  Options o;

  CLI::App* constants = app.add_subcommand("constants", "Closed-form constants with oracle values");
  add_params(constants, o);
  add_output(constants, o);
  o.function_opt.push_back(
      constants->add_option("--function", o.function, "linear: report the trivial K = 1, C = 0 case"));

  CLI::App* verify = app.add_subcommand("verify", "Run randomized verification suites");
  o.suite_opt.push_back(verify->add_option("--suite", o.suite, "Suite id, comma list, or all"));
  o.trials_opt.push_back(verify->add_option("--trials", o.trials, "Trials per suite"));
  o.seed_opt.push_back(verify->add_option("--seed", o.seed, "Master seed"));
  o.dims_opt.push_back(verify->add_option("--dims", o.dims, "Dimensions, e.g. 2,4,8 or 2-8"));
  o.function_opt.push_back(verify->add_option("--function", o.function, "tlogt, neglog, power2 or tsallis05"));
  o.workers_opt.push_back(verify->add_option("--workers", o.workers, "Worker threads"));
  verify->add_flag("--timing", o.timing, "Include elapsed_ms and print timings to stderr");
  verify->add_option("--matrix-a", o.matrix_a, "Density matrix A (JSON) for a single-pair check");
  verify->add_option("--matrix-b", o.matrix_b, "Density matrix B (JSON) for a single-pair check");
  add_params(verify, o);
  add_output(verify, o);

  CLI::App* scan = app.add_subcommand("scan", "Sweep a constant or comparison table");
  scan->add_option("--axis", o.axis, "fannes, ls_r, specht or kantorovich")->required();
  o.from_opt.push_back(scan->add_option("--from", o.from, "Range start"));
  o.to_opt.push_back(scan->add_option("--to", o.to, "Range end"));
  scan->add_option("--steps", o.steps, "Number of points");
  o.h.opts.push_back(scan->add_option("--cond", o.h.value, "Condition number h = M/m"));
  scan->add_option("--t1", o.t1, "Trace distance for the Fannes table");
  add_params(scan, o);
  add_output(scan, o);

  CLI::App* oracle = app.add_subcommand("oracle", "Closed forms against the interval_max oracle");
  oracle->add_flag("--single", o.single, "Single-point grid");
  oracle->add_option("--fault-inject", o.fault, "Offset added to closed forms")->group("");
  add_output(oracle, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }

  try {
    apply_config(o);
    validate_bounds(o);
    if (constants->parsed()) return cmd_constants(o, out);
    if (verify->parsed()) return cmd_verify(o, out, err);
    if (scan->parsed()) return cmd_scan(o, out);
    return cmd_oracle(o, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << to_string(e.kind()) << " error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace karamata::cli
