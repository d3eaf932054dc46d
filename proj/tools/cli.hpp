#pragma once

// kappa-fourier command line: argument/config resolution and the
// subcommands. run_cli is the whole program minus the process boundary.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kappa_fourier.hpp"
#include "kappa_fourier/report.hpp"

namespace kappa_fourier::cli {

using report::Cell;
using report::Report;

enum Exit : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kNumerical = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct KeySpec {
  const char* key;
  const char* fallback;  // "" = unset
  const char* help;
};

inline const std::vector<KeySpec>& keys() {
  static const std::vector<KeySpec> all{
      {"d", "1", "dimension"},
      {"a", "2", "deformation parameter a > 0"},
      {"kappa", "", "multiplicity kappa >= 0 (default 0)"},
      {"lambda", "", "lambda for the F_r^lambda and e_{2r+1} paths; excludes --kappa"},
      {"r", "", "kernel index r (comma list allowed for posdef)"},
      {"x", "", "b_{kappa,a} argument x*y (comma list)"},
      {"v", "", "evaluation point(s) v (comma list)"},
      {"w", "", "Psi argument w (comma list)"},
      {"v-max", "20", "grid end for v or w"},
      {"step", "0.01", "grid step"},
      {"tau", "0", "Psi angle cosine in [-1,1]"},
      {"eta", "1", "Psi parameter eta"},
      {"R", "2", "Psi parameter R = 2/a"},
      {"tol", "1e-10", "tolerance override"},
      {"out", "csv", "report format: csv or json"},
      {"output", "", "report path (stdout when empty)"},
      {"suite", "all", "verify suite, module name or all"},
      {"a-list", "", "sweep values of a (comma list)"},
      {"kappa-range", "", "sweep kappa range lo:hi:step"},
      {"function", "gauss", "transform input: gauss, odd-gauss, cubic-gauss, mixed"},
      {"direction", "forward", "F_r^lambda direction: forward or inverse"},
  };
  return all;
}

struct Setting {
  std::string value;
  std::string origin;  // "default", "--key" or "FILE:LINE"
  bool explicit_ = false;
};

class Settings {
 public:
  Settings() {
    for (const auto& k : keys()) values_[k.key] = {k.fallback, "default", false};
  }

  void set(const std::string& key, std::string value, std::string origin) {
    values_[key] = {std::move(value), std::move(origin), true};
  }

  bool has(const std::string& key) const { return !values_.at(key).value.empty(); }
  bool given(const std::string& key) const { return values_.at(key).explicit_; }
  const std::string& str(const std::string& key) const { return values_.at(key).value; }

  double num(const std::string& key) const {
    const auto& s = values_.at(key);
    return parse_number(s.value, where(key));
  }

  double num_or(const std::string& key, double fallback) const { return has(key) ? num(key) : fallback; }

  int integer(const std::string& key) const {
    const double x = num(key);
    if (x != std::floor(x) || std::abs(x) > 1e9) throw UsageError(where(key) + ": expected an integer, got '" + str(key) + "'");
    return static_cast<int>(x);
  }

  std::vector<double> list(const std::string& key) const {
    std::vector<double> out;
    std::stringstream ss(str(key));
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_number(item, where(key)));
    if (out.empty()) throw UsageError(where(key) + ": empty list");
    return out;
  }

  std::string where(const std::string& key) const {
    const auto& s = values_.at(key);
    if (s.origin.rfind("--", 0) == 0) return s.origin;
    if (s.origin == "default") return "default " + key;
    return s.origin + ": field '" + key + "'";
  }

  /// Effective configuration, keys sorted, unset keys omitted.
  std::vector<std::pair<std::string, std::string>> effective() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& [k, s] : values_)
      if (!s.value.empty()) out.emplace_back(k, s.value);
    return out;
  }

  static double parse_number(const std::string& text, const std::string& where) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    auto rest = text.substr(used);
    if (used == 0 || rest.find_first_not_of(" \t") != std::string::npos || !std::isfinite(x))
      throw UsageError(where + ": expected a number, got '" + text + "'");
    return x;
  }

 private:
  std::map<std::string, Setting> values_;
};

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

/// Flat key=value file; '#' starts a comment line.
inline void load_config(const std::string& path, Settings& settings) {
  std::ifstream in(path);
  if (!in) throw UsageError("config " + path + ": cannot open");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    const std::string loc = path + ":" + std::to_string(lineno);
    if (eq == std::string::npos) throw UsageError(loc + ": expected key=value, got '" + t + "'");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    bool known = false;
    for (const auto& k : keys()) known = known || key == k.key;
    if (!known) throw UsageError(loc + ": unknown key '" + key + "'");
    settings.set(key, value, loc);
  }
}

// ---------------------------------------------------------------------------
// Row plumbing

/// Appends inputs + outputs + error; evaluation errors become error rows.
template <class F>
void guarded_row(Report& rep, std::vector<Cell> inputs, std::size_t n_outputs, F&& eval) {
  std::vector<Cell> row = std::move(inputs);
  try {
    std::vector<Cell> out = eval();
    out.resize(n_outputs);
    row.insert(row.end(), out.begin(), out.end());
    row.emplace_back(std::string());
  } catch (const Error& e) {
    row.resize(row.size() + n_outputs);
    row.emplace_back(std::string(e.what()));
    ++rep.row_errors;
    rep.numerical_error = rep.numerical_error || e.numerical();
  }
  rep.add_row(std::move(row));
}

inline std::vector<double> v_grid(const Settings& s, const std::string& point_key) {
  if (s.has(point_key)) return s.list(point_key);
  const double v_max = s.num("v-max");
  const double step = s.num("step");
  if (!(step > 0.0)) throw UsageError(s.where("step") + ": must be > 0");
  if (!(v_max >= 0.0)) throw UsageError(s.where("v-max") + ": must be >= 0");
  std::vector<double> out;
  const long n = static_cast<long>(std::floor(v_max / step + 1e-9));
  if (n > 10'000'000) throw UsageError("grid has more than 1e7 points");
  for (long i = 0; i <= n; ++i) out.push_back(i * step);
  return out;
}

inline std::vector<double> kappa_range(const Settings& s) {
  if (!s.has("kappa-range")) return {s.num_or("kappa", 0.0)};
  const std::string text = s.str("kappa-range");
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(Settings::parse_number(item, s.where("kappa-range")));
  if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0])
    throw UsageError(s.where("kappa-range") + ": expected lo:hi:step with lo <= hi, step > 0");
  std::vector<double> out;
  const long n = static_cast<long>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
  for (long i = 0; i <= n; ++i) out.push_back(parts[0] + i * parts[2]);
  return out;
}

inline Cell real_cell(double x) { return Cell(x); }
inline Cell int_cell(long long x) { return Cell(x); }
inline Cell text_cell(std::string s) { return Cell(std::move(s)); }

inline std::vector<Cell> complex_cells(ComplexVal z) { return {z.real(), z.imag(), std::abs(z)}; }

inline void require_tol(const Settings& s) {
  if (!(s.num("tol") > 0.0)) throw UsageError(s.where("tol") + ": must be > 0");
}

inline void exclusive_kappa_lambda(const Settings& s) {
  if (s.given("kappa") && s.given("lambda"))
    throw UsageError("--lambda and --kappa are mutually exclusive on this path");
}

// ---------------------------------------------------------------------------
// Commands

inline void cmd_eval_kernel(const Settings& s, Report& rep) {
  exclusive_kappa_lambda(s);
  if (s.has("x")) {
    rep.columns = {"d", "a", "kappa", "x", "real", "imag", "modulus", "error"};
    const int d = s.integer("d");
    const double a = s.num("a");
    const double kappa = s.num_or("kappa", 0.0);
    for (double x : s.list("x"))
      guarded_row(rep, {int_cell(d), a, kappa, x}, 3,
                  [&] { return complex_cells(kernels::kernel_b(Params::make(d, a, kappa), x)); });
    return;
  }
  if (s.has("lambda")) {
    rep.columns = {"r", "lambda", "v", "real", "imag", "modulus", "error"};
    const int r = s.has("r") ? s.integer("r") : 0;
    if (r < 0) throw UsageError(s.where("r") + ": must be >= 0");
    const double lam = s.num("lambda");
    for (double v : v_grid(s, "v"))
      guarded_row(rep, {int_cell(r), lam, v}, 3, [&] { return complex_cells(kernels::kernel_e_odd(r, lam, v)); });
    return;
  }
  rep.columns = {"d", "a", "kappa", "v", "real", "imag", "modulus", "error"};
  const int d = s.integer("d");
  const double a = s.num("a");
  const double kappa = s.num_or("kappa", 0.0);
  for (double v : v_grid(s, "v"))
    guarded_row(rep, {int_cell(d), a, kappa, v}, 3, [&] {
      const Params p = Params::make(d, a, kappa);
      if (p.d != 1) throw Error(ErrorCode::invalid_params, "e_{kappa,a}(v) is the d = 1 kernel; use --x for b");
      return complex_cells(kernels::kernel_e_general(kappa, a, v));
    });
}

inline void cmd_eval_psi(const Settings& s, Report& rep) {
  require_tol(s);
  rep.columns = {"R", "eta", "tau", "w", "real", "imag", "modulus", "terms", "tail_bound", "error"};
  kernels::PsiConfig cfg;
  cfg.R = s.num("R");
  cfg.eta = s.num("eta");
  cfg.tolerance = s.num("tol");
  const double tau = s.num("tau");
  for (double w : v_grid(s, "w"))
    guarded_row(rep, {cfg.R, cfg.eta, tau, w}, 5, [&] {
      const auto val = kernels::psi_series_detail(cfg, w, tau);
      auto out = complex_cells(val.value);
      out.push_back(int_cell(val.terms));
      out.push_back(val.tail_bound);
      return out;
    });
}

inline std::function<double(double)> named_function(const Settings& s) {
  const std::string& name = s.str("function");
  if (name == "gauss") return [](double x) { return std::exp(-x * x); };
  if (name == "odd-gauss") return [](double x) { return x * std::exp(-x * x); };
  if (name == "cubic-gauss") return [](double x) { return x * x * x * std::exp(-x * x); };
  if (name == "mixed") return [](double x) { return (1.0 + x) * std::exp(-x * x); };
  throw UsageError(s.where("function") + ": unknown function '" + name + "'");
}

inline void cmd_transform(const Settings& s, Report& rep) {
  exclusive_kappa_lambda(s);
  require_tol(s);
  const auto f = named_function(s);
  quadrature::HalfLineOptions opt;
  opt.tolerance = s.num("tol");
  if (s.has("lambda")) {
    const std::string& dir_name = s.str("direction");
    if (dir_name != "forward" && dir_name != "inverse")
      throw UsageError(s.where("direction") + ": expected forward or inverse");
    const auto dir = dir_name == "forward" ? transforms::Direction::Forward : transforms::Direction::Inverse;
    const int r = s.has("r") ? s.integer("r") : 0;
    if (r < 0) throw UsageError(s.where("r") + ": must be >= 0");
    const double lam = s.num("lambda");
    rep.columns = {"function", "direction", "r", "lambda", "v", "real", "imag", "modulus", "error"};
    for (double v : v_grid(s, "v"))
      guarded_row(rep, {s.str("function"), dir_name, int_cell(r), lam, v}, 3,
                  [&] { return complex_cells(transforms::f_r_lambda(r, lam, f, v, dir, opt)); });
    return;
  }
  const int d = s.integer("d");
  const double a = s.num("a");
  const double kappa = s.num_or("kappa", 0.0);
  rep.columns = {"function", "d", "a", "kappa", "y", "real", "imag", "modulus", "error"};
  for (double y : v_grid(s, "v"))
    guarded_row(rep, {s.str("function"), int_cell(d), a, kappa, y}, 3,
                [&] { return complex_cells(transforms::gft_1d(Params::make(d, a, kappa), f, y, opt)); });
}

inline void cmd_classify(const Settings& s, Report& rep) {
  rep.columns = {"d", "a", "kappa", "lambda", "verdict", "witness", "witness_modulus", "open_lo", "open_hi",
                 "citation", "error"};
  const int d = s.integer("d");
  const std::vector<double> as = s.has("a-list") ? s.list("a-list") : std::vector<double>{s.num("a")};
  for (double a : as)
    for (double kappa : kappa_range(s)) {
      std::vector<Cell> inputs{int_cell(d), a, kappa};
      std::vector<Cell> row = inputs;
      try {
        const Params p = Params::make(d, a, kappa);
        const auto v = kernels::classify_boundedness(p);
        row.push_back(p.lambda);
        row.push_back(kernels::to_string(v.tag));
        row.push_back(v.witness ? Cell(*v.witness) : Cell());
        row.push_back(v.witness ? Cell(v.witness_modulus) : Cell());
        row.push_back(v.open_band ? Cell(v.open_band->first) : Cell());
        row.push_back(v.open_band ? Cell(v.open_band->second) : Cell());
        row.push_back(v.citation);
        row.emplace_back(std::string());
      } catch (const Error& e) {
        row.resize(rep.columns.size() - 1);
        row.emplace_back(std::string(e.what()));
        ++rep.row_errors;
        rep.numerical_error = rep.numerical_error || e.numerical();
      }
      rep.add_row(std::move(row));
    }
}

inline void cmd_sweep(const Settings& s, Report& rep) {
  require_tol(s);
  rep.columns = {"d", "a", "kappa", "lambda", "v_max", "step", "sup", "argmax", "above_one", "verdict", "error"};
  const int d = s.integer("d");
  const double v_max = s.num("v-max");
  const double step = s.num("step");
  const double tol = s.num("tol");
  if (!(step > 0.0) || !(v_max > 0.0)) throw UsageError("sweep needs v-max > 0 and step > 0");
  const std::vector<double> as = s.has("a-list") ? s.list("a-list") : std::vector<double>{s.num("a")};
  for (double a : as)
    for (double kappa : kappa_range(s))
      guarded_row(rep, {int_cell(d), a, kappa}, 7, [&]() -> std::vector<Cell> {
        const Params p = Params::make(d, a, kappa);
        if (p.d != 1) throw Error(ErrorCode::invalid_params, "sweep evaluates the d = 1 kernel");
        const auto found = kernels::supnorm_search(p, v_max, step);
        const auto verdict = kernels::classify_boundedness(p);
        return {p.lambda, v_max, step, found.sup, found.argmax,
                int_cell(found.sup > 1.0 + tol ? 1 : 0), kernels::to_string(verdict.tag)};
      });
}

inline void cmd_posdef(const Settings& s, Report& rep) {
  rep.columns = {"family", "r", "lambda", "min_value", "min_location", "verdict", "negative_intervals", "error"};
  std::vector<int> rs;
  if (s.has("r")) {
    for (double r : s.list("r")) {
      if (r != std::floor(r) || r < 0) throw UsageError(s.where("r") + ": expected nonnegative integers");
      rs.push_back(static_cast<int>(r));
    }
  } else {
    rs = {1, 2, 3, 4, 5};
  }
  const std::vector<double> lams =
      s.has("lambda") ? s.list("lambda") : std::vector<double>{-0.4, -0.2, -0.05, 0.0, 0.3, 1.0};
  auto intervals = [](const genpoly::SignReport& rep) {
    std::string out;
    for (const auto& [lo, hi] : rep.negative_intervals) {
      if (!out.empty()) out += ' ';
      out += "[" + report::format_double(lo) + ";" + report::format_double(hi) + "]";
    }
    return out;
  };
  auto add = [&](const std::string& family, int r, double lam, auto make) {
    guarded_row(rep, {family, int_cell(r), lam}, 4, [&]() -> std::vector<Cell> {
      const auto sr = genpoly::sign_analysis(make());
      return {sr.min_value, sr.min_location, genpoly::to_string(sr.verdict), intervals(sr)};
    });
  };
  for (int r : rs)
    for (double lam : lams) {
      add("odd", r, lam, [&] { return genpoly::q_odd(r, lam); });
      if (r == 0) continue;
      add("even+", r, lam, [&] { return genpoly::q_even(r, lam, 1); });
      add("even-", r, lam, [&] { return genpoly::q_even(r, lam, -1); });
    }
}

/// One summary row per suite, then one row per recorded failure.
inline int cmd_verify(const Settings& s, Report& rep, std::ostream& err) {
  rep.columns = {"kind",     "suite",    "module",   "status",   "checks",    "failed",
                 "max_residual", "inputs", "computed", "expected", "residual", "tolerance", "error"};
  rep.has_suites = true;
  const auto chosen = suites::select(s.str("suite"));
  if (chosen.empty()) throw UsageError(s.where("suite") + ": unknown suite '" + s.str("suite") + "'");
  bool numerical = false;
  nlohmann::json timings = nlohmann::json::object();
  for (const auto* suite : chosen) {
    const auto res = suites::run(*suite);
    timings[res.name] = res.seconds;
    (res.pass() ? rep.suites.passed : rep.suites.failed) += 1;
    numerical = numerical || res.numerical_error;
    rep.add_row({std::string("suite"), res.name, res.module, std::string(res.pass() ? "pass" : "fail"),
                 int_cell(static_cast<long long>(res.checks)), int_cell(static_cast<long long>(res.failed)),
                 res.max_residual, Cell(), Cell(), Cell(), Cell(), Cell(), res.error});
    for (const auto& f : res.failures)
      rep.add_row({std::string("failure"), res.name, res.module, std::string("fail"), Cell(), Cell(), Cell(),
                   f.inputs, f.computed, f.expected, f.residual, f.tolerance, Cell()});
    char line[256];
    std::snprintf(line, sizeof line, "%s %-20s checks=%zu failed=%zu max_residual=%.3g", res.pass() ? "PASS" : "FAIL",
                  res.name.c_str(), res.checks, res.failed, res.max_residual);
    err << line;
    if (!res.error.empty()) err << " error=" << res.error;
    err << '\n';
  }
  rep.extra_metadata["suite_seconds"] = timings;
  if (numerical) return kNumerical;
  return rep.suites.failed ? kVerifyFailed : kOk;
}

inline void list_suites(std::ostream& out) {
  for (const auto& s : suites::registry()) out << s.name << '\t' << s.module << '\t' << s.description << '\n';
}

// ---------------------------------------------------------------------------

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  CLI::App app{"Kernel of the (kappa,a)-generalized Fourier transform: evaluation, verdicts and verification",
               "kappa-fourier"};
  app.require_subcommand(1);
  app.set_version_flag("--version", KAPPA_FOURIER_VERSION);

  const std::vector<std::pair<std::string, std::string>> commands{
      {"eval-kernel", "evaluate b_{kappa,a}(x), e_{kappa,a}(v) or e_{2r+1}(v,lambda)"},
      {"eval-psi", "evaluate Psi_R(w, tau) by its Bessel series"},
      {"transform", "gft_1d of a named function, or F_r^lambda with --lambda"},
      {"classify", "boundedness verdict with citation and witness"},
      {"sweep", "sup-norm over a parameter grid"},
      {"posdef", "sign analysis of q_{2r+1} and 1 +- P_{2r}"},
      {"verify", "run identity and property suites"}};

  std::map<std::string, std::string> raw;
  std::map<std::string, std::vector<CLI::Option*>> opts;
  std::string config_path;
  bool list_flag = false;
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    for (const auto& k : keys()) opts[k.key].push_back(sub->add_option("--" + std::string(k.key), raw[k.key], k.help));
    sub->add_option("--config", config_path, "key=value configuration file");
    if (name == "verify") sub->add_flag("--list", list_flag, "list suites and exit");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  const CLI::App* active = app.get_subcommands().front();
  const std::string command = active->get_name();
  if (list_flag) {
    list_suites(out);
    return kOk;
  }

  Report rep;
  rep.command = command;
  int status = kOk;
  std::string format;
  std::string output;
  try {
    Settings settings;
    if (!config_path.empty()) load_config(config_path, settings);
    for (const auto& k : keys())
      for (const auto* o : opts[k.key])
        if (o->count() > 0) settings.set(k.key, raw[k.key], "--" + std::string(k.key));
    format = settings.str("out");
    output = settings.str("output");
    if (format != "csv" && format != "json") throw UsageError(settings.where("out") + ": expected csv or json");
    rep.config = settings.effective();
    if (!config_path.empty()) rep.config.emplace_back("config", config_path);

    if (command == "eval-kernel") cmd_eval_kernel(settings, rep);
    else if (command == "eval-psi") cmd_eval_psi(settings, rep);
    else if (command == "transform") cmd_transform(settings, rep);
    else if (command == "classify") cmd_classify(settings, rep);
    else if (command == "sweep") cmd_sweep(settings, rep);
    else if (command == "posdef") cmd_posdef(settings, rep);
    else if (command == "verify") status = cmd_verify(settings, rep, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.numerical() ? kNumerical : kUsage;
  }

  if (rep.row_errors > 0 && status == kOk) status = rep.numerical_error ? kNumerical : kUsage;
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::ofstream file;
  if (!output.empty()) {
    file.open(output, std::ios::binary);
    if (!file) {
      err << "usage error: cannot write " << output << '\n';
      return kUsage;
    }
  }
  std::ostream& sink = output.empty() ? out : file;
  if (format == "json")
    report::write_json(sink, rep);
  else
    report::write_csv(sink, rep);
  if (rep.row_errors > 0) err << rep.row_errors << " row(s) failed to evaluate\n";
  return status;
}

}  // namespace kappa_fourier::cli
