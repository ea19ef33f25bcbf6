#pragma once

// Command-line front end. Kept header-only so the test suite can drive it
// in-process through run().

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ptchain/ptchain.hpp"

namespace ptchain::cli {

using nlohmann::ordered_json;

enum class Command { Bands, Reality, EtaC, CriticalFields, PhaseDiagram, Counterpart, EdCheck };
enum class Format { Csv, Json };

inline constexpr int exit_ok = 0;
inline constexpr int exit_invariant = 1;
inline constexpr int exit_usage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  Command command = Command::Bands;
  ChainParams params;
  int grid_size = 1024;
  Format format = Format::Json;
  std::optional<std::string> output_path;
  std::string preset;
  bool units_eta = false;
  SweepRange h_range{0.0, 2.0, 21};
  SweepRange eta_range{0.0, 2.0, 21};
  std::string root = "a1";
  std::string boundary = "both";
  int max_sites = 12;
  double eta_max = 0.0;  // 0: use |J1| + |J2|
  double tol = 1e-9;
};

inline const std::map<std::string, ChainParams>& presets() {
  static const std::map<std::string, ChainParams> table{
      {"fig1-i", {2.0, 0.4, 0.0, 0.0, 1.0, 1.0, 8}},
      {"fig1-ii", {1.6, 0.8, 0.0, 0.0, 1.0, 1.0, 8}},
      {"fig1-iii", {1.4, -0.6, 0.0, 0.0, 1.0, 1.0, 8}},
      {"fig2-solid", {1.1, 0.1, 2.4, -0.8, 0.2, 1.0, 8}},
      {"fig2-dotted", {1.1, 0.1, 2.4, -0.8, 1.5, 1.0, 8}},
  };
  return table;
}

// ---------------------------------------------------------------- formatting

inline std::string number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline ordered_json complex_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

inline ordered_json optional_json(const std::optional<double>& x) {
  return x ? ordered_json(*x) : ordered_json(nullptr);
}

inline const char* name(Command c) {
  switch (c) {
    case Command::Bands: return "bands";
    case Command::Reality: return "reality";
    case Command::EtaC: return "eta-c";
    case Command::CriticalFields: return "critical-fields";
    case Command::PhaseDiagram: return "phase-diagram";
    case Command::Counterpart: return "counterpart";
    case Command::EdCheck: return "ed-check";
  }
  return "?";
}

inline const char* name(BreakingMechanism m) {
  switch (m) {
    case BreakingMechanism::None: return "NONE";
    case BreakingMechanism::InnerRootNegative: return "INNER_ROOT_NEGATIVE";
    case BreakingMechanism::SumNegative: return "SUM_NEGATIVE";
  }
  return "?";
}

inline const char* name(Reality r) { return r == Reality::Real ? "REAL" : "BROKEN"; }

inline const char* name(Order o) {
  switch (o) {
    case Order::Ordered: return "ORDERED";
    case Order::Disordered: return "DISORDERED";
    case Order::Undefined: return "UNDEFINED";
  }
  return "?";
}

inline const char* name(RootChoice r) {
  switch (r) {
    case RootChoice::A1: return "a1";
    case RootChoice::A2: return "a2";
    case RootChoice::NegA1: return "-a1";
    case RootChoice::NegA2: return "-a2";
  }
  return "?";
}

inline ordered_json config_json(const RunConfig& c) {
  const auto& p = c.params;
  ordered_json j{{"command", name(c.command)},
                 {"preset", c.preset.empty() ? ordered_json(nullptr) : ordered_json(c.preset)},
                 {"j1", p.j1},
                 {"j2", p.j2},
                 {"gamma1", p.gamma1},
                 {"gamma2", p.gamma2},
                 {"h", p.h},
                 {"eta", p.eta},
                 {"n_sites", p.n_sites},
                 {"grid", c.grid_size},
                 {"format", c.format == Format::Csv ? "csv" : "json"}};
  switch (c.command) {
    case Command::Bands: j["units_eta"] = c.units_eta; break;
    case Command::PhaseDiagram:
      j["h_range"] = {c.h_range.lo, c.h_range.hi, c.h_range.steps};
      j["eta_range"] = {c.eta_range.lo, c.eta_range.hi, c.eta_range.steps};
      break;
    case Command::Counterpart: j["root"] = c.root; break;
    case Command::EdCheck:
      j["boundary"] = c.boundary;
      j["max_sites"] = c.max_sites;
      break;
    case Command::EtaC:
      j["eta_max"] = c.eta_max;
      j["tol"] = c.tol;
      break;
    default: break;
  }
  return j;
}

// CSV output carries the config echo as leading '#' lines.
inline std::string csv_preamble(const RunConfig& c) {
  std::string s;
  const auto config = config_json(c);
  for (const auto& [key, value] : config.items()) s += "# " + key + "=" + value.dump() + "\n";
  return s;
}

struct Report {
  ordered_json results = ordered_json::object();
  ordered_json diagnostics = ordered_json::object();
  std::string csv;  // used when the command emits a table and format is CSV
  int exit_code = exit_ok;
};

// ------------------------------------------------------------------ commands

inline Report cmd_bands(const RunConfig& c) {
  const auto spectrum = band_spectrum(c.params, c.grid_size);
  const double scale = c.units_eta && c.params.eta != 0.0 ? 1.0 / c.params.eta : 1.0;
  Report r;
  std::ostringstream csv;
  csv << "k,re_lambda_minus,im_lambda_minus,re_lambda_plus,im_lambda_plus,is_real\n";
  ordered_json samples = ordered_json::array();
  for (const auto& s : spectrum.samples) {
    const Complex lm = s.lambda_minus * scale, lp = s.lambda_plus * scale;
    csv << number(s.k.value()) << ',' << number(lm.real()) << ',' << number(lm.imag()) << ','
        << number(lp.real()) << ',' << number(lp.imag()) << ',' << (s.is_real ? "true" : "false")
        << '\n';
    samples.push_back({{"k", s.k.value()},
                       {"lambda_minus", complex_json(lm)},
                       {"lambda_plus", complex_json(lp)},
                       {"is_real", s.is_real}});
  }
  r.csv = csv.str();
  r.results = {{"fully_real", spectrum.fully_real()}, {"energy_scale", scale}, {"samples", samples}};
  r.diagnostics["tol_reality"] = tol_reality;
  r.diagnostics["columns"] = {"k", "re_lambda_minus", "im_lambda_minus", "re_lambda_plus", "im_lambda_plus",
                              "is_real"};
  if (c.units_eta && c.params.eta == 0.0) r.diagnostics["notice"] = "eta = 0: energies left unscaled";
  return r;
}

inline Report cmd_reality(const RunConfig& c) {
  const auto report = classify_reality(c.params, c.grid_size);
  Report r;
  std::ostringstream csv;
  csv << "k_lo,k_hi\n";
  ordered_json intervals = ordered_json::array();
  for (const auto& iv : report.forbidden_intervals) {
    csv << number(iv.k_lo) << ',' << number(iv.k_hi) << '\n';
    intervals.push_back({{"k_lo", iv.k_lo}, {"k_hi", iv.k_hi}});
  }
  r.csv = csv.str();
  r.results = {{"fully_real", report.fully_real},
               {"mechanism", name(report.mechanism)},
               {"forbidden_intervals", intervals},
               {"grid_size", report.grid_size}};
  r.diagnostics = {{"tol_reality", tol_reality},
                   {"interval_edge_tol", interval_edge_tol},
                   {"columns", {"k_lo", "k_hi"}}};
  return r;
}

inline Report cmd_eta_c(const RunConfig& c) {
  Report r;
  ordered_json undefined = ordered_json::array();
  if (c.params.isotropic()) {
    const auto t = eta_critical_isotropic(c.params);
    r.results["eta_c"] = t.eta_c;
    r.results["which_min"] = t.which_min == ThresholdBranch::Sum ? "SUM" : "DIFF";
    r.results["k_star"] = t.k_star;
  } else {
    r.results["eta_c"] = nullptr;
    r.results["which_min"] = nullptr;
    r.results["k_star"] = nullptr;
    undefined.push_back({{"field", "eta_c"}, {"reason", "closed form holds for gamma1 = gamma2 = 0 only"}});
  }
  const double bound = std::min(std::abs(c.params.j1 + c.params.j2), std::abs(c.params.j1 - c.params.j2));
  const double eta_max = c.eta_max > 0.0 ? c.eta_max : std::abs(c.params.j1) + std::abs(c.params.j2) + 1.0;
  const double numeric = eta_critical_numeric(c.params, eta_max, c.tol, c.grid_size);
  r.results["eta_c_numeric"] = numeric;
  r.results["necessary_bound"] = bound;
  r.results["within_bound"] = numeric <= bound + c.tol;
  r.diagnostics = {{"tol", c.tol}, {"eta_max", eta_max}, {"undefined", undefined}};
  return r;
}

inline Report cmd_critical_fields(const RunConfig& c) {
  const auto fields = critical_fields(c.params);
  const auto phase = classify_phase(c.params, c.grid_size);
  Report r;
  ordered_json undefined = ordered_json::array();
  if (!fields.h_c1) undefined.push_back({{"field", "h_c1"}, {"reason", "negative radicand"}});
  if (!fields.h_c2) undefined.push_back({{"field", "h_c2"}, {"reason", "negative radicand"}});
  r.results = {{"h_c1", optional_json(fields.h_c1)},
               {"h_c2", optional_json(fields.h_c2)},
               {"gap_k0", complex_json(gap_at_special_k(c.params, SpecialMomentum::K0))},
               {"gap_kpi2", complex_json(gap_at_special_k(c.params, SpecialMomentum::KPi2))},
               {"reality", name(phase.reality)},
               {"order", name(phase.order)},
               {"isotropic_caveat", phase.isotropic_caveat}};
  r.diagnostics = {{"undefined", undefined}};
  return r;
}

inline Report cmd_phase_diagram(const RunConfig& c) {
  const auto points = phase_diagram(c.params, c.h_range, c.eta_range, c.grid_size);
  Report r;
  std::ostringstream csv;
  csv << "h,eta,reality,order,h_c1,h_c2\n";
  ordered_json rows = ordered_json::array();
  auto cell = [](const std::optional<double>& x) { return x ? number(*x) : std::string(); };
  for (const auto& pt : points) {
    csv << number(pt.h) << ',' << number(pt.eta) << ',' << name(pt.reality) << ',' << name(pt.order)
        << ',' << cell(pt.fields.h_c1) << ',' << cell(pt.fields.h_c2) << '\n';
    rows.push_back({{"h", pt.h},
                    {"eta", pt.eta},
                    {"reality", name(pt.reality)},
                    {"order", name(pt.order)},
                    {"h_c1", optional_json(pt.fields.h_c1)},
                    {"h_c2", optional_json(pt.fields.h_c2)}});
  }
  r.csv = csv.str();
  r.results = {{"points", rows}};
  r.diagnostics = {{"ordering", "h outer, eta inner"},
                   {"columns", {"h", "eta", "reality", "order", "h_c1", "h_c2"}},
                   {"undefined", "empty CSV cell / null: critical-field radicand negative"}};
  return r;
}

inline ordered_json solution_json(const CounterpartSolution& s) {
  return {{"root", name(s.root)},
          {"a", s.a},
          {"sign_class", s.sign_class == SignClass::FerroPreserving ? "FERRO_PRESERVING" : "FERRO_FLIPPING"},
          {"j1_prime", s.j1_prime},
          {"j2_prime", s.j2_prime},
          {"gamma1_prime", s.gamma1_prime},
          {"gamma2_prime", s.gamma2_prime},
          {"h_prime", optional_json(s.h_prime)},
          {"valid", s.valid},
          {"reason", s.reason.empty() ? ordered_json(nullptr) : ordered_json(s.reason)}};
}

inline Report cmd_counterpart(const RunConfig& c) {
  constexpr double tolerance = 1e-10;
  Report r;
  r.diagnostics["tolerance"] = tolerance;
  const auto& p = c.params;
  if (p.j1 == 0.0 || p.j2 == 0.0) throw UsageError("counterpart needs J1 != 0 and J2 != 0");

  const double eta_c = std::min(std::abs(p.j1 + p.j2), std::abs(p.j1 - p.j2));
  if (p.eta >= eta_c) {
    r.results = {{"valid", false}, {"reason", "eta >= eta_c"}, {"eta_c", eta_c}};
    return r;
  }

  std::vector<RootChoice> choices;
  if (c.root == "all") {
    choices = {RootChoice::A1, RootChoice::A2, RootChoice::NegA1, RootChoice::NegA2};
  } else {
    static const std::map<std::string, RootChoice> by_name{
        {"a1", RootChoice::A1}, {"a2", RootChoice::A2}, {"-a1", RootChoice::NegA1}, {"-a2", RootChoice::NegA2}};
    choices = {by_name.at(c.root)};
  }

  ordered_json solutions = ordered_json::array();
  bool all_valid = true, all_pass = true;
  for (RootChoice choice : choices) {
    const auto sol = p.isotropic() ? isotropic_counterpart(p, choice) : anisotropic_counterpart(p, choice);
    ordered_json js = solution_json(sol);
    if (sol.valid) {
      const auto cmp = verify_spectrum_equality(p, sol, c.grid_size);
      const bool pass = cmp.band_deviation < tolerance && cmp.critical_deviation < tolerance;
      js["verification"] = {{"band_deviation", cmp.band_deviation},
                            {"critical_deviation", cmp.critical_deviation},
                            {"pass", pass}};
      all_pass = all_pass && pass;
    }
    all_valid = all_valid && sol.valid;
    solutions.push_back(js);
  }
  r.results = {{"valid", all_valid}, {"eta_c", eta_c}, {"solutions", solutions}};
  if (!all_valid) r.results["reason"] = "h' radicand negative";
  if (!all_pass) r.exit_code = exit_invariant;
  return r;
}

inline Report cmd_ed_check(const RunConfig& c) {
  constexpr double spectrum_tol = 1e-8;
  constexpr double matrix_tol = 1e-12;
  if (c.params.n_sites > c.max_sites) {
    throw UsageError("n_sites = " + std::to_string(c.params.n_sites) + " exceeds --max-sites " +
                     std::to_string(c.max_sites));
  }
  std::vector<ed::Boundary> boundaries;
  if (c.boundary == "open" || c.boundary == "both") boundaries.push_back(ed::Boundary::Open);
  if (c.boundary == "periodic" || c.boundary == "both") boundaries.push_back(ed::Boundary::Periodic);

  Report r;
  ordered_json runs = ordered_json::array();
  bool pass_all = true;
  for (auto b : boundaries) {
    const auto m = ed::build_hamiltonian(c.params, b);
    const double pt = ed::pt_residual(m);
    const double parity = ed::parity_commutator_residual(m.entries);
    const double herm = ed::hermiticity_residual(m.entries);
    const auto spectrum = ed::complex_spectrum(m);
    const auto assembled = ed::free_fermion_assembly(c.params, b);
    const double residual = ed::multiset_residual(spectrum.eigenvalues, assembled);
    const double conj = ed::conjugation_residual(spectrum.eigenvalues);
    const bool pass = pt < matrix_tol && parity < matrix_tol &&
                      (c.params.eta != 0.0 || herm < matrix_tol) && residual < spectrum_tol;
    pass_all = pass_all && pass;
    runs.push_back({{"boundary", b == ed::Boundary::Open ? "open" : "periodic"},
                    {"dimension", m.dimension()},
                    {"pt_residual", pt},
                    {"parity_commutator", parity},
                    {"hermiticity_residual", herm},
                    {"fully_real", spectrum.fully_real},
                    {"max_imag", spectrum.max_imag},
                    {"conjugation_residual", conj},
                    {"assembly_max_residual", residual},
                    {"pass", pass}});
  }
  r.results = {{"runs", runs}, {"pass", pass_all}};
  r.diagnostics = {{"spectrum_tol", spectrum_tol}, {"matrix_tol", matrix_tol},
                   {"ed_reality_tol", ed::ed_reality_tol}};
  if (!pass_all) r.exit_code = exit_invariant;
  return r;
}

// -------------------------------------------------------------------- driver

namespace detail {

inline std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  std::map<std::string, std::string> values;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(line_no) + ": expected key=value");
    }
    values[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return values;
}

inline SweepRange parse_range(const std::string& text, const char* flag) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) parts.push_back(item);
  try {
    if (parts.size() == 3) return {std::stod(parts[0]), std::stod(parts[1]), std::stoi(parts[2])};
  } catch (const std::exception&) {
  }
  throw UsageError(std::string(flag) + " expects lo,hi,steps");
}

}  // namespace detail

inline constexpr const char* column_help =
    "Output columns:\n"
    "  bands (CSV):         k, re_lambda_minus, im_lambda_minus, re_lambda_plus, im_lambda_plus, is_real\n"
    "  reality (CSV):       k_lo, k_hi of each forbidden momentum interval\n"
    "  phase-diagram (CSV): h, eta, reality (REAL|BROKEN), order (ORDERED|DISORDERED|UNDEFINED), h_c1, h_c2\n"
    "                       (empty h_c cell = undefined field)\n"
    "JSON output is a single object {config, results, diagnostics}; complex numbers are {re, im},\n"
    "undefined values are null with a reason listed under diagnostics.\n"
    "Exit codes: 0 success, 1 invariant violation, 2 usage error.";

/// Parses argv, runs one command and writes the report. Returns the exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Non-Hermitian dimerized XY chain: bands, PT breaking, critical fields, Hermitian counterparts"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.footer(column_help);
  app.require_subcommand(1);

  RunConfig cfg;
  struct Flag {
    const char* key;
    const char* help;
    double value = 0.0;
  };
  std::vector<Flag> numeric{{"j1", "Exchange on odd bonds"},
                            {"j2", "Exchange on even bonds"},
                            {"gamma1", "Anisotropy on odd bonds"},
                            {"gamma2", "Anisotropy on even bonds"},
                            {"h", "Transverse field (>= 0)"},
                            {"eta", "Staggered imaginary field (>= 0)"}};
  int n_sites = 8, grid = 1024;
  std::string format = "json", config_path, out_path, h_range, eta_range;

  const std::vector<std::pair<Command, const char*>> commands{
      {Command::Bands, "Band spectrum Lambda_-(k), Lambda_+(k) on an open grid over (0, pi)"},
      {Command::Reality, "Classify the spectrum as fully real or PT-broken, with forbidden k-intervals"},
      {Command::EtaC, "Non-Hermiticity threshold: closed form (isotropic) and numeric bisection"},
      {Command::CriticalFields, "Critical transverse fields and signed gaps at k = 0, pi/2"},
      {Command::PhaseDiagram, "Sweep the (h, eta) plane"},
      {Command::Counterpart, "Hermitian counterpart by coupling renormalization, with verification"},
      {Command::EdCheck, "Exact-diagonalization cross-check of the free-fermion solution"},
  };
  std::map<CLI::App*, Command> by_app;
  for (const auto& [command, description] : commands) {
    auto* sub = app.add_subcommand(name(command), description);
    by_app[sub] = command;
    for (auto& f : numeric) {
      sub->add_option(std::string("--") + f.key, f.value, f.help);
    }
    sub->add_option("--n-sites", n_sites, "Number of spins (even, >= 4)");
    sub->add_option("--grid", grid, "Momentum grid size (default 1024)");
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", out_path, "Write to this file instead of stdout");
    sub->add_option("--preset", cfg.preset, "fig1-i | fig1-ii | fig1-iii | fig2-solid | fig2-dotted");
    sub->add_option("--config", config_path, "key=value file; command-line flags win");
    switch (command) {
      case Command::Bands: sub->add_flag("--units-eta", cfg.units_eta, "Divide energies by eta"); break;
      case Command::EtaC:
        sub->add_option("--eta-max", cfg.eta_max, "Upper bisection bracket (default |J1|+|J2|+1)");
        sub->add_option("--tol", cfg.tol, "Bisection tolerance (default 1e-9)");
        break;
      case Command::PhaseDiagram:
        sub->add_option("--h-range", h_range, "lo,hi,steps (default 0,2,21)");
        sub->add_option("--eta-range", eta_range, "lo,hi,steps (default 0,2,21)");
        break;
      case Command::Counterpart:
        sub->add_option("--root", cfg.root, "a1 | a2 | -a1 | -a2 | all")
            ->check(CLI::IsMember({"a1", "a2", "-a1", "-a2", "all"}));
        break;
      case Command::EdCheck:
        sub->add_option("--boundary", cfg.boundary, "open | periodic | both")
            ->check(CLI::IsMember({"open", "periodic", "both"}));
        sub->add_option("--max-sites", cfg.max_sites, "Site cap (default 12, at most 14)")
            ->check(CLI::Range(4, ed::max_sites));
        break;
      default: break;
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }

  CLI::App* active = app.get_subcommands().front();
  cfg.command = by_app.at(active);

  auto given = [&](const char* flag) { return active->get_option(flag)->count() > 0; };

  try {
    ChainParams& p = cfg.params;
    if (!cfg.preset.empty()) {
      const auto it = presets().find(cfg.preset);
      if (it == presets().end()) throw UsageError("unknown preset " + cfg.preset);
      p = it->second;
    }

    std::map<std::string, std::string> file;
    if (!config_path.empty()) file = detail::read_config_file(config_path);
    std::map<std::string, double*> targets{{"j1", &p.j1},         {"j2", &p.j2}, {"gamma1", &p.gamma1},
                                           {"gamma2", &p.gamma2}, {"h", &p.h},   {"eta", &p.eta}};
    for (const auto& [key, text] : file) {
      const bool is_int = key == "n_sites" || key == "grid";
      if (!targets.count(key) && !is_int && key != "format") {
        throw UsageError("unknown config key '" + key + "'");
      }
      const std::string flag = "--" + (key == "n_sites" ? std::string("n-sites") : key);
      if (given(flag.c_str())) {
        err << "notice: " << flag << " overrides config file value " << key << "=" << text << "\n";
        continue;
      }
      try {
        if (key == "n_sites") p.n_sites = std::stoi(text);
        else if (key == "grid") cfg.grid_size = std::stoi(text);
        else if (key == "format") format = text;
        else *targets.at(key) = std::stod(text);
      } catch (const std::logic_error&) {
        throw UsageError("config key '" + key + "' has malformed value '" + text + "'");
      }
    }
    for (const auto& f : numeric)
      if (given(("--" + std::string(f.key)).c_str())) *targets.at(f.key) = f.value;
    if (given("--n-sites")) p.n_sites = n_sites;
    if (given("--grid")) cfg.grid_size = grid;
    if (format != "csv" && format != "json") throw UsageError("format must be csv or json");
    cfg.format = format == "csv" ? Format::Csv : Format::Json;
    if (!out_path.empty()) cfg.output_path = out_path;
    if (!h_range.empty()) cfg.h_range = detail::parse_range(h_range, "--h-range");
    if (!eta_range.empty()) cfg.eta_range = detail::parse_range(eta_range, "--eta-range");
    if (cfg.grid_size < 2) throw UsageError("--grid must be >= 2");
    validate(p);

    Report report;
    switch (cfg.command) {
      case Command::Bands: report = cmd_bands(cfg); break;
      case Command::Reality: report = cmd_reality(cfg); break;
      case Command::EtaC: report = cmd_eta_c(cfg); break;
      case Command::CriticalFields: report = cmd_critical_fields(cfg); break;
      case Command::PhaseDiagram: report = cmd_phase_diagram(cfg); break;
      case Command::Counterpart: report = cmd_counterpart(cfg); break;
      case Command::EdCheck: report = cmd_ed_check(cfg); break;
    }

    std::string text;
    if (cfg.format == Format::Csv && !report.csv.empty()) {
      text = csv_preamble(cfg) + report.csv;
    } else {
      if (cfg.format == Format::Csv) report.diagnostics["notice"] = "command has no table form; JSON emitted";
      ordered_json doc{{"config", config_json(cfg)},
                       {"results", report.results},
                       {"diagnostics", report.diagnostics}};
      text = doc.dump(2) + "\n";
    }

    if (cfg.output_path) {
      std::ofstream file_out(*cfg.output_path, std::ios::binary);
      if (!file_out || !(file_out << text)) throw UsageError("cannot write " + *cfg.output_path);
    } else {
      out << text;
    }
    return report.exit_code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_invariant;
  }
}

}  // namespace ptchain::cli
