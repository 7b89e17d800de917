// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Everything model-related goes through the shared
// library's C interface; this file only parses arguments, moves bytes
// between files, and attaches provenance to artifacts.
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "incomedist.h"

namespace {

using nlohmann::json;

struct CliError {
  int code;
  std::string message;
};

[[noreturn]] void fail(int code, const std::string& msg) {
  throw CliError{code, msg};
}

int code_of(id_status st) {
  switch (st) {
    case ID_OK:
      return 0;
    case ID_ERR_DOMAIN:
      return 1;
    case ID_ERR_USAGE:
      return 2;
    default:
      return 1;
  }
}

void check(id_status st, const std::string& what) {
  if (st == ID_OK) return;
  // Library messages usually name their operation already; avoid
  // "solve: solve: ..." style duplication.
  const std::string detail = id_last_error();
  if (detail.rfind(what + ": ", 0) == 0)
    fail(code_of(st), detail);
  fail(code_of(st), what + ": " + detail);
}

template <typename T, void (*Free)(T*)>
struct Handle {
  T* ptr = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  Handle(Handle&& o) noexcept : ptr(std::exchange(o.ptr, nullptr)) {}
  Handle& operator=(Handle&& o) noexcept {
    if (this != &o) {
      reset();
      ptr = std::exchange(o.ptr, nullptr);
    }
    return *this;
  }
  ~Handle() { reset(); }
  void reset() {
    if (ptr != nullptr) Free(ptr);
    ptr = nullptr;
  }
  T** out() { return &ptr; }
};

using GridHandle = Handle<id_grid, id_grid_free>;
using SolutionHandle = Handle<id_solution, id_solution_free>;
using TailFitHandle = Handle<id_tailfit, id_tailfit_free>;
using TwoClassHandle = Handle<id_twoclass, id_twoclass_free>;

struct CStr {
  char* p = nullptr;
  CStr() = default;
  CStr(const CStr&) = delete;
  CStr& operator=(const CStr&) = delete;
  ~CStr() { id_string_free(p); }
  char** out() { return &p; }
  std::string str() const { return p != nullptr ? std::string(p) : ""; }
};

struct CDoubles {
  double* p = nullptr;
  CDoubles() = default;
  CDoubles(const CDoubles&) = delete;
  CDoubles& operator=(const CDoubles&) = delete;
  ~CDoubles() { id_doubles_free(p); }
  double** out() { return &p; }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(2, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(2, "cannot write " + path);
  out << content;
}

json provenance(const json& config,
                std::optional<unsigned long long> seed) {
  json p;
  p["version"] = id_version();
  if (seed.has_value())
    p["seed"] = *seed;
  else
    p["seed"] = nullptr;
  p["config"] = config;
  return p;
}

std::string csv_comments(const json& config,
                         std::optional<unsigned long long> seed) {
  std::string s;
  s += "# version: ";
  s += id_version();
  s += "\n# seed: ";
  s += seed.has_value() ? std::to_string(*seed) : "none";
  s += "\n# config: ";
  s += config.dump();
  s += "\n";
  return s;
}

std::string dump_artifact(json j) { return j.dump(2) + "\n"; }

GridHandle load_grid(const std::string& path) {
  GridHandle g;
  check(id_grid_from_json(read_file(path).c_str(), g.out()),
        "grid " + path);
  return g;
}

std::vector<double> load_occupancy(const std::string& path) {
  json j = json::parse(read_file(path), nullptr, false);
  if (j.is_discarded() || !j.contains("counts") ||
      !j.at("counts").is_array())
    fail(2, "occupancy " + path + ": expected {\"counts\": [...]}");
  std::vector<double> counts;
  for (const auto& v : j.at("counts")) {
    if (!v.is_number())
      fail(2, "occupancy " + path + ": counts must be numbers");
    counts.push_back(v.get<double>());
  }
  if (counts.empty()) fail(2, "occupancy " + path + ": empty counts");
  return counts;
}

id_regime parse_regime(const std::string& s) {
  return s == "monopolistic" ? ID_REGIME_MONOPOLISTIC : ID_REGIME_PERFECT;
}

// ---- subcommand bodies -------------------------------------------------

struct CountArgs {
  std::string grid_path, occ_path, out_path = "-";
  std::string regime = "perfect";
  bool exact = false;
  bool stirling = false;
};

void run_count(const CountArgs& a) {
  GridHandle grid = load_grid(a.grid_path);
  const auto counts = load_occupancy(a.occ_path);
  json artifact;
  double lo = 0.0;
  if (a.exact) {
    CStr exact;
    check(id_omega_exact(grid.ptr, counts.data(),
                         static_cast<int>(counts.size()),
                         parse_regime(a.regime), &lo, exact.out()),
          "count");
    artifact["exact"] = exact.str();
  } else {
    check(id_log_omega(grid.ptr, counts.data(),
                       static_cast<int>(counts.size()),
                       parse_regime(a.regime), &lo),
          "count");
  }
  artifact["log_omega"] = lo;
  artifact["regime"] = a.regime;
  if (a.stirling) {
    double st = 0.0;
    check(id_log_omega_stirling(grid.ptr, counts.data(),
                                static_cast<int>(counts.size()), &st),
          "count --stirling");
    artifact["log_omega_stirling"] = st;
  }
  json config{{"subcommand", "count"},
              {"grid", a.grid_path},
              {"occupancy", a.occ_path},
              {"regime", a.regime},
              {"exact", a.exact},
              {"stirling", a.stirling}};
  artifact["provenance"] = provenance(config, std::nullopt);
  write_output(a.out_path, dump_artifact(std::move(artifact)));
}

struct SolveArgs {
  std::string grid_path, out_path = "-";
  long long n = 0;
  double pi = 0.0;
  std::string regime = "perfect";
  double tol = 0.0;
};

void run_solve(const SolveArgs& a) {
  GridHandle grid = load_grid(a.grid_path);
  id_solve_options opts{a.tol, 0.0, 0, 0};
  SolutionHandle sol;
  check(id_solve(grid.ptr, a.n, a.pi, parse_regime(a.regime), &opts,
                 sol.out()),
        "solve");
  CStr text;
  check(id_solution_to_json(sol.ptr, text.out()), "solve");
  json artifact = json::parse(text.str());
  json config{{"subcommand", "solve"}, {"grid", a.grid_path},
              {"n", a.n},              {"pi", a.pi},
              {"regime", a.regime},    {"tol", a.tol}};
  artifact["provenance"] = provenance(config, std::nullopt);
  write_output(a.out_path, dump_artifact(std::move(artifact)));
}

struct SampleArgs {
  std::string grid_path, out_path = "-";
  long long n = 0;
  double pi = 0.0;
  double quantum = 1.0;
  std::string mode = "discrete";
  unsigned long long samples = 0;
  std::optional<unsigned long long> seed;
  bool allocations = false;
};

id_ensemble_mode parse_mode(const std::string& s) {
  if (s == "labeled") return ID_MODE_ENUMERATE_LABELED;
  if (s == "unlabeled") return ID_MODE_ENUMERATE_UNLABELED;
  if (s == "continuous") return ID_MODE_SAMPLE_CONTINUOUS;
  return ID_MODE_SAMPLE_DISCRETE;
}

void run_sample(const SampleArgs& a) {
  const id_ensemble_mode mode = parse_mode(a.mode);
  const bool stochastic = mode == ID_MODE_SAMPLE_CONTINUOUS ||
                          mode == ID_MODE_SAMPLE_DISCRETE;
  if (stochastic && !a.seed.has_value())
    fail(2, "sample: --seed is required for sampling modes");
  if (stochastic && a.samples == 0)
    fail(2, "sample: --samples must be >= 1 for sampling modes");
  json config{{"subcommand", "sample"},
              {"n", a.n},
              {"pi", a.pi},
              {"quantum", a.quantum},
              {"mode", a.mode},
              {"samples", a.samples},
              {"allocations", a.allocations}};
  if (!a.grid_path.empty()) config["grid"] = a.grid_path;
  const unsigned long long seed = a.seed.value_or(0);
  if (a.allocations) {
    CStr csv;
    if (stochastic)
      check(id_sample_allocations_csv(a.n, a.pi, a.quantum, mode, a.samples,
                                      seed, csv.out()),
            "sample");
    else
      check(id_enumerate_allocations_csv(a.n, a.pi, a.quantum, mode,
                                         csv.out()),
            "sample");
    write_output(a.out_path, csv_comments(config, a.seed) + csv.str());
    return;
  }
  if (a.grid_path.empty())
    fail(2, "sample: --grid is required for histogram output");
  GridHandle grid = load_grid(a.grid_path);
  CStr hist;
  check(id_ensemble_histogram_json(a.n, a.pi, a.quantum, mode, a.samples,
                                   seed, grid.ptr, hist.out()),
        "sample");
  json artifact;
  artifact["histogram"] = json::parse(hist.str());
  artifact["mode"] = a.mode;
  artifact["provenance"] = provenance(config, a.seed);
  write_output(a.out_path, dump_artifact(std::move(artifact)));
}

struct OracleArgs {
  std::string grid_path, occ_path, out_path = "-";
  std::string regime = "perfect";
};

void run_oracle(const OracleArgs& a) {
  GridHandle grid = load_grid(a.grid_path);
  const auto counts = load_occupancy(a.occ_path);
  CStr exact;
  check(id_oracle_count(grid.ptr, counts.data(),
                        static_cast<int>(counts.size()),
                        parse_regime(a.regime), exact.out()),
        "oracle");
  json artifact;
  artifact["count"] = exact.str();
  artifact["regime"] = a.regime;
  json config{{"subcommand", "oracle"},
              {"grid", a.grid_path},
              {"occupancy", a.occ_path},
              {"regime", a.regime}};
  artifact["provenance"] = provenance(config, std::nullopt);
  write_output(a.out_path, dump_artifact(std::move(artifact)));
}

struct ParetoGenArgs {
  long long nodes = 0;
  long long m = 0;
  std::optional<unsigned long long> seed;
  double scale = 1.0;
  std::string out_path = "-";
};

void run_pareto_generate(const ParetoGenArgs& a) {
  if (!a.seed.has_value()) fail(2, "pareto generate: --seed is required");
  CDoubles incomes;
  long long n = 0;
  check(id_pareto_generate(a.nodes, a.m, *a.seed, a.scale, incomes.out(),
                           &n),
        "pareto generate");
  json config{{"subcommand", "pareto generate"},
              {"nodes", a.nodes},
              {"m", a.m},
              {"scale", a.scale}};
  std::string out = csv_comments(config, a.seed);
  out += "income\n";
  char buf[40];
  for (long long i = 0; i < n; ++i) {
    std::snprintf(buf, sizeof buf, "%.17g\n", incomes.p[i]);
    out += buf;
  }
  write_output(a.out_path, out);
}

struct ParetoFitArgs {
  std::string input, out_path = "-";
  double xmin = 0.0;  // 0: scan
};

void run_pareto_fit(const ParetoFitArgs& a) {
  CDoubles values;
  long long n = 0;
  check(id_load_income_csv(a.input.c_str(), values.out(), &n),
        "pareto fit");
  TailFitHandle fit;
  if (a.xmin > 0.0)
    check(id_fit_power_law_at(values.p, n, a.xmin, fit.out()),
          "pareto fit");
  else
    check(id_fit_power_law(values.p, n, fit.out()), "pareto fit");
  CStr text;
  check(id_tailfit_to_json(fit.ptr, text.out()), "pareto fit");
  json artifact = json::parse(text.str());
  json config{{"subcommand", "pareto fit"},
              {"input", a.input},
              {"xmin", a.xmin}};
  artifact["provenance"] = provenance(config, std::nullopt);
  write_output(a.out_path, dump_artifact(std::move(artifact)));
}

struct FitArgs {
  std::string input, grid_path, out_path = "-", plot_path;
  std::string body = "boltzmann";
  std::optional<unsigned long long> seed;
  int threads = 0;
};

json ccdf_table_from_csv(const std::string& csv) {
  json rows = json::array();
  std::istringstream in(csv);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (header) {
      header = false;
      continue;
    }
    json row = json::array();
    std::istringstream fields(line);
    std::string field;
    while (std::getline(fields, field, ',')) {
      const double v = std::strtod(field.c_str(), nullptr);
      row.push_back(v);  // nan becomes null in the dump, restored on emit
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void run_fit(const FitArgs& a) {
  if (!a.seed.has_value()) fail(2, "fit: --seed is required");
  const bool bose = a.body == "bose-einstein";
  if (bose && a.grid_path.empty())
    fail(2, "fit: --grid is required for the bose-einstein body");
  CDoubles values;
  long long n = 0;
  check(id_load_income_csv(a.input.c_str(), values.out(), &n), "fit");
  GridHandle grid;
  if (!a.grid_path.empty()) grid = load_grid(a.grid_path);
  TwoClassHandle fit;
  check(id_fit_two_class(values.p, n,
                         bose ? ID_BODY_BOSE_EINSTEIN : ID_BODY_BOLTZMANN,
                         grid.ptr, *a.seed, a.threads, fit.out()),
        "fit");
  CStr text;
  check(id_twoclass_to_json(fit.ptr, text.out()), "fit");
  CStr plot;
  check(id_twoclass_plot_csv(fit.ptr, plot.out()), "fit");
  json artifact = json::parse(text.str());
  artifact["ccdf"] = json{
      {"columns",
       json::array(
           {"income", "empirical_ccdf", "body_ccdf", "tail_ccdf"})},
      {"rows", ccdf_table_from_csv(plot.str())}};
  json config{{"subcommand", "fit"},   {"input", a.input},
              {"body", a.body},        {"grid", a.grid_path},
              {"threads", a.threads}};
  artifact["provenance"] = provenance(config, a.seed);
  write_output(a.out_path, dump_artifact(std::move(artifact)));
  if (!a.plot_path.empty())
    write_output(a.plot_path, csv_comments(config, a.seed) + plot.str());
}

struct EmitPlotArgs {
  std::string input, out_path = "-";
};

std::string format_cell(const json& v) {
  char buf[40];
  if (v.is_null()) return "nan";
  std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
  return buf;
}

void run_emit_plot(const EmitPlotArgs& a) {
  json j = json::parse(read_file(a.input), nullptr, false);
  if (j.is_discarded()) fail(2, "emit-plot: " + a.input + " is not JSON");
  std::string csv;
  if (j.contains("ccdf")) {
    // Two-class fit artifact: the plot table is embedded.
    csv = "income,empirical_ccdf,body_ccdf,tail_ccdf\n";
    for (const auto& row : j.at("ccdf").at("rows")) {
      std::string line;
      for (const auto& cell : row) {
        if (!line.empty()) line += ',';
        line += format_cell(cell);
      }
      csv += line + "\n";
    }
  } else if (j.contains("histogram")) {
    csv = "occupancy_id,count\n";
    std::size_t idx = 0;
    for (const auto& row : j.at("histogram")) {
      csv += std::to_string(idx++) + "," +
             std::to_string(row.at("count").get<unsigned long long>()) +
             "\n";
    }
  } else if (j.contains("occupancy") && j.contains("levels")) {
    csv = "epsilon,occupancy\n";
    const auto& levels = j.at("levels");
    const auto& counts = j.at("occupancy").at("counts");
    if (!levels.is_array() || !counts.is_array() ||
        levels.size() != counts.size())
      fail(2, "emit-plot: malformed solution artifact");
    for (std::size_t i = 0; i < levels.size(); ++i)
      csv += format_cell(levels[i]) + "," + format_cell(counts[i]) + "\n";
  } else {
    fail(2, "emit-plot: unrecognized artifact schema in " + a.input);
  }
  write_output(a.out_path, csv);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Statistical-mechanics model of income distribution: "
               "microstate counting, equilibrium occupancies, uniform "
               "ensembles, power-law tails, and two-class empirical fits"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(id_version()));

  CountArgs count_args;
  auto* count = app.add_subcommand(
      "count", "Microstate count of an occupancy (JSON artifact)");
  count->add_option("--grid", count_args.grid_path,
                    "Grid JSON: {\"levels\",\"degeneracies\"[,\"bin_width\"]}")
      ->required();
  count->add_option("--occupancy", count_args.occ_path,
                    "Occupancy JSON: {\"counts\": [...]}")
      ->required();
  count->add_option("--regime", count_args.regime, "Competition regime")
      ->check(CLI::IsMember({"perfect", "monopolistic"}));
  count->add_flag("--exact", count_args.exact,
                  "Also report the exact count (arbitrary precision)");
  count->add_flag("--stirling", count_args.stirling,
                  "Also report the coarse Stirling log-multiplicity");
  count->add_option("--out,-o", count_args.out_path,
                    "Output path ('-' = stdout)");

  SolveArgs solve_args;
  auto* solve = app.add_subcommand(
      "solve", "Maximum-entropy equilibrium occupancy (JSON artifact)");
  solve->add_option("--grid", solve_args.grid_path, "Grid JSON path")
      ->required();
  solve->add_option("--n", solve_args.n, "Number of consumers")->required();
  solve->add_option("--pi", solve_args.pi, "Total income")->required();
  solve->add_option("--regime", solve_args.regime, "Competition regime")
      ->check(CLI::IsMember({"perfect", "monopolistic"}));
  solve->add_option("--tol", solve_args.tol,
                    "Constraint tolerance override (relative)");
  solve->add_option("--out,-o", solve_args.out_path,
                    "Output path ('-' = stdout)");

  SampleArgs sample_args;
  auto* sample = app.add_subcommand(
      "sample",
      "Uniform ensemble: enumerate or sample allocations; histogram JSON "
      "or allocation CSV");
  sample->add_option("--grid", sample_args.grid_path,
                     "Grid JSON path (required for histogram output)");
  sample->add_option("--n", sample_args.n, "Number of consumers")
      ->required();
  sample->add_option("--pi", sample_args.pi, "Total income")->required();
  sample->add_option("--quantum", sample_args.quantum,
                     "Income quantum (default 1)");
  sample->add_option("--mode", sample_args.mode,
                     "labeled|unlabeled (enumerate), discrete|continuous "
                     "(sample)")
      ->check(
          CLI::IsMember({"labeled", "unlabeled", "discrete", "continuous"}));
  sample->add_option("--samples", sample_args.samples,
                     "Draw count (sampling modes)");
  sample->add_option("--seed", sample_args.seed,
                     "RNG seed (required for sampling modes)");
  sample->add_flag("--allocations", sample_args.allocations,
                   "Emit allocation rows (CSV) instead of a histogram");
  sample->add_option("--out,-o", sample_args.out_path,
                     "Output path ('-' = stdout)");

  OracleArgs oracle_args;
  auto* oracle = app.add_subcommand(
      "oracle",
      "Brute-force microstate enumeration (guarded to N <= 12, sum g <= "
      "12)");
  oracle->add_option("--grid", oracle_args.grid_path, "Grid JSON path")
      ->required();
  oracle->add_option("--occupancy", oracle_args.occ_path,
                     "Occupancy JSON path")
      ->required();
  oracle->add_option("--regime", oracle_args.regime, "Competition regime")
      ->check(CLI::IsMember({"perfect", "monopolistic"}));
  oracle->add_option("--out,-o", oracle_args.out_path,
                     "Output path ('-' = stdout)");

  auto* pareto = app.add_subcommand(
      "pareto", "Preferential-attachment tail: generate incomes or fit");
  pareto->require_subcommand(1);
  ParetoGenArgs pgen_args;
  auto* pgen = app.get_subcommand("pareto")->add_subcommand(
      "generate", "Generate incomes proportional to network degree (CSV)");
  pgen->add_option("--nodes", pgen_args.nodes, "Number of nodes")
      ->required();
  pgen->add_option("--m", pgen_args.m, "Edges attached per arriving node")
      ->required();
  pgen->add_option("--seed", pgen_args.seed, "RNG seed (required)");
  pgen->add_option("--scale", pgen_args.scale,
                   "Income per unit degree (default 1.0)");
  pgen->add_option("--out,-o", pgen_args.out_path,
                   "Output path ('-' = stdout)");
  ParetoFitArgs pfit_args;
  auto* pfit = app.get_subcommand("pareto")->add_subcommand(
      "fit", "Hill tail fit with KS threshold selection (JSON)");
  pfit->add_option("--input", pfit_args.input,
                   "Income CSV (header \"income\")")
      ->required();
  pfit->add_option("--xmin", pfit_args.xmin,
                   "Fix the tail threshold instead of scanning");
  pfit->add_option("--out,-o", pfit_args.out_path,
                   "Output path ('-' = stdout)");

  FitArgs fit_args;
  auto* fit = app.add_subcommand(
      "fit", "Two-class fit: body (boltzmann|bose-einstein) + Pareto tail");
  fit->add_option("--input", fit_args.input,
                  "Income CSV (header \"income\")")
      ->required();
  fit->add_option("--body", fit_args.body, "Body model")
      ->check(CLI::IsMember({"boltzmann", "bose-einstein"}));
  fit->add_option("--grid", fit_args.grid_path,
                  "Grid JSON (required for bose-einstein body)");
  fit->add_option("--seed", fit_args.seed,
                  "RNG seed for the bootstrap bands (required)");
  fit->add_option("--threads", fit_args.threads,
                  "Candidate-fit parallelism (default: "
                  "MAXENT_INCOME_THREADS or 1)");
  fit->add_option("--plot", fit_args.plot_path,
                  "Also write the plot-data CSV here");
  fit->add_option("--out,-o", fit_args.out_path,
                  "Output path ('-' = stdout)");

  EmitPlotArgs emit_args;
  auto* emit = app.add_subcommand(
      "emit-plot",
      "Flatten a result artifact to plot-ready CSV. Columns: solve "
      "artifact -> epsilon,occupancy; histogram artifact -> "
      "occupancy_id,count; fit artifact -> "
      "income,empirical_ccdf,body_ccdf,tail_ccdf");
  emit->add_option("--input", emit_args.input, "Artifact JSON path")
      ->required();
  emit->add_option("--out,-o", emit_args.out_path,
                   "Output path ('-' = stdout)");

  try {
    app.parse(argc, argv);
    if (count->parsed()) run_count(count_args);
    if (solve->parsed()) run_solve(solve_args);
    if (sample->parsed()) run_sample(sample_args);
    if (oracle->parsed()) run_oracle(oracle_args);
    if (pareto->parsed()) {
      if (pgen->parsed()) run_pareto_generate(pgen_args);
      if (pfit->parsed()) run_pareto_fit(pfit_args);
    }
    if (fit->parsed()) run_fit(fit_args);
    if (emit->parsed()) run_emit_plot(emit_args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
