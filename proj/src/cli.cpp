#include "moebius/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "moebius/csr_cost.hpp"
#include "moebius/hamiltonian.hpp"

namespace moebius::cli {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void config_error(const std::string& message) {
  throw CliError(kInvalidConfig, "error[config]: " + message);
}

[[noreturn]] void io_error(const std::string& message) {
  throw CliError(kIoError, "error[io]: " + message);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) io_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) io_error("failed reading " + path.string());
  return buffer.str();
}

void write_atomically(const fs::path& path, const std::string& contents) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) io_error("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) io_error("failed writing " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    io_error("cannot rename onto " + path.string());
  }
}

double parse_double(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::logic_error&) {
    config_error("cannot parse '" + text + "' as a number in " + what);
  }
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

struct ScenarioOverrides {
  std::optional<int> N, M, lambda;
  std::optional<double> a, k, beta, delta, p, w;

  void add_to(CLI::App& app) {
    app.add_option("--N", N, "Override worker count N");
    app.add_option("--M", M, "Override sector count M");
    app.add_option("--a", a, "Override constant contribution a");
    app.add_option("--k", k, "Override sensitivity scale k");
    app.add_option("--beta", beta, "Override sensitivity elasticity beta");
    app.add_option("--delta", delta, "Override alienation decay delta");
    app.add_option("--p", p, "Override output price p");
    app.add_option("--w", w, "Override wage w");
    app.add_option("--loyalty-exponent,--lambda", lambda, "Loyalty exponent lambda (2 or 4)");
  }

  CsrScenario apply(CsrScenario s) const {
    if (N) s.N = *N;
    if (M) s.M = *M;
    if (a) s.a = *a;
    if (k) s.k = *k;
    if (beta) s.beta = *beta;
    if (delta) s.delta = *delta;
    if (p) s.p = *p;
    if (w) s.w = *w;
    if (lambda) s.lambda = *lambda;
    return s;
  }
};

Topology parse_topology(const std::string& text) {
  return text == "cylinder" ? Topology::Cylinder : Topology::Moebius;
}

CsrScenario load_validated(const std::string& path, const ScenarioOverrides& overrides) {
  CsrScenario s = overrides.apply(read_scenario(path));
  try {
    validate(s);
  } catch (const std::domain_error& e) {
    config_error(e.what());
  }
  return s;
}

Eigen::MatrixXd to_matrix(const std::vector<std::vector<double>>& rows) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(rows.empty() ? 0 : rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return m;
}

std::string render(const LatticeOptions& o) {
  const Lattice lattice = o.topology == Topology::Moebius ? build_moebius(o.n, o.m)
                                                          : build_cylinder(o.n, o.m);
  return o.dot ? to_dot(lattice) : to_csv(lattice);
}

std::string render(const SpectrumOptions& o) {
  const Lattice lattice = o.topology == Topology::Moebius ? build_moebius(o.n, o.m)
                                                          : build_cylinder(o.n, o.m);
  const HoppingParams params = HoppingParams::uniform(lattice, o.t1, o.t2, 0.0, o.epsilon);
  const std::vector<double> grid = o.sweep.values();
  std::string text = "phi,total_energy\n";
  for (const FluxPoint& pt : flux_sweep(lattice, params, grid, o.electrons)) {
    text += format_number(pt.phi) + "," + format_number(pt.energy) + "\n";
  }
  return text;
}

std::string render(const CostOptions& o) {
  try {
    const ContributionMatrix a(to_matrix(read_csv_matrix(o.contributions)));
    const CostMatrix c(to_matrix(read_csv_matrix(o.costs)));
    const CostBreakdown b = total_hcsr(a, c, {o.t1, o.t2, o.delta});
    return "cost=" + format_number(b.cost) + "\nneighborhood=" + format_number(b.neighborhood) +
           "\nsector=" + format_number(b.sector) + "\nloyalty=" + format_number(b.loyalty) +
           "\ntotal=" + format_number(b.total) + "\n";
  } catch (const std::domain_error& e) {
    config_error(e.what());
  }
}

std::string optional_number(const std::optional<double>& x) {
  return x ? format_number(*x) : std::string("NA");
}

std::string render(const OptimizeOptions& o, const DecisionReport& r) {
  const CsrScenario& s = o.scenario;
  if (o.csv) {
    return fmt::format("case,c_star_paper,kind,c_opt,H_opt,feasible\n{},{},{},{},{},{}\n",
                       to_string(r.paper_case), optional_number(r.stationary),
                       to_string(r.stationary_kind), format_number(r.constrained_opt),
                       format_number(r.objective_at_opt), r.feasible ? "true" : "false");
  }
  std::string text = fmt::format(
      "scenario N={} M={} a={} k={} beta={} delta={} p={} w={} lambda={}\n", s.N, s.M,
      format_number(s.a), format_number(s.k), format_number(s.beta), format_number(s.delta),
      format_number(s.p), format_number(s.w), s.lambda);
  text += fmt::format("case={}\n", to_string(r.paper_case));
  text += fmt::format("c_star_paper={}\n", optional_number(r.stationary));
  text += fmt::format("kind={}\n", to_string(r.stationary_kind));
  text += fmt::format("budget={}\n", format_number(r.budget));
  text += fmt::format("c_opt={}\n", format_number(r.constrained_opt));
  text += fmt::format("H_opt={}\n", format_number(r.objective_at_opt));
  text += fmt::format("feasible={}\n", r.feasible ? "true" : "false");
  text += fmt::format("profit_baseline={}\n", format_number(profit_baseline(s)));
  if (o.oracle_points > 0) {
    const OracleResult oracle = optimize_oracle(s, o.oracle_points);
    text += fmt::format("oracle_points={}\noracle_c={}\noracle_H={}\n", o.oracle_points,
                        format_number(oracle.c), format_number(oracle.objective));
  }
  return text;
}

std::string render(const StaticsOptions& o) {
  std::string text = fmt::format("{},c_star\n", "param_value");
  for (double value : o.range.values()) {
    CsrScenario probe = o.scenario;
    switch (o.param) {
      case StaticsParam::Delta: probe.delta = value; break;
      case StaticsParam::Beta: probe.beta = value; break;
      case StaticsParam::Sectors: probe.M = static_cast<int>(std::lround(value)); break;
    }
    text += format_number(value) + "," + optional_number(stationary_closed_form(probe)) + "\n";
  }
  return text;
}

void emit(const RunConfig& config, std::ostream& out, const std::string& text) {
  if (config.out) {
    write_atomically(*config.out, text);
  } else {
    out << text;
    out.flush();
    if (!out) io_error("failed writing output stream");
  }
}

void check_statics_range(const StaticsOptions& o) {
  for (double value : o.range.values()) {
    CsrScenario probe = o.scenario;
    switch (o.param) {
      case StaticsParam::Delta: probe.delta = value; break;
      case StaticsParam::Beta: probe.beta = value; break;
      case StaticsParam::Sectors:
        if (value != std::round(value)) config_error("--range for M must be integral");
        probe.M = static_cast<int>(std::lround(value));
        break;
    }
    try {
      validate(probe);
    } catch (const std::domain_error& e) {
      config_error(fmt::format("--range value {}: {}", format_number(value), e.what()));
    }
  }
}

}  // namespace

std::vector<double> Range::values() const {
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) {
    grid[i] = start + static_cast<double>(i) * step;
  }
  return grid;
}

Range parse_range(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  for (std::string piece; std::getline(in, piece, ':');) parts.push_back(piece);
  if (parts.size() != 3) config_error("range '" + text + "' is not start:stop:step");
  Range r{parse_double(parts[0], "range"), parse_double(parts[1], "range"),
          parse_double(parts[2], "range")};
  if (!std::isfinite(r.start) || !std::isfinite(r.stop) || !(r.step > 0.0) ||
      !std::isfinite(r.step)) {
    config_error("range '" + text + "' needs finite bounds and a positive step");
  }
  if (r.stop < r.start) config_error("range '" + text + "' has stop < start");
  if ((r.stop - r.start) / r.step > 1e6) config_error("range '" + text + "' has too many points");
  return r;
}

std::string format_number(double value) {
  return fmt::format("{:.12g}", value + 0.0);
}

std::vector<std::vector<double>> read_csv_matrix(const fs::path& path) {
  std::stringstream in(read_file(path));
  std::vector<std::vector<double>> rows;
  for (std::string line; std::getline(in, line);) {
    if (trim(line).empty()) continue;
    std::vector<double> row;
    std::stringstream cells(line);
    for (std::string cell; std::getline(cells, cell, ',');) {
      row.push_back(parse_double(trim(cell), path.string()));
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      config_error(path.string() + ": ragged row " + std::to_string(rows.size() + 1));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) config_error(path.string() + ": no data rows");
  return rows;
}

CsrScenario read_scenario(const fs::path& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    config_error(path.string() + ": " + e.what());
  }
  if (!doc.is_object()) config_error(path.string() + ": scenario must be a JSON object");

  static const std::vector<std::string> required{"N", "M", "a", "k", "beta", "delta", "p", "w"};
  for (const auto& [key, value] : doc.items()) {
    if (key != "lambda" && std::find(required.begin(), required.end(), key) == required.end()) {
      config_error(path.string() + ": unknown key '" + key + "'");
    }
    if (!value.is_number()) config_error(path.string() + ": '" + key + "' must be a number");
  }
  for (const auto& key : required) {
    if (!doc.contains(key)) config_error(path.string() + ": missing key '" + key + "'");
  }
  for (const char* key : {"N", "M", "lambda"}) {
    if (doc.contains(key) && !doc[key].is_number_integer()) {
      config_error(path.string() + ": '" + key + "' must be an integer");
    }
  }

  CsrScenario s;
  s.N = doc["N"].get<int>();
  s.M = doc["M"].get<int>();
  s.a = doc["a"].get<double>();
  s.k = doc["k"].get<double>();
  s.beta = doc["beta"].get<double>();
  s.delta = doc["delta"].get<double>();
  s.p = doc["p"].get<double>();
  s.w = doc["w"].get<double>();
  s.lambda = doc.value("lambda", 4);
  return s;
}

std::string scenario_to_json(const CsrScenario& s) {
  nlohmann::ordered_json doc;
  doc["N"] = s.N;
  doc["M"] = s.M;
  doc["a"] = s.a;
  doc["k"] = s.k;
  doc["beta"] = s.beta;
  doc["delta"] = s.delta;
  doc["p"] = s.p;
  doc["w"] = s.w;
  doc["lambda"] = s.lambda;
  return doc.dump(2) + "\n";
}

RunConfig parse_args(std::span<const std::string> args) {
  CLI::App app{"Moebius-strip lattice spectra and CSR investment optimisation", "moebius-csr"};
  app.require_subcommand(1);

  std::string out_path;
  const auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", out_path, "Write output to FILE instead of stdout");
  };

  LatticeOptions lattice_opts;
  std::string lattice_topology = "moebius";
  std::string lattice_format = "csv";
  auto* lattice = app.add_subcommand("lattice", "Export the lattice edge list");
  lattice->add_option("--n", lattice_opts.n, "Half ring length N")->required()->check(CLI::PositiveNumber);
  lattice->add_option("--m", lattice_opts.m, "Wire count M")->required()->check(CLI::PositiveNumber);
  lattice->add_option("--topology", lattice_topology, "moebius or cylinder")
      ->check(CLI::IsMember({"moebius", "cylinder"}));
  lattice->add_option("--format", lattice_format, "csv or dot")->check(CLI::IsMember({"csv", "dot"}));
  add_out(lattice);

  SpectrumOptions spectrum_opts;
  std::string spectrum_topology = "moebius";
  std::string sweep_text;
  std::optional<long long> electrons;
  auto* spectrum = app.add_subcommand("spectrum", "Filled-state energy versus flux");
  spectrum->add_option("--n", spectrum_opts.n, "Half ring length N")->required()->check(CLI::PositiveNumber);
  spectrum->add_option("--m", spectrum_opts.m, "Wire count M")->required()->check(CLI::PositiveNumber);
  spectrum->add_option("--t1", spectrum_opts.t1, "Longitudinal hopping");
  spectrum->add_option("--t2", spectrum_opts.t2, "Transverse and twist hopping");
  spectrum->add_option("--epsilon", spectrum_opts.epsilon, "Uniform site energy");
  spectrum->add_option("--electrons", electrons, "Filled levels (default N*M, half filling)");
  spectrum->add_option("--flux-sweep", sweep_text, "Flux grid start:stop:step")->required();
  spectrum->add_option("--topology", spectrum_topology, "moebius or cylinder")
      ->check(CLI::IsMember({"moebius", "cylinder"}));
  add_out(spectrum);

  CostOptions cost_opts;
  std::string contributions_path, costs_path;
  auto* cost = app.add_subcommand("cost", "Evaluate the CSR cost function on matrices");
  cost->add_option("--contributions", contributions_path, "2N x M contributions CSV")->required();
  cost->add_option("--costs", costs_path, "2N x M costs CSV")->required();
  cost->add_option("--t1", cost_opts.t1, "Neighbourhood sensitivity");
  cost->add_option("--t2", cost_opts.t2, "Sector and loyalty sensitivity");
  cost->add_option("--delta", cost_opts.delta, "Alienation decay in (0,1)");
  add_out(cost);

  OptimizeOptions optimize_opts;
  std::string optimize_scenario, dump_path;
  std::size_t oracle_points = 0;
  ScenarioOverrides optimize_overrides;
  auto* optimize = app.add_subcommand("optimize", "Constrained CSR spend for a scenario");
  optimize->add_option("--scenario", optimize_scenario, "Scenario JSON")->required();
  optimize->add_option("--oracle-points", oracle_points, "Also run the grid oracle with K points");
  optimize->add_flag("--csv", optimize_opts.csv, "Emit one CSV row instead of the report");
  optimize->add_option("--dump-config", dump_path, "Write the resolved scenario JSON to FILE");
  optimize_overrides.add_to(*optimize);
  add_out(optimize);

  StaticsOptions statics_opts;
  std::string statics_scenario, statics_param, range_text;
  ScenarioOverrides statics_overrides;
  auto* statics = app.add_subcommand("statics", "Closed-form stationary spend over a parameter range");
  statics->add_option("--scenario", statics_scenario, "Scenario JSON")->required();
  statics->add_option("--param", statics_param, "delta, beta or M")
      ->required()
      ->check(CLI::IsMember({"delta", "beta", "M"}));
  statics->add_option("--range", range_text, "start:stop:step")->required();
  statics_overrides.add_to(*statics);
  add_out(statics);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp& e) {
    std::ostringstream help;
    app.exit(e, help, help);
    throw CliError(kOk, help.str());
  } catch (const CLI::ParseError& e) {
    throw CliError(kInvalidConfig, "error[usage]: " + std::string(e.what()));
  }

  RunConfig config;
  if (!out_path.empty()) config.out = out_path;

  if (lattice->parsed()) {
    lattice_opts.topology = parse_topology(lattice_topology);
    lattice_opts.dot = lattice_format == "dot";
    config.command = lattice_opts;
  } else if (spectrum->parsed()) {
    spectrum_opts.topology = parse_topology(spectrum_topology);
    spectrum_opts.sweep = parse_range(sweep_text);
    const long long sites = 2LL * spectrum_opts.n * spectrum_opts.m;
    const long long filled = electrons.value_or(static_cast<long long>(spectrum_opts.n) * spectrum_opts.m);
    if (filled < 0 || filled > sites) {
      config_error("--electrons must lie in [0, " + std::to_string(sites) + "]");
    }
    spectrum_opts.electrons = static_cast<std::size_t>(filled);
    if (!std::isfinite(spectrum_opts.t1) || !std::isfinite(spectrum_opts.t2) ||
        !std::isfinite(spectrum_opts.epsilon)) {
      config_error("--t1, --t2 and --epsilon must be finite");
    }
    config.command = spectrum_opts;
  } else if (cost->parsed()) {
    cost_opts.contributions = contributions_path;
    cost_opts.costs = costs_path;
    try {
      validate(CsrParams{cost_opts.t1, cost_opts.t2, cost_opts.delta});
    } catch (const std::domain_error& e) {
      config_error(e.what());
    }
    config.command = cost_opts;
  } else if (optimize->parsed()) {
    optimize_opts.scenario = load_validated(optimize_scenario, optimize_overrides);
    if (optimize->count("--oracle-points") > 0 && oracle_points < 3) {
      config_error("--oracle-points must be >= 3");
    }
    optimize_opts.oracle_points = oracle_points;
    if (!dump_path.empty()) optimize_opts.dump_config = dump_path;
    config.command = optimize_opts;
  } else {
    statics_opts.scenario = load_validated(statics_scenario, statics_overrides);
    statics_opts.param = statics_param == "delta" ? StaticsParam::Delta
                         : statics_param == "beta" ? StaticsParam::Beta
                                                   : StaticsParam::Sectors;
    statics_opts.range = parse_range(range_text);
    check_statics_range(statics_opts);
    config.command = statics_opts;
  }
  return config;
}

int run(const RunConfig& config, std::ostream& out) {
  if (const auto* o = std::get_if<OptimizeOptions>(&config.command)) {
    if (o->dump_config) write_atomically(*o->dump_config, scenario_to_json(o->scenario));
    const DecisionReport report = optimize_constrained(o->scenario);
    emit(config, out, render(*o, report));
    if (!report.feasible) {
      throw CliError(kInfeasibleBudget,
                     "error[infeasible]: p < w leaves no CSR budget (p - w = " +
                         format_number(report.budget) + ")");
    }
    return kOk;
  }
  const std::string text = std::visit(
      [](const auto& o) -> std::string {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, OptimizeOptions>) {
          return {};
        } else {
          return render(o);
        }
      },
      config.command);
  emit(config, out, text);
  return kOk;
}

int main_entry(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  try {
    return run(parse_args(args), out);
  } catch (const CliError& e) {
    if (e.code() == kOk) {
      out << e.what();
    } else {
      err << e.what() << '\n';
    }
    return e.code();
  } catch (const std::domain_error& e) {
    err << "error[config]: " << e.what() << '\n';
    return kInvalidConfig;
  } catch (const std::exception& e) {
    err << "error[runtime]: " << e.what() << '\n';
    return kIoError;
  }
}

}  // namespace moebius::cli
