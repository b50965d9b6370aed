// Command-line front end: quantization, verification suites, and
// matrix/field export for the cylinder coherent-state quantizer.
//
// Exit codes: 0 all checks pass, 2 configuration/usage error,
// 3 numeric failure (a tolerance was exceeded or quadrature misconfigured).

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cylq/cylq.hpp"

using json = nlohmann::ordered_json;
using namespace cylq;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct RunConfig {
  double epsilon = 1.0;
  std::string window = "auto";
  double tol = 1e-12;
  int gh_nodes = 48;
  std::string beta_points = "auto";
  double J_max = 3.0;
  std::string output_path;
  std::string format = "json";
};

void load_config_file(const std::string& path, RunConfig& config) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
  json j = json::parse(in);
  if (j.contains("epsilon")) config.epsilon = j["epsilon"].get<double>();
  if (j.contains("window")) config.window = j["window"].is_number()
                                                ? std::to_string(j["window"].get<int>())
                                                : j["window"].get<std::string>();
  if (j.contains("tol")) config.tol = j["tol"].get<double>();
  if (j.contains("gh_nodes")) config.gh_nodes = j["gh_nodes"].get<int>();
  if (j.contains("beta_points"))
    config.beta_points = j["beta_points"].is_number()
                             ? std::to_string(j["beta_points"].get<int>())
                             : j["beta_points"].get<std::string>();
  if (j.contains("J_max")) config.J_max = j["J_max"].get<double>();
  if (j.contains("output_path")) config.output_path = j["output_path"].get<std::string>();
  if (j.contains("format")) config.format = j["format"].get<std::string>();
}

BasisWindow resolve_window(const RunConfig& config, const Epsilon& eps) {
  if (config.window == "auto") return choose_window(eps, config.J_max, config.tol);
  return BasisWindow(std::stoi(config.window));
}

QuadratureConfig resolve_quadrature(const RunConfig& config) {
  QuadratureConfig quad;
  quad.gh_nodes = config.gh_nodes;
  quad.beta_points = (config.beta_points == "auto") ? 0 : std::stoi(config.beta_points);
  quad.J_max = config.J_max;
  quad.tol = config.tol;
  return quad;
}

// ---- observable descriptions -------------------------------------------
//
//   one | J | J^m (m <= 4) | beta | laurent:(p,q,re,im)[;(p,q,re,im)...]
//   expcos:a,k[,shift]   for  e^{a J} cos(k beta) + shift

struct ParsedObservable {
  std::string description;
  std::optional<ObservableSpec> oracle_spec;          // quadrature route
  std::optional<OperatorMatrix> closed_form;          // analytic route
  int interior_margin = 0;  // truncation margin of the closed-form route
};

int laurent_margin(const LaurentCoefficients& c) {
  int margin = 0;
  for (const auto& [key, coeff] : c.entries())
    margin = std::max({margin, std::abs(key.first), std::abs(key.second),
                       std::abs(key.first - key.second)});
  return margin;
}

LaurentCoefficients parse_laurent_terms(const std::string& body) {
  LaurentCoefficients c;
  std::stringstream stream(body);
  std::string term;
  while (std::getline(stream, term, ';')) {
    int p = 0, q = 0;
    double re = 0.0, im = 0.0;
    char l = 0, c1 = 0, c2 = 0, c3 = 0, r = 0;
    std::stringstream t(term);
    t >> l >> p >> c1 >> q >> c2 >> re >> c3 >> im >> r;
    if (!t || l != '(' || c1 != ',' || c2 != ',' || c3 != ',' || r != ')')
      throw CLI::ValidationError("--obs", "bad laurent term '" + term + "'");
    c.set(p, q, {re, im});
  }
  if (c.empty()) throw CLI::ValidationError("--obs", "empty laurent observable");
  return c;
}

/// Fourier modes of the sawtooth beta on [0, 2pi): c_0 = pi, c_k = i/k.
FourierObservable sawtooth_fourier() {
  FourierObservable obs;
  obs.modes[0] = [](double) { return complex{pi, 0.0}; };
  for (int k = -64; k <= 64; ++k) {
    if (k == 0) continue;
    obs.modes[k] = [k](double) { return complex{0.0, 1.0 / k}; };
  }
  obs.growth_bound = 0.0;
  return obs;
}

ParsedObservable parse_observable(const std::string& text, const Epsilon& eps,
                                  const BasisWindow& window) {
  ParsedObservable out;
  out.description = text;
  if (text == "one" || text == "1") {
    LaurentCoefficients c{{{0, 0}, complex{1.0, 0.0}}};
    out.oracle_spec = ObservableSpec(c);
    out.closed_form = quantize_laurent(c, eps, window);
    return out;
  }
  if (text == "J" || text.rfind("J^", 0) == 0) {
    const int power = (text == "J") ? 1 : std::stoi(text.substr(2));
    if (power < 0 || power > 4)
      throw CLI::ValidationError("--obs", "J^m supported for 0 <= m <= 4");
    PointwiseObservable pw;
    pw.f = [power](double, double momentum) {
      return complex{std::pow(momentum, power), 0.0};
    };
    pw.bandwidth = 0;
    out.oracle_spec = ObservableSpec(pw);
    out.closed_form = op_J_power(power, eps, window);
    return out;
  }
  if (text == "beta") {
    out.oracle_spec = ObservableSpec(sawtooth_fourier());
    out.closed_form = op_beta(eps, window);
    return out;
  }
  if (text.rfind("laurent:", 0) == 0) {
    const LaurentCoefficients c = parse_laurent_terms(text.substr(8));
    out.oracle_spec = ObservableSpec(c);
    out.closed_form = quantize_laurent(c, eps, window);
    out.interior_margin = laurent_margin(c);
    if (window.n_max() <= out.interior_margin)
      throw CLI::ValidationError("--window", "window too small for laurent support");
    return out;
  }
  if (text.rfind("expcos:", 0) == 0) {
    std::stringstream t(text.substr(7));
    double a = 0.0, shift = 0.0;
    int k = 0;
    char c1 = 0, c2 = 0;
    t >> a >> c1 >> k;
    if (!t || c1 != ',') throw CLI::ValidationError("--obs", "expcos:a,k[,shift]");
    if (t >> c2 >> shift; c2 != 0 && c2 != ',')
      throw CLI::ValidationError("--obs", "expcos:a,k[,shift]");
    FourierObservable obs;
    obs.modes[k] = [a](double momentum) { return complex{0.5 * std::exp(a * momentum), 0.0}; };
    obs.modes[-k] = obs.modes[k];
    if (shift != 0.0) obs.modes[0] = [shift](double) { return complex{shift, 0.0}; };
    obs.growth_bound = std::abs(a);
    out.oracle_spec = ObservableSpec(obs);
    return out;
  }
  throw CLI::ValidationError("--obs", "unknown observable '" + text + "'");
}

// ---- output ------------------------------------------------------------

json matrix_to_json(const OperatorMatrix& m) {
  json rows = json::array();
  const int n_max = m.window().n_max();
  for (int row = -n_max; row <= n_max; ++row) {
    json row_json = json::array();
    for (int col = -n_max; col <= n_max; ++col) {
      const complex v = m.at(row, col);
      row_json.push_back({v.real(), v.imag()});
    }
    rows.push_back(std::move(row_json));
  }
  return json{{"epsilon", m.eps().value()}, {"n_max", n_max}, {"rows", std::move(rows)}};
}

std::string matrix_to_csv(const OperatorMatrix& m) {
  std::ostringstream out;
  out.precision(17);
  out << "m,n,re,im\n";
  const int n_max = m.window().n_max();
  for (int row = -n_max; row <= n_max; ++row)
    for (int col = -n_max; col <= n_max; ++col) {
      const complex v = m.at(row, col);
      if (v == complex{0.0, 0.0}) continue;  // structural zeros omitted
      out << row << ',' << col << ',' << v.real() << ',' << v.imag() << '\n';
    }
  return out.str();
}

void write_output(const RunConfig& config, const std::string& payload) {
  if (config.output_path.empty()) {
    std::cout << payload;
    if (!payload.empty() && payload.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(config.output_path, std::ios::binary);
  if (!out) throw CLI::ValidationError("--output", "cannot write " + config.output_path);
  out << payload;
}

struct CheckList {
  json entries = json::array();
  bool all_pass = true;

  void add(const std::string& name, double value, double tolerance) {
    const bool pass = value < tolerance;
    all_pass = all_pass && pass;
    entries.push_back(
        {{"name", name}, {"value", value}, {"tolerance", tolerance}, {"pass", pass}});
  }
  void add_note(const std::string& name, const json& detail) {
    json entry = {{"name", name}};
    entry.update(detail);
    entries.push_back(std::move(entry));
  }
};

// ---- subcommands -------------------------------------------------------

int run_quantize(const RunConfig& config, const std::string& obs_text) {
  const Epsilon eps(config.epsilon);
  const BasisWindow window = resolve_window(config, eps);
  const QuadratureConfig quad = resolve_quadrature(config);
  const ParsedObservable parsed = parse_observable(obs_text, eps, window);

  std::optional<OperatorMatrix> oracle;
  if (parsed.oracle_spec) oracle = quantize(*parsed.oracle_spec, eps, window, quad);

  const OperatorMatrix& result = parsed.closed_form ? *parsed.closed_form : *oracle;
  if (parsed.closed_form && oracle) {
    const double defect =
        oracle->relative_defect(*parsed.closed_form, parsed.interior_margin);
    std::cerr << "oracle-vs-closed-form max relative defect (interior margin "
              << parsed.interior_margin << "): " << defect << " (tolerance " << 1e-9
              << ")\n";
    if (!(defect < 1e-9)) {
      std::cerr << "FAILED invariant: closed form must match the quadrature oracle\n";
      return kExitNumeric;
    }
  }
  write_output(config, config.format == "csv" ? matrix_to_csv(result)
                                              : matrix_to_json(result).dump(2));
  return kExitOk;
}

int run_verify(const RunConfig& config, const std::string& suite, int p_lo, int p_hi,
               int q_lo, int q_hi, const std::string& obs_text) {
  const Epsilon eps(config.epsilon);
  const BasisWindow window = resolve_window(config, eps);
  const QuadratureConfig quad = resolve_quadrature(config);
  CheckList checks;
  json report = {{"suite", suite}, {"epsilon", config.epsilon}, {"n_max", window.n_max()}};

  if (suite == "ordering") {
    for (int p = p_lo; p <= p_hi; ++p)
      for (int q = q_lo; q <= q_hi; ++q) {
        const OrderingReport r = verify_ordering(p, q, eps, window);
        const std::string name =
            "ordering p=" + std::to_string(p) + " q=" + std::to_string(q);
        checks.add(name + " interior", r.interior_defect, 1e-12);
        checks.add_note(name + " edge",
                        {{"value", r.edge_defect}, {"informative", true}});
      }
  } else if (suite == "resolution") {
    const ResolutionReport r = resolution_check(eps, window, quad);
    checks.add("resolution defect", r.defect, 1e-10);
    checks.add_note("neglected |J|>J_max mass",
                    {{"value", r.neglected_mass}, {"informative", true}});
  } else if (suite == "orthonormality") {
    const GramReport r = gram_by_quadrature(window, eps, quad);
    checks.add("gram defect", r.defect, 1e-10);
    checks.add_note("aliasing", {{"flagged", r.aliased}});
    if (r.aliased) checks.all_pass = false;
  } else if (suite == "adjoint") {
    for (int p = std::max(p_lo, -2 * window.n_max());
         p <= std::min(p_hi, 2 * window.n_max()); ++p) {
      const double defect =
          (op_A_star_p(p, eps, window).entries() -
           op_A_q(p, eps, window).adjoint().entries())
              .cwiseAbs()
              .maxCoeff();
      checks.add("adjoint p=" + std::to_string(p), defect,
                 std::numeric_limits<double>::min());  // entrywise exact
    }
  } else if (suite == "inverse") {
    checks.add("inverse relation interior defect", inverse_relation_check(eps, window),
               1e-12);
  } else if (suite == "oracle") {
    const std::vector<std::string> targets =
        obs_text.empty() ? std::vector<std::string>{"one", "J", "J^2", "beta",
                                                    "laurent:(1,1,1,0)"}
                         : std::vector<std::string>{obs_text};
    for (const std::string& target : targets) {
      const ParsedObservable parsed = parse_observable(target, eps, window);
      if (!parsed.closed_form || !parsed.oracle_spec)
        throw CLI::ValidationError("--obs", "no closed form for '" + target + "'");
      const OperatorMatrix oracle = quantize(*parsed.oracle_spec, eps, window, quad);
      checks.add("oracle vs closed form: " + target,
                 oracle.relative_defect(*parsed.closed_form, parsed.interior_margin),
                 1e-9);
    }
    // Selection-rule adjudication: the oracle puts f = A*^p A^q on the
    // band m - n = q - p; the alternative p + q rule disagrees whenever
    // p != 0 and carries no oracle weight there.
    for (int p : {1, 2}) {
      for (int q : {-1, 1}) {
        LaurentCoefficients c;
        c.set(p, q, {1.0, 0.0});
        const OperatorMatrix oracle = quantize(ObservableSpec(c), eps, window, quad);
        double on_band = 0.0, off_p_plus_q = 0.0;
        const int n_max = window.n_max();
        for (int row = -n_max; row <= n_max; ++row)
          for (int col = -n_max; col <= n_max; ++col) {
            if (row - col == q - p) on_band = std::max(on_band, std::abs(oracle.at(row, col)));
            if (row - col == p + q) off_p_plus_q = std::max(off_p_plus_q, std::abs(oracle.at(row, col)));
          }
        const std::string name =
            "selection rule p=" + std::to_string(p) + " q=" + std::to_string(q);
        checks.add_note(name, {{"band q-p max", on_band},
                               {"band p+q max", off_p_plus_q},
                               {"q-p rule holds", on_band > 0.0 && off_p_plus_q == 0.0}});
        if (!(on_band > 0.0 && off_p_plus_q == 0.0)) checks.all_pass = false;
      }
    }
  } else {
    throw CLI::ValidationError("suite", "unknown suite '" + suite + "'");
  }

  report["checks"] = checks.entries;
  report["pass"] = checks.all_pass;
  write_output(config, report.dump(2) + "\n");
  return checks.all_pass ? kExitOk : kExitNumeric;
}

int run_symbol(const RunConfig& config, const std::string& obs_text, int beta_count,
               int j_count, double j_span) {
  const Epsilon eps(config.epsilon);
  const BasisWindow window = resolve_window(config, eps);
  const QuadratureConfig quad = resolve_quadrature(config);
  if (j_span > config.J_max)
    throw CLI::ValidationError("--grid-j-span", "grid exceeds J_max validity region");
  const ParsedObservable parsed = parse_observable(obs_text, eps, window);
  const OperatorMatrix op = parsed.closed_form
                                ? *parsed.closed_form
                                : quantize(*parsed.oracle_spec, eps, window, quad);
  const SymbolField field =
      lower_symbol(op, make_grid(beta_count, j_count, j_span), obs_text);

  if (config.format == "csv") {
    std::ostringstream out;
    out.precision(17);
    out << "beta,J,re,im\n";
    for (std::size_t i = 0; i < field.points.size(); ++i)
      out << field.points[i].beta() << ',' << field.points[i].momentum() << ','
          << field.values[i].real() << ',' << field.values[i].imag() << '\n';
    write_output(config, out.str());
  } else {
    json rows = json::array();
    for (std::size_t i = 0; i < field.points.size(); ++i)
      rows.push_back({field.points[i].beta(), field.points[i].momentum(),
                      field.values[i].real(), field.values[i].imag()});
    write_output(config, json{{"epsilon", field.eps_value},
                              {"source", field.source},
                              {"rows", std::move(rows)}}
                             .dump(2) +
                         "\n");
  }
  return kExitOk;
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto sep = text.find("..", 1);
  if (sep == std::string::npos)
    throw CLI::ValidationError("range", "expected lo..hi, got '" + text + "'");
  return {std::stoi(text.substr(0, sep)), std::stoi(text.substr(sep + 2))};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coherent-state quantization on the cylinder phase space"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig config;
  std::string config_file;
  app.add_option("--config", config_file, "JSON config file (flags override)");
  app.add_option("--epsilon", config.epsilon, "regularization parameter eps > 0");
  app.add_option("--window", config.window, "basis half-width N, or 'auto'");
  app.add_option("--tol", config.tol, "window/tail tolerance");
  app.add_option("--gh-nodes", config.gh_nodes, "Gauss-Hermite node count");
  app.add_option("--beta-points", config.beta_points, "beta grid size, or 'auto'");
  app.add_option("--j-max", config.J_max, "J domain half-width for quadrature reporting");
  app.add_option("--output", config.output_path, "output file (default stdout)");
  app.add_option("--format", config.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  std::string obs_text;
  auto* quantize_cmd = app.add_subcommand("quantize", "quantize an observable");
  quantize_cmd->add_option("--obs", obs_text, "observable description")->required();

  std::string suite, p_range = "-3..3", q_range = "-3..3", verify_obs;
  auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
  verify_cmd
      ->add_option("suite", suite,
                   "ordering|resolution|orthonormality|adjoint|inverse|oracle")
      ->required();
  verify_cmd->add_option("--p-range", p_range, "p range lo..hi");
  verify_cmd->add_option("--q-range", q_range, "q range lo..hi");
  verify_cmd->add_option("--obs", verify_obs, "observable for the oracle suite");

  std::string symbol_obs;
  int grid_beta = 16, grid_j = 16;
  double grid_j_span = 2.0;
  auto* symbol_cmd = app.add_subcommand("symbol", "lower-symbol field on a grid");
  symbol_cmd->add_option("--obs", symbol_obs, "operator description")->required();
  symbol_cmd->add_option("--grid-beta", grid_beta, "beta grid count");
  symbol_cmd->add_option("--grid-j", grid_j, "J grid count");
  symbol_cmd->add_option("--grid-j-span", grid_j_span, "J grid half-width");

  try {
    app.parse(argc, argv);
    if (!config_file.empty()) {
      RunConfig from_file;
      load_config_file(config_file, from_file);
      // flags already parsed into `config` win over file values only when
      // given; simplest contract: file first, then re-parse flags on top
      load_config_file(config_file, config);
      app.clear();
      app.parse(argc, argv);
    }
    const Epsilon eps_probe(config.epsilon);  // validates early
    if (quantize_cmd->parsed()) return run_quantize(config, obs_text);
    if (verify_cmd->parsed()) {
      const auto [p_lo, p_hi] = parse_range(p_range);
      const auto [q_lo, q_hi] = parse_range(q_range);
      return run_verify(config, suite, p_lo, p_hi, q_lo, q_hi, verify_obs);
    }
    if (symbol_cmd->parsed()) return run_symbol(config, symbol_obs, grid_beta, grid_j, grid_j_span);
    return kExitConfig;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  }
}
