// Verification CLI: runs the numerical check suites and emits a
// machine-readable report.
//
//   verify <suite> [--config PATH] [--nodes N] [--max-order L]
//          [--tol NAME=VALUE]... [--format json|table] [--out PATH] [--seed S]
//
// Exit status: 0 all checks pass, 1 at least one check fails or does not
// converge, 2 usage/config error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "genop/errors.hpp"
#include "genop/suites.hpp"
#include "genop/version.hpp"

namespace {

void strip(std::string& s) {
  const char* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  auto e = s.find_last_not_of(ws);
  s = (b == std::string::npos) ? std::string() : s.substr(b, e - b + 1);
}

bool set_grid_key(genop::GridConfig& g, const std::string& key, int value) {
  if (key == "series_t_phases") g.series_t_phases = value;
  else if (key == "kernel_tuples") g.kernel_tuples = value;
  else if (key == "covariance_elements") g.covariance_elements = value;
  else if (key == "covariance_probes") g.covariance_probes = value;
  else if (key == "duality_pairs") g.duality_pairs = value;
  else if (key == "desitter_points") g.desitter_points = value;
  else if (key == "poisson_probes") g.poisson_probes = value;
  else if (key == "fourier_sections") g.fourier_sections = value;
  else if (key == "fourier_probes") g.fourier_probes = value;
  else if (key == "embedding_probes") g.embedding_probes = value;
  else if (key == "embedding_max_ell") g.embedding_max_ell = value;
  else return false;
  return true;
}

// Config file: one `key = value` per line, '#' comments. Keys: nodes,
// max_order, seed, format, out, tol.<check>, grid.<name>.
void load_config_file(const std::string& path, genop::SuiteConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw genop::ParameterError("cannot open config file: " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    strip(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw genop::ParameterError("config line " + std::to_string(lineno) +
                                  ": expected key = value");
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    strip(key);
    strip(value);
    try {
      if (key == "nodes") cfg.nodes = std::stoi(value);
      else if (key == "max_order") cfg.max_order = std::stoi(value);
      else if (key == "seed") cfg.seed = std::stoull(value);
      else if (key == "format") cfg.format = value;
      else if (key == "out") cfg.output_path = value;
      else if (key.rfind("tol.", 0) == 0) cfg.tolerances[key.substr(4)] = std::stod(value);
      else if (key.rfind("grid.", 0) == 0) {
        if (!set_grid_key(cfg.grids, key.substr(5), std::stoi(value)))
          throw genop::ParameterError("unknown grid key: " + key);
      } else {
        throw genop::ParameterError("unknown config key: " + key);
      }
    } catch (const std::invalid_argument&) {
      throw genop::ParameterError("config line " + std::to_string(lineno) +
                                  ": bad value for " + key);
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical verification suites for the bracket calculus library"};
  app.set_version_flag("--version", genop::kVersion);

  std::string suite;
  std::string config_path;
  std::vector<std::string> tol_args;
  genop::SuiteConfig cfg;
  int nodes = -1;
  int max_order = -1;
  std::string format;
  std::string out_path;
  long long seed = -1;

  app.add_option("suite", suite, "suite to run (or 'all')")->required();
  app.add_option("--config", config_path, "config file (key = value lines)");
  app.add_option("--nodes", nodes, "contour nodes, power of two in [64, 8192]");
  app.add_option("--max-order", max_order, "bracket truncation order");
  app.add_option("--tol", tol_args, "tolerance override NAME=VALUE (repeatable)");
  app.add_option("--format", format, "report format: json or table");
  app.add_option("--out", out_path, "write the report to this path");
  app.add_option("--seed", seed, "pseudorandom seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (!config_path.empty()) load_config_file(config_path, cfg);
    // Command-line flags win over the config file.
    if (nodes > 0) cfg.nodes = nodes;
    if (max_order >= 0) cfg.max_order = max_order;
    if (!format.empty()) cfg.format = format;
    if (!out_path.empty()) cfg.output_path = out_path;
    if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
    for (const std::string& t : tol_args) {
      auto eq = t.find('=');
      if (eq == std::string::npos)
        throw genop::ParameterError("--tol expects NAME=VALUE, got: " + t);
      cfg.tolerances[t.substr(0, eq)] = std::stod(t.substr(eq + 1));
    }
    genop::validate_config(cfg);

    std::vector<genop::CheckReport> reports = genop::run_suite(suite, cfg);
    std::string doc = genop::emit_report(reports, cfg, cfg.format);
    if (cfg.output_path.empty()) {
      std::cout << doc;
    } else {
      std::ofstream out(cfg.output_path, std::ios::binary);
      if (!out) throw genop::Error("cannot write report to " + cfg.output_path);
      out << doc;
    }
    return genop::all_passed(reports) ? 0 : 1;
  } catch (const genop::ParameterError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
