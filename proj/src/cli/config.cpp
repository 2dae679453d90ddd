#include "cli/config.hpp"

#include <CLI11.hpp>
#include <sstream>

#include "accel/errors.hpp"

namespace accel::cli {

std::vector<double> parse_numbers(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("not a number: '" + item + "'");
    }
  }
  return out;
}

ModelParams RunConfig::model() const {
  bool coup = alpha || beta, freq = omega1 || omega2;
  if (coup == freq) throw ConfigError("give either --alpha/--beta or --omega1/--omega2");
  double g = gamma.value_or(1.0);
  try {
    if (coup) {
      if (!alpha || !beta) throw ConfigError("--alpha and --beta go together");
      return ModelParams::from_couplings(Couplings(g, *alpha, *beta));
    }
    if (!omega1 || !omega2) throw ConfigError("--omega1 and --omega2 go together");
    return ModelParams::from_frequencies(g, FrequencyPair::real(*omega1, *omega2));
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

double RunConfig::tolerance(const std::string& name, double fallback) const {
  auto it = tol.find(name);
  return it == tol.end() ? fallback : it->second;
}

ParseResult parse_args(int argc, const char* const* argv) {
  ParseResult res;
  RunConfig& c = res.config;

  CLI::App app{"Euclidean kernels of the acceleration oscillator", "accel"};
  app.set_version_flag("--version", "accel 0.1.0");
  app.set_config("--config", "", "key=value file; flags on the command line win");
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--gamma", c.gamma, "coupling of x''^2");
  app.add_option("--alpha", c.alpha);
  app.add_option("--beta", c.beta);
  app.add_option("--omega1", c.omega1);
  app.add_option("--omega2", c.omega2);
  app.add_option("--tau", c.taus, "Euclidean time (repeatable)");
  std::vector<std::string> bc_text, tol_text, mode_text;
  app.add_option("--bc", bc_text, "boundary data x_f,v_f,x_i,v_i (repeatable)");
  app.add_option("--n-bc", c.n_bc, "random boundary sets when --bc is absent")->check(CLI::PositiveNumber);
  app.add_option("--n", c.lattice_n, "lattice step counts (repeatable)");
  app.add_option("--out", c.out, "output path (default stdout)");
  bool json = false, csv = false;
  app.add_flag("--json", json);
  app.add_flag("--csv", csv);
  app.add_option("--tol", tol_text, "tolerance override name=value (repeatable)");
  app.add_option("--seed", c.seed, "seed for random test instances");
  app.add_option("--threads", c.threads, "worker threads (0: all cores)")->check(CLI::NonNegativeNumber);
  app.add_flag("--grid-oracle", c.grid_oracle, "propagator: add the grid oracle column");
  app.add_option("--mode", mode_text, "multidof: gamma,alpha,beta of one mode (repeatable)");
  app.add_option("--angle", c.angle, "multidof: mixing rotation angle for two modes");
  app.add_option("--inject-fault", c.inject_fault, "testing only: m12-sign")
      ->check(CLI::IsMember({"", "m12-sign"}));

  for (const char* name : {"branch", "xval", "lattice", "vacuum", "propagator", "multidof"})
    app.add_subcommand(name)->callback([&c, name] { c.command = name; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    res.exit_now = true;
    std::ostringstream os;
    app.exit(e, os, os);
    res.message = os.str();
    return res;
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  if (json && csv) throw ConfigError("--json and --csv are exclusive");
  c.format = json ? Format::Json : csv ? Format::Csv : Format::Table;
  for (const auto& b : bc_text) {
    auto v = parse_numbers(b);
    if (v.size() != 4) throw ConfigError("--bc needs four numbers: " + b);
    c.bcs.push_back({v[0], v[1], v[2], v[3]});
  }
  for (const auto& t : tol_text) {
    auto eq = t.find('=');
    if (eq == std::string::npos) throw ConfigError("--tol needs name=value: " + t);
    auto v = parse_numbers(t.substr(eq + 1));
    if (v.size() != 1 || !(v[0] > 0)) throw ConfigError("tolerance must be one positive number: " + t);
    c.tol[t.substr(0, eq)] = v[0];
  }
  for (const auto& m : mode_text) {
    auto v = parse_numbers(m);
    if (v.size() != 3) throw ConfigError("--mode needs gamma,alpha,beta: " + m);
    c.modes.push_back(v);
  }
  for (double t : c.taus)
    if (!(t >= 0) || (t == 0 && c.command != "propagator")) throw ConfigError("tau must be positive");
  for (int n : c.lattice_n)
    if (n < 4) throw ConfigError("lattice N must be at least 4");
  return res;
}

}  // namespace accel::cli
