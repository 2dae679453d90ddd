#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "accel/classical.hpp"
#include "accel/params.hpp"

namespace accel::cli {

enum class Format { Table, Json, Csv };

struct RunConfig {
  std::string command;  // branch | xval | lattice | vacuum | propagator | multidof

  // exactly one of (gamma, alpha, beta) or (gamma, omega1, omega2); gamma defaults to 1
  std::optional<double> gamma, alpha, beta, omega1, omega2;

  std::vector<double> taus;
  std::vector<BoundaryData> bcs;
  int n_bc = 10;  // random boundary sets when none are given
  std::vector<int> lattice_n{64, 128, 256, 512};
  bool grid_oracle = false;

  // multidof: modes as gamma,alpha,beta triples and a rotation angle (two modes)
  std::vector<std::vector<double>> modes;
  double angle = 0.7853981633974483;

  Format format = Format::Table;
  std::string out;
  std::map<std::string, double> tol;
  std::uint64_t seed = 1;
  int threads = 0;  // 0: hardware concurrency
  std::string inject_fault;

  ModelParams model() const;
  double tolerance(const std::string& name, double fallback) const;
};

// Thrown for bad flags, bad config files and inconsistent settings.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseResult {
  RunConfig config;
  bool exit_now = false;  // --help or --version was handled
  int exit_code = 0;
  std::string message;
};

ParseResult parse_args(int argc, const char* const* argv);

// Parses "a,b,c,d" style lists.
std::vector<double> parse_numbers(const std::string& s);

}  // namespace accel::cli
