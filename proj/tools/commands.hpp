#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cfs/types.hpp"

namespace cfs::cli {

struct Config {
  double mass = 1.0;
  std::vector<double> eps{0.0};
  std::string grid;                // "lo:hi:count", log-spaced
  std::vector<std::size_t> N;
  std::uint64_t seed = 1;
  std::string input;               // system or curvature JSON file
  std::string model = "minkowski";  // audit-system source when no input is given
  std::size_t f = 16;
  std::size_t points = 20;
  bool spliced = false;
  Tolerance tol;
};

/// Log-spaced grid from "lo:hi:count"; count 0 gives an empty grid. Throws InvalidInput.
std::vector<double> parse_grid(const std::string& spec);

std::string cmd_phase_plot(const Config& c);
std::string cmd_bessel_check(const Config& c);
std::string cmd_convergence(const Config& c);
std::string cmd_audit_system(const Config& c);
std::string cmd_nu_table(const Config& c);
std::string cmd_curved_correction(const Config& c);

/// %.17g
std::string fmt(double x);

}  // namespace cfs::cli
