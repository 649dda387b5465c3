#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "cfs/errors.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace cfs::cli;
  CLI::App app{"Spin connections and parallel transport in causal fermion systems"};
  app.require_subcommand(1);
  Config cfg;
  std::string out;

  const auto common = [&](CLI::App* s) {
    s->add_option("--mass", cfg.mass, "Particle mass m");
    s->add_option("--eps", cfg.eps, "Regularization length(s)")->delimiter(',');
    s->add_option("--grid", cfg.grid, "Log grid lo:hi:count in units of m sqrt(xi^2)");
    s->add_option("--N", cfg.N, "Step counts")->delimiter(',');
    s->add_option("--seed", cfg.seed, "Random seed");
    s->add_option("--out", out, "Output file (default stdout)");
    s->add_option("--tol-real", cfg.tol.real_threshold, "Real-axis snapping threshold");
    s->add_option("--tol-rank", cfg.tol.rank_threshold, "Rank threshold");
  };
  struct Cmd {
    const char* name;
    const char* help;
    std::string (*run)(const Config&);
  };
  const Cmd cmds[] = {
      {"phase-plot", "Connection phases phi and kappa over a timelike grid", cmd_phase_plot},
      {"bessel-check", "Im(alpha conj(beta)) over a grid", cmd_bessel_check},
      {"convergence", "Polygonal transport along a straight segment", cmd_convergence},
      {"audit-system", "Causal and symmetry checks on a point set", cmd_audit_system},
      {"nu-table", "Eigenvalues of the regularized local operator", cmd_nu_table},
      {"curved-correction", "Time-ordered curvature correction", cmd_curved_correction},
  };
  std::string (*selected)(const Config&) = nullptr;
  for (const Cmd& c : cmds) {
    CLI::App* s = app.add_subcommand(c.name, c.help);
    common(s);
    s->callback([&selected, run = c.run] { selected = run; });
    const std::string name = c.name;
    if (name == "audit-system") {
      s->add_option("--input", cfg.input, "System JSON");
      s->add_option("--model", cfg.model, "minkowski or random")->check(CLI::IsMember({"minkowski", "random"}));
      s->add_option("--f", cfg.f, "Hilbert space dimension for random systems");
      s->add_option("--points", cfg.points, "Number of points");
    }
    if (name == "curved-correction") s->add_option("--input", cfg.input, "Curvature field JSON");
    if (name == "convergence") s->add_flag("--spliced", cfg.spliced, "Insert splice maps between steps");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    const std::string text = selected(cfg);
    if (out.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(out, std::ios::binary);
      if (!f) {
        std::cerr << "cannot write " << out << "\n";
        return 2;
      }
      f << text;
    }
  } catch (const cfs::Error& e) {
    std::cerr << e.what() << "\n";
    return cfs::is_validation_error(e.code()) ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 3;
  }
  return 0;
}
