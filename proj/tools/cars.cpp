// cars: chiral CARS orientational averages from the command line.

#include <iostream>

#include "CLI11.hpp"
#include "cars/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Circular intensity differences in chiral CARS"};
  app.require_subcommand(1);

  cars::RunConfig cfg;
  std::string scan;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--input", cfg.input, "Model file (JSON)");
    sub->add_option("--output", cfg.output, "Write results here instead of stdout");
    sub->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
    sub->add_option("--samples", cfg.samples, "Monte Carlo samples")->capture_default_str();
    sub->add_option("--quad-order", cfg.quad_order, "Gauss-Legendre nodes in cos(beta)")->capture_default_str();
    sub->add_option("--omega1", cfg.omega1, "Pump frequency (hartree)");
    sub->add_option("--omega3", cfg.omega3, "Probe frequency (hartree)");
    sub->add_option("--scan", scan, "Raman shift grid start,stop,step (cm^-1)");
    sub->add_flag("--normalize", cfg.normalize, "Set the overall prefactor to 1");
    sub->add_option("--tolerance", cfg.quadrature_tolerance, "Relative tolerance against the oracles")
        ->capture_default_str();
  };

  auto* verify = app.add_subcommand("verify", "Check the closed-form averages against SO(3) oracles");
  common(verify);
  verify->add_option("--case", cfg.verify_case, "Built-in case without --input: isotropic, random, all")
      ->capture_default_str();
  auto* invariants = app.add_subcommand("invariants", "Isotropic and natural invariants per mode");
  common(invariants);
  auto* delta = app.add_subcommand("delta", "Circular intensity difference per mode");
  common(delta);
  delta->add_flag("--oracle", cfg.oracle, "Also average by quadrature");
  auto* spectrum = app.add_subcommand("spectrum", "VVVR/VVVL rates and Delta over a Raman-shift scan (CSV)");
  common(spectrum);
  spectrum->add_option("--lorentzian", cfg.lorentzian, "Lorentzian half width (cm^-1) applied to rates");

  CLI11_PARSE(app, argc, argv);

  cfg.command = app.get_subcommands().front()->get_name();
  if (!scan.empty()) {
    try {
      cfg.scan = cars::parse_scan_argument(scan);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 1;
    }
  }
  return cars::run_command(cfg, std::cout, std::cerr);
}
