#include <iostream>
#include <stdexcept>

#include "CLI11.hpp"
#include "commands.hpp"
#include "isk/errors.hpp"

namespace {

constexpr int kExitInput = 2;
constexpr int kExitConfig = 3;

}  // namespace

int main(int argc, char** argv) {
  using namespace isk::cli;
  CLI::App app{"Streaming estimates of the L1 distance between joint and product distributions"};
  app.require_subcommand(1);

  GenerateOptions gen;
  auto* g = app.add_subcommand("generate", "Write a synthetic pair stream");
  g->add_option("--mode", gen.mode, "independent | perfect-dependence | mixture:<lambda> | planted-rows")
      ->capture_default_str();
  g->add_option("--n", gen.n, "Domain size")->capture_default_str()->check(CLI::PositiveNumber);
  g->add_option("--m", gen.m, "Number of events")->capture_default_str();
  g->add_option("--seed", gen.seed, "Seed (falls back to IMPLICIT_SKETCH_SEED)");
  g->add_option("--planted-mass", gen.planted_mass, "Event fraction on planted rows")
      ->capture_default_str();
  g->add_option("--output,-o", gen.output, "Output path, '-' for standard output")->capture_default_str();
  g->add_flag("!--no-header", gen.header, "Omit the '# n=' header line");

  EstimateOptions est;
  auto* e = app.add_subcommand("estimate", "Estimate the distance of a pair stream");
  e->add_option("--input,-i", est.input, "Pair file")->required();
  e->add_option("--n", est.n, "Domain size (default: file header, else largest index)");
  e->add_option("--algorithm", est.algorithm, "exact | im08 | pipeline")->capture_default_str();
  e->add_option("--eps", est.eps, "Target accuracy")->capture_default_str();
  e->add_option("--seed", est.seed, "Seed (falls back to IMPLICIT_SKETCH_SEED)");
  e->add_option("--regime", est.regime, "faithful | practical")->capture_default_str();
  e->add_option("--g", est.g, "l1 | lp:<p>")->capture_default_str();
  e->add_flag("--with-oracle", est.with_oracle, "Also compute the exact distance");
  e->add_option("--emit-csv", est.emit_csv, "Append (x, estimate, oracle, error) to a CSV file");
  e->add_option("--threads", est.threads, "Worker threads (0: available parallelism)")
      ->capture_default_str();
  e->add_option("--calibration", est.calibration, "c_r file written by calibrate")
      ->capture_default_str();
  e->add_option("--save-sketch", est.save_sketch, "Write the im08 sketch checkpoint");
  e->add_option("--load-sketch", est.load_sketch, "Merge im08 checkpoints before estimating");

  CalibrateOptions cal;
  auto* c = app.add_subcommand("calibrate", "Fit c_r in r(n) = max(2, c_r ln n)");
  c->add_option("--n", cal.ns, "Grid of domain sizes")->delimiter(',')->capture_default_str();
  c->add_option("--families", cal.families, "Stream families")->delimiter(',')->capture_default_str();
  c->add_option("--trials", cal.trials, "Trials per grid cell")->capture_default_str();
  c->add_option("--m", cal.m, "Events per trial")->capture_default_str();
  c->add_option("--seed", cal.seed, "Seed (falls back to IMPLICIT_SKETCH_SEED)");
  c->add_option("--regime", cal.regime, "faithful | practical")->capture_default_str();
  c->add_option("--delta2", cal.delta2, "Allowed bracket failure rate")->capture_default_str();
  c->add_option("--output,-o", cal.output, "Calibration file")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& err) {
    return app.exit(err);
  } catch (const CLI::CallForAllHelp& err) {
    return app.exit(err);
  } catch (const CLI::ParseError& err) {
    app.exit(err);
    return kExitConfig;
  }

  try {
    if (g->parsed()) cmd_generate(gen);
    if (e->parsed()) cmd_estimate(est);
    if (c->parsed()) cmd_calibrate(cal);
  } catch (const isk::InputError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitInput;
  } catch (const std::logic_error& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitInput;
  }
  return 0;
}
