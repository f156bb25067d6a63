#include <iostream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "meshsample/commands.hpp"

int main(int argc, char** argv) {
  using namespace meshsample;

  CLI::App app{"Weighted random point sampling on triangle meshes"};
  app.require_subcommand(1);

  SampleOptions sample;
  sample.seed = default_seed();
  std::string method = "inversion";
  std::string format;
  auto* sample_cmd = app.add_subcommand("sample", "Sample points on a mesh");
  sample_cmd->add_option("--mesh", sample.mesh_path, "OBJ mesh")->required();
  sample_cmd->add_option("--weights", sample.weights,
                         "Weights file, 'uniform', 'curvature' or 'periodic:L=<len>'");
  sample_cmd->add_option("-n,--count", sample.count, "Number of points")->required();
  sample_cmd->add_option("--seed", sample.seed, "RNG seed (default $MESHSAMPLE_SEED or 1)");
  sample_cmd->add_option("--method", method, "inversion | rejection")
      ->check(CLI::IsMember({"inversion", "rejection"}));
  sample_cmd->add_option("--newton-tol", sample.newton_tol, "Newton step tolerance for u");
  sample_cmd->add_option("-o,--output", sample.output_path, "Output point file")->required();
  sample_cmd->add_option("--format", format, "ply | csv (default: from extension)")
      ->check(CLI::IsMember({"ply", "csv"}));
  sample_cmd->add_option("--threads", sample.threads, "Worker threads");
  sample_cmd->add_flag("-v,--verbose", sample.verbose, "Print mass and selection stats");

  ValidateOptions validate;
  validate.seed = default_seed();
  std::string marginal = "v";
  auto* validate_cmd = app.add_subcommand("validate", "KS validation over the relative-weight grid");
  validate_cmd->add_option("--grid", validate.resolution, "Grid resolution per axis");
  validate_cmd->add_option("--samples", validate.samples_per_cell, "Samples per grid cell");
  validate_cmd->add_option("--seed", validate.seed, "Base seed");
  validate_cmd->add_option("--repeats", validate.repeats, "Runs with consecutive seeds");
  validate_cmd->add_option("--newton-tol", validate.newton_tol, "Newton step tolerance for u");
  validate_cmd->add_option("--marginal", marginal, "u | v")->check(CLI::IsMember({"u", "v"}));
  validate_cmd->add_option("--threads", validate.threads, "Worker threads");
  validate_cmd->add_option("-o,--output", validate.output_path, "CSV report path ('' to skip)");

  BenchOptions bench;
  bench.seed = default_seed();
  auto* bench_cmd = app.add_subcommand("bench", "Time inversion against rejection on one triangle");
  bench_cmd->add_option("--phi-u", bench.phi_u, "Relative weight Phi_u");
  bench_cmd->add_option("--phi-v", bench.phi_v, "Relative weight Phi_v");
  bench_cmd->add_option("--samples", bench.samples, "Samples per timing");
  bench_cmd->add_option("--tol", bench.tolerances, "Newton tolerances to sweep")->delimiter(',');
  bench_cmd->add_option("--seed", bench.seed, "Seed");
  bench_cmd->add_option("-o,--output", bench.output_path, "CSV report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? exit_ok : exit_usage;
  }

  try {
    if (*sample_cmd) {
      sample.method = parse_method(method);
      if (format == "ply") sample.format = PointFormat::ply;
      if (format == "csv") sample.format = PointFormat::csv;
      return run_sample(sample, std::cout, std::cerr);
    }
    if (*validate_cmd) {
      validate.marginal = marginal == "u" ? Marginal::u : Marginal::v;
      return run_validate(validate, std::cout, std::cerr);
    }
    return run_bench(bench, std::cout, std::cerr);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}
