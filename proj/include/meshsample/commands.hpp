#pragma once

// Command implementations behind the `meshsample` executable. Each returns
// a process exit code and writes human output to the given streams.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "meshsample/batch.hpp"
#include "meshsample/bench.hpp"
#include "meshsample/error.hpp"
#include "meshsample/format.hpp"
#include "meshsample/io.hpp"
#include "meshsample/mesh.hpp"
#include "meshsample/triangle_select.hpp"
#include "meshsample/validation.hpp"
#include "meshsample/weights.hpp"

namespace meshsample {

enum ExitCode : int {
  exit_ok = 0,
  exit_usage = 1,
  exit_data = 2,
  exit_validation_failed = 3,
};

inline constexpr const char* kSeedEnv = "MESHSAMPLE_SEED";

inline std::uint64_t default_seed() {
  if (const char* env = std::getenv(kSeedEnv)) {
    char* end = nullptr;
    const auto v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return v;
  }
  return 1;
}

// Applies a weight source to a loaded mesh. Accepted forms:
//   ""  or "uniform"     all weights 1
//   "periodic:L=<len>"   |cos(x/L) cos(y/L) cos(z/L)|
//   "curvature"          area-normalized |angle deficit|
//   anything else        path to a sidecar weights file
inline Mesh apply_weight_source(const Mesh& mesh, const std::string& source) {
  if (source.empty() || source == "uniform") return mesh.with_weights(std::vector<double>(mesh.vertex_count(), 1.0));
  if (source == "curvature") return mesh.with_weights(curvature_weights(mesh));
  const std::string periodic = "periodic:";
  if (source.rfind(periodic, 0) == 0) {
    std::string arg = source.substr(periodic.size());
    if (arg.rfind("L=", 0) == 0) arg = arg.substr(2);
    double length_scale = 0;
    if (!detail::parse_double(arg, length_scale))
      throw Error(ErrorCode::invalid_argument, "bad periodic length scale '" + arg + "'");
    return mesh.with_weights(periodic_weights(mesh, length_scale));
  }
  return load_weights(source, mesh);
}

inline int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::invalid_argument: return exit_usage;
    default: return exit_data;
  }
}

struct SampleOptions {
  std::string mesh_path;
  std::string weights;
  std::size_t count = 0;
  std::uint64_t seed = 1;
  Method method = Method::inversion;
  double newton_tol = NewtonConfig{}.tol;
  std::string output_path;
  std::optional<PointFormat> format;  // inferred from the output extension when unset
  unsigned threads = 1;
  bool verbose = false;
};

inline PointFormat infer_format(const std::string& path) {
  const auto dot = path.rfind('.');
  const std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
  if (ext == "ply" || ext == "PLY") return PointFormat::ply;
  return PointFormat::csv;
}

inline int run_sample(const SampleOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    const Mesh mesh = apply_weight_source(load_obj(opts.mesh_path), opts.weights);
    const TriangleTable table = build_table(mesh);
    BatchOptions batch;
    batch.method = opts.method;
    batch.newton.tol = opts.newton_tol;
    batch.threads = opts.threads;
    const auto result = sample_points(mesh, table, opts.count, opts.seed, batch);
    write_points(opts.output_path, result.points, mesh,
                 opts.format.value_or(infer_format(opts.output_path)));

    out << "wrote " << result.points.size() << " points (" << to_string(opts.method) << ") to "
        << opts.output_path << '\n';
    if (opts.verbose) {
      out << "triangles: " << mesh.triangle_count() << ", total mass: " << format_double(table.total_mass)
          << '\n';
      std::size_t sampleable = 0;
      for (std::size_t i = 0; i < table.size(); ++i) sampleable += table.mass(i) > 0;
      out << "sampleable triangles: " << sampleable << '\n';
      if (opts.method == Method::rejection)
        out << "rejection trials per sample: " << format_double(result.rejection.trials_per_sample())
            << '\n';

      std::vector<std::size_t> hits(table.size(), 0);
      for (const auto& p : result.points) ++hits[p.triangle];
      std::vector<std::size_t> order(table.size());
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::sort(order.begin(), order.end(),
                [&](auto a, auto b) { return table.mass(a) > table.mass(b); });
      order.resize(std::min<std::size_t>(order.size(), 10));
      out << "triangle  expected  observed\n";
      for (auto i : order)
        out << std::setw(8) << i << "  " << std::setw(8) << std::fixed << std::setprecision(6)
            << table.probability(i) << "  " << std::setw(8)
            << (result.points.empty() ? 0.0 : static_cast<double>(hits[i]) / result.points.size())
            << std::defaultfloat << '\n';
    }
    return exit_ok;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

struct ValidateOptions {
  int resolution = 16;
  std::size_t samples_per_cell = 54289;
  std::uint64_t seed = 1;
  int repeats = 1;
  double newton_tol = NewtonConfig{}.tol;
  Marginal marginal = Marginal::v;
  unsigned threads = 1;
  std::string output_path = "ks_report.csv";
};

// Runs the KS grid `repeats` times with seeds seed, seed+1, ...; the CSV
// holds the first run. Exit 0 iff every run reaches the 95% pass rate and no
// cell fails in all runs.
inline int run_validate(const ValidateOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    if (opts.repeats < 1) throw Error(ErrorCode::invalid_argument, "repeats must be >= 1");
    ValidationConfig cfg;
    cfg.resolution = opts.resolution;
    cfg.samples_per_cell = opts.samples_per_cell;
    cfg.newton.tol = opts.newton_tol;
    cfg.marginal = opts.marginal;
    cfg.threads = opts.threads;

    std::vector<std::vector<KsReport>> runs;
    for (int r = 0; r < opts.repeats; ++r) {
      cfg.seed = opts.seed + static_cast<std::uint64_t>(r);
      runs.push_back(run_validation_grid(cfg));
      const auto& reports = runs.back();
      double max_d = 0;
      for (const auto& rep : reports) max_d = std::max(max_d, rep.d_statistic);
      out << "seed " << cfg.seed << ": " << reports.size() << " cells, pass rate "
          << format_double(pass_rate(reports)) << ", max D " << format_double(max_d) << ", D_crit "
          << format_double(reports.empty() ? 0.0 : reports.front().d_critical) << '\n';
    }
    if (!opts.output_path.empty()) {
      auto file = detail::open_out(opts.output_path);
      write_ks_csv(file, runs.front());
    }
    const auto verdict = judge_runs(runs);
    out << (verdict.pass ? "PASS" : "FAIL") << ": min pass rate " << format_double(verdict.min_pass_rate)
        << ", cells failing every run: " << verdict.persistent_failures.size() << '\n';
    return verdict.pass ? exit_ok : exit_validation_failed;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

struct BenchOptions {
  double phi_u = -3;
  double phi_v = -3;
  std::size_t samples = 10'000'000;
  std::vector<double> tolerances{5.0e-3, 1.0e-4, 1.0e-8};
  std::uint64_t seed = 1;
  std::string output_path;
};

inline int run_bench(const BenchOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    const RelativeWeights rw{opts.phi_u, opts.phi_v};
    if (!in_valid_region(rw, 1e-9))
      throw Error(ErrorCode::invalid_argument, "relative weights outside the valid region");
    BenchConfig cfg;
    cfg.rw = rw;
    cfg.samples = opts.samples;
    cfg.tolerances = opts.tolerances;
    cfg.seed = opts.seed;
    const auto rows = run_bench(cfg);

    out << "method     newton_tol  ns/sample  speedup  deviates/sample  trials  newton_iter\n";
    for (const auto& r : rows)
      out << std::left << std::setw(10) << to_string(r.method) << " " << std::right << std::setw(10)
          << (r.method == Method::inversion ? format_double(r.newton_tol) : "-") << "  " << std::fixed
          << std::setprecision(2) << std::setw(9) << r.ns_per_sample << "  " << std::setw(7)
          << r.speedup_vs_rejection << "  " << std::setw(15)
          << static_cast<double>(r.deviates) / static_cast<double>(r.samples) << "  " << std::setw(6)
          << r.trials_per_sample << "  " << std::setw(11) << r.newton_iterations << std::defaultfloat
          << '\n';
    if (!opts.output_path.empty()) {
      auto file = detail::open_out(opts.output_path);
      write_bench_csv(file, rows);
    }
    return exit_ok;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

}  // namespace meshsample
