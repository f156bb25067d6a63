#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <thread>
#include <vector>

#include "meshsample/format.hpp"
#include "meshsample/inversion.hpp"
#include "meshsample/mesh.hpp"
#include "meshsample/random.hpp"
#include "meshsample/stats.hpp"
#include "meshsample/triangle_select.hpp"

namespace meshsample {

// Centers of a resolution x resolution grid over [-3, 3]^2 that fall inside
// the valid relative-weight triangle, in row-major (phi_u outer) order.
inline std::vector<RelativeWeights> validation_grid(int resolution) {
  if (resolution < 1) throw Error(ErrorCode::invalid_argument, "grid resolution must be >= 1");
  const double h = 6.0 / resolution;
  std::vector<RelativeWeights> cells;
  for (int i = 0; i < resolution; ++i)
    for (int j = 0; j < resolution; ++j) {
      RelativeWeights rw{-3.0 + h * (i + 0.5), -3.0 + h * (j + 0.5)};
      if (in_valid_region(rw)) cells.push_back(rw);
    }
  return cells;
}

// Unit right triangle (0,0,0), (1,0,0), (0,1,0) whose vertex weights map to rw.
inline Mesh synthetic_triangle(RelativeWeights rw) {
  if (!in_valid_region(rw, 1e-9))
    throw Error(ErrorCode::invalid_argument, "relative weights outside the valid region");
  const auto w = vertex_weights_for(rw);
  return Mesh({{1, 0, 0}, {0, 1, 0}, {0, 0, 0}}, {{0, 1, 2}},
              {std::max(w[0], 0.0), std::max(w[1], 0.0), std::max(w[2], 0.0)});
}

enum class Marginal { u, v };

struct ValidationConfig {
  int resolution = 16;
  std::size_t samples_per_cell = 54289;
  std::uint64_t seed = 1;
  NewtonConfig newton;
  Marginal marginal = Marginal::v;
  unsigned threads = 1;
};

// KS test of one cell: sample through the full mesh pipeline, test the
// chosen marginal against its analytic CDF.
inline KsReport validate_cell(RelativeWeights rw, std::size_t n, std::uint64_t stream_seed,
                              const NewtonConfig& newton, Marginal marginal = Marginal::v) {
  const Mesh mesh = synthetic_triangle(rw);
  const TriangleTable table = build_table(mesh);
  Rng rng(stream_seed);
  std::vector<double> values(n);
  for (auto& x : values) {
    const auto p = sample_point(table, mesh, rng, newton);
    x = marginal == Marginal::v ? p.v : p.u;
  }
  if (marginal == Marginal::v)
    return ks_one_sample(values, [rw](double x) { return analytic_cdf_v(x, rw); }, rw);
  return ks_one_sample(values, [rw](double x) { return analytic_cdf_u(x, rw); }, rw);
}

// One report per valid grid cell. Cell k uses the stream derive_seed(seed, k),
// so results do not depend on the thread count.
inline std::vector<KsReport> run_validation_grid(const ValidationConfig& cfg) {
  cfg.newton.validate();
  const auto cells = validation_grid(cfg.resolution);
  std::vector<KsReport> reports(cells.size());
  const unsigned threads = std::max(1u, cfg.threads);
  auto work = [&](unsigned t) {
    for (std::size_t k = t; k < cells.size(); k += threads)
      reports[k] = validate_cell(cells[k], cfg.samples_per_cell, derive_seed(cfg.seed, k),
                                 cfg.newton, cfg.marginal);
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }
  return reports;
}

inline double pass_rate(const std::vector<KsReport>& reports) {
  if (reports.empty()) return 0.0;
  const auto passed = std::count_if(reports.begin(), reports.end(), [](const auto& r) { return r.pass; });
  return static_cast<double>(passed) / static_cast<double>(reports.size());
}

inline constexpr double kRequiredPassRate = 0.95;

// Verdict over repeated runs of the same grid with different seeds: every
// run must reach the pass rate, and no cell may fail in every run.
struct GridVerdict {
  double min_pass_rate = 0;
  std::vector<std::size_t> persistent_failures;
  bool pass = false;
};

inline GridVerdict judge_runs(const std::vector<std::vector<KsReport>>& runs) {
  GridVerdict verdict;
  if (runs.empty()) return verdict;
  verdict.min_pass_rate = 1.0;
  for (const auto& run : runs) verdict.min_pass_rate = std::min(verdict.min_pass_rate, pass_rate(run));
  const std::size_t cells = runs.front().size();
  for (std::size_t k = 0; k < cells; ++k) {
    const bool always_failed =
        std::all_of(runs.begin(), runs.end(), [k](const auto& run) { return !run[k].pass; });
    if (always_failed) verdict.persistent_failures.push_back(k);
  }
  verdict.pass = verdict.min_pass_rate >= kRequiredPassRate && verdict.persistent_failures.empty();
  return verdict;
}

inline void write_ks_csv(std::ostream& out, const std::vector<KsReport>& reports) {
  out << "phi_u_rel,phi_v_rel,n,d,d_crit,pass\n";
  for (const auto& r : reports)
    out << format_double(r.grid_point.phi_u) << ',' << format_double(r.grid_point.phi_v) << ','
        << r.sample_count << ',' << format_double(r.d_statistic) << ','
        << format_double(r.d_critical) << ',' << (r.pass ? 1 : 0) << '\n';
}

}  // namespace meshsample
