#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <vector>

#include "meshsample/batch.hpp"
#include "meshsample/format.hpp"
#include "meshsample/inversion.hpp"
#include "meshsample/random.hpp"
#include "meshsample/rejection.hpp"
#include "meshsample/triangle_select.hpp"
#include "meshsample/validation.hpp"

namespace meshsample {

struct BenchConfig {
  RelativeWeights rw{-3.0, -3.0};
  std::size_t samples = 10'000'000;
  std::vector<double> tolerances{5.0e-3, 1.0e-4, 1.0e-8};
  std::uint64_t seed = 1;
  std::size_t warmup = 100'000;
};

struct BenchReport {
  Method method = Method::inversion;
  RelativeWeights rw;
  double newton_tol = 0;           // 0 for rejection rows
  std::size_t samples = 0;
  double ns_per_sample = 0;
  double speedup_vs_rejection = 1;  // rejection ns / this row's ns
  std::uint64_t deviates = 0;       // from an untimed counting pass
  double trials_per_sample = 0;     // rejection only
  double newton_iterations = 0;     // mean per sample, inversion only
};

namespace detail {

// Keeps the compiler from discarding the sampling loop.
inline void keep(double x) { asm volatile("" : : "g"(x) : "memory"); }

template <class Fn>
double time_ns_per_sample(std::size_t samples, Fn&& draw) {
  double sink = 0;
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t k = 0; k < samples; ++k) {
    const auto p = draw();
    sink += p.u + p.position.x;
  }
  const auto stop = std::chrono::steady_clock::now();
  keep(sink);
  return std::chrono::duration<double, std::nano>(stop - start).count() / static_cast<double>(samples);
}

}  // namespace detail

// Times both samplers on the synthetic unit triangle for rw, single
// threaded. First row is rejection, then one inversion row per tolerance.
inline std::vector<BenchReport> run_bench(const BenchConfig& cfg) {
  if (cfg.samples == 0) throw Error(ErrorCode::invalid_argument, "bench needs at least one sample");
  const Mesh mesh = synthetic_triangle(cfg.rw);
  const TriangleTable table = build_table(mesh);
  std::vector<BenchReport> rows;

  {
    BenchReport row;
    row.method = Method::rejection;
    row.rw = cfg.rw;
    row.samples = cfg.samples;
    RejectionStats stats;
    Rng rng(derive_seed(cfg.seed, 0));
    for (std::size_t k = 0; k < cfg.warmup; ++k) detail::keep(rejection_sample_point(table, mesh, rng, stats).u);
    row.ns_per_sample = detail::time_ns_per_sample(cfg.samples, [&] { return rejection_sample_point(table, mesh, rng, stats); });

    Rng count_rng(derive_seed(cfg.seed, 1));
    CountingSource counter(count_rng);
    RejectionStats counted;
    for (std::size_t k = 0; k < cfg.samples; ++k) detail::keep(rejection_sample_point(table, mesh, counter, counted).u);
    row.deviates = counter.count();
    row.trials_per_sample = counted.trials_per_sample();
    rows.push_back(row);
  }

  for (const double tol : cfg.tolerances) {
    BenchReport row;
    row.method = Method::inversion;
    row.rw = cfg.rw;
    row.newton_tol = tol;
    row.samples = cfg.samples;
    NewtonConfig newton;
    newton.tol = tol;
    newton.validate();
    Rng rng(derive_seed(cfg.seed, 0));
    for (std::size_t k = 0; k < cfg.warmup; ++k) detail::keep(sample_point(table, mesh, rng, newton).u);
    row.ns_per_sample = detail::time_ns_per_sample(cfg.samples, [&] { return sample_point(table, mesh, rng, newton); });
    row.speedup_vs_rejection = rows.front().ns_per_sample / row.ns_per_sample;

    Rng count_rng(derive_seed(cfg.seed, 1));
    CountingSource counter(count_rng);
    for (std::size_t k = 0; k < cfg.samples; ++k) detail::keep(sample_point(table, mesh, counter, newton).u);
    row.deviates = counter.count();

    Rng iter_rng(derive_seed(cfg.seed, 2));
    const auto rw = relative_weights(mesh, 0);
    std::uint64_t iterations = 0;
    for (std::size_t k = 0; k < cfg.samples; ++k) iterations += static_cast<std::uint64_t>(solve_u(iter_rng(), rw, newton).iterations);
    row.newton_iterations = static_cast<double>(iterations) / static_cast<double>(cfg.samples);
    rows.push_back(row);
  }
  return rows;
}

inline void write_bench_csv(std::ostream& out, const std::vector<BenchReport>& rows) {
  out << "method,phi_u_rel,phi_v_rel,newton_tol,samples,ns_per_sample,speedup_vs_rejection,"
         "deviates,trials_per_sample,newton_iterations\n";
  for (const auto& r : rows)
    out << to_string(r.method) << ',' << format_double(r.rw.phi_u) << ',' << format_double(r.rw.phi_v)
        << ',' << format_double(r.newton_tol) << ',' << r.samples << ',' << format_double(r.ns_per_sample)
        << ',' << format_double(r.speedup_vs_rejection) << ',' << r.deviates << ','
        << format_double(r.trials_per_sample) << ',' << format_double(r.newton_iterations) << '\n';
}

}  // namespace meshsample
