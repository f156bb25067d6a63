#include <gtest/gtest.h>

#include <cfloat>
#include <cmath>
#include <vector>

#include "meshsample/inversion.hpp"
#include "meshsample/rejection.hpp"
#include "meshsample/stats.hpp"
#include "meshsample/validation.hpp"
#include "support/test_support.hpp"

namespace meshsample {
namespace {

using testing::SequenceSource;
using testing::unit_right_triangle;

TEST(SampleUniformBary, Examples) {
  auto [u0, v0] = sample_uniform_bary(0.0, 0.7);
  EXPECT_EQ(u0, 1.0);
  EXPECT_EQ(v0, 0.0);
  auto [u1, v1] = sample_uniform_bary(0.25, 0.5);
  EXPECT_DOUBLE_EQ(u1, 0.5);
  EXPECT_DOUBLE_EQ(v1, 0.25);
  const double almost = std::nextafter(1.0, 0.0);
  auto [u2, v2] = sample_uniform_bary(almost, almost);
  EXPECT_NEAR(u2, 0.0, 1e-15);
  EXPECT_NEAR(v2, 1.0, 1e-15);
}

TEST(SampleUniformBary, UniformOverSimplex) {
  Rng rng(2);
  std::vector<double> us;
  for (int k = 0; k < 100000; ++k) us.push_back(sample_uniform_bary(rng(), rng()).first);
  const auto report = ks_one_sample(us, [](double u) { return u * (2 - u); });
  EXPECT_TRUE(report.pass) << report.d_statistic;
}

TEST(RejectionSample, ConstantWeightsAcceptFirstTrial) {
  const auto mesh = unit_right_triangle({2, 2, 2});
  const auto table = build_table(mesh);
  Rng rng(3);
  RejectionStats stats;
  for (int k = 0; k < 10000; ++k) rejection_sample(mesh, table, 0, rng, stats);
  EXPECT_EQ(stats.trials, stats.samples);
  EXPECT_EQ(stats.samples, 10000u);
}

TEST(RejectionSample, StrictAcceptanceUsesThreeDeviatesPerTrial) {
  // Weights (3, 0, 0): the first trial lands at u = 1 - sqrt(0.64) = 0.2 with
  // phi = 0.6 < 0.5 * 3 and is rejected; the second lands at u = 0.9.
  const auto mesh = unit_right_triangle({3, 0, 0});
  const auto table = build_table(mesh);
  SequenceSource source({0.64, 0.5, 0.5, 0.01, 0.0, 0.29});
  RejectionStats stats;
  const auto p = rejection_sample(mesh, table, 0, source, stats);
  EXPECT_EQ(source.consumed(), 6u);
  EXPECT_EQ(stats.trials, 2u);
  EXPECT_NEAR(p.u, 0.9, 1e-12);
  EXPECT_NEAR(p.v, 0.0, 1e-12);
}

TEST(RejectionSample, TrialsMatchMaxOverMean) {
  struct Case {
    std::vector<double> weights;
    double ratio;
  };
  for (const auto& c : {Case{{3, 0, 0}, 3.0}, Case{{1, 0.01, 0.4}, 1.0 / 0.47}, Case{{0, 1, 1}, 1.5}}) {
    const auto mesh = unit_right_triangle(c.weights);
    const auto table = build_table(mesh);
    Rng rng(17);
    RejectionStats stats;
    for (int k = 0; k < 1'000'000; ++k) rejection_sample(mesh, table, 0, rng, stats);
    EXPECT_NEAR(stats.trials_per_sample(), c.ratio, 0.01 * c.ratio);
  }
}

// Never accepts: the weight is 0 everywhere except a measure-zero vertex.
TEST(RejectionSample, IterationCap) {
  SequenceSource source(std::vector<double>(30, 0.5));
  RejectionStats stats;
  try {
    rejection_in_triangle(0, 0, 0, 1, source, stats, RejectionConfig{10});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::iteration_cap);
  }
}

TEST(RejectionSample, MarginalsMatchAnalyticCdf) {
  for (const auto rw : testing::representative_weights()) {
    const auto mesh = synthetic_triangle(rw);
    const auto table = build_table(mesh);
    Rng rng(derive_seed(5, std::size_t(100 * (rw.phi_u + 3) + rw.phi_v + 3)));
    std::vector<double> us, vs;
    RejectionStats stats;
    for (int k = 0; k < 20000; ++k) {
      const auto p = rejection_sample_point(table, mesh, rng, stats);
      us.push_back(p.u);
      vs.push_back(p.v);
    }
    EXPECT_TRUE(ks_one_sample(vs, [rw](double v) { return analytic_cdf_v(v, rw); }).pass);
    EXPECT_TRUE(ks_one_sample(us, [rw](double u) { return analytic_cdf_u(u, rw); }).pass);
  }
}

TEST(RejectionSample, IndistinguishableFromInversionOverGrid) {
  int failures = 0;
  const auto cells = validation_grid(16);
  for (std::size_t k = 0; k < cells.size(); ++k) {
    const auto rw = cells[k];
    const auto mesh = synthetic_triangle(rw);
    const auto table = build_table(mesh);
    Rng a(derive_seed(100, k)), b(derive_seed(200, k));
    RejectionStats stats;
    std::vector<double> inv, rej;
    for (int n = 0; n < 100000; ++n) {
      inv.push_back(sample_point(table, mesh, a).v);
      rej.push_back(rejection_sample_point(table, mesh, b, stats).v);
    }
    failures += !ks_two_sample(inv, rej).pass;
  }
  // 1% nominal false-failure rate over 100 cells.
  EXPECT_LE(failures, 5);
}

}  // namespace
}  // namespace meshsample
