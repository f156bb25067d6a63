#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "meshsample/triangle_select.hpp"

namespace meshsample {
namespace {

// Triangles in the z = 0 plane with prescribed areas and uniform weights.
Mesh strip(const std::vector<double>& areas, const std::vector<double>& weights) {
  std::vector<vec3> v;
  std::vector<tri3> t;
  std::vector<double> w;
  for (std::size_t i = 0; i < areas.size(); ++i) {
    const double x = 10.0 * i;
    v.push_back({x, 0, 0});
    v.push_back({x + 2 * areas[i], 0, 0});
    v.push_back({x, 1, 0});
    t.push_back({3 * i, 3 * i + 1, 3 * i + 2});
    w.insert(w.end(), 3, weights[i]);
  }
  return Mesh(std::move(v), std::move(t), std::move(w));
}

TriangleTable table_from_cdf(std::vector<double> cdf) {
  TriangleTable t;
  t.cdf = std::move(cdf);
  return t;
}

std::size_t linear_scan(const TriangleTable& table, double xi) {
  double prev = 0;
  for (std::size_t k = 0; k < table.size(); ++k) {
    if (prev <= xi && xi < table.cdf[k]) return k;
    prev = table.cdf[k];
  }
  return table.size();
}

TEST(BuildTable, TwoTriangles) {
  const auto table = build_table(strip({1, 2}, {2, 1}));
  ASSERT_EQ(table.size(), 2u);
  EXPECT_NEAR(table.cdf[0], 0.5, 1e-15);
  EXPECT_EQ(table.cdf[1], 1.0);
  EXPECT_NEAR(table.total_mass, 4.0, 1e-12);
  EXPECT_NEAR(table.area[1], 2.0, 1e-12);
  EXPECT_EQ(table.mean_weight[0], 2.0);
  EXPECT_EQ(table.max_weight[1], 1.0);
}

TEST(BuildTable, SingleTriangle) {
  const auto table = build_table(strip({0.7}, {3}));
  EXPECT_EQ(table.cdf, std::vector<double>{1.0});
}

TEST(BuildTable, ZeroMassPrefix) {
  const auto table = build_table(strip({1, 3}, {0, 1}));
  EXPECT_EQ(table.cdf, (std::vector<double>{0.0, 1.0}));
  EXPECT_EQ(choose_triangle(table, 0.0), 1u);
}

TEST(BuildTable, ZeroMassThrows) {
  try {
    build_table(strip({1, 2}, {0, 0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::zero_mass);
  }
  const Mesh flat({{0, 0, 0}, {1, 1, 1}, {2, 2, 2}}, {{0, 1, 2}});
  EXPECT_THROW(build_table(flat), Error);
  EXPECT_THROW(build_table(Mesh{}), Error);
}

TEST(BuildTable, TrailingZeroMassPinnedToOne) {
  const auto table = build_table(strip({0.1, 0.2, 0.3, 0.4}, {1, 1, 1, 0}));
  EXPECT_EQ(table.cdf[2], 1.0);
  EXPECT_EQ(table.cdf[3], 1.0);
  EXPECT_EQ(choose_triangle(table, std::nextafter(1.0, 0.0)), 2u);
}

TEST(ChooseTriangle, Bracketing) {
  const auto table = table_from_cdf({0.5, 1.0});
  EXPECT_EQ(choose_triangle(table, 0.3), 0u);
  EXPECT_EQ(choose_triangle(table, 0.5), 1u);
  EXPECT_EQ(choose_triangle(table, 0.0), 0u);
  EXPECT_EQ(choose_triangle(table_from_cdf({0.0, 1.0}), 0.0), 1u);
}

TEST(ChooseTriangle, AgreesWithLinearScan) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> unit(0, 1);
  std::uniform_int_distribution<int> count(1, 64);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = count(gen);
    std::vector<double> areas, weights;
    for (int i = 0; i < n; ++i) {
      areas.push_back(unit(gen) < 0.2 ? 0.0 : unit(gen));
      weights.push_back(unit(gen) < 0.2 ? 0.0 : unit(gen));
    }
    areas[0] = weights[0] = 1.0;
    const auto table = build_table(strip(areas, weights));
    for (int k = 0; k < 500; ++k) {
      double xi = unit(gen);
      if (k % 5 == 0) xi = table.cdf[std::size_t(k) % table.size()];
      if (xi >= 1) continue;
      const auto chosen = choose_triangle(table, xi);
      EXPECT_EQ(chosen, linear_scan(table, xi));
      EXPECT_GT(table.mass(chosen), 0.0);
    }
  }
}

TEST(ChooseTriangle, EmpiricalFrequenciesMatch) {
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> unit(0, 1);
  for (int mesh_trial = 0; mesh_trial < 3; ++mesh_trial) {
    const int n = 8 + 28 * mesh_trial;
    std::vector<double> areas, weights;
    for (int i = 0; i < n; ++i) {
      areas.push_back(unit(gen));
      weights.push_back(unit(gen) < 0.1 ? 0.0 : unit(gen));
    }
    weights[0] = 1.0;
    const auto table = build_table(strip(areas, weights));
    const int draws = 1'000'000;
    std::vector<int> hits(table.size(), 0);
    for (int k = 0; k < draws; ++k) ++hits[choose_triangle(table, unit(gen))];
    for (std::size_t i = 0; i < table.size(); ++i) {
      const double p = table.probability(i);
      const double sigma = std::sqrt(draws * p * (1 - p));
      EXPECT_LE(std::fabs(hits[i] - draws * p), 4 * sigma + 1e-9) << "triangle " << i;
    }
  }
}

}  // namespace
}  // namespace meshsample
