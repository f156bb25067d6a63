#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "meshsample/weights.hpp"
#include "support/test_support.hpp"

namespace meshsample {
namespace {

constexpr double pi = std::numbers::pi;

double total_deficit(const Mesh& mesh) {
  const auto d = angle_deficits(mesh);
  return std::accumulate(d.deficit.begin(), d.deficit.end(), 0.0);
}

TEST(PeriodicWeights, Examples) {
  const double L = 0.7;
  const Mesh mesh({{0, 0, 0}, {pi * L / 2, 0, 0}, {pi * L / 4, pi * L / 4, pi * L / 4}}, {{0, 1, 2}});
  const auto w = periodic_weights(mesh, L);
  EXPECT_EQ(w[0], 1.0);
  EXPECT_NEAR(w[1], 0.0, 1e-15);
  EXPECT_NEAR(w[2], std::pow(std::sqrt(2.0) / 2, 3), 1e-12);
  EXPECT_NEAR(w[2], 0.35355, 1e-5);
  EXPECT_THROW(periodic_weights(mesh, 0.0), Error);
}

TEST(PeriodicWeights, RangeAndPermutationInvariance) {
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> coord(-10, 10);
  std::vector<vec3> v;
  for (int k = 0; k < 500; ++k) {
    const vec3 p{coord(gen), coord(gen), coord(gen)};
    v.insert(v.end(), {p, {p.y, p.z, p.x}, {p.z, p.x, p.y}, {p.y, p.x, p.z}});
  }
  const Mesh mesh(v, {});
  const auto w = periodic_weights(mesh, 1.3);
  for (std::size_t k = 0; k < w.size(); k += 4) {
    for (int j = 0; j < 4; ++j) {
      EXPECT_GE(w[k + j], 0.0);
      EXPECT_LE(w[k + j], 1.0);
    }
    EXPECT_NEAR(w[k + 1], w[k], 1e-12);
    EXPECT_NEAR(w[k + 2], w[k], 1e-12);
    EXPECT_NEAR(w[k + 3], w[k], 1e-12);
  }
}

TEST(AngleDeficits, FlatGridInteriorIsZero) {
  const auto mesh = testing::flat_grid(4);
  const auto d = angle_deficits(mesh);
  const auto w = curvature_weights(mesh);
  for (int i = 1; i < 4; ++i)
    for (int j = 1; j < 4; ++j) {
      const auto id = std::size_t(i * 5 + j);
      EXPECT_TRUE(d.interior[id]);
      EXPECT_NEAR(d.deficit[id], 0.0, 1e-12);
      EXPECT_NEAR(w[id], 0.0, 1e-12);
    }
  // Boundary vertices are excluded.
  EXPECT_FALSE(d.interior[0]);
  EXPECT_EQ(w[0], 0.0);
}

TEST(AngleDeficits, CubeCorners) {
  const auto mesh = testing::cube();
  const auto d = angle_deficits(mesh);
  const auto w = curvature_weights(mesh);
  for (std::size_t i = 0; i < 8; ++i) {
    EXPECT_TRUE(d.interior[i]);
    EXPECT_NEAR(d.deficit[i], pi / 2, 1e-12);
    EXPECT_NEAR(w[i], (pi / 2) / d.area_third[i], 1e-12);
  }
  EXPECT_NEAR(total_deficit(mesh), 4 * pi, 1e-12);
}

TEST(AngleDeficits, GaussBonnet) {
  for (int level : {0, 1, 3}) EXPECT_NEAR(total_deficit(testing::icosphere(level, 2.0)), 4 * pi, 1e-6 * 4 * pi);
  EXPECT_NEAR(total_deficit(testing::torus(24, 12)), 0.0, 1e-6);
}

TEST(CurvatureWeights, SphereIsNearlyConstant) {
  const double r = 1.5;
  const auto w = curvature_weights(testing::icosphere(4, r));
  const auto [lo, hi] = std::minmax_element(w.begin(), w.end());
  const double mean = std::accumulate(w.begin(), w.end(), 0.0) / w.size();
  EXPECT_NEAR(mean * r * r, 1.0, 0.02);
  EXPECT_LT((*hi - *lo) / mean, 0.3);
}

TEST(CurvatureWeights, NonManifoldAndIsolatedVerticesGetZero) {
  // Three triangles sharing edge (0, 1), plus an unused vertex 5.
  const Mesh mesh({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, -1, 0}, {9, 9, 9}},
                  {{0, 1, 2}, {0, 1, 3}, {0, 1, 4}});
  const auto w = curvature_weights(mesh);
  for (double x : w) EXPECT_EQ(x, 0.0);
}

}  // namespace
}  // namespace meshsample
