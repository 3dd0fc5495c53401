#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "convbody/errors.hpp"
#include "convbody/projbody.hpp"
#include "support.hpp"

using namespace convbody;
using namespace testing_support;

namespace {

RadialBody radial_of(const ConvexBody& body, const SphereGrid& grid) {
  RadialBody rb{grid.dim(), Vector::Zero(grid.dim()), grid, {}, std::vector<char>(grid.size(), 0),
                std::nullopt};
  for (int i = 0; i < grid.size(); ++i) rb.radii.push_back(1.0 / gauge(body, grid.direction(i)));
  return rb;
}

TEST(PolarProjectionBody, Examples) {
  const auto grid = SphereGrid::make(2, 512);
  const auto disk = polar_projection_body(ConvexBody::ball(Vector::Zero(2), 1.0), grid);
  for (double r : disk.radii) EXPECT_NEAR(r, 0.5, 1e-12);
  const auto sq = polar_projection_body(ConvexBody::cube(2), grid);
  for (int i = 0; i < grid.size(); ++i) {
    const Vector u = grid.direction(i);
    EXPECT_NEAR(sq.radii[i], 1.0 / u.lpNorm<1>(), 1e-12);
  }
  const auto g3 = SphereGrid::make(3, 300);
  const auto base = polar_projection_body(ConvexBody::cross_polytope(3), g3);
  const auto big = polar_projection_body(scale(ConvexBody::cross_polytope(3), 1.7), g3);
  for (int i = 0; i < g3.size(); ++i) EXPECT_NEAR(big.radii[i], base.radii[i] / (1.7 * 1.7), 1e-12);
}

TEST(PettyZhang, Examples) {
  const auto grid = SphereGrid::make(2);
  EXPECT_NEAR(petty_zhang_functional(unit_triangle(), grid).value, 1.5, 1e-5);
  EXPECT_NEAR(petty_zhang_functional(ConvexBody::ball(Vector::Zero(2), 1.0), grid).value,
              M_PI * M_PI / 4, 1e-6);
  EXPECT_NEAR(petty_zhang_functional(ConvexBody::cube(2), grid).value, 2.0, 1e-5);
  EXPECT_NEAR(petty_zhang_functional(regular_polygon(64), grid).value, M_PI * M_PI / 4, 1e-2);
}

TEST(HullUnion, Examples) {
  const auto grid = SphereGrid::make(2, 1024);
  const auto sq = polar_projection_body(ConvexBody::cube(2), grid);
  const auto same = hull_union(sq, sq);
  for (int i = 0; i < grid.size(); ++i) EXPECT_NEAR(same.radii[i], sq.radii[i], 1e-9);

  // two thin needles along the axes: their hull is the cross-polytope
  PointMatrix h(4, 2), v(4, 2);
  h << -1, -1e-6, 1, -1e-6, 1, 1e-6, -1, 1e-6;
  v << -1e-6, -1, 1e-6, -1, 1e-6, 1, -1e-6, 1;
  const auto a = radial_of(ConvexBody::from_vertices(h), grid);
  const auto b = radial_of(ConvexBody::from_vertices(v), grid);
  const auto plus = hull_union(a, b);
  for (int i = 0; i < grid.size(); ++i) {
    EXPECT_NEAR(plus.radii[i], 1.0 / grid.direction(i).lpNorm<1>(), 1e-5);
    EXPECT_GE(plus.radii[i], std::max(a.radii[i], b.radii[i]));
  }
}

// Radii of conv(points) by enumerating every hyperplane through n points.
std::vector<double> brute_force_hull_radii(const PointMatrix& pts, const SphereGrid& grid) {
  const int n = grid.dim(), np = static_cast<int>(pts.rows());
  std::vector<double> r(grid.size(), std::numeric_limits<double>::infinity());
  std::vector<int> idx(n);
  std::function<void(int, int)> rec = [&](int depth, int from) {
    if (depth == n) {
      Eigen::MatrixXd m(n, n);
      for (int i = 0; i < n; ++i) m.row(i) = pts.row(idx[i]);
      Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
      if (!lu.isInvertible()) return;
      const Vector a = lu.solve(Vector::Ones(n));
      if ((pts * a).maxCoeff() > 1 + 1e-9) return;
      for (int k = 0; k < grid.size(); ++k) {
        const double d = a.dot(grid.direction(k));
        if (d > 0) r[k] = std::min(r[k], 1.0 / d);
      }
      return;
    }
    for (int i = from; i < np; ++i) {
      idx[depth] = i;
      rec(depth + 1, i + 1);
    }
  };
  rec(0, 0);
  return r;
}

PointMatrix farther_points(const RadialBody& a, const RadialBody& b) {
  PointMatrix pts(a.grid.size(), a.dim);
  for (int i = 0; i < a.grid.size(); ++i) {
    pts.row(i) = std::max(a.radii[i], b.radii[i]) * a.grid.direction(i).transpose();
  }
  return pts;
}

TEST(HullUnion, MatchesExactHullInThreeDimensions) {
  const auto cross = ConvexBody::cross_polytope(3);
  const auto cube = ConvexBody::cube(3, 1.2);
  PointMatrix all(cross.vertices().rows() + cube.vertices().rows(), 3);
  all << cross.vertices(), cube.vertices();
  const auto exact = ConvexBody::from_vertices(all);
  const auto fine = SphereGrid::make(3, 3000, 8);
  const auto hull = hull_union(radial_of(cross, fine), radial_of(cube, fine));
  for (int i = 0; i < fine.size(); ++i) {
    EXPECT_LE(hull.radii[i], 1.0 / gauge(exact, fine.direction(i)) + 1e-9);
  }
  const auto coarse = SphereGrid::make(3, 40, 8);
  const auto a = radial_of(cross, coarse), b = radial_of(cube, coarse);
  const auto ref = brute_force_hull_radii(farther_points(a, b), coarse);
  const auto small = hull_union(a, b);
  for (int i = 0; i < coarse.size(); ++i) EXPECT_NEAR(small.radii[i], ref[i], 1e-9);
}

TEST(HullUnion, LinearProgramRouteInFourDimensions) {
  const auto grid = SphereGrid::make(4, 24, 8);
  const auto cross = ConvexBody::cross_polytope(4);
  const auto cube = ConvexBody::cube(4, 0.8);
  const auto a = radial_of(cross, grid), b = radial_of(cube, grid);
  const auto hull = hull_union(a, b);
  const auto ref = brute_force_hull_radii(farther_points(a, b), grid);
  for (int i = 0; i < grid.size(); ++i) {
    EXPECT_GE(hull.radii[i], 1.0 / gauge(cross, grid.direction(i)) - 1e-12);
    EXPECT_GE(hull.radii[i], 1.0 / gauge(cube, grid.direction(i)) - 1e-12);
    EXPECT_NEAR(hull.radii[i], ref[i], 1e-9);
  }
  // a larger grid goes through the same route without trouble
  const auto big = SphereGrid::make(4, 400, 8);
  const auto wide = hull_union(radial_of(cross, big), radial_of(cube, big));
  for (int i = 0; i < big.size(); ++i) {
    EXPECT_GE(wide.radii[i], 1.0 / gauge(cross, big.direction(i)) - 1e-12);
  }
}

TEST(HullUnion, GridMismatch) {
  const auto a = polar_projection_body(ConvexBody::cube(2), SphereGrid::make(2, 64));
  const auto b = polar_projection_body(ConvexBody::cube(2), SphereGrid::make(2, 128));
  EXPECT_THROW(hull_union(a, b), Error);
}

class ProjBodyProperty : public ::testing::TestWithParam<uint64_t> {};

TEST_P(ProjBodyProperty, PettyZhangSandwich) {
  Rng rng(GetParam());
  const auto grid = SphereGrid::make(2);
  for (int i = 0; i < 10; ++i) {
    const double v = petty_zhang_functional(random_unit_polygon(rng), grid).value;
    EXPECT_GE(v, 1.5 - 1e-2);
    EXPECT_LE(v, M_PI * M_PI / 4 + 1e-2);
  }
}

TEST_P(ProjBodyProperty, DiagonalCovariance) {
  Rng rng(GetParam());
  std::uniform_real_distribution<double> d(0.5, 2.0);
  for (int n : {2, 3}) {
    const auto k = random_body(n, rng);
    Vector diag(n);
    for (int c = 0; c < n; ++c) diag(c) = d(rng);
    const auto tk = apply(AffineMap(diag.asDiagonal(), Vector::Zero(n)), k);
    const auto grid = SphereGrid::make(n, 64, GetParam());
    const auto rb = polar_projection_body(tk, grid);
    for (int i = 0; i < grid.size(); ++i) {
      const Vector w = grid.direction(i).cwiseQuotient(diag);
      const double shadow = diag.prod() * w.norm() * projection_volume(k, w.normalized());
      EXPECT_NEAR(rb.radii[i] * shadow, 1.0, 1e-6);
    }
  }
}

TEST_P(ProjBodyProperty, LimitBodySandwich) {
  Rng rng(GetParam());
  const auto k = random_unit_polygon(rng);
  const auto pair = normalize(k, reflect(k));
  const auto grid = SphereGrid::make(2, 512);
  const auto pk = polar_projection_body(pair.K, grid);
  const double scale = 2 * theta_body(pair, 0.0, grid).max_radius();
  for (double theta : {0.1, 0.4, 0.7, 0.95}) {
    const auto body = theta_body(pair, theta, grid);
    for (int i = 0; i < grid.size(); ++i) {
      EXPECT_GE(body.radii[i] - (1 - theta) * pk.radii[i], -1e-4 * scale);
      EXPECT_GE(2 * (1 - std::sqrt(theta)) * pk.radii[i] - body.radii[i], -1e-4 * scale);
    }
  }
}

TEST_P(ProjBodyProperty, HullOfPolarBodiesInsideThetaBody) {
  auto [k, l] = random_pair(2, GetParam() + 3);
  const auto pair = normalize(k, l);
  const auto grid = SphereGrid::make(2, 512);
  const auto hull =
      hull_union(polar_projection_body(pair.K, grid), polar_projection_body(pair.L, grid));
  const double scale = theta_body(pair, 0.0, grid).max_radius();
  for (double theta : {0.2, 0.5, 0.8}) {
    const auto body = theta_body(pair, theta, grid);
    for (int i = 0; i < grid.size(); ++i) {
      EXPECT_GE(body.radii[i] - (1 - theta) * pair.M * hull.radii[i], -1e-4 * scale);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, ProjBodyProperty, ::testing::ValuesIn(kSeeds));

}  // namespace
