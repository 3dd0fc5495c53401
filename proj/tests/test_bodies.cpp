#include <gtest/gtest.h>

#include <cmath>

#include "convbody/errors.hpp"
#include "convbody/oracles.hpp"
#include "support.hpp"

using namespace convbody;
using namespace testing_support;

namespace {

ConvexBody unit_cube01(int n) { return translate(ConvexBody::cube(n), Vector::Constant(n, 0.5)); }

TEST(Contains, Examples) {
  EXPECT_TRUE(contains(unit_cube01(3), vec({0.5, 0.5, 0.5})));
  const auto disk = ConvexBody::ball(Vector::Zero(2), 1.0);
  EXPECT_TRUE(contains(disk, vec({1.0, 0.0})));
  EXPECT_FALSE(contains(disk, vec({1.1, 0.0})));
  EXPECT_TRUE(contains(disk, vec({1.1, 0.0}), 0.1));
  EXPECT_THROW(contains(disk, vec({0.0, 0.0, 0.0})), Error);
}

TEST(Volume, Examples) {
  EXPECT_NEAR(volume(unit_cube01(3)), 1.0, 1e-12);
  EXPECT_NEAR(volume(ConvexBody::simplex(3)), 1.0 / 6, 1e-12);
  EXPECT_NEAR(volume(ConvexBody::ball(Vector::Zero(2), 1.0)), M_PI, 1e-12);
  EXPECT_NEAR(volume(ConvexBody::cross_polytope(4)), 16.0 / 24, 1e-12);
  EXPECT_NEAR(volume(ConvexBody::simplex(5)), 1.0 / 120, 1e-12);
}

TEST(Volume, FlatPolytopeRejected) {
  PointMatrix v(3, 2);
  v << 0, 0, 1, 1, 2, 2;
  try {
    ConvexBody::from_vertices(v);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateBody);
  }
}

TEST(Volume, UnboundedHalfspacesRejected) {
  PointMatrix a(2, 2);
  a << 1, 0, 0, 1;
  EXPECT_THROW(ConvexBody::from_halfspaces(a, vec({1, 1})), Error);
}

TEST(Support, Examples) {
  EXPECT_NEAR(support(ConvexBody::cube(2), vec({1, 0})), 0.5, 1e-12);
  Rng rng(7);
  const auto ball = ConvexBody::ball(Vector::Zero(3), 2.0);
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(support(ball, random_unit(3, rng)), 2.0, 1e-12);
  EXPECT_NEAR(support(ConvexBody::simplex(2), vec({1, 1})), 1.0, 1e-12);
}

TEST(Gauge, Examples) {
  EXPECT_NEAR(gauge(ConvexBody::ball(Vector::Zero(2), 1.0), vec({0.3, 0.4})), 0.5, 1e-12);
  EXPECT_EQ(gauge(ConvexBody::cross_polytope(3), Vector::Zero(3)), 0.0);
  EXPECT_NEAR(gauge(ConvexBody::cube(2), vec({0.25, 0.1})), 0.5, 1e-12);
}

TEST(Gauge, OriginOnBoundaryRejected) {
  try {
    gauge(ConvexBody::simplex(2), vec({0.1, 0.1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OriginNotInterior);
  }
}

TEST(MinkowskiSum, Examples) {
  const auto s = minkowski_sum(ConvexBody::interval(0, 1), ConvexBody::interval(0, 2));
  EXPECT_NEAR(support(s, vec({1})), 3.0, 1e-12);
  EXPECT_NEAR(support(s, vec({-1})), 0.0, 1e-12);
  const auto t = unit_triangle();
  const auto diff = minkowski_sum(t, reflect(t));
  EXPECT_EQ(diff.vertices().rows(), 6);
  EXPECT_NEAR(volume(diff), 6.0, 1e-12);
  EXPECT_THROW(minkowski_sum(t, ConvexBody::ball(Vector::Zero(2), 1.0)), Error);
}

TEST(Intersect, Examples) {
  const auto i = intersect(ConvexBody::interval(0, 2), ConvexBody::interval(1, 3));
  ASSERT_TRUE(i.has_value());
  EXPECT_NEAR(support(*i, vec({1})), 2.0, 1e-12);
  EXPECT_NEAR(-support(*i, vec({-1})), 1.0, 1e-12);
  EXPECT_FALSE(intersect(ConvexBody::interval(0, 1), ConvexBody::interval(2, 3)).has_value());
  const auto sq = unit_cube01(2);
  const auto sq2 = intersect(sq, translate(sq, vec({0.5, 0.5})));
  ASSERT_TRUE(sq2.has_value());
  EXPECT_NEAR(volume(*sq2), 0.25, 1e-12);
}

TEST(Apply, Examples) {
  const auto s = ConvexBody::simplex(2);
  EXPECT_NEAR(volume(apply(AffineMap::identity(2), s)), volume(s), 1e-15);
  EXPECT_NEAR(volume(apply(AffineMap::dilation(3, 2.0), unit_cube01(3))), 8.0, 1e-12);
  const auto r = apply(AffineMap(-Eigen::MatrixXd::Identity(2, 2), Vector::Zero(2)), s);
  EXPECT_NEAR(support(r, vec({-1, 0})), 1.0, 1e-12);
  EXPECT_NEAR(support(r, vec({1, 1})), 0.0, 1e-12);
  EXPECT_TRUE(is_reflection_of(r, s));
}

TEST(Apply, Rejections) {
  Eigen::MatrixXd sing(2, 2);
  sing << 1, 2, 2, 4;
  EXPECT_THROW(apply(AffineMap(sing, Vector::Zero(2)), ConvexBody::cube(2)), Error);
  Eigen::MatrixXd shear(2, 2);
  shear << 1, 1, 0, 1;
  EXPECT_THROW(apply(AffineMap(shear, Vector::Zero(2)), ConvexBody::ball(Vector::Zero(2), 1)),
               Error);
  Eigen::MatrixXd rot(2, 2);
  rot << 0, -3, 3, 0;
  const auto b = apply(AffineMap(rot, vec({1, 2})), ConvexBody::ball(Vector::Zero(2), 1));
  EXPECT_NEAR(b.radius(), 3.0, 1e-12);
}

TEST(ProjectionVolume, Examples) {
  EXPECT_NEAR(projection_volume(unit_cube01(3), vec({0, 0, 1})), 1.0, 1e-12);
  EXPECT_NEAR(projection_volume(ConvexBody::ball(Vector::Zero(3), 1.0), vec({0.6, 0.8, 0})), M_PI,
              1e-12);
  EXPECT_NEAR(projection_volume(unit_cube01(3), Vector::Constant(3, 1 / std::sqrt(3.0))),
              std::sqrt(3.0), 1e-12);
  EXPECT_THROW(projection_volume(unit_cube01(3), vec({1, 1, 0})), Error);
}

TEST(HPolytope, NormalsAreUnit) {
  PointMatrix a(4, 2);
  a << 3, 0, -1, 0, 0, 5, 0, -2;
  const auto p = ConvexBody::from_halfspaces(a, vec({3, 1, 5, 2}));
  for (Eigen::Index i = 0; i < p.normals().rows(); ++i) {
    EXPECT_NEAR(p.normals().row(i).norm(), 1.0, 1e-12);
  }
  EXPECT_NEAR(volume(p), 4.0, 1e-12);
}

class BodiesProperty : public ::testing::TestWithParam<uint64_t> {};

TEST_P(BodiesProperty, DeterminantScaling) {
  Rng rng(GetParam());
  for (int n : {2, 3, 4}) {
    for (int i = 0; i < 5; ++i) {
      const auto p = random_body(n, rng);
      const auto t = random_linear_map(n, rng);
      EXPECT_NEAR(volume(apply(t, p)) / (std::abs(t.determinant()) * volume(p)), 1.0, 1e-9);
    }
  }
}

TEST_P(BodiesProperty, SupportIsAdditive) {
  Rng rng(GetParam());
  for (int n : {2, 3}) {
    for (int i = 0; i < 4; ++i) {
      const auto p = random_body(n, rng);
      const auto q = random_body(n, rng);
      const auto s = minkowski_sum(p, q);
      for (int k = 0; k < 10; ++k) {
        const Vector u = random_unit(n, rng);
        const double expect = support(p, u) + support(q, u);
        EXPECT_NEAR(support(s, u), expect, 1e-9 * std::max(1.0, std::abs(expect)));
      }
    }
  }
}

TEST_P(BodiesProperty, GaugeIsHomogeneous) {
  Rng rng(GetParam());
  std::uniform_real_distribution<double> t(0.0, 3.0);
  for (int n : {2, 3}) {
    const auto p = random_body(n, rng);
    const Vector c = p.interior_point();
    const auto q = translate(p, -c);
    for (int k = 0; k < 10; ++k) {
      const Vector x = random_unit(n, rng);
      const double s = t(rng);
      const double g = gauge(q, x);
      EXPECT_NEAR(gauge(q, s * x), s * g, 1e-12 * std::max(1.0, s * g));
    }
  }
}

TEST_P(BodiesProperty, VolumeMatchesMonteCarlo) {
  Rng rng(GetParam());
  int checked = 0;
  for (int n : {2, 3}) {
    for (int i = 0; i < 10; ++i) {
      const auto p = random_body(n, rng);
      const auto box = bounding_box(p);
      const auto mc = oracles::mc_volume([&](const Vector& x) { return contains(p, x); }, box,
                                         20000, GetParam() + i);
      EXPECT_LE(std::abs(mc.value - volume(p)), 3 * mc.error_estimate + 1e-12)
          << "n=" << n << " i=" << i;
      ++checked;
    }
  }
  EXPECT_EQ(checked, 20);
}

TEST_P(BodiesProperty, ProjectionMatchesExplicitShadow) {
  Rng rng(GetParam());
  for (int n : {2, 3}) {
    for (int i = 0; i < 5; ++i) {
      const auto p = random_body(n, rng);
      const Vector u = random_unit(n, rng);
      // orthonormal basis of u⊥
      Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
      m.col(0) = u;
      Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
      const Eigen::MatrixXd q = qr.householderQ();
      const Eigen::MatrixXd basis = q.rightCols(n - 1);
      const Eigen::MatrixXd proj = p.vertices() * basis;
      double shadow = 0.0;
      if (n == 2) {
        shadow = proj.maxCoeff() - proj.minCoeff();
      } else {
        std::vector<std::array<double, 2>> pts;
        for (Eigen::Index r = 0; r < proj.rows(); ++r) pts.push_back({proj(r, 0), proj(r, 1)});
        shadow = hull_area(pts);
      }
      EXPECT_NEAR(projection_volume(p, u) / shadow, 1.0, 1e-9);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, BodiesProperty, ::testing::ValuesIn(kSeeds));

}  // namespace
