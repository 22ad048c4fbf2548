#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sfem/error.hpp"
#include "sfem/smoothing.hpp"

using namespace sfem;
using namespace sfem::testing;

namespace {

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an sfem::Error");
  return ErrorKind::InvalidArgument;
}

Vector8d nodal(const Quad& q, Point2 (*field)(Point2)) {
  Vector8d u;
  for (int i = 0; i < 4; ++i) {
    const Point2 v = field(q[i]);
    u(2 * i) = v.x;
    u(2 * i + 1) = v.y;
  }
  return u;
}

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

const MaterialModel kUnitMaterial{1.0, 0.0, 1.0};
const MaterialModel kSteelish{1.0, 0.3, 1.0};

}  // namespace

TEST_CASE("plane-stress elasticity matrix") {
  const Matrix3d d0 = elasticity_matrix(kUnitMaterial);
  CHECK(d0(0, 0) == 1.0);
  CHECK(d0(1, 1) == 1.0);
  CHECK(d0(2, 2) == 0.5);
  CHECK(d0(0, 1) == 0.0);
  const Matrix3d d = elasticity_matrix({3e7, 0.3, 1.0});
  CHECK(d(0, 0) == doctest::Approx(3e7 / 0.91).epsilon(1e-15));
  CHECK(d(0, 1) == doctest::Approx(0.3 * 3e7 / 0.91).epsilon(1e-15));
  CHECK(d(2, 2) == doctest::Approx(3e7 / 0.91 * 0.35).epsilon(1e-15));
  CHECK(max_abs(d - d.transpose()) == 0.0);
  Eigen::SelfAdjointEigenSolver<Matrix3d> es(d);
  CHECK(es.eigenvalues().minCoeff() > 0.0);

  CHECK(kind_of([] { validate(MaterialModel{0.0, 0.3, 1.0}); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { validate(MaterialModel{1.0, 0.5, 1.0}); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { validate(MaterialModel{1.0, -0.1, 1.0}); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { validate(MaterialModel{1.0, 0.3, 0.0}); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("Gauss-Legendre rules integrate polynomials of degree 2n-1") {
  for (int n = 1; n <= 4; ++n) {
    const auto r = gauss_legendre(n);
    REQUIRE(r.points.size() == static_cast<std::size_t>(n));
    for (int p = 0; p <= 2 * n - 1; ++p) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += r.weights[i] * std::pow(r.points[i], p);
      const double exact = p % 2 ? 0.0 : 2.0 / (p + 1);
      CHECK(s == doctest::Approx(exact).epsilon(1e-14));
    }
  }
  CHECK(kind_of([] { gauss_legendre(0); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { gauss_legendre(5); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("smoothed strain of simple fields on the unit square") {
  const ElementApproximation a(Scheme::Wachspress, kUnitSquare, 1);
  const auto cell = subdivide(kUnitSquare, 1)[0];
  const auto b = smoothed_b(cell, a, 2);
  CHECK(b.cell_area == doctest::Approx(1.0));
  const Vector8d translation = nodal(kUnitSquare, [](Point2) { return Point2{1, 0}; });
  CHECK((b.entries * translation).cwiseAbs().maxCoeff() < 1e-12);
  const Vector8d stretch = nodal(kUnitSquare, [](Point2 p) { return Point2{p.x, 0}; });
  const Eigen::Vector3d e = b.entries * stretch;
  CHECK(e(0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(e(1)) < 1e-14);
  CHECK(std::abs(e(2)) < 1e-14);
}

TEST_CASE("averaged and Wachspress operators coincide on the square with midpoint quadrature") {
  const ElementApproximation a(Scheme::Wachspress, kUnitSquare, 4);
  const ElementApproximation b(Scheme::Averaged, kUnitSquare, 4);
  for (const auto& cell : subdivide(kUnitSquare, 4)) {
    const auto ba = smoothed_b(cell, a, 2), bb = smoothed_b(cell, b, 1);
    CHECK(max_abs(ba.entries - bb.entries) < 1e-12);
  }
}

TEST_CASE("collapsed cell is rejected") {
  const ElementApproximation a(Scheme::Wachspress, kUnitSquare, 1);
  SmoothingCell flat{{{0, 0}, {1, 0}, {2, 0}, {1, 0}}, 0.0, 0};
  CHECK(kind_of([&] { smoothed_b(flat, a, 2); }) == ErrorKind::ZeroArea);
}

TEST_CASE("averaged scheme off the skeleton propagates") {
  // a k=2 averaged basis asked to integrate over the k=4 cells leaves the skeleton
  const ElementApproximation b(Scheme::Averaged, kUnitSquare, 2);
  const auto cells = subdivide(kUnitSquare, 4);
  CHECK(kind_of([&] { smoothed_b(cells[0], b, 1); }) == ErrorKind::OffSkeleton);
}

TEST_CASE("SC4Q4 stiffness of the unit square against area integration") {
  const Matrix3d d = elasticity_matrix(kUnitMaterial);
  const StiffnessSettings s{Scheme::Wachspress, 4};
  const Matrix8d k = element_stiffness(kUnitSquare, s, kUnitMaterial).k;
  const Matrix8d oracle = rectangle_smoothed_stiffness_by_area(1, 1, d, 2, 2);
  CHECK(max_abs(k - oracle) < 1e-12);

  // smoothing drops the linear strain variation inside each cell, so SFEM is softer than FEM
  const Matrix8d fem = rectangle_fem_stiffness(1, 1, d);
  Eigen::SelfAdjointEigenSolver<Matrix8d> es(fem - k);
  CHECK(es.eigenvalues().minCoeff() > -1e-12);
  CHECK(max_abs(fem - k) > 1e-3);
}

TEST_CASE("SC2Q4 and SC1Q4 stiffness of a rectangle against area integration") {
  const Matrix3d d = elasticity_matrix(kSteelish);
  const Quad rect{{{0, 0}, {3, 0}, {3, 0.5}, {0, 0.5}}};
  for (auto scheme : {Scheme::Wachspress, Scheme::Averaged, Scheme::Lagrange}) {
    const Matrix8d k2 = element_stiffness(rect, {scheme, 2}, kSteelish).k;
    CHECK(max_abs(k2 - rectangle_smoothed_stiffness_by_area(3, 0.5, d, 2, 1)) < 1e-12);
    const Matrix8d k2h = element_stiffness(rect, {scheme, 2, 0, SplitOrientation::Edge23To41}, kSteelish).k;
    CHECK(max_abs(k2h - rectangle_smoothed_stiffness_by_area(3, 0.5, d, 1, 2)) < 1e-12);
    const Matrix8d k1 = element_stiffness(rect, {scheme, 1}, kSteelish).k;
    CHECK(max_abs(k1 - rectangle_smoothed_stiffness_by_area(3, 0.5, d, 1, 1)) < 1e-12);
  }
}

TEST_CASE("stiffness rank and warnings") {
  const auto e1 = element_stiffness(kUnitSquare, {Scheme::Wachspress, 1}, kSteelish, 3);
  CHECK(e1.rank == 3);
  REQUIRE(e1.warnings.size() == 1);
  CHECK(e1.warnings[0].find("element 3") != std::string::npos);
  CHECK(e1.warnings[0].find("rank 3") != std::string::npos);
  for (int k : {2, 4}) {
    const auto e = element_stiffness(kParallelogram, {Scheme::Wachspress, k}, kSteelish);
    CHECK(e.rank == 5);
    CHECK(e.warnings.empty());
  }
  const Quad chevron{{{0, 0}, {2, 0}, {1, 0.5}, {1, 1}}};
  const auto ec = element_stiffness(chevron, {Scheme::Wachspress, 2}, kSteelish, 9);
  REQUIRE_FALSE(ec.warnings.empty());
  CHECK(ec.warnings[0].find("concave") != std::string::npos);
  CHECK(kind_of([] { element_stiffness(kUnitSquare, {Scheme::Wachspress, 3}, kSteelish); }) ==
        ErrorKind::UnsupportedSubdivision);
  CHECK(StiffnessSettings{Scheme::Averaged}.effective_quadrature() == 1);
  CHECK(StiffnessSettings{Scheme::Wachspress}.effective_quadrature() == 2);
  CHECK(StiffnessSettings{Scheme::Lagrange, 4, 3}.effective_quadrature() == 3);
}

TEST_CASE("scheme A versus scheme B: frozen SC4Q4 baselines") {
  // On a parallelogram the Wachspress trace is affine on every skeleton segment, so both
  // schemes integrate the same linear data exactly.
  const auto ka = element_stiffness(kParallelogram, {Scheme::Wachspress, 4}, kSteelish).k;
  const auto kb = element_stiffness(kParallelogram, {Scheme::Averaged, 4}, kSteelish).k;
  CHECK(max_abs(ka - kb) <= 1e-14 * max_abs(ka));

  const Quad general{{{0, 0}, {2, 0.2}, {1.8, 1.5}, {0.1, 1}}};
  const auto ga = element_stiffness(general, {Scheme::Wachspress, 4}, kSteelish).k;
  const auto gb = element_stiffness(general, {Scheme::Averaged, 4}, kSteelish).k;
  CHECK(max_abs(ga - gb) == doctest::Approx(0.0022031387268616198).epsilon(1e-9));
}

// ---------------------------------------------------------------------------
// properties over random convex quads

TEST_CASE("property: closed-boundary identity per cell") {
  std::mt19937_64 rng(200);
  for (int trial = 0; trial < 100; ++trial) {
    const Quad q = random_convex_quad(rng);
    const double h = diameter(q);
    for (int k : {1, 2, 4})
      for (const auto& cell : subdivide(q, k)) CHECK(norm(boundary_normal_integral(cell)) < 1e-13 * h);
  }
}

TEST_CASE("property: translations give zero smoothed strain for every scheme") {
  std::mt19937_64 rng(201);
  for (int trial = 0; trial < 100; ++trial) {
    const Quad q = random_convex_quad(rng);
    const Vector8d tx = nodal(q, [](Point2) { return Point2{1, 0}; });
    const Vector8d ty = nodal(q, [](Point2) { return Point2{0, 1}; });
    for (auto scheme : {Scheme::Wachspress, Scheme::Averaged, Scheme::Lagrange}) {
      const ElementApproximation ap(scheme, q, 4);
      StiffnessSettings s{scheme, 4};
      for (const auto& cell : subdivide(q, 4)) {
        const auto b = smoothed_b(cell, ap, s.effective_quadrature());
        const double scale = max_abs(b.entries);
        CHECK((b.entries * tx).cwiseAbs().maxCoeff() < 1e-12 * scale);
        CHECK((b.entries * ty).cwiseAbs().maxCoeff() < 1e-12 * scale);
      }
    }
  }
}

TEST_CASE("property: SC4Q4 Wachspress reproduces affine strains") {
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> g(-1.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const Quad q = random_convex_quad(rng);
    const double a11 = g(rng), a12 = g(rng), a21 = g(rng), a22 = g(rng), c1 = g(rng), c2 = g(rng);
    Vector8d u;
    for (int i = 0; i < 4; ++i) {
      u(2 * i) = c1 + a11 * q[i].x + a12 * q[i].y;
      u(2 * i + 1) = c2 + a21 * q[i].x + a22 * q[i].y;
    }
    const Eigen::Vector3d exact{a11, a22, a12 + a21};
    const ElementApproximation ap(Scheme::Wachspress, q, 4);
    for (const auto& cell : subdivide(q, 4)) {
      const Eigen::Vector3d e = smoothed_b(cell, ap, 2).entries * u;
      CHECK((e - exact).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("property: stiffness symmetry and rigid-body null space") {
  std::mt19937_64 rng(203);
  for (int trial = 0; trial < 100; ++trial) {
    const Quad q = random_convex_quad(rng);
    const Vector8d rot = nodal(q, [](Point2 p) { return Point2{-p.y, p.x}; });
    const Vector8d tx = nodal(q, [](Point2) { return Point2{1, 0}; });
    for (auto scheme : {Scheme::Wachspress, Scheme::Averaged})
      for (int k : {2, 4}) {
        const auto e = element_stiffness(q, {scheme, k}, kSteelish);
        const double scale = max_abs(e.k);
        CHECK(max_abs(e.k - e.k.transpose()) <= 1e-12 * scale);
        CHECK((e.k * rot).norm() <= 1e-9 * scale * rot.norm());
        CHECK((e.k * tx).norm() <= 1e-9 * scale * tx.norm());
        Eigen::SelfAdjointEigenSolver<Matrix8d> es(e.k);
        CHECK(es.eigenvalues().minCoeff() > -1e-12 * scale);
        CHECK(e.rank == 5);
      }
  }
}

TEST_CASE("property: schemes coincide on rectangles") {
  std::mt19937_64 rng(204);
  std::uniform_real_distribution<double> size(0.05, 10.0), shift(-20.0, 20.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double a = size(rng), b = size(rng), x0 = shift(rng), y0 = shift(rng);
    const Quad q{{{x0, y0}, {x0 + a, y0}, {x0 + a, y0 + b}, {x0, y0 + b}}};
    for (int k : {1, 2, 4}) {
      const auto ka = element_stiffness(q, {Scheme::Wachspress, k}, kSteelish).k;
      const auto kb = element_stiffness(q, {Scheme::Averaged, k}, kSteelish).k;
      const auto kc = element_stiffness(q, {Scheme::Lagrange, k}, kSteelish).k;
      const double scale = max_abs(ka);
      CHECK(max_abs(ka - kb) < 1e-10 * scale);
      CHECK(max_abs(ka - kc) < 1e-10 * scale);
    }
  }
}
