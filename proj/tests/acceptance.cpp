// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <Eigen/Eigenvalues>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "oracles.hpp"
#include "sfem/benchmarks.hpp"
#include "sfem/error.hpp"

using namespace sfem;
using namespace sfem::testing;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

char buffer[512];

template <class... Args>
std::string fmt(const char* f, Args... args) {
  std::snprintf(buffer, sizeof buffer, f, args...);
  return buffer;
}

const Point2 kQ{0.25, 0.5};

Outcome values_at_q() {
  const auto a = WachspressBasis(kParallelogram).values(kQ);
  const auto c = LagrangeBasis(kParallelogram).values(kQ);
  const std::array<double, 4> ea{0.5, 0, 0, 0.5}, ec{0.375, 0.125, -0.125, 0.625};
  double da = 0, dc = 0;
  for (int i = 0; i < 4; ++i) {
    da = std::max(da, std::abs(a[i] - ea[i]));
    dc = std::max(dc, std::abs(c[i] - ec[i]));
  }
  return {da < 1e-12 && dc < 1e-12, fmt("scheme A max dev %.2e, scheme C max dev %.2e", da, dc)};
}

Outcome closed_forms() {
  const WachspressBasis w(kParallelogram);
  std::mt19937_64 rng(1);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Point2 p = random_interior_point(kParallelogram, rng);
    const auto v = w.values(p);
    const auto r = parallelogram_closed_form(p);
    for (int j = 0; j < 4; ++j) worst = std::max(worst, std::abs(v[j] - r[j]));
  }
  return {worst < 1e-12, fmt("1000 points, max |dN| = %.2e", worst)};
}

Outcome table_one() {
  const std::array<std::array<double, 4>, 9> table{{{1, 0, 0, 0},
                                                    {0, 1, 0, 0},
                                                    {0, 0, 1, 0},
                                                    {0, 0, 0, 1},
                                                    {0.5, 0.5, 0, 0},
                                                    {0, 0.5, 0.5, 0},
                                                    {0, 0, 0.5, 0.5},
                                                    {0.5, 0, 0, 0.5},
                                                    {0.25, 0.25, 0.25, 0.25}}};
  int exact = 0;
  for (const Quad& q : {kUnitSquare, kParallelogram}) {
    const AveragedBasis b(q, 4);
    for (int s = 1; s <= 9; ++s) {
      const auto v = b.values(b.site(s));
      bool same = true;
      for (int i = 0; i < 4; ++i) same &= v[i] == table[s - 1][i];
      exact += same;
    }
  }
  return {exact == 18, fmt("%d of 18 site rows exact (square and parallelogram)", exact)};
}

Outcome patch_tests() {
  double worst_regular = 0, worst_distorted = 0;
  for (int k : {2, 4}) {
    worst_regular = std::max(worst_regular, run_patch_test({Scheme::Wachspress, k}, false));
    worst_distorted = std::max(worst_distorted, run_patch_test({Scheme::Wachspress, k}, true));
  }
  return {worst_regular < 1e-10 && worst_distorted < 1e-9,
          fmt("regular 2x2 %.2e, distorted 3x3 (alpha 0.4) %.2e", worst_regular, worst_distorted)};
}

Outcome exact_energy() {
  const double u = exact_strain_energy(TimoshenkoBeam{});
  return {std::abs(u - 0.0398333) < 1e-6, fmt("U = %.9f", u)};
}

const std::vector<double> kIndices{0.5, 1, 2, 4};

Outcome regular_convergence() {
  const TimoshenkoBeam beam;
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  for (auto scheme : {Scheme::Wachspress, Scheme::Averaged})
    for (int k : {2, 4}) {
      const auto s = run_convergence_study(beam, {scheme, k}, 0.0, {}, kIndices);
      const double rel = std::abs(s.records.back().strain_energy - 0.0398333) / 0.0398333;
      const bool pass = rel < 0.01 && s.fit.slope >= 0.85 && s.fit.slope <= 1.15 && s.fit.r_squared > 0.99;
      ok &= pass;
      detail += fmt("%s%c/SC%dQ4 rate %.3f r2 %.5f dU %.3f%%", detail.empty() ? "" : "; ",
                    scheme == Scheme::Wachspress ? 'A' : 'B', k, s.fit.slope, s.fit.r_squared, 100 * rel);
    }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  ok &= secs < 30.0;
  return {ok, detail + fmt("; %.2f s", secs)};
}

Outcome scheme_equivalence() {
  const TimoshenkoBeam beam;
  bool ok = true;
  double worst_energy = 0.0;
  for (int k : {2, 4}) {
    const auto a = run_convergence_study(beam, {Scheme::Wachspress, k}, 0.0, {}, kIndices);
    const auto b = run_convergence_study(beam, {Scheme::Averaged, k}, 0.0, {}, kIndices);
    for (std::size_t i = 0; i < a.records.size(); ++i)
      worst_energy = std::max(worst_energy, std::abs(a.records[i].strain_energy - b.records[i].strain_energy) /
                                                a.records[i].strain_energy);
  }
  ok &= worst_energy < 1e-10;
  std::string detail = fmt("regular max rel dU %.2e", worst_energy);
  for (double alpha : {0.2, 0.5})
    for (int k : {2, 4}) {
      const auto a = run_convergence_study(beam, {Scheme::Wachspress, k}, alpha, {1, 2, 3}, kIndices);
      const auto b = run_convergence_study(beam, {Scheme::Averaged, k}, alpha, {1, 2, 3}, kIndices);
      const double diff = std::abs(a.fit.slope - b.fit.slope);
      ok &= diff < 0.2;
      detail += fmt("; alpha %.1f SC%dQ4 rates %.3f/%.3f", alpha, k, a.fit.slope, b.fit.slope);
    }
  return {ok, detail};
}

// Each property runs over 100 random convex quads; returns the number of quads that failed.
Outcome property_suites() {
  std::mt19937_64 rng(8);
  const int n = 100;
  std::array<int, 9> failures{};
  const MaterialModel material{1.0, 0.3, 1.0};
  for (int trial = 0; trial < n; ++trial) {
    const Quad q = random_convex_quad(rng);
    const WachspressBasis w(q);
    const LagrangeBasis l(q);
    const double h = diameter(q);
    bool pu = true, kd = true, el = true, lc = true, pos = true, fd = true;
    for (int i = 0; i < 100; ++i) {
      const Point2 p = random_interior_point(q, rng);
      const auto v = w.values(p);
      pu &= std::abs(v.sum() - 1) < 1e-12 && std::abs(l.values(p).sum() - 1) < 1e-12;
      Point2 r;
      for (int j = 0; j < 4; ++j) {
        r = r + v[j] * q[j];
        pos &= v[j] >= -1e-12;
      }
      lc &= norm(r - p) < 1e-10 * std::max(1.0, h);
    }
    const AveragedBasis b(q, 4);
    for (int j = 0; j < 4; ++j) {
      const auto va = w.values(q[j]), vb = b.values(q[j]), vc = l.values(q[j]);
      for (int i = 0; i < 4; ++i)
        kd &= std::abs(va[i] - (i == j)) < 1e-12 && std::abs(vb[i] - (i == j)) < 1e-12 &&
              std::abs(vc[i] - (i == j)) < 1e-12;
      for (int s = 0; s <= 10; ++s) {
        const double t = s / 10.0;
        const auto v = w.values((1 - t) * q[j] + t * q[(j + 1) % 4]);
        el &= std::abs(v[j] - (1 - t)) < 1e-10 && std::abs(v[(j + 1) % 4] - t) < 1e-10 &&
              std::abs(v[(j + 2) % 4]) < 1e-10 && std::abs(v[(j + 3) % 4]) < 1e-10;
      }
    }
    const double step = 1e-6 * h;
    for (int i = 0; i < 10; ++i) {
      const Point2 p = random_interior_point(q, rng);
      const auto g = w.gradients(p);
      double gmax = 0;
      for (auto gi : g) gmax = std::max(gmax, norm(gi));
      const auto xp = w.values(p + Point2{step, 0}), xm = w.values(p - Point2{step, 0});
      const auto yp = w.values(p + Point2{0, step}), ym = w.values(p - Point2{0, step});
      for (int j = 0; j < 4; ++j) {
        const Point2 d{(xp[j] - xm[j]) / (2 * step), (yp[j] - ym[j]) / (2 * step)};
        fd &= norm(d - g[j]) <= 1e-6 * gmax;
      }
    }
    bool closed = true;
    for (int k : {1, 2, 4})
      for (const auto& c : subdivide(q, k)) closed &= norm(boundary_normal_integral(c)) < 1e-13 * h;

    bool stiff = true;
    Vector8d rot;
    for (int i = 0; i < 4; ++i) {
      rot(2 * i) = -q[i].y;
      rot(2 * i + 1) = q[i].x;
    }
    for (int k : {2, 4}) {
      const auto e = element_stiffness(q, {Scheme::Wachspress, k}, material);
      const double scale = e.k.cwiseAbs().maxCoeff();
      Eigen::SelfAdjointEigenSolver<Matrix8d> es(e.k);
      stiff &= (e.k - e.k.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale &&
               (e.k * rot).norm() <= 1e-9 * scale * rot.norm() && e.rank == 5 &&
               es.eigenvalues().minCoeff() > -1e-12 * scale;
    }
    failures[0] += !pu;
    failures[1] += !kd;
    failures[2] += !el;
    failures[3] += !lc;
    failures[4] += !pos;
    failures[5] += !fd;
    failures[6] += !closed;
    failures[7] += !stiff;
  }
  // rectangles: all three schemes give the same shape functions and the same stiffness
  std::uniform_real_distribution<double> size(0.05, 10.0), shift(-20.0, 20.0), t(0.0, 1.0);
  for (int trial = 0; trial < n; ++trial) {
    const double a = size(rng), bb = size(rng), x0 = shift(rng), y0 = shift(rng);
    const Quad q{{{x0, y0}, {x0 + a, y0}, {x0 + a, y0 + bb}, {x0, y0 + bb}}};
    const WachspressBasis w(q);
    const LagrangeBasis l(q);
    bool same = true;
    for (int i = 0; i < 20; ++i) {
      const Point2 p{x0 + a * t(rng), y0 + bb * t(rng)};
      for (int j = 0; j < 4; ++j) same &= std::abs(w.values(p)[j] - l.values(p)[j]) < 1e-12;
    }
    const auto ka = element_stiffness(q, {Scheme::Wachspress, 4}, material).k;
    const auto kb = element_stiffness(q, {Scheme::Averaged, 4}, material).k;
    const auto kc = element_stiffness(q, {Scheme::Lagrange, 4}, material).k;
    const double scale = ka.cwiseAbs().maxCoeff();
    same &= (ka - kb).cwiseAbs().maxCoeff() < 1e-10 * scale && (ka - kc).cwiseAbs().maxCoeff() < 1e-10 * scale;
    failures[8] += !same;
  }
  const char* names[] = {"unity", "kronecker", "edge-linear", "completeness", "positivity",
                         "gradient-fd", "closed-boundary", "stiffness", "rectangles"};
  std::string detail = fmt("%d quads each;", n);
  bool ok = true;
  for (int i = 0; i < 9; ++i) {
    detail += fmt(" %s %d/%d", names[i], n - failures[i], n);
    ok &= failures[i] == 0;
  }
  return {ok, detail};
}

Outcome negative_control() {
  bool raised = false;
  try {
    LagrangeBasis({{{0, -1}, {1, 0}, {0, 1}, {-1, 0}}});
  } catch (const Error& e) {
    raised = e.kind() == ErrorKind::NonExistent;
  }
  const double n3 = LagrangeBasis(kParallelogram).values(kQ)[2];
  return {raised && n3 < 0.0, fmt("NonExistent raised: %s, N3(Q) = %.6f", raised ? "yes" : "no", n3)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"shape-function values at Q", values_at_q},
      {"parallelogram closed forms", closed_forms},
      {"averaged site table", table_one},
      {"patch test", patch_tests},
      {"exact beam energy", exact_energy},
      {"regular beam convergence", regular_convergence},
      {"scheme A/B equivalence", scheme_equivalence},
      {"property suites", property_suites},
      {"Lagrange negative control", negative_control},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
  }
  std::printf("%zu of %zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
