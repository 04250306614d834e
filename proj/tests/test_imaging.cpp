#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include <Eigen/Eigenvalues>

#include "dcomp/forward.hpp"
#include "dcomp/imaging.hpp"
#include "oracles.hpp"

using namespace dcomp;

namespace {

FarFieldMatrix point_scatterer(const Vec2& z0, double k, int M) {
  FarFieldMatrix F;
  F.grid = make_grid(kPi, M);
  F.k = k;
  F.entries.resize(M, M);
  for (int i = 0; i < M; ++i) {
    for (int j = 0; j < M; ++j) {
      const double ti = F.grid.theta_inc[std::size_t(i)], tj = F.grid.theta_obs[std::size_t(j)];
      const Vec2 dmx(std::cos(ti) - std::cos(tj), std::sin(ti) - std::sin(tj));
      F.entries(i, j) = std::exp(Complex(0.0, k * dmx.dot(z0)));
    }
  }
  return F;
}

SamplingGrid small_grid(int res) {
  SamplingGrid g;
  g.resolution = res;
  return g;
}

std::pair<int, int> argmax(const RMatrix& v) {
  Eigen::Index r = 0, c = 0;
  v.maxCoeff(&r, &c);
  return {int(r), int(c)};
}

FarFieldMatrix disk_full(int M, double radius = 2.0) {
  return solve_disk_series(radius, BoundaryCondition::Dirichlet, 5.0, make_grid(kPi, M), 50);
}

}  // namespace

TEST_CASE("DSM of zero data is zero") {
  FarFieldMatrix F;
  F.grid = make_grid(kPi / 2, 16);
  F.k = 5.0;
  F.entries = CMatrix::Zero(16, 16);
  CHECK(dsm(F, small_grid(11), 5.0).values.maxCoeff() == 0.0);
}

TEST_CASE("DSM of a point scatterer is (2 pi)^2 J0^2") {
  const Vec2 z0(0.8, -1.2);
  const double k = 5.0;
  const auto F = point_scatterer(z0, k, 160);
  const auto g = small_grid(41);
  const auto I = dsm(F, g, k);
  const double peak = 4 * kPi * kPi;
  double worst = 0.0;
  for (int iy = 0; iy < g.resolution; ++iy)
    for (int ix = 0; ix < g.resolution; ++ix)
      worst = std::max(worst, std::abs(I.values(iy, ix) - oracle::dsm_point(k, (g.point(ix, iy) - z0).norm())));
  CHECK(worst / peak < 1e-3);
  const auto [iy, ix] = argmax(I.values);
  CHECK((g.point(ix, iy) - z0).norm() <= g.cell());
}

TEST_CASE("DSM argmax lies within one cell of the disk") {
  const auto g = small_grid(41);
  const auto I = dsm(disk_full(128), g, 5.0);
  const auto [iy, ix] = argmax(I.values);
  CHECK(g.point(ix, iy).norm() <= 2.0 + g.cell());
}

TEST_CASE("DSM translation covariance") {
  const auto g = small_grid(41);
  const double cell = g.cell();
  const Vec2 h(5 * cell, -3 * cell);
  auto F = solve_nystrom_dirichlet(Boundary::peanut(), 5.0, make_grid(kPi, 64), NystromOptions{});
  auto G = F;
  for (int i = 0; i < 64; ++i)
    for (int j = 0; j < 64; ++j) {
      const double ti = F.grid.theta_inc[std::size_t(i)], tj = F.grid.theta_obs[std::size_t(j)];
      const Vec2 dmx(std::cos(ti) - std::cos(tj), std::sin(ti) - std::sin(tj));
      G.entries(i, j) *= std::exp(Complex(0.0, 5.0 * dmx.dot(h)));
    }
  const auto A = dsm(F, g, 5.0), B = dsm(G, g, 5.0);
  double worst = 0.0;
  for (int iy = 0; iy + 3 < g.resolution; ++iy)
    for (int ix = 5; ix < g.resolution; ++ix) worst = std::max(worst, std::abs(B.values(iy, ix) - A.values(iy + 3, ix - 5)));
  CHECK(worst < 1e-6 * A.values.maxCoeff());
}

TEST_CASE("DSM on limited data uses the available indices only") {
  const auto grid = make_grid(kPi / 2, 32);
  const auto full = solve_disk_series(2.0, BoundaryCondition::Dirichlet, 5.0, grid, 50);
  const auto small = solve_disk_series(2.0, BoundaryCondition::Dirichlet, 5.0, grid, 50, DataExtent::Limited);
  FarFieldMatrix padded = full;
  padded.entries.setZero();
  padded.entries.topLeftCorner(32, 32) = small.entries;
  const auto g = small_grid(15);
  const auto a = dsm(small, g, 5.0).values, b = dsm(padded, g, 5.0).values;
  CHECK((a - b).cwiseAbs().maxCoeff() < 1e-10 * b.maxCoeff());
}

TEST_CASE("DSM is invariant under relabeling of directions") {
  const auto F = solve_nystrom_dirichlet(Boundary::peanut(), 5.0, make_grid(kPi, 32), NystromOptions{});
  std::vector<int> pi(32), po(32);
  std::iota(pi.begin(), pi.end(), 0);
  std::iota(po.begin(), po.end(), 0);
  std::mt19937 rng(4);
  std::shuffle(pi.begin(), pi.end(), rng);
  std::shuffle(po.begin(), po.end(), rng);
  FarFieldMatrix G = F;
  for (int i = 0; i < 32; ++i) {
    G.grid.theta_inc[std::size_t(i)] = F.grid.theta_inc[std::size_t(pi[std::size_t(i)])];
    G.grid.theta_obs[std::size_t(i)] = F.grid.theta_obs[std::size_t(po[std::size_t(i)])];
    for (int j = 0; j < 32; ++j) G.entries(i, j) = F.entries(pi[std::size_t(i)], po[std::size_t(j)]);
  }
  const auto g = small_grid(21);
  CHECK((dsm(F, g, 5.0).values - dsm(G, g, 5.0).values).cwiseAbs().maxCoeff() < 1e-10 * dsm(F, g, 5.0).values.maxCoeff());
}

TEST_CASE("FM is invariant under a cyclic relabeling of the paired grid") {
  const auto F = solve_nystrom_dirichlet(Boundary::peanut(), 5.0, make_grid(kPi, 32), NystromOptions{});
  const int s = 7;
  FarFieldMatrix G = F;
  for (int i = 0; i < 32; ++i) {
    G.grid.theta_inc[std::size_t(i)] = F.grid.theta_inc[std::size_t((i + s) % 32)];
    G.grid.theta_obs[std::size_t(i)] = F.grid.theta_obs[std::size_t((i + s) % 32)];
    for (int j = 0; j < 32; ++j) G.entries(i, j) = F.entries((i + s) % 32, (j + s) % 32);
  }
  const auto g = small_grid(21);
  const auto a = fm(F, g, 5.0).values, b = fm(G, g, 5.0).values;
  CHECK((a - b).cwiseAbs().maxCoeff() < 1e-8 * a.maxCoeff());
}

TEST_CASE("far-field operator of the disk has eigenvalues 8 pi i rho_n") {
  const int M = 64;
  const auto F = disk_full(M);
  const CMatrix A = far_field_operator(F);
  double worst = 0.0;
  for (int n = -M / 2 + 1; n < M / 2; ++n) {
    const double ka = 10.0;
    const Complex rho = oracle::std_j(n, ka) / Complex(oracle::std_j(n, ka), oracle::std_y(n, ka));
    const Complex lambda = 8.0 * kPi * Complex(0.0, 1.0) * rho;
    CVector v(M);
    for (int j = 0; j < M; ++j) v(j) = std::exp(Complex(0.0, n * F.grid.theta_obs[std::size_t(j)]));
    worst = std::max(worst, (A * v - lambda * v).norm() / v.norm());
  }
  CHECK(worst < 1e-6);
  // same set from a general eigensolver, compared by sorted magnitude
  Eigen::ComplexEigenSolver<CMatrix> es(A);
  std::vector<double> got, want;
  for (int j = 0; j < M; ++j) got.push_back(std::abs(es.eigenvalues()(j)));
  for (int n = -M / 2; n < M / 2; ++n)
    want.push_back(8.0 * kPi * std::abs(oracle::std_j(n, 10.0) / Complex(oracle::std_j(n, 10.0), oracle::std_y(n, 10.0))));
  std::sort(got.begin(), got.end());
  std::sort(want.begin(), want.end());
  for (int j = 0; j < M; ++j) CHECK(std::abs(got[std::size_t(j)] - want[std::size_t(j)]) < 1e-6);
}

TEST_CASE("F_sharp is positive semidefinite") {
  for (const auto& F : {disk_full(64), solve_nystrom_neumann(Boundary::peanut(), 5.0, make_grid(kPi, 64), NystromOptions{})}) {
    const CMatrix S = sharp_operator(far_field_operator(F));
    CHECK((S - S.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(S);
    CHECK(es.eigenvalues().minCoeff() >= -1e-10);
  }
}

TEST_CASE("FM scales linearly with the data and keeps its argmax") {
  // asymmetric shape so the maximum is unique
  const auto shape = Boundary::custom({1.2, 0.1, 0.2}, {0.0, 0.15}, {0.5, -0.3});
  const auto F = solve_nystrom_dirichlet(shape, 5.0, make_grid(kPi, 64), NystromOptions{});
  FarFieldMatrix G = F;
  G.entries *= 3.5;
  const auto g = small_grid(31);
  const auto a = fm(F, g, 5.0).values, b = fm(G, g, 5.0).values;
  // 1/||g_z||^2 with F_sharp^{1/2} g_z = r_z grows with F
  CHECK((b - 3.5 * a).cwiseAbs().maxCoeff() < 1e-9 * b.maxCoeff());
  CHECK(argmax(a) == argmax(b));
  const double tau = 0.5;
  CHECK(((a.array() > tau * a.maxCoeff()) == (b.array() > tau * b.maxCoeff())).all());
}

TEST_CASE("FM contrast on the disk") {
  const auto g = small_grid(41);
  const auto I = fm(disk_full(128), g, 5.0);
  const double wavelength = kTwoPi / 5.0;
  double in = 0.0, out = 0.0;
  int nin = 0, nout = 0;
  for (int iy = 0; iy < g.resolution; ++iy)
    for (int ix = 0; ix < g.resolution; ++ix) {
      const double r = g.point(ix, iy).norm();
      if (r < 2.0) in += I.values(iy, ix), ++nin;
      if (r > 2.0 + wavelength) out += I.values(iy, ix), ++nout;
    }
  const double ratio = (in / nin) / (out / nout);
  MESSAGE("interior/exterior mean ratio " << ratio);
  CHECK(ratio >= 10.0);
}

TEST_CASE("FM regularization schemes and Morozov") {
  const auto F = add_noise(disk_full(64), 0.05, 9);
  const auto g = small_grid(21);
  for (auto r : {RegularizationSpec::tsvd(1e-8), RegularizationSpec::spectral(1e-3), RegularizationSpec::tikhonov(1e-3)}) {
    const auto I = fm(F, g, 5.0, r, 0.05);
    CHECK(I.values.allFinite());
    CHECK(I.values.minCoeff() >= 0.0);
    CHECK(I.metadata.at("fm_reg") == r.to_string());
    const auto [iy, ix] = argmax(I.values);
    CHECK(g.point(ix, iy).norm() < 2.0 + g.cell());
  }
  // Morozov picks a different parameter than the fixed one
  const auto fixed = fm(F, g, 5.0, RegularizationSpec::tikhonov(1e-3), 0.0).values;
  const auto moro = fm(F, g, 5.0, RegularizationSpec::tikhonov(1e-3), 0.05).values;
  CHECK((fixed - moro).cwiseAbs().maxCoeff() > 0.0);
  CHECK_THROWS_AS(fm(F, g, 5.0, RegularizationSpec::tsvd(1e-8), -0.1), std::invalid_argument);
}

TEST_CASE("parallel kernels match the serial reference") {
  const auto F = solve_nystrom_dirichlet(Boundary::peanut(), 5.0, make_grid(kPi, 48), NystromOptions{});
  const auto g = small_grid(17);
  const auto a = dsm(F, g, 5.0, Exec::Parallel).values, b = reference::dsm(F, g, 5.0).values;
  CHECK((a - b).cwiseAbs().maxCoeff() < 1e-10 * b.maxCoeff());
  CHECK((dsm(F, g, 5.0, Exec::Serial).values - a).cwiseAbs().maxCoeff() < 1e-12 * b.maxCoeff());
  for (auto r : {RegularizationSpec::tsvd(1e-8), RegularizationSpec::tikhonov(1e-3)}) {
    const auto c = fm(F, g, 5.0, r, 0.02).values, d = reference::fm(F, g, 5.0, r, 0.02).values;
    CHECK((c - d).cwiseAbs().maxCoeff() < 1e-8 * d.maxCoeff());
  }
}

TEST_CASE("imaging errors") {
  const auto g = small_grid(11);
  FarFieldMatrix lim;
  lim.grid = make_grid(kPi / 2, 16);
  lim.k = 5.0;
  lim.entries = CMatrix::Ones(16, 16);
  CHECK_THROWS_AS(fm(lim, g, 5.0), std::invalid_argument);
  FarFieldMatrix zero = disk_full(16);
  zero.entries.setZero();
  CHECK_THROWS_AS(fm(zero, g, 5.0), std::invalid_argument);
  FarFieldMatrix odd = disk_full(15);
  CHECK_THROWS_AS(fm(odd, g, 5.0), std::invalid_argument);
  CHECK_THROWS_AS(dsm(disk_full(16), g, -1.0), std::invalid_argument);
  SamplingGrid bad = g;
  bad.resolution = 1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = g;
  bad.x_max = bad.x_min;
  CHECK_THROWS_AS(dsm(disk_full(16), bad, 5.0), std::invalid_argument);
  CHECK(parse_imaging_method("fm") == ImagingMethod::FM);
  CHECK_THROWS(parse_imaging_method("lsm"));
}
