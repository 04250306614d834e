#include "dcomp/forward.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "dcomp/error.hpp"
#include "dcomp/log.hpp"
#include "dcomp/specfun.hpp"

namespace dcomp {
namespace {

constexpr double kEulerGamma = 0.577215664901532860606512090082;
constexpr double kIllConditioned = 1e8;

void check_grid_paired(const ApertureGrid& grid) {
  if (grid.theta_obs.size() != static_cast<std::size_t>(grid.M) ||
      grid.theta_inc.size() != static_cast<std::size_t>(grid.M)) {
    throw std::invalid_argument("aperture grid arrays do not match M");
  }
  for (int j = 0; j < grid.M; ++j) {
    const auto i = static_cast<std::size_t>(j);
    if (std::abs(grid.theta_inc[i] - grid.theta_obs[i] - kPi) > 1e-12) {
      throw std::invalid_argument("aperture grid is not paired: theta_inc != theta_obs + pi");
    }
  }
}

FarFieldMatrix make_result(CMatrix entries, const ApertureGrid& grid, double k) {
  FarFieldMatrix F;
  F.entries = std::move(entries);
  F.grid = grid;
  F.k = k;
  return F;
}

int extent_size(const ApertureGrid& grid, DataExtent extent) {
  return extent == DataExtent::Full ? grid.M : grid.L;
}

// Kress weights R_l for the log-singular part, l = |i - j|, with n = nodes / 2.
std::vector<double> log_weights(int nodes) {
  const int n = nodes / 2;
  std::vector<double> R(static_cast<std::size_t>(nodes));
  for (int l = 0; l < nodes; ++l) {
    double s = 0.0;
    for (int m = 1; m < n; ++m) s += std::cos(m * l * kPi / n) / m;
    R[static_cast<std::size_t>(l)] = -kTwoPi / n * s - kPi / (double(n) * n) * ((l % 2 == 0) ? 1.0 : -1.0);
  }
  return R;
}

}  // namespace

Complex disk_series_coefficient(int n, double radius, BoundaryCondition bc, double k) {
  const double ka = k * radius;
  Complex rho;
  if (bc == BoundaryCondition::Dirichlet) {
    const CylFunValue v = bessel_jy(n, ka);
    rho = v.j / v.h1();
  } else {
    rho = bessel_j_derivative(n, ka) / hankel1_derivative(n, ka);
  }
  if (!std::isfinite(rho.real()) || !std::isfinite(rho.imag())) {
    throw NumericalError("disk series: Hankel denominator out of range at order " + std::to_string(n));
  }
  return rho;
}

FarFieldMatrix solve_disk_series(double radius, BoundaryCondition bc, double k, const ApertureGrid& grid,
                                 int truncation, DataExtent extent) {
  if (!(radius > 0.0) || !(k > 0.0)) throw std::invalid_argument("disk series: radius and k must be positive");
  const int minimum = static_cast<int>(std::ceil(k * radius)) + 20;
  if (truncation < minimum) {
    throw std::invalid_argument("disk series: truncation must be >= ceil(ka) + 20 = " + std::to_string(minimum));
  }
  check_grid_paired(grid);

  std::vector<Complex> rho(static_cast<std::size_t>(truncation) + 1);
  for (int n = 0; n <= truncation; ++n) rho[static_cast<std::size_t>(n)] = disk_series_coefficient(n, radius, bc, k);

  const int size = extent_size(grid, extent);
  CMatrix entries(size, size);
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j) {
      const double phase = grid.theta_obs[static_cast<std::size_t>(j)] - grid.theta_inc[static_cast<std::size_t>(i)];
      Complex sum = rho[0];
      for (int n = 1; n <= truncation; ++n) sum += 2.0 * rho[static_cast<std::size_t>(n)] * std::cos(n * phase);
      entries(i, j) = 4.0 * kI * sum;
    }
  }
  FarFieldMatrix F = make_result(std::move(entries), grid, k);
  F.metadata["source"] = "disk-series";
  return F;
}

NystromSolver::NystromSolver(const Boundary& boundary, BoundaryCondition bc, double k, NystromOptions options)
    : bc_(bc), k_(k), eta_(k), options_(options) {
  if (!(k > 0.0)) throw std::invalid_argument("nystrom: wavenumber must be positive");
  if (options_.n_quad < 8 || options_.n_quad % 2 != 0) {
    throw std::invalid_argument("nystrom: n_quad must be even and >= 8");
  }
  nodes_ = boundary_points(boundary, options_.n_quad);
  // Second derivatives are needed on the diagonal; keep them via the curve.
  system_.resize(options_.n_quad, options_.n_quad);
  std::vector<Vec2> second(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) second[i] = boundary.eval(nodes_[i].t).ddx;

  const int N = options_.n_quad;
  const int n = N / 2;
  const std::vector<double> R = log_weights(N);
  const double w = kPi / n;

  parallel_for(options_.exec, N, [&](std::ptrdiff_t row) {
    const auto i = static_cast<std::size_t>(row);
    const BoundarySample& xi = nodes_[i];
    for (int col = 0; col < N; ++col) {
      const auto j = static_cast<std::size_t>(col);
      const BoundarySample& yj = nodes_[j];
      const double Rw = R[static_cast<std::size_t>(std::abs(static_cast<int>(row) - col))];
      Complex logpart, smooth;
      if (i == j) {
        // nu(t) . x''(t) / |x'|^2 with unnormalised normal nu = |x'| n
        const double curv = xi.normal.dot(second[i]) / xi.speed;
        if (bc_ == BoundaryCondition::Dirichlet) {
          const double M1 = -xi.speed / kTwoPi;
          const Complex M2 = xi.speed * (0.5 * kI - kEulerGamma / kPi - std::log(0.5 * k_ * xi.speed) / kPi);
          const double L2 = curv / kTwoPi;
          logpart = -kI * eta_ * M1;
          smooth = L2 - kI * eta_ * M2;
        } else {
          logpart = 0.0;
          smooth = curv / kTwoPi;
        }
      } else {
        const Vec2 delta = xi.point - yj.point;
        const double r = delta.norm();
        const CylFunTable h = bessel_jy_table(1, k_ * r);
        const Complex H0(h.j[0], h.y[0]);
        const Complex H1(h.j[1], h.y[1]);
        const double s = std::sin(0.5 * (xi.t - yj.t));
        const double logk = std::log(4.0 * s * s);
        if (bc_ == BoundaryCondition::Dirichlet) {
          const double nu_dot = yj.speed * yj.normal.dot(delta);  // nu(tau) . (x(t) - x(tau))
          const Complex L = 0.5 * kI * k_ * nu_dot * H1 / r;
          const double L1 = -k_ / kTwoPi * nu_dot * h.j[1] / r;
          const Complex M = 0.5 * kI * H0 * yj.speed;
          const double M1 = -h.j[0] * yj.speed / kTwoPi;
          logpart = L1 - kI * eta_ * M1;
          smooth = (L - L1 * logk) - kI * eta_ * (M - M1 * logk);
        } else {
          const double nu_dot = xi.normal.dot(delta);  // unit normal at the target
          const Complex Lp = -0.5 * kI * k_ * nu_dot * H1 * yj.speed / r;
          const double L1p = k_ / kTwoPi * nu_dot * h.j[1] * yj.speed / r;
          logpart = L1p;
          smooth = Lp - L1p * logk;
        }
      }
      const Complex kernel = Rw * logpart + w * smooth;
      // Dirichlet: psi + int (L - i eta M) psi ; Neumann: psi - int K' psi
      system_(row, col) = (bc_ == BoundaryCondition::Dirichlet ? kernel : -kernel) + (i == j ? 1.0 : 0.0);
    }
  });

  lu_.compute(system_);
  const double rcond = lu_.rcond();
  condition_ = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
  if (!std::isfinite(condition_) || condition_ > 1e14) {
    std::ostringstream msg;
    msg << "nystrom: system matrix is singular to working precision (condition estimate " << condition_ << ")";
    throw NumericalError(msg.str());
  }
  if (bc_ == BoundaryCondition::Neumann && condition_ > kIllConditioned) {
    std::ostringstream msg;
    msg << "nystrom (neumann): condition estimate " << condition_
        << " suggests k is near an interior eigenvalue; consider perturbing k";
    warn(msg.str());
  }
}

DensitySolve NystromSolver::solve(double theta_d) const {
  const Vec2 d = direction(theta_d);
  const Eigen::Index N = static_cast<Eigen::Index>(nodes_.size());
  CVector rhs(N);
  for (Eigen::Index i = 0; i < N; ++i) {
    const BoundarySample& x = nodes_[static_cast<std::size_t>(i)];
    const Complex incident = options_.incident_amplitude * std::exp(kI * k_ * x.point.dot(d));
    if (bc_ == BoundaryCondition::Dirichlet) {
      rhs(i) = -2.0 * incident;
    } else {
      rhs(i) = 2.0 * kI * k_ * x.normal.dot(d) * incident;
    }
  }
  DensitySolve out;
  out.n_quad = static_cast<int>(N);
  out.density = lu_.solve(rhs);
  const double rn = rhs.norm();
  out.residual = rn == 0.0 ? (system_ * out.density).norm() : (system_ * out.density - rhs).norm() / rn;
  return out;
}

Complex NystromSolver::far_field(const DensitySolve& solve, double theta_obs) const {
  const Vec2 xhat = direction(theta_obs);
  const double w = kTwoPi / static_cast<double>(nodes_.size());
  Complex sum = 0.0;
  for (std::size_t j = 0; j < nodes_.size(); ++j) {
    const BoundarySample& y = nodes_[j];
    const Complex plane = std::exp(-kI * k_ * xhat.dot(y.point));
    Complex weight;
    if (bc_ == BoundaryCondition::Dirichlet) {
      weight = (-kI * k_ * xhat.dot(y.normal) - kI * eta_) * y.speed;
    } else {
      weight = y.speed;
    }
    sum += weight * plane * solve.density(static_cast<Eigen::Index>(j));
  }
  return w * sum;
}

CMatrix nystrom_far_field(const NystromSolver& solver, std::span<const double> inc_angles,
                          std::span<const double> obs_angles, Exec exec) {
  CMatrix out(static_cast<Eigen::Index>(inc_angles.size()), static_cast<Eigen::Index>(obs_angles.size()));
  parallel_for(exec, static_cast<std::ptrdiff_t>(inc_angles.size()), [&](std::ptrdiff_t i) {
    const DensitySolve density = solver.solve(inc_angles[static_cast<std::size_t>(i)]);
    for (std::size_t j = 0; j < obs_angles.size(); ++j) {
      out(i, static_cast<Eigen::Index>(j)) = solver.far_field(density, obs_angles[j]);
    }
  });
  return out;
}

FarFieldMatrix solve_nystrom(const Boundary& b, BoundaryCondition bc, double k, const ApertureGrid& grid,
                             const NystromOptions& options, DataExtent extent) {
  check_grid_paired(grid);
  const NystromSolver solver(b, bc, k, options);
  const auto size = static_cast<std::size_t>(extent_size(grid, extent));
  CMatrix entries = nystrom_far_field(solver, std::span(grid.theta_inc.data(), size),
                                      std::span(grid.theta_obs.data(), size), options.exec);
  FarFieldMatrix F = make_result(std::move(entries), grid, k);
  F.metadata["source"] = "nystrom-" + to_string(bc);
  F.metadata["n_quad"] = std::to_string(options.n_quad);
  return F;
}

FarFieldMatrix solve_nystrom_dirichlet(const Boundary& b, double k, const ApertureGrid& grid,
                                       const NystromOptions& options, DataExtent extent) {
  return solve_nystrom(b, BoundaryCondition::Dirichlet, k, grid, options, extent);
}

FarFieldMatrix solve_nystrom_neumann(const Boundary& b, double k, const ApertureGrid& grid,
                                     const NystromOptions& options, DataExtent extent) {
  return solve_nystrom(b, BoundaryCondition::Neumann, k, grid, options, extent);
}

CMatrix add_noise(const CMatrix& entries, double delta, std::uint64_t seed) {
  if (!(delta >= 0.0)) throw std::invalid_argument("add_noise: delta must be nonnegative");
  const double scale = entries.norm();
  if (delta == 0.0 || scale == 0.0) return entries;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix R(entries.rows(), entries.cols());
  // R1 fills first, then R2, both row-major over the matrix.
  for (Eigen::Index i = 0; i < R.rows(); ++i)
    for (Eigen::Index j = 0; j < R.cols(); ++j) R(i, j).real(normal(rng));
  for (Eigen::Index i = 0; i < R.rows(); ++i)
    for (Eigen::Index j = 0; j < R.cols(); ++j) R(i, j).imag(normal(rng));
  return entries + (delta * scale / R.norm()) * R;
}

FarFieldMatrix add_noise(const FarFieldMatrix& F, double delta, std::uint64_t seed) {
  FarFieldMatrix out = F;
  out.entries = add_noise(F.entries, delta, seed);
  out.noise_level = delta;
  return out;
}

}  // namespace dcomp
