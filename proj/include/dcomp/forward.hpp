#pragma once

#include <cstdint>
#include <memory>

#include <Eigen/LU>

#include "dcomp/far_field.hpp"
#include "dcomp/parallel.hpp"
#include "dcomp/scene.hpp"

namespace dcomp {

/// Exact far field of a disk centred at the origin by separation of variables:
///   u_inf(x; d) = 4i sum_{|n| <= truncation} rho_n e^{i n (theta_x - theta_d)}
/// with rho_n = J_n(ka)/H_n(ka) (Dirichlet) or J_n'(ka)/H_n'(ka) (Neumann).
FarFieldMatrix solve_disk_series(double radius, BoundaryCondition bc, double k, const ApertureGrid& grid,
                                 int truncation, DataExtent extent = DataExtent::Full);

/// Series coefficient rho_n of the disk solution.
Complex disk_series_coefficient(int n, double radius, BoundaryCondition bc, double k);

struct NystromOptions {
  int n_quad = 128;                 ///< number of boundary nodes (even)
  double incident_amplitude = 1.0;  ///< scales the plane wave; 0 gives the zero field
  Exec exec = Exec::Parallel;
};

/// Density of one boundary integral solve at the quadrature nodes.
struct DensitySolve {
  CVector density;
  int n_quad = 0;
  double residual = 0.0;  ///< ||A psi - b|| / ||b|| of the discrete system
};

/// Nystrom discretisation of the exterior scattering problem for one
/// boundary, boundary condition and wavenumber. The logarithmic kernel
/// singularity is split off and integrated with trigonometric weights.
///
/// Dirichlet: combined potential u = (D - i eta S) psi with eta = k.
/// Neumann: single layer u = S psi, i.e. (-1/2 + K') psi = -d_nu u_in.
///
/// Far fields are normalised so that a single layer with density psi has far
/// field  int e^{-ik xhat.y} psi(y) ds(y).
class NystromSolver {
 public:
  NystromSolver(const Boundary& boundary, BoundaryCondition bc, double k, NystromOptions options = {});

  DensitySolve solve(double theta_d) const;
  Complex far_field(const DensitySolve& solve, double theta_obs) const;

  /// Reciprocal of LU's rcond estimate for the system matrix.
  double condition_estimate() const { return condition_; }
  BoundaryCondition boundary_condition() const { return bc_; }

 private:
  void assemble();

  std::vector<BoundarySample> nodes_;
  BoundaryCondition bc_;
  double k_;
  double eta_;
  NystromOptions options_;
  CMatrix system_;
  Eigen::PartialPivLU<CMatrix> lu_;
  double condition_ = 1.0;
};

/// Far-field matrix on the paired grid by Nystrom. Incidences run in parallel.
FarFieldMatrix solve_nystrom_dirichlet(const Boundary& b, double k, const ApertureGrid& grid,
                                       const NystromOptions& options = {},
                                       DataExtent extent = DataExtent::Full);
FarFieldMatrix solve_nystrom_neumann(const Boundary& b, double k, const ApertureGrid& grid,
                                     const NystromOptions& options = {},
                                     DataExtent extent = DataExtent::Full);
FarFieldMatrix solve_nystrom(const Boundary& b, BoundaryCondition bc, double k, const ApertureGrid& grid,
                             const NystromOptions& options = {}, DataExtent extent = DataExtent::Full);

/// Far field for an explicit list of incidence / observation angles;
/// result(i, j) = u_inf(obs[j]; inc[i]).
CMatrix nystrom_far_field(const NystromSolver& solver, std::span<const double> inc_angles,
                          std::span<const double> obs_angles, Exec exec = Exec::Parallel);

/// F + delta ||F|| (R1 + i R2) / ||R1 + i R2|| with standard normal R1, R2 (Frobenius norms).
FarFieldMatrix add_noise(const FarFieldMatrix& F, double delta, std::uint64_t seed);
CMatrix add_noise(const CMatrix& entries, double delta, std::uint64_t seed);

}  // namespace dcomp
