#pragma once

#include <span>
#include <string>
#include <vector>

#include "dcomp/types.hpp"

namespace dcomp {

enum class ShapeKind { Peanut, Disk, Custom };
enum class BoundaryCondition { Dirichlet, Neumann };

std::string to_string(ShapeKind kind);
std::string to_string(BoundaryCondition bc);
ShapeKind parse_shape(const std::string& name);
BoundaryCondition parse_boundary_condition(const std::string& name);

/// Point on a parameterised curve with its first two parameter derivatives.
struct CurvePoint {
  Vec2 x;
  Vec2 dx;
  Vec2 ddx;
};

/// Boundary sample used by the Nystrom discretisation.
struct BoundarySample {
  double t = 0.0;
  Vec2 point;
  Vec2 tangent;  ///< unit tangent, counter-clockwise
  Vec2 normal;   ///< unit outward normal
  double speed = 0.0;  ///< |x'(t)|
};

/// Star-shaped closed curve x(t) = position + r(t) (cos t, sin t), t in [0, 2pi).
///
/// Peanut: r(t) = sqrt(3 cos^2 t + 1). Disk: r(t) = radius.
/// Custom: r(t) = a_0 + sum_k (a_k cos kt + b_k sin kt), which must stay positive.
class Boundary {
 public:
  static Boundary peanut(Vec2 position = Vec2::Zero());
  static Boundary disk(double radius = 2.0, Vec2 position = Vec2::Zero());
  static Boundary custom(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs,
                         Vec2 position = Vec2::Zero());

  ShapeKind kind() const { return kind_; }
  const Vec2& position() const { return position_; }
  /// Disk radius; zero for the other kinds.
  double radius() const { return radius_; }
  const std::vector<double>& cos_coeffs() const { return cos_coeffs_; }
  const std::vector<double>& sin_coeffs() const { return sin_coeffs_; }

  CurvePoint eval(double t) const;
  Boundary translated(const Vec2& h) const;

  /// Largest distance from the origin over a dense sample of the curve.
  double circumradius() const;

 private:
  Boundary() = default;
  void radial(double t, double& r, double& dr, double& ddr) const;

  ShapeKind kind_ = ShapeKind::Disk;
  Vec2 position_ = Vec2::Zero();
  double radius_ = 0.0;
  std::vector<double> cos_coeffs_;
  std::vector<double> sin_coeffs_;
};

/// t_i = 2 pi i / n, i = 0..n-1. n must be even and >= 4.
std::vector<BoundarySample> boundary_points(const Boundary& b, int n);

/// Paired observation / incidence grids on the full circle with the measured
/// aperture as the first L entries:
///   theta_obs[j] = j 2pi/M - alpha,  theta_inc[j] = theta_obs[j] + pi.
struct ApertureGrid {
  double alpha = kPi;
  int L = 0;
  int M = 0;
  std::vector<double> theta_obs;
  std::vector<double> theta_inc;

  double spacing() const { return kTwoPi / M; }
  bool full_aperture() const { return L == M; }
  std::span<const double> measured_obs() const { return {theta_obs.data(), static_cast<std::size_t>(L)}; }
  std::span<const double> measured_inc() const { return {theta_inc.data(), static_cast<std::size_t>(L)}; }
};

/// M = round(L pi / alpha), raised if needed so the L measured samples fit in [-alpha, alpha].
ApertureGrid make_grid(double alpha, int L);

/// Grid with explicit M; used when reading data files.
ApertureGrid make_grid(double alpha, int L, int M);

}  // namespace dcomp
