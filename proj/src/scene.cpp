#include "dcomp/scene.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dcomp/error.hpp"

namespace dcomp {

std::string to_string(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::Peanut: return "peanut";
    case ShapeKind::Disk: return "disk";
    case ShapeKind::Custom: return "custom";
  }
  return "unknown";
}

std::string to_string(BoundaryCondition bc) {
  return bc == BoundaryCondition::Dirichlet ? "dirichlet" : "neumann";
}

ShapeKind parse_shape(const std::string& name) {
  if (name == "peanut") return ShapeKind::Peanut;
  if (name == "disk") return ShapeKind::Disk;
  if (name == "custom") return ShapeKind::Custom;
  throw ConfigError("unknown shape '" + name + "' (expected peanut, disk or custom)");
}

BoundaryCondition parse_boundary_condition(const std::string& name) {
  if (name == "dirichlet" || name == "sound-soft") return BoundaryCondition::Dirichlet;
  if (name == "neumann" || name == "sound-hard") return BoundaryCondition::Neumann;
  throw ConfigError("unknown boundary condition '" + name + "' (expected dirichlet or neumann)");
}

Boundary Boundary::peanut(Vec2 position) {
  Boundary b;
  b.kind_ = ShapeKind::Peanut;
  b.position_ = position;
  return b;
}

Boundary Boundary::disk(double radius, Vec2 position) {
  if (!(radius > 0.0)) throw std::invalid_argument("disk radius must be positive");
  Boundary b;
  b.kind_ = ShapeKind::Disk;
  b.radius_ = radius;
  b.position_ = position;
  return b;
}

Boundary Boundary::custom(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs, Vec2 position) {
  if (cos_coeffs.empty()) throw std::invalid_argument("custom boundary needs at least the constant term a_0");
  Boundary b;
  b.kind_ = ShapeKind::Custom;
  b.cos_coeffs_ = std::move(cos_coeffs);
  b.sin_coeffs_ = std::move(sin_coeffs);
  b.position_ = position;
  for (int i = 0; i < 1024; ++i) {
    double r = 0, dr = 0, ddr = 0;
    b.radial(kTwoPi * i / 1024.0, r, dr, ddr);
    if (!(r > 0.0)) throw std::invalid_argument("custom boundary radius must stay positive");
  }
  return b;
}

void Boundary::radial(double t, double& r, double& dr, double& ddr) const {
  switch (kind_) {
    case ShapeKind::Disk:
      r = radius_;
      dr = 0.0;
      ddr = 0.0;
      return;
    case ShapeKind::Peanut: {
      // s = 3 cos^2 t + 1, r = sqrt(s)
      const double c = std::cos(t);
      const double s = 3.0 * c * c + 1.0;
      const double ds = -3.0 * std::sin(2.0 * t);
      const double dds = -6.0 * std::cos(2.0 * t);
      r = std::sqrt(s);
      dr = ds / (2.0 * r);
      ddr = dds / (2.0 * r) - ds * ds / (4.0 * r * r * r);
      return;
    }
    case ShapeKind::Custom: {
      r = cos_coeffs_[0];
      dr = 0.0;
      ddr = 0.0;
      for (std::size_t k = 1; k < cos_coeffs_.size(); ++k) {
        const double kk = static_cast<double>(k);
        const double c = std::cos(kk * t), s = std::sin(kk * t);
        r += cos_coeffs_[k] * c;
        dr -= kk * cos_coeffs_[k] * s;
        ddr -= kk * kk * cos_coeffs_[k] * c;
      }
      for (std::size_t k = 1; k <= sin_coeffs_.size(); ++k) {
        const double kk = static_cast<double>(k);
        const double b = sin_coeffs_[k - 1];
        const double c = std::cos(kk * t), s = std::sin(kk * t);
        r += b * s;
        dr += kk * b * c;
        ddr -= kk * kk * b * s;
      }
      return;
    }
  }
}

CurvePoint Boundary::eval(double t) const {
  double r = 0, dr = 0, ddr = 0;
  radial(t, r, dr, ddr);
  const Vec2 e(std::cos(t), std::sin(t));
  const Vec2 e_perp(-std::sin(t), std::cos(t));
  return {position_ + r * e, dr * e + r * e_perp, ddr * e + 2.0 * dr * e_perp - r * e};
}

Boundary Boundary::translated(const Vec2& h) const {
  Boundary b = *this;
  b.position_ += h;
  return b;
}

double Boundary::circumradius() const {
  double best = 0.0;
  for (int i = 0; i < 1024; ++i) best = std::max(best, eval(kTwoPi * i / 1024.0).x.norm());
  return best;
}

std::vector<BoundarySample> boundary_points(const Boundary& b, int n) {
  if (n < 4 || n % 2 != 0) {
    throw std::invalid_argument("boundary_points: n must be even and >= 4, got " + std::to_string(n));
  }
  std::vector<BoundarySample> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double t = kTwoPi * i / n;
    const CurvePoint p = b.eval(t);
    const double speed = p.dx.norm();
    const Vec2 tangent = p.dx / speed;
    out.push_back({t, p.x, tangent, Vec2(tangent.y(), -tangent.x()), speed});
  }
  return out;
}

ApertureGrid make_grid(double alpha, int L, int M) {
  if (!(alpha > 0.0) || alpha > kPi + 1e-12) {
    throw std::invalid_argument("aperture alpha must lie in (0, pi], got " + std::to_string(alpha));
  }
  if (L < 2) throw std::invalid_argument("aperture grid needs L >= 2");
  if (M < L) throw std::invalid_argument("aperture grid needs M >= L");
  const double h = kTwoPi / M;
  if ((L - 1) * h > 2.0 * alpha * (1.0 + 1e-12)) {
    throw std::invalid_argument("aperture grid: L samples do not fit inside [-alpha, alpha]");
  }
  ApertureGrid g;
  g.alpha = std::min(alpha, kPi);
  g.L = L;
  g.M = M;
  g.theta_obs.resize(static_cast<std::size_t>(M));
  g.theta_inc.resize(static_cast<std::size_t>(M));
  for (int j = 0; j < M; ++j) {
    g.theta_obs[static_cast<std::size_t>(j)] = j * h - g.alpha;
    g.theta_inc[static_cast<std::size_t>(j)] = j * h - g.alpha + kPi;
  }
  return g;
}

ApertureGrid make_grid(double alpha, int L) {
  if (!(alpha > 0.0) || alpha > kPi + 1e-12) {
    throw std::invalid_argument("aperture alpha must lie in (0, pi], got " + std::to_string(alpha));
  }
  if (L < 2) throw std::invalid_argument("aperture grid needs L >= 2");
  int M = static_cast<int>(std::lround(L * kPi / alpha));
  M = std::max(M, L);
  while ((L - 1) * (kTwoPi / M) > 2.0 * alpha * (1.0 + 1e-12)) ++M;
  return make_grid(alpha, L, M);
}

}  // namespace dcomp
