#include "dcomp/quadrature.hpp"

#include <algorithm>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>

#include "dcomp/fourier.hpp"

namespace dcomp {
namespace {

using Gauss = boost::math::quadrature::gauss<double, 8>;

double lagrange(int i, double x, int first, int count) {
  double v = 1.0;
  for (int m = first; m < first + count; ++m) {
    if (m != i) v *= (x - m) / double(i - m);
  }
  return v;
}

// Adds to w the weights (in units of h) of int_a^b p(x) dx, p interpolating
// the nodes first..first+count-1.
void add_cell(RVector& w, double a, double b, int first, int count) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  const auto& x = Gauss::abscissa();
  const auto& g = Gauss::weights();
  for (std::size_t q = 0; q < x.size(); ++q) {
    for (int sign : {-1, 1}) {
      if (q == 0 && x[0] == 0.0 && sign == 1) continue;  // centre node once
      const double t = mid + sign * half * x[q];
      for (int i = first; i < first + count; ++i) w(i) += half * g[q] * lagrange(i, t, first, count);
    }
  }
}

}  // namespace

CMatrix fourier_basis(std::span<const double> angles, int J) {
  CMatrix out(static_cast<Eigen::Index>(angles.size()), 2 * J + 1);
  for (std::size_t j = 0; j < angles.size(); ++j) {
    for (int m = -J; m <= J; ++m) out(static_cast<Eigen::Index>(j), mode_index(m, J)) = fourier_mode(m, angles[j]);
  }
  return out;
}

RVector aperture_weights(const ApertureGrid& grid, int order, int tail_order) {
  const int L = grid.L;
  const double h = grid.spacing();
  if (grid.full_aperture()) return RVector::Constant(L, h);
  if (order < 1 || tail_order < 1) throw std::invalid_argument("aperture_weights: orders must be positive");
  // 8-point Gauss integrates the interpolants exactly up to degree 15.
  if (order > 16 || tail_order > 16) throw std::invalid_argument("aperture_weights: order above 16");

  const int q = std::min(order, L);
  // Sample j sits at x = j (units of h); the aperture is [0, B].
  const double B = 2.0 * grid.alpha / h;
  RVector w = RVector::Zero(L);
  for (int cell = 0; cell + 1 < L; ++cell) {
    const int first = std::clamp(cell - q / 2 + 1, 0, L - q);
    add_cell(w, cell, cell + 1, first, q);
  }
  const int e = std::min(tail_order, L);
  if (B > L - 1) add_cell(w, L - 1, B, L - e, e);
  return h * w;
}

}  // namespace dcomp
