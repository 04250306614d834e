#include "dcomp/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dcomp {
namespace {

constexpr double kEulerGamma = 0.577215664901532860606512090082;
constexpr double kRescaleAbove = 1e250;

void check_argument(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::domain_error("bessel: argument must be positive and finite, got " + std::to_string(x));
  }
}

// Miller's backward recurrence for J_0..J_start, normalised by
// J_0 + 2 sum_k J_2k = 1. Returned vector has length start + 2.
std::vector<double> miller_j(int max_order, double x) {
  const int base = std::max(max_order, static_cast<int>(std::ceil(x)));
  const int start = 2 * ((base + static_cast<int>(std::sqrt(160.0 * base)) + 20) / 2);

  std::vector<double> t(static_cast<std::size_t>(start) + 2, 0.0);
  double next = 0.0;
  double cur = 1.0;
  t[static_cast<std::size_t>(start)] = cur;
  for (int n = start; n >= 1; --n) {
    const double prev = 2.0 * n / x * cur - next;
    next = cur;
    cur = prev;
    t[static_cast<std::size_t>(n - 1)] = cur;
    if (std::abs(cur) > kRescaleAbove) {
      for (std::size_t i = static_cast<std::size_t>(n - 1); i <= static_cast<std::size_t>(start); ++i) t[i] /= kRescaleAbove;
      next /= kRescaleAbove;
      cur /= kRescaleAbove;
    }
  }

  double norm = t[0];
  for (std::size_t k = 2; k < t.size(); k += 2) norm += 2.0 * t[k];
  for (double& v : t) v /= norm;
  return t;
}

}  // namespace

CylFunTable bessel_jy_table(int max_order, double x) {
  check_argument(x);
  if (max_order < 0 || max_order > kMaxBesselOrder) {
    throw std::domain_error("bessel: order out of supported range: " + std::to_string(max_order));
  }
  const std::vector<double> t = miller_j(max_order, x);

  CylFunTable out;
  out.argument = x;
  out.j.assign(t.begin(), t.begin() + max_order + 1);

  // Neumann series for Y_0 and its derivative for Y_1.
  const double log_term = std::log(0.5 * x) + kEulerGamma;
  double s0 = 0.0;
  double s1 = 0.0;
  for (std::size_t k = 1; 2 * k + 1 < t.size(); ++k) {
    const double sign = (k % 2 == 1) ? -1.0 : 1.0;
    s0 += sign * t[2 * k] / static_cast<double>(k);
    s1 += sign * (t[2 * k - 1] - t[2 * k + 1]) / static_cast<double>(k);
  }
  out.y.resize(static_cast<std::size_t>(max_order) + 1);
  out.y[0] = 2.0 / kPi * log_term * t[0] - 4.0 / kPi * s0;
  if (max_order >= 1) {
    out.y[1] = 2.0 / kPi * log_term * t[1] - 2.0 / (kPi * x) * t[0] + 2.0 / kPi * s1;
  }
  // Forward recurrence is stable for Y.
  for (int n = 1; n < max_order; ++n) {
    const auto i = static_cast<std::size_t>(n);
    out.y[i + 1] = 2.0 * n / x * out.y[i] - out.y[i - 1];
  }
  return out;
}

CylFunValue bessel_jy(int order, double x) {
  const int m = std::abs(order);
  if (m > kMaxBesselOrder) {
    throw std::domain_error("bessel: |order| exceeds " + std::to_string(kMaxBesselOrder));
  }
  const CylFunTable table = bessel_jy_table(m, x);
  const double sign = (order < 0 && (m % 2 == 1)) ? -1.0 : 1.0;
  CylFunValue v{order, x, sign * table.j[static_cast<std::size_t>(m)], sign * table.y[static_cast<std::size_t>(m)]};
  if (!std::isfinite(v.y)) {
    throw std::range_error("bessel: Y_" + std::to_string(order) + "(" + std::to_string(x) + ") overflows");
  }
  return v;
}

double bessel_j(int order, double x) { return bessel_jy(order, x).j; }

Complex hankel1(int order, double x) { return bessel_jy(order, x).h1(); }

double bessel_j_derivative(int order, double x) {
  return 0.5 * (bessel_jy(order - 1, x).j - bessel_jy(order + 1, x).j);
}

Complex hankel1_derivative(int order, double x) {
  return 0.5 * (bessel_jy(order - 1, x).h1() - bessel_jy(order + 1, x).h1());
}

}  // namespace dcomp
