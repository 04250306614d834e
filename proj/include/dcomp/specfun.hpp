#pragma once

#include <vector>

#include "dcomp/types.hpp"

namespace dcomp {

/// Cylinder functions of integer order at a positive real argument.
struct CylFunValue {
  int order = 0;
  double argument = 0.0;
  double j = 0.0;  ///< Bessel function of the first kind J_n(x)
  double y = 0.0;  ///< Bessel function of the second kind Y_n(x)

  Complex h1() const { return {j, y}; }
};

inline constexpr int kMaxBesselOrder = 200;

/// J_n, Y_n and H1_n for |n| <= kMaxBesselOrder and x > 0.
/// Throws std::domain_error outside that range and std::range_error if Y_n overflows.
CylFunValue bessel_jy(int order, double x);

/// J_n(x) and Y_n(x) for n = 0..max_order, computed in one sweep.
/// Entries of `y` may be -inf for high orders at very small x.
struct CylFunTable {
  double argument = 0.0;
  std::vector<double> j;
  std::vector<double> y;

  Complex h1(int n) const { return {j.at(static_cast<std::size_t>(n)), y.at(static_cast<std::size_t>(n))}; }
};

CylFunTable bessel_jy_table(int max_order, double x);

double bessel_j(int order, double x);
Complex hankel1(int order, double x);

/// d/dx J_n(x) and d/dx H1_n(x).
double bessel_j_derivative(int order, double x);
Complex hankel1_derivative(int order, double x);

}  // namespace dcomp
