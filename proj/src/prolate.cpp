#include "dcomp/prolate.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "dcomp/error.hpp"

namespace dcomp::detail {
using BigFloat = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<160>,
                                               boost::multiprecision::et_off>;
}

// Boost 1.74's Eigen glue predates Eigen 3.4's NumTraits requirements, so the
// single extended type used here gets its own traits.
namespace Eigen {
template <>
struct NumTraits<dcomp::detail::BigFloat> : GenericNumTraits<dcomp::detail::BigFloat> {
  using Big = dcomp::detail::BigFloat;
  using Real = Big;
  using NonInteger = Big;
  using Nested = Big;
  using Literal = Big;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 16,
    MulCost = 32
  };
  static Big epsilon() { return std::numeric_limits<Big>::epsilon(); }
  static Big dummy_precision() { return Big(1e-70); }
  static Big highest() { return (std::numeric_limits<Big>::max)(); }
  static Big lowest() { return std::numeric_limits<Big>::lowest(); }
  static Big infinity() { return std::numeric_limits<Big>::infinity(); }
  static Big quiet_NaN() { return std::numeric_limits<Big>::quiet_NaN(); }
  static int digits10() { return std::numeric_limits<Big>::digits10; }
};
}  // namespace Eigen

namespace dcomp {
namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0) || alpha > kPi + 1e-12) {
    throw std::invalid_argument("prolate: alpha must lie in (0, pi], got " + std::to_string(alpha));
  }
}

}  // namespace

double prolate_entry(double alpha, int m, int n) {
  if (m == n) return alpha / kPi;
  const int d = m - n;
  return std::sin(d * alpha) / (kPi * d);
}

ProlateMatrix::ProlateMatrix(double alpha, int J, ProlateVariant variant)
    : alpha_(alpha), J_(J), variant_(variant) {
  check_alpha(alpha);
  if (J < 0) throw std::invalid_argument("prolate: J must be nonnegative");
  const int N = size();
  entries_.resize(N, N);
  for (int a = 0; a < N; ++a) {
    for (int b = a; b < N; ++b) {
      double v = (alpha_ >= kPi) ? (a == b ? 1.0 : 0.0) : prolate_entry(alpha_, a - J, b - J);
      if (variant_ == ProlateVariant::Incidence && (b - a) % 2 != 0) v = -v;
      entries_(a, b) = v;
      entries_(b, a) = v;
    }
  }
}

ProlateMatrix build_prolate(double alpha, int J, ProlateVariant variant) { return {alpha, J, variant}; }

ProlateSpectrum spectrum(const ProlateMatrix& P) {
  Eigen::SelfAdjointEigenSolver<RMatrix> solver(P.entries());
  if (solver.info() != Eigen::Success) throw NumericalError("prolate: eigensolver did not converge");
  const int N = P.size();
  // Eigen returns ascending order.
  ProlateSpectrum S;
  S.eigenvalues = solver.eigenvalues().reverse();
  S.eigenvectors = solver.eigenvectors().rowwise().reverse();
  for (int c = 0; c < N; ++c) {
    for (int r = 0; r < N; ++r) {
      const double v = S.eigenvectors(r, c);
      if (std::abs(v) > 1e-12) {
        if (v < 0.0) S.eigenvectors.col(c) *= -1.0;
        break;
      }
    }
  }
  return S;
}

std::vector<double> extended_precision_eigenvalues(double alpha, int J) {
  using detail::BigFloat;
  check_alpha(alpha);
  if (J < 0) throw std::invalid_argument("prolate: J must be nonnegative");
  using BigMatrix = Eigen::Matrix<BigFloat, Eigen::Dynamic, Eigen::Dynamic>;
  const int N = 2 * J + 1;
  const BigFloat pi = boost::math::constants::pi<BigFloat>();
  const BigFloat a(alpha);
  BigMatrix P(N, N);
  for (int i = 0; i < N; ++i) {
    for (int j = i; j < N; ++j) {
      BigFloat v;
      if (i == j) {
        v = a / pi;
      } else {
        const BigFloat d(i - j);
        v = sin(d * a) / (pi * d);
      }
      P(i, j) = v;
      P(j, i) = v;
    }
  }
  Eigen::SelfAdjointEigenSolver<BigMatrix> solver(P, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("prolate: extended eigensolver did not converge");
  std::vector<double> out(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) out[static_cast<std::size_t>(i)] = static_cast<double>(solver.eigenvalues()(N - 1 - i));
  return out;
}

double prolate_decay_rate(double alpha) {
  const double s = std::sqrt(1.0 - std::cos(alpha));
  const double r2 = std::sqrt(2.0);
  return std::log((r2 + s) / (r2 - s));
}

std::string to_string(RegScheme scheme) {
  switch (scheme) {
    case RegScheme::TSVD: return "tsvd";
    case RegScheme::Spectral: return "spectral";
    case RegScheme::Tikhonov: return "tikhonov";
  }
  return "unknown";
}

RegScheme parse_reg_scheme(std::string name) {
  name.erase(std::remove_if(name.begin(), name.end(), [](unsigned char c) { return std::isspace(c); }), name.end());
  std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
  if (name == "tsvd") return RegScheme::TSVD;
  if (name == "spectral") return RegScheme::Spectral;
  if (name == "tikhonov") return RegScheme::Tikhonov;
  throw ConfigError("unknown regularization '" + name + "' (expected tsvd, spectral or tikhonov)");
}

void RegularizationSpec::validate() const {
  if (!(parameter > 0.0) || !std::isfinite(parameter)) {
    throw std::invalid_argument("regularization parameter must be positive, got " + std::to_string(parameter));
  }
  if (scheme == RegScheme::TSVD && parameter >= 1.0) {
    throw std::invalid_argument("tsvd cutoff must lie in (0, 1)");
  }
}

double RegularizationSpec::filter(double sigma) const {
  switch (scheme) {
    case RegScheme::TSVD: return sigma >= parameter ? 1.0 / sigma : 0.0;
    case RegScheme::Spectral: return 1.0 / (sigma + parameter);
    case RegScheme::Tikhonov: return sigma / (sigma * sigma + parameter);
  }
  return 0.0;
}

std::string RegularizationSpec::to_string() const {
  char buf[64];
  const auto end = std::to_chars(buf, buf + sizeof buf, parameter).ptr;
  return dcomp::to_string(scheme) + ":" + std::string(buf, end);
}

RegularizationSpec RegularizationSpec::parse(const std::string& text) {
  const auto colon = text.find(':');
  RegularizationSpec spec;
  spec.scheme = parse_reg_scheme(text.substr(0, colon));
  if (colon == std::string::npos) {
    spec.parameter = spec.scheme == RegScheme::TSVD ? 0.1 : 1e-3;
  } else {
    try {
      std::size_t used = 0;
      std::string tail = text.substr(colon + 1);
      tail.erase(std::remove_if(tail.begin(), tail.end(), [](unsigned char c) { return std::isspace(c); }), tail.end());
      spec.parameter = std::stod(tail, &used);
      if (used != tail.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw ConfigError("bad regularization parameter in '" + text + "'");
    }
  }
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return spec;
}

int retained_modes(const ProlateSpectrum& S, double cutoff) {
  return static_cast<int>((S.eigenvalues.array() >= cutoff).count());
}

RMatrix pseudo_inverse(const ProlateSpectrum& S, const RegularizationSpec& reg) {
  reg.validate();
  if (reg.scheme == RegScheme::TSVD && retained_modes(S, reg.parameter) == 0) {
    throw std::domain_error("tsvd: empty retained subspace (cutoff above every eigenvalue)");
  }
  RVector f(S.eigenvalues.size());
  for (Eigen::Index i = 0; i < f.size(); ++i) f(i) = reg.filter(S.eigenvalues(i));
  RMatrix out = S.eigenvectors * f.asDiagonal() * S.eigenvectors.transpose();
  // Symmetrise away rounding.
  return 0.5 * (out + out.transpose());
}

RMatrix pseudo_inverse(const ProlateMatrix& P, const RegularizationSpec& reg) {
  return pseudo_inverse(spectrum(P), reg);
}

}  // namespace dcomp
