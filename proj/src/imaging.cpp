#include "dcomp/imaging.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "dcomp/error.hpp"

namespace dcomp {
namespace {

struct SharpSpectrum {
  RVector mu;  // eigenvalues / lambda_max, clipped at 0
  CMatrix vectors;
  double lambda_max = 0.0;
};

SharpSpectrum sharp_spectrum(const FarFieldMatrix& F) {
  const CMatrix S = sharp_operator(far_field_operator(F));
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(S);
  if (eig.info() != Eigen::Success) throw NumericalError("fm: eigen-decomposition of F_sharp failed");
  SharpSpectrum out;
  out.lambda_max = eig.eigenvalues().maxCoeff();
  if (!(out.lambda_max > 0.0)) throw NumericalError("fm: F_sharp has no positive spectrum");
  out.mu = (eig.eigenvalues() / out.lambda_max).cwiseMax(0.0);
  out.vectors = eig.eigenvectors();
  return out;
}

double sum_weighted(const RVector& mu, const RVector& beta2, double eps) {
  double s = 0.0;
  for (Eigen::Index n = 0; n < mu.size(); ++n) s += mu(n) / ((mu(n) + eps) * (mu(n) + eps)) * beta2(n);
  return s;
}

// Tikhonov parameter from the discrepancy principle, by bisection in log eps.
double morozov_epsilon(const RVector& mu, const RVector& beta2, double delta) {
  auto gap = [&](double eps) {
    double residual = 0.0;
    for (Eigen::Index n = 0; n < mu.size(); ++n) {
      const double f = eps / (mu(n) + eps);
      residual += f * f * beta2(n);
    }
    return residual - delta * delta * sum_weighted(mu, beta2, eps);
  };
  double lo = std::log(1e-16), hi = std::log(1e2);
  if (gap(std::exp(lo)) >= 0.0) return std::exp(lo);
  if (gap(std::exp(hi)) <= 0.0) return std::exp(hi);
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    (gap(std::exp(mid)) > 0.0 ? hi : lo) = mid;
  }
  return std::exp(0.5 * (lo + hi));
}

// 1 / ||g_z||^2 from the squared eigen-coefficients of r_z.
double fm_value(const SharpSpectrum& s, const RVector& beta2, const RegularizationSpec& reg, double noise_level) {
  double norm2 = 0.0;
  switch (reg.scheme) {
    case RegScheme::TSVD:
      for (Eigen::Index n = 0; n < s.mu.size(); ++n) {
        if (s.mu(n) >= reg.parameter) norm2 += beta2(n) / s.mu(n);
      }
      break;
    case RegScheme::Spectral:
      for (Eigen::Index n = 0; n < s.mu.size(); ++n) norm2 += beta2(n) / (s.mu(n) + reg.parameter);
      break;
    case RegScheme::Tikhonov: {
      const double eps = noise_level > 0.0 ? morozov_epsilon(s.mu, beta2, noise_level) : reg.parameter;
      norm2 = sum_weighted(s.mu, beta2, eps);
      break;
    }
  }
  norm2 /= s.lambda_max;
  return norm2 > 0.0 ? 1.0 / norm2 : 0.0;
}

void check_inputs(const FarFieldMatrix& F, const SamplingGrid& grid, double k) {
  F.validate();
  grid.validate();
  if (!(k > 0.0)) throw std::invalid_argument("imaging: wavenumber must be positive");
}

ImagingField make_field(const FarFieldMatrix& F, const SamplingGrid& grid, ImagingMethod method) {
  ImagingField out;
  out.grid = grid;
  out.method = method;
  out.values = RMatrix::Zero(grid.resolution, grid.resolution);
  out.metadata = F.metadata;
  out.metadata["method"] = to_string(method);
  return out;
}

// Plane-wave phases e^{i s k theta.z} for every angle (rows) and every x of one grid row (columns).
CMatrix phases(std::span<const double> angles, const SamplingGrid& grid, int iy, double k, double sign) {
  CMatrix out(static_cast<Eigen::Index>(angles.size()), grid.resolution);
  for (int ix = 0; ix < grid.resolution; ++ix) {
    const Vec2 z = grid.point(ix, iy);
    for (std::size_t a = 0; a < angles.size(); ++a) {
      out(static_cast<Eigen::Index>(a), ix) = std::exp(Complex(0.0, sign * k * direction(angles[a]).dot(z)));
    }
  }
  return out;
}

}  // namespace

void SamplingGrid::validate() const {
  if (resolution < 2) throw std::invalid_argument("sampling grid: resolution must be >= 2");
  if (!(x_max > x_min) || !(y_max > y_min)) throw std::invalid_argument("sampling grid: degenerate range");
}

std::string to_string(ImagingMethod m) { return m == ImagingMethod::DSM ? "DSM" : "FM"; }

ImagingMethod parse_imaging_method(const std::string& text) {
  std::string t = text;
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::toupper(c); });
  if (t == "DSM") return ImagingMethod::DSM;
  if (t == "FM") return ImagingMethod::FM;
  throw ConfigError("unknown imaging method '" + text + "' (expected DSM or FM)");
}

ImagingField dsm(const FarFieldMatrix& F, const SamplingGrid& grid, double k, Exec exec) {
  check_inputs(F, grid, k);
  ImagingField out = make_field(F, grid, ImagingMethod::DSM);
  const double w = F.grid.spacing();
  parallel_for(exec, grid.resolution, [&](std::ptrdiff_t iy) {
    const CMatrix a = phases(F.inc_angles(), grid, int(iy), k, -1.0);
    const CMatrix b = phases(F.obs_angles(), grid, int(iy), k, 1.0);
    const CMatrix Fb = F.entries * b;
    for (int ix = 0; ix < grid.resolution; ++ix) {
      out.values(iy, ix) = w * w * std::abs(a.col(ix).cwiseProduct(Fb.col(ix)).sum());
    }
  });
  return out;
}

CMatrix far_field_operator(const FarFieldMatrix& F) {
  F.validate();
  const int M = F.grid.M;
  if (!F.is_full()) throw std::invalid_argument("far-field operator needs full-aperture data");
  if (M % 2 != 0) throw std::invalid_argument("far-field operator needs an even M (paired grid)");
  if (F.entries.cwiseAbs().maxCoeff() == 0.0) throw std::invalid_argument("far-field operator: data are all zero");
  const double h = F.grid.spacing();
  CMatrix A(M, M);
  for (int m = 0; m < M; ++m) {
    const int row = (m + M / 2) % M;
    A.col(m) = h * F.entries.row(row).transpose();
  }
  return A;
}

CMatrix sharp_operator(const CMatrix& A) {
  const CMatrix re = 0.5 * (A + A.adjoint());
  const CMatrix im = (A - A.adjoint()) / Complex(0.0, 2.0);
  auto absolute = [](const CMatrix& X) {
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(X);
    if (eig.info() != Eigen::Success) throw NumericalError("F_sharp: eigen-decomposition failed");
    return CMatrix(eig.eigenvectors() * eig.eigenvalues().cwiseAbs().cast<Complex>().asDiagonal() *
                   eig.eigenvectors().adjoint());
  };
  const CMatrix S = absolute(re) + absolute(im);
  return 0.5 * (S + S.adjoint());
}

ImagingField fm(const FarFieldMatrix& F, const SamplingGrid& grid, double k, const RegularizationSpec& reg,
                double noise_level, Exec exec) {
  check_inputs(F, grid, k);
  reg.validate();
  if (noise_level < 0.0) throw std::invalid_argument("fm: noise level must be nonnegative");
  const SharpSpectrum s = sharp_spectrum(F);
  ImagingField out = make_field(F, grid, ImagingMethod::FM);
  out.metadata["fm_reg"] = reg.to_string();
  parallel_for(exec, grid.resolution, [&](std::ptrdiff_t iy) {
    const CMatrix r = phases(F.grid.theta_obs, grid, int(iy), k, -1.0);
    const RMatrix beta2 = (s.vectors.adjoint() * r).cwiseAbs2();
    for (int ix = 0; ix < grid.resolution; ++ix) out.values(iy, ix) = fm_value(s, beta2.col(ix), reg, noise_level);
  });
  return out;
}

namespace reference {

ImagingField dsm(const FarFieldMatrix& F, const SamplingGrid& grid, double k) {
  check_inputs(F, grid, k);
  ImagingField out = make_field(F, grid, ImagingMethod::DSM);
  const auto inc = F.inc_angles();
  const auto obs = F.obs_angles();
  const double w = F.grid.spacing();
  for (int iy = 0; iy < grid.resolution; ++iy) {
    for (int ix = 0; ix < grid.resolution; ++ix) {
      const Vec2 z = grid.point(ix, iy);
      Complex sum = 0.0;
      for (std::size_t i = 0; i < inc.size(); ++i) {
        const Complex a = std::exp(Complex(0.0, -k * direction(inc[i]).dot(z)));
        for (std::size_t j = 0; j < obs.size(); ++j) {
          sum += F.entries(Eigen::Index(i), Eigen::Index(j)) * a * std::exp(Complex(0.0, k * direction(obs[j]).dot(z)));
        }
      }
      out.values(iy, ix) = w * w * std::abs(sum);
    }
  }
  return out;
}

ImagingField fm(const FarFieldMatrix& F, const SamplingGrid& grid, double k, const RegularizationSpec& reg,
                double noise_level) {
  check_inputs(F, grid, k);
  reg.validate();
  const SharpSpectrum s = sharp_spectrum(F);
  ImagingField out = make_field(F, grid, ImagingMethod::FM);
  out.metadata["fm_reg"] = reg.to_string();
  const int M = F.grid.M;
  RVector beta2(M);
  for (int iy = 0; iy < grid.resolution; ++iy) {
    for (int ix = 0; ix < grid.resolution; ++ix) {
      const Vec2 z = grid.point(ix, iy);
      for (int n = 0; n < M; ++n) {
        Complex b = 0.0;
        for (int j = 0; j < M; ++j) {
          b += std::conj(s.vectors(j, n)) * std::exp(Complex(0.0, -k * direction(F.grid.theta_obs[j]).dot(z)));
        }
        beta2(n) = std::norm(b);
      }
      out.values(iy, ix) = fm_value(s, beta2, reg, noise_level);
    }
  }
  return out;
}

}  // namespace reference
}  // namespace dcomp
