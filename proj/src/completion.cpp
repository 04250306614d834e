#include "dcomp/completion.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "dcomp/error.hpp"
#include "dcomp/fourier.hpp"
#include "dcomp/log.hpp"
#include "dcomp/quadrature.hpp"

namespace dcomp {
namespace {

void check_limited(const FarFieldMatrix& F, int J) {
  F.validate();
  if (F.entries.rows() != F.grid.L) {
    throw std::invalid_argument("completion expects the L x L measured block");
  }
  if (2 * J + 1 > F.grid.L) {
    throw std::invalid_argument("completion: 2J+1 = " + std::to_string(2 * J + 1) + " exceeds L = " +
                                std::to_string(F.grid.L));
  }
  // Samples per wavelength of e^{iJ theta}; equals 2L/J on the half circle.
  const double per_wavelength = double(F.grid.M) / J;
  if (per_wavelength < 6.0) {
    std::ostringstream msg;
    msg << "completion: only " << per_wavelength << " samples per wavelength of the highest mode (J=" << J
        << "); the moments will be poorly resolved";
    warn(msg.str());
  }
}

// Row-applied moment operator: (A u)_p = sum_j w_j conj(phi_p(theta_j)) u_j.
CMatrix moment_operator(std::span<const double> angles, const RVector& weights, int J) {
  const CMatrix basis = fourier_basis(angles, J);
  const CVector cw = weights.cast<Complex>();
  return (basis.conjugate().array().colwise() * cw.array()).matrix().transpose();
}

double threshold_for(const CMatrix& measured, double factor) {
  if (!std::isfinite(factor)) return std::numeric_limits<double>::infinity();
  return factor * measured.cwiseAbs().maxCoeff();
}

void stamp(FarFieldMatrix& out, const char* method, const CompletionConfig& cfg, int cleared) {
  out.metadata["completed_by"] = method;
  out.metadata["J"] = std::to_string(cfg.J);
  out.metadata["reg"] = cfg.reg.to_string();
  std::ostringstream t;
  t << cfg.threshold_factor;
  out.metadata["threshold_factor"] = t.str();
  out.metadata["clamped_entries"] = std::to_string(cleared);
}

}  // namespace

void CompletionConfig::validate() const {
  if (J < 1) throw std::invalid_argument("completion: J must be >= 1");
  reg.validate();
  if (!(threshold_factor > 0.0)) throw std::invalid_argument("completion: threshold_factor must be positive");
  if (!(ball_radius > 0.0)) throw std::invalid_argument("completion: ball radius must be positive");
}

int clamp_magnitude(CMatrix& values, double threshold) {
  int cleared = 0;
  if (!std::isfinite(threshold)) return 0;
  for (Eigen::Index j = 0; j < values.cols(); ++j) {
    for (Eigen::Index i = 0; i < values.rows(); ++i) {
      if (std::abs(values(i, j)) > threshold) {
        values(i, j) = 0.0;
        ++cleared;
      }
    }
  }
  return cleared;
}

FourierBlock limited_moments(const FarFieldMatrix& F_limit, int J) {
  check_limited(F_limit, J);
  const RVector w = aperture_weights(F_limit.grid);
  const CMatrix Ax = moment_operator(F_limit.grid.measured_obs(), w, J);
  const CMatrix Ad = moment_operator(F_limit.grid.measured_inc(), w, J);
  return {Ax * F_limit.entries.transpose() * Ad.transpose(), J, BlockKind::LimitedBAlpha};
}

FourierBlock full_moments(const FarFieldMatrix& F_full, int J) {
  F_full.validate();
  if (!F_full.is_full()) throw std::invalid_argument("full_moments expects an M x M matrix");
  const RVector w = RVector::Constant(F_full.grid.M, F_full.grid.spacing());
  const CMatrix Ax = moment_operator(F_full.obs_angles(), w, J);
  const CMatrix Ad = moment_operator(F_full.inc_angles(), w, J);
  return {Ax * F_full.entries.transpose() * Ad.transpose(), J, BlockKind::FullB};
}

CMatrix synthesize(const FourierBlock& B, std::span<const double> inc, std::span<const double> obs) {
  const CMatrix Px = fourier_basis(obs, B.J);
  const CMatrix Pd = fourier_basis(inc, B.J);
  return Pd * B.coefficients.transpose() * Px.transpose();
}

FarFieldMatrix dc_fs(const FarFieldMatrix& F_limit, const CompletionConfig& cfg) {
  cfg.validate();
  const FourierBlock Balpha = limited_moments(F_limit, cfg.J);
  const RMatrix Px = pseudo_inverse(build_prolate(F_limit.grid.alpha, cfg.J, ProlateVariant::Observation), cfg.reg);
  const RMatrix Pd = pseudo_inverse(build_prolate(F_limit.grid.alpha, cfg.J, ProlateVariant::Incidence), cfg.reg);
  const FourierBlock B{Px.cast<Complex>() * Balpha.coefficients * Pd.cast<Complex>(), cfg.J, BlockKind::FullB};

  FarFieldMatrix out;
  out.grid = F_limit.grid;
  out.k = F_limit.k;
  out.noise_level = F_limit.noise_level;
  out.metadata = F_limit.metadata;
  out.entries = synthesize(B, out.grid.theta_inc, out.grid.theta_obs);
  const int cleared = clamp_magnitude(out.entries, threshold_for(F_limit.entries, cfg.threshold_factor));
  stamp(out, "DC-FS", cfg, cleared);
  return out;
}

ModalVector data_moments(std::span<const Complex> row, const ApertureGrid& grid, int J) {
  if (row.size() != static_cast<std::size_t>(grid.L)) {
    throw std::invalid_argument("data_moments: row length must equal L");
  }
  const RVector w = aperture_weights(grid);
  const CMatrix A = moment_operator(grid.measured_obs(), w, J);
  const Eigen::Map<const CVector> u(row.data(), static_cast<Eigen::Index>(row.size()));
  return {A * u, J, ModalRole::C};
}

ModalVector dc_ie_modes(std::span<const Complex> row, const ApertureGrid& grid, const CompletionConfig& cfg) {
  cfg.validate();
  const ModalVector C = data_moments(row, grid, cfg.J);
  const RMatrix Pinv = pseudo_inverse(build_prolate(grid.alpha, cfg.J), cfg.reg);
  return {Pinv.cast<Complex>() * C.values, cfg.J, ModalRole::Gamma};
}

CVector dc_ie_single(std::span<const Complex> row, const ApertureGrid& grid, const CompletionConfig& cfg) {
  const ModalVector G = dc_ie_modes(row, grid, cfg);
  CMatrix out = fourier_basis(grid.theta_obs, cfg.J) * G.values;
  const Eigen::Map<const CVector> u(row.data(), static_cast<Eigen::Index>(row.size()));
  clamp_magnitude(out, threshold_for(u, cfg.threshold_factor));
  return out;
}

FarFieldMatrix dc_ie(const FarFieldMatrix& F_limit, const CompletionConfig& cfg,
                     const std::optional<CMatrix>& extended_rows) {
  cfg.validate();
  check_limited(F_limit, cfg.J);
  const ApertureGrid& grid = F_limit.grid;
  const int L = grid.L, M = grid.M;
  if (extended_rows && (extended_rows->rows() != M - L || extended_rows->cols() != L)) {
    throw std::invalid_argument("dc_ie: extended rows must be (M-L) x L");
  }

  // Row map shared by every incidence: full row = T * measured row.
  const RVector w = aperture_weights(grid);
  const CMatrix A = moment_operator(grid.measured_obs(), w, cfg.J);
  const RMatrix Pinv = pseudo_inverse(build_prolate(grid.alpha, cfg.J), cfg.reg);
  const CMatrix T = fourier_basis(grid.theta_obs, cfg.J) * Pinv.cast<Complex>() * A;
  const double threshold = threshold_for(F_limit.entries, cfg.threshold_factor);

  auto complete_rows = [&](const CMatrix& rows) {
    CMatrix out(rows.rows(), M);
    parallel_for(cfg.exec, rows.rows(), [&](std::ptrdiff_t i) { out.row(i) = (T * rows.row(i).transpose()).transpose(); });
    return out;
  };

  FarFieldMatrix out;
  out.grid = grid;
  out.k = F_limit.k;
  out.noise_level = F_limit.noise_level;
  out.metadata = F_limit.metadata;
  out.entries.resize(M, M);

  // Step I
  CMatrix top = complete_rows(F_limit.entries);
  int cleared = clamp_magnitude(top, threshold);
  out.entries.topRows(L) = top;
  if (M > L) {
    // Step II
    out.entries.bottomLeftCorner(M - L, L) = top.rightCols(M - L).transpose();
    // Step III
    CMatrix bottom = complete_rows(extended_rows ? *extended_rows : CMatrix(out.entries.bottomLeftCorner(M - L, L)));
    CMatrix f22 = bottom.rightCols(M - L);
    cleared += clamp_magnitude(f22, threshold);
    out.entries.bottomRightCorner(M - L, M - L) = f22;
  }
  stamp(out, "DC-IE", cfg, cleared);
  out.metadata["f22_mode"] = extended_rows ? "measured" : "reciprocity_extension";
  std::ostringstream r;
  r << cfg.ball_radius;
  out.metadata["ball_radius"] = r.str();
  return out;
}

}  // namespace dcomp
