#pragma once

#include <limits>
#include <optional>
#include <span>

#include "dcomp/far_field.hpp"
#include "dcomp/parallel.hpp"
#include "dcomp/prolate.hpp"

namespace dcomp {

struct CompletionConfig {
  int J = 9;
  RegularizationSpec reg = RegularizationSpec::spectral(1e-3);
  /// Completed entries with |u| > threshold_factor * max|measured| are set to
  /// zero. Use infinity to disable the clamp.
  double threshold_factor = 2.0;
  /// Radius of the auxiliary ball for DC-IE. The Bessel factors it would
  /// enter cancel in the reconstruction, so it is recorded but unused.
  double ball_radius = 4.0;
  Exec exec = Exec::Parallel;

  void validate() const;
};

enum class BlockKind { LimitedBAlpha, FullB };

/// Double Fourier coefficients b_pq, p (observation) and q (incidence) in -J..J.
struct FourierBlock {
  CMatrix coefficients;
  int J = 0;
  BlockKind which = BlockKind::FullB;

  Complex operator()(int p, int q) const { return coefficients(p + J, q + J); }
};

enum class ModalRole { C, Gamma };

/// Vector over orders -J..J: data moments c_n, or the scaled density modes
/// 2 pi Gamma (the Bessel factors are never divided out).
struct ModalVector {
  CVector values;
  int J = 0;
  ModalRole role = ModalRole::C;

  Complex operator()(int m) const { return values(m + J); }
};

/// b^alpha_pq = int_{-a}^{a} int_{pi-a}^{pi+a} u conj(phi_p(theta_x) phi_q(theta_d)),
/// by the aperture quadrature on the measured L x L samples.
FourierBlock limited_moments(const FarFieldMatrix& F_limit, int J);

/// b_pq over the full circle (requires an M x M matrix).
FourierBlock full_moments(const FarFieldMatrix& F_full, int J);

/// result(i, j) = sum_{m,n} B(m, n) phi_m(obs[j]) phi_n(inc[i]).
CMatrix synthesize(const FourierBlock& B, std::span<const double> inc, std::span<const double> obs);

/// DC-FS: B ~ P_x^dagger B^alpha P_d^dagger, then the truncated double Fourier
/// series on the full M x M grid.
FarFieldMatrix dc_fs(const FarFieldMatrix& F_limit, const CompletionConfig& cfg);

/// c_n = int_{-a}^{a} u(theta) phi_{-n}(theta) d theta for one measured row.
ModalVector data_moments(std::span<const Complex> row, const ApertureGrid& grid, int J);

/// 2 pi Gamma~ = P^dagger C.
ModalVector dc_ie_modes(std::span<const Complex> row, const ApertureGrid& grid, const CompletionConfig& cfg);

/// One incidence: the truncated Fourier sum of 2 pi Gamma~ on the full
/// observation grid (length M), clamped relative to max|row|.
CVector dc_ie_single(std::span<const Complex> row, const ApertureGrid& grid, const CompletionConfig& cfg);

/// DC-IE on the L x L block F11:
///  I   each measured incidence row -> (F11, F12)
///  II  F21 = F12^T
///  III F22 from `extended_rows` ((M-L) x L measurements at the complementary
///      incidences on the measured observation aperture) when given, otherwise
///      by completing the rows of F21; metadata f22_mode records which.
FarFieldMatrix dc_ie(const FarFieldMatrix& F_limit, const CompletionConfig& cfg,
                     const std::optional<CMatrix>& extended_rows = std::nullopt);

/// Sets entries with |u| > threshold to zero; returns how many were cleared.
int clamp_magnitude(CMatrix& values, double threshold);

}  // namespace dcomp
