#pragma once

#include <string>
#include <vector>

#include "dcomp/types.hpp"

namespace dcomp {

/// Observation variant p_mn; incidence variant (-1)^{m-n} p_mn.
enum class ProlateVariant { Observation, Incidence };

/// Gram matrix of the Fourier modes phi_m = e^{im theta}/sqrt(2 pi), |m| <= J,
/// over [-alpha, alpha]:  p_mn = alpha/pi (m == n), sin((m-n) alpha) / (pi (m-n)) otherwise.
/// Mode m is stored at offset m + J.
class ProlateMatrix {
 public:
  ProlateMatrix(double alpha, int J, ProlateVariant variant = ProlateVariant::Observation);

  double alpha() const { return alpha_; }
  int J() const { return J_; }
  int size() const { return 2 * J_ + 1; }
  ProlateVariant variant() const { return variant_; }
  const RMatrix& entries() const { return entries_; }
  /// Entry for modes m, n in [-J, J].
  double operator()(int m, int n) const { return entries_(m + J_, n + J_); }

 private:
  double alpha_;
  int J_;
  ProlateVariant variant_;
  RMatrix entries_;
};

ProlateMatrix build_prolate(double alpha, int J, ProlateVariant variant = ProlateVariant::Observation);

/// Closed-form p_mn, usable without building the matrix.
double prolate_entry(double alpha, int m, int n);

/// Eigen-decomposition P = U diag(sigma) U^T, eigenvalues decreasing.
/// Each eigenvector has its first nonzero component positive.
struct ProlateSpectrum {
  RVector eigenvalues;
  RMatrix eigenvectors;
};

ProlateSpectrum spectrum(const ProlateMatrix& P);

/// Eigenvalues of P(alpha) (decreasing) computed in ~160-digit arithmetic so the
/// exponentially small tail is resolved. Same for both variants.
std::vector<double> extended_precision_eigenvalues(double alpha, int J);

/// Decay rate of the smallest eigenvalue:
/// log((sqrt 2 + sqrt(1 - cos a)) / (sqrt 2 - sqrt(1 - cos a))).
double prolate_decay_rate(double alpha);

enum class RegScheme { TSVD, Spectral, Tikhonov };

/// Approximate inverse filter applied to the eigenvalues:
///   TSVD      1/sigma for sigma >= cutoff, 0 otherwise
///   Spectral  1/(sigma + eps)
///   Tikhonov  sigma/(sigma^2 + eps)
struct RegularizationSpec {
  RegScheme scheme = RegScheme::Spectral;
  double parameter = 1e-3;

  static RegularizationSpec tsvd(double cutoff) { return {RegScheme::TSVD, cutoff}; }
  static RegularizationSpec spectral(double epsilon) { return {RegScheme::Spectral, epsilon}; }
  static RegularizationSpec tikhonov(double epsilon) { return {RegScheme::Tikhonov, epsilon}; }

  /// Throws std::invalid_argument on a nonpositive parameter.
  void validate() const;
  double filter(double sigma) const;
  /// e.g. "spectral:0.001"
  std::string to_string() const;
  /// Accepts "<scheme>:<param>" or a bare scheme name with its default.
  static RegularizationSpec parse(const std::string& text);
};

std::string to_string(RegScheme scheme);
RegScheme parse_reg_scheme(std::string name);

/// P^dagger = U diag(f(sigma)) U^T. TSVD keeping nothing throws std::domain_error.
RMatrix pseudo_inverse(const ProlateMatrix& P, const RegularizationSpec& reg);
RMatrix pseudo_inverse(const ProlateSpectrum& S, const RegularizationSpec& reg);

/// Number of eigenvalues retained by a TSVD cutoff (J_alpha).
int retained_modes(const ProlateSpectrum& S, double cutoff);

}  // namespace dcomp
