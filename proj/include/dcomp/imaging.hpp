#pragma once

#include <map>
#include <string>

#include "dcomp/far_field.hpp"
#include "dcomp/parallel.hpp"
#include "dcomp/prolate.hpp"

namespace dcomp {

/// Rectangular sampling grid, `resolution` points per axis including the ends.
struct SamplingGrid {
  double x_min = -4.0, x_max = 4.0;
  double y_min = -4.0, y_max = 4.0;
  int resolution = 101;

  void validate() const;
  double x(int ix) const { return x_min + (x_max - x_min) * ix / (resolution - 1); }
  double y(int iy) const { return y_min + (y_max - y_min) * iy / (resolution - 1); }
  Vec2 point(int ix, int iy) const { return {x(ix), y(iy)}; }
  double cell() const { return (x_max - x_min) / (resolution - 1); }
};

enum class ImagingMethod { DSM, FM };
std::string to_string(ImagingMethod m);
ImagingMethod parse_imaging_method(const std::string& text);

/// values(iy, ix) is the indicator at grid.point(ix, iy).
struct ImagingField {
  SamplingGrid grid;
  RMatrix values;
  ImagingMethod method = ImagingMethod::DSM;
  std::map<std::string, std::string> metadata;
};

/// Direct sampling indicator
///   |w^2 sum_i sum_j F_ij e^{-ik d_i.z} e^{ik xhat_j.z}|,  w = 2 pi / M,
/// summed over whatever incidences / observations F covers.
ImagingField dsm(const FarFieldMatrix& F, const SamplingGrid& grid, double k, Exec exec = Exec::Parallel);

/// Discretised far-field operator on the observation grid:
///   A(j, m) = (2 pi / M) u_inf(theta_obs[j]; theta_obs[m]).
/// Needs the full M x M paired grid with M even (incidence theta_obs[m] is
/// row m - M/2 mod M).
CMatrix far_field_operator(const FarFieldMatrix& F);

/// F_sharp = |Re A| + |Im A| with Re A = (A + A*)/2, Im A = (A - A*)/(2i).
CMatrix sharp_operator(const CMatrix& A);

/// Factorization-method indicator 1 / ||g_z||^2 for F_sharp^{1/2} g_z = r_z,
/// r_z(xhat_j) = e^{-ik xhat_j.z}, solved in the eigenbasis of F_sharp.
/// With mu_n = lambda_n / lambda_max the squared norm is
///   (1/lambda_max) sum_n phi(mu_n) |<r_z, v_n>|^2
/// where phi is 1/mu on mu >= cutoff (TSVD), 1/(mu + eps) (Spectral) or
/// mu/(mu + eps)^2 (Tikhonov on F_sharp^{1/2}). For Tikhonov and
/// noise_level > 0, eps is chosen per z by the discrepancy principle
///   ||F_sharp^{1/2} g - r|| = noise_level ||F_sharp^{1/2}|| ||g||.
ImagingField fm(const FarFieldMatrix& F, const SamplingGrid& grid, double k,
                const RegularizationSpec& reg = RegularizationSpec::tsvd(1e-8), double noise_level = 0.0,
                Exec exec = Exec::Parallel);

/// Plain serial loops for checking the kernels above.
namespace reference {
ImagingField dsm(const FarFieldMatrix& F, const SamplingGrid& grid, double k);
ImagingField fm(const FarFieldMatrix& F, const SamplingGrid& grid, double k,
                const RegularizationSpec& reg = RegularizationSpec::tsvd(1e-8), double noise_level = 0.0);
}  // namespace reference

}  // namespace dcomp
