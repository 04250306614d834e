#pragma once

#include <map>
#include <span>
#include <string>

#include "dcomp/scene.hpp"
#include "dcomp/types.hpp"

namespace dcomp {

/// Which part of the paired grid a matrix covers.
enum class DataExtent { Limited, Full };

/// Multi-static response samples: entries(i, j) = u_inf(theta_obs[j]; theta_inc[i]).
/// A limited matrix is L x L on the measured aperture, a full one M x M.
struct FarFieldMatrix {
  CMatrix entries;
  ApertureGrid grid;
  double k = 0.0;
  double noise_level = 0.0;
  std::map<std::string, std::string> metadata;

  Eigen::Index size() const { return entries.rows(); }
  bool is_full() const { return entries.rows() == grid.M; }

  std::span<const double> obs_angles() const {
    return {grid.theta_obs.data(), static_cast<std::size_t>(entries.cols())};
  }
  std::span<const double> inc_angles() const {
    return {grid.theta_inc.data(), static_cast<std::size_t>(entries.rows())};
  }

  /// Throws ConfigError unless the matrix is square and sized L or M.
  void validate() const;
};

/// Relative Frobenius distance ||a - b|| / ||b||.
double relative_error(const CMatrix& a, const CMatrix& b);

}  // namespace dcomp
