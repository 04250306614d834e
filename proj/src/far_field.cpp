#include "dcomp/far_field.hpp"

#include "dcomp/error.hpp"

namespace dcomp {

void FarFieldMatrix::validate() const {
  if (entries.rows() != entries.cols()) throw ConfigError("far-field matrix must be square");
  if (entries.rows() != grid.L && entries.rows() != grid.M) {
    throw ConfigError("far-field matrix size matches neither L nor M of its grid");
  }
  if (!(k > 0.0)) throw ConfigError("far-field matrix needs a positive wavenumber");
}

double relative_error(const CMatrix& a, const CMatrix& b) {
  const double nb = b.norm();
  return nb == 0.0 ? (a - b).norm() : (a - b).norm() / nb;
}

}  // namespace dcomp
