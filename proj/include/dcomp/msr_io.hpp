#pragma once

#include <iosfwd>
#include <string>

#include "dcomp/far_field.hpp"

namespace dcomp {

/// Text format for far-field matrices:
///
///   # dcomp-msr 1
///   # k=<wavenumber>
///   # alpha=<half aperture>
///   # L=<measured count>
///   # M=<full count>
///   # delta=<noise level>
///   # <metadata key>=<value>          (zero or more, sorted by key)
///   re+imi,re+imi,...                  (one line per incidence, e.g. 0.5-1.25e-3i)
///
/// Numbers use the shortest representation that reads back to the same double,
/// so write -> read is exact and equal inputs give identical bytes.
void write_msr(std::ostream& out, const FarFieldMatrix& F);
void write_msr(const std::string& path, const FarFieldMatrix& F);

/// Throws ConfigError on malformed input.
FarFieldMatrix read_msr(std::istream& in);
FarFieldMatrix read_msr(const std::string& path);

/// Bare complex rows (same "re+imi,..." layout, '#' lines ignored) for blocks
/// that are not square, such as the complementary-incidence rows of DC-IE.
void write_complex_rows(const std::string& path, const CMatrix& rows);
CMatrix read_complex_rows(const std::string& path);

/// "re+imi" / "re-imi" with shortest round-trip parts, and its inverse.
std::string format_complex(Complex z);
Complex parse_complex(const std::string& text);

/// Shortest round-trip text for a double.
std::string format_double(double v);
/// Strict parse of a whole string as a double; throws ConfigError.
double parse_double(const std::string& text);

}  // namespace dcomp
