#pragma once

#include <array>
#include <iosfwd>
#include <string>

#include "dcomp/imaging.hpp"

namespace dcomp {

/// "# key=value" metadata lines, then a "x,y,value" header and one row per
/// sampling point (x fastest).
void write_field_csv(std::ostream& out, const ImagingField& field);
void write_field_csv(const std::string& path, const ImagingField& field);

/// Reads what write_field_csv wrote. Throws ConfigError on malformed input.
ImagingField read_field_csv(const std::string& path);

/// Fixed colormap: linear interpolation between five anchors
/// (13,8,135) (126,3,168) (204,71,120) (248,149,64) (240,249,33) at 0, .25, .5, .75, 1.
std::array<unsigned char, 3> colormap(double t);

/// 8-bit RGB heatmap, min-max normalised, one pixel per sampling point,
/// top row = largest y. A constant field renders as the lowest colour.
void write_field_png(const std::string& path, const ImagingField& field);

}  // namespace dcomp
