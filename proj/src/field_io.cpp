#include "dcomp/field_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>
#include <vector>

#include <png.h>

#include "dcomp/error.hpp"
#include "dcomp/msr_io.hpp"

namespace dcomp {

void write_field_csv(std::ostream& out, const ImagingField& field) {
  const SamplingGrid& g = field.grid;
  out << "# method=" << to_string(field.method) << '\n';
  out << "# x_range=" << format_double(g.x_min) << ':' << format_double(g.x_max) << '\n';
  out << "# y_range=" << format_double(g.y_min) << ':' << format_double(g.y_max) << '\n';
  out << "# resolution=" << g.resolution << '\n';
  for (const auto& [key, value] : field.metadata) {
    if (key != "method") out << "# " << key << '=' << value << '\n';
  }
  out << "x,y,value\n";
  for (int iy = 0; iy < g.resolution; ++iy) {
    for (int ix = 0; ix < g.resolution; ++ix) {
      out << format_double(g.x(ix)) << ',' << format_double(g.y(iy)) << ',' << format_double(field.values(iy, ix))
          << '\n';
    }
  }
}

void write_field_csv(const std::string& path, const ImagingField& field) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  write_field_csv(out, field);
  if (!out) throw ConfigError("write to '" + path + "' failed");
}

ImagingField read_field_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  ImagingField f;
  std::string line;
  bool header_seen = false;
  std::vector<double> values;
  auto range = [](const std::string& v, double& lo, double& hi) {
    const auto c = v.find(':');
    if (c == std::string::npos) throw ConfigError("malformed range '" + v + "'");
    lo = parse_double(v.substr(0, c));
    hi = parse_double(v.substr(c + 1));
  };
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = line.substr(2, eq - 2), value = line.substr(eq + 1);
      if (key == "method") f.method = parse_imaging_method(value);
      else if (key == "x_range") range(value, f.grid.x_min, f.grid.x_max);
      else if (key == "y_range") range(value, f.grid.y_min, f.grid.y_max);
      else if (key == "resolution") f.grid.resolution = int(parse_double(value));
      else f.metadata[key] = value;
      continue;
    }
    if (!header_seen) {
      if (line != "x,y,value") throw ConfigError("field file lacks the x,y,value header");
      header_seen = true;
      continue;
    }
    const auto c = line.rfind(',');
    if (c == std::string::npos) throw ConfigError("malformed field row");
    values.push_back(parse_double(line.substr(c + 1)));
  }
  f.grid.validate();
  const int n = f.grid.resolution;
  if (values.size() != std::size_t(n) * std::size_t(n)) throw ConfigError("field file has the wrong number of rows");
  f.values.resize(n, n);
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) f.values(iy, ix) = values[std::size_t(iy) * n + ix];
  }
  f.metadata["method"] = to_string(f.method);
  return f;
}

std::array<unsigned char, 3> colormap(double t) {
  static constexpr double anchors[5][3] = {
      {13, 8, 135}, {126, 3, 168}, {204, 71, 120}, {248, 149, 64}, {240, 249, 33}};
  if (!(t > 0.0)) t = 0.0;
  if (t > 1.0) t = 1.0;
  const double s = t * 4.0;
  const int i = std::min(3, static_cast<int>(s));
  const double f = s - i;
  std::array<unsigned char, 3> rgb{};
  for (int c = 0; c < 3; ++c) {
    rgb[c] = static_cast<unsigned char>(std::lround(anchors[i][c] + f * (anchors[i + 1][c] - anchors[i][c])));
  }
  return rgb;
}

void write_field_png(const std::string& path, const ImagingField& field) {
  const int n = field.grid.resolution;
  const double lo = field.values.minCoeff(), hi = field.values.maxCoeff();
  const double span = hi > lo ? hi - lo : 1.0;
  std::vector<unsigned char> pixels(std::size_t(n) * n * 3);
  for (int row = 0; row < n; ++row) {
    const int iy = n - 1 - row;
    for (int ix = 0; ix < n; ++ix) {
      const auto rgb = colormap((field.values(iy, ix) - lo) / span);
      std::copy(rgb.begin(), rgb.end(), pixels.begin() + (std::size_t(row) * n + ix) * 3);
    }
  }

  std::unique_ptr<FILE, int (*)(FILE*)> fp(std::fopen(path.c_str(), "wb"), &std::fclose);
  if (!fp) throw ConfigError("cannot open '" + path + "' for writing");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_write_struct(&png, nullptr);
    throw std::runtime_error("libpng initialisation failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw std::runtime_error("libpng failed writing '" + path + "'");
  }
  png_init_io(png, fp.get());
  png_set_IHDR(png, info, png_uint_32(n), png_uint_32(n), 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int row = 0; row < n; ++row) png_write_row(png, pixels.data() + std::size_t(row) * n * 3);
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

}  // namespace dcomp
