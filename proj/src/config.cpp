#include "dcomp/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "dcomp/error.hpp"
#include "dcomp/msr_io.hpp"

namespace dcomp {
namespace {

using boost::property_tree::ptree;

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"scene", {"shape", "bc", "radius", "position_x", "position_y", "cos_coeffs", "sin_coeffs", "k"}},
      {"data", {"alpha", "L", "delta", "seed", "source", "n_quad", "extended_rows"}},
      {"completion", {"method", "J", "reg", "threshold_factor", "ball_radius"}},
      {"imaging", {"method", "reg", "x_min", "x_max", "y_min", "y_max", "resolution", "compare"}},
      {"output", {"dir", "png"}},
  };
  return keys;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

long long parse_integer(const std::string& key, const std::string& text) {
  const double v = parse_double(text);
  if (v != std::floor(v) || std::abs(v) > 9.0e15) throw ConfigError(key + ": expected an integer, got '" + text + "'");
  return static_cast<long long>(v);
}

bool parse_bool(const std::string& key, const std::string& text) {
  const std::string t = lower(trim(text));
  if (t == "true" || t == "yes" || t == "1" || t == "on") return true;
  if (t == "false" || t == "no" || t == "0" || t == "off") return false;
  throw ConfigError(key + ": expected true or false, got '" + text + "'");
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!trim(item).empty()) out.push_back(parse_double(item));
  }
  return out;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format_double(v[i]);
  return s;
}

void set_key(ExperimentConfig& c, const std::string& section, const std::string& key, const std::string& raw) {
  const std::string value = trim(raw);
  const std::string name = section + "." + key;
  const auto sec = known_keys().find(section);
  if (sec == known_keys().end()) throw ConfigError("unknown config section [" + section + "]");
  if (!sec->second.count(key)) throw ConfigError("unknown config key '" + name + "'");
  try {
    if (section == "scene") {
      if (key == "shape") c.shape = parse_shape(value);
      else if (key == "bc") c.bc = parse_boundary_condition(value);
      else if (key == "radius") c.radius = parse_double(value);
      else if (key == "position_x") c.position.x() = parse_double(value);
      else if (key == "position_y") c.position.y() = parse_double(value);
      else if (key == "cos_coeffs") c.cos_coeffs = parse_list(value);
      else if (key == "sin_coeffs") c.sin_coeffs = parse_list(value);
      else if (key == "k") c.k = parse_double(value);
    } else if (section == "data") {
      if (key == "alpha") c.alpha = parse_angle(value);
      else if (key == "L") c.L = int(parse_integer(name, value));
      else if (key == "delta") c.delta = parse_double(value);
      else if (key == "seed") {
        const long long s = parse_integer(name, value);
        if (s < 0) throw ConfigError(name + ": seed must be nonnegative");
        c.seed = static_cast<std::uint64_t>(s);
      } else if (key == "source") {
        const std::string v = lower(value);
        if (v == "nystrom") c.source = DataSource::Nystrom;
        else if (v == "series") c.source = DataSource::Series;
        else throw ConfigError(name + ": expected nystrom or series, got '" + value + "'");
      } else if (key == "n_quad") c.n_quad = int(parse_integer(name, value));
      else if (key == "extended_rows") c.extended_rows = parse_bool(name, value);
    } else if (section == "completion") {
      if (key == "method") c.completion = parse_completion_method(value);
      else if (key == "J") c.completion_cfg.J = int(parse_integer(name, value));
      else if (key == "reg") c.completion_cfg.reg = RegularizationSpec::parse(value);
      else if (key == "threshold_factor") {
        const std::string v = lower(value);
        c.completion_cfg.threshold_factor =
            (v == "inf" || v == "none") ? std::numeric_limits<double>::infinity() : parse_double(value);
      } else if (key == "ball_radius") c.completion_cfg.ball_radius = parse_double(value);
    } else if (section == "imaging") {
      if (key == "method") c.imaging = parse_imaging_method(value);
      else if (key == "reg") c.imaging_reg = RegularizationSpec::parse(value);
      else if (key == "x_min") c.sampling.x_min = parse_double(value);
      else if (key == "x_max") c.sampling.x_max = parse_double(value);
      else if (key == "y_min") c.sampling.y_min = parse_double(value);
      else if (key == "y_max") c.sampling.y_max = parse_double(value);
      else if (key == "resolution") c.sampling.resolution = int(parse_integer(name, value));
      else if (key == "compare") c.compare = parse_bool(name, value);
    } else if (section == "output") {
      if (key == "dir") c.output_dir = value;
      else if (key == "png") c.png = parse_bool(name, value);
    }
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    if (what.rfind(name, 0) == 0) throw;
    throw ConfigError(name + ": " + what);
  }
}

void apply_override(ExperimentConfig& c, const std::string& assignment) {
  const auto eq = assignment.find('=');
  const auto dot = assignment.find('.');
  if (eq == std::string::npos || dot == std::string::npos || dot > eq) {
    throw ConfigError("override '" + assignment + "' is not of the form section.key=value");
  }
  set_key(c, trim(assignment.substr(0, dot)), trim(assignment.substr(dot + 1, eq - dot - 1)), assignment.substr(eq + 1));
}

}  // namespace

std::string to_string(CompletionMethod m) {
  switch (m) {
    case CompletionMethod::None: return "none";
    case CompletionMethod::DCFS: return "DC-FS";
    case CompletionMethod::DCIE: return "DC-IE";
  }
  return "?";
}

CompletionMethod parse_completion_method(const std::string& text) {
  std::string t = lower(trim(text));
  t.erase(std::remove(t.begin(), t.end(), '-'), t.end());
  t.erase(std::remove(t.begin(), t.end(), '_'), t.end());
  if (t == "none") return CompletionMethod::None;
  if (t == "dcfs") return CompletionMethod::DCFS;
  if (t == "dcie") return CompletionMethod::DCIE;
  throw ConfigError("unknown completion method '" + text + "' (expected DC-FS, DC-IE or none)");
}

double parse_angle(const std::string& text) {
  std::string t = lower(trim(text));
  t.erase(std::remove(t.begin(), t.end(), ' '), t.end());
  const auto p = t.find("pi");
  if (p == std::string::npos) return parse_double(t);
  std::string head = t.substr(0, p), tail = t.substr(p + 2);
  if (!head.empty() && head.back() == '*') head.pop_back();
  double v = head.empty() ? kPi : parse_double(head) * kPi;
  if (!tail.empty()) {
    if (tail[0] != '/') throw ConfigError("cannot parse angle '" + text + "'");
    v /= parse_double(tail.substr(1));
  }
  return v;
}

Boundary ExperimentConfig::boundary() const {
  switch (shape) {
    case ShapeKind::Peanut: return Boundary::peanut(position);
    case ShapeKind::Disk: return Boundary::disk(radius, position);
    case ShapeKind::Custom: return Boundary::custom(cos_coeffs, sin_coeffs, position);
  }
  throw ConfigError("unknown shape");
}

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& m) { throw ConfigError(m); };
  if (!(k > 0.0)) fail("scene.k must be positive");
  if (shape == ShapeKind::Disk && !(radius > 0.0)) fail("scene.radius must be positive");
  try {
    (void)boundary();
    (void)make_grid(alpha, L);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  if (!(delta >= 0.0)) fail("data.delta must be nonnegative");
  if (n_quad < 8 || n_quad % 2) fail("data.n_quad must be even and >= 8");
  if (source == DataSource::Series && (shape != ShapeKind::Disk || position != Vec2::Zero())) {
    fail("data.source=series needs a disk centred at the origin");
  }
  try {
    completion_cfg.validate();
    imaging_reg.validate();
    sampling.validate();
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  if (output_dir.empty()) fail("output.dir must not be empty");
}

void ExperimentConfig::validate_pipeline() const {
  validate();
  auto fail = [](const std::string& m) { throw ConfigError(m); };
  const bool full = make_grid(alpha, L).full_aperture();
  if (completion != CompletionMethod::None && 2 * completion_cfg.J + 1 > L) {
    fail("completion.J too large: 2J+1 must not exceed data.L");
  }
  if (completion != CompletionMethod::None && completion_cfg.ball_radius <= boundary().circumradius()) {
    fail("completion.ball_radius must exceed the scatterer's circumradius");
  }
  if (imaging == ImagingMethod::FM) {
    if (completion == CompletionMethod::None && !full) fail("FM needs full-aperture data: set a completion method");
    if (make_grid(alpha, L).M % 2) fail("FM needs an even number M of full-circle directions");
  }
  if (compare && make_grid(alpha, L).M % 2) fail("imaging.compare includes FM, which needs an even M");
  if (compare && 2 * completion_cfg.J + 1 > L) fail("imaging.compare runs both completions: 2J+1 must not exceed L");
  if (compare && completion_cfg.ball_radius <= boundary().circumradius()) {
    fail("completion.ball_radius must exceed the scatterer's circumradius");
  }
}

ExperimentConfig parse_config(const std::string& text, const std::vector<std::string>& overrides) {
  ptree tree;
  std::istringstream in(text);
  try {
    boost::property_tree::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(std::string("config syntax: ") + e.what());
  }
  ExperimentConfig c;
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) throw ConfigError("config key '" + section + "' outside a section");
    for (const auto& [key, value] : body) set_key(c, section, key, value.data());
  }
  for (const auto& o : overrides) apply_override(c, o);
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), overrides);
}

std::string dump_config(const ExperimentConfig& c) {
  std::ostringstream o;
  o << "[scene]\n";
  o << "shape = " << to_string(c.shape) << '\n';
  o << "bc = " << to_string(c.bc) << '\n';
  o << "radius = " << format_double(c.radius) << '\n';
  o << "position_x = " << format_double(c.position.x()) << '\n';
  o << "position_y = " << format_double(c.position.y()) << '\n';
  o << "cos_coeffs = " << join(c.cos_coeffs) << '\n';
  o << "sin_coeffs = " << join(c.sin_coeffs) << '\n';
  o << "k = " << format_double(c.k) << "\n\n";
  o << "[data]\n";
  o << "alpha = " << format_double(c.alpha) << '\n';
  o << "L = " << c.L << '\n';
  o << "delta = " << format_double(c.delta) << '\n';
  o << "seed = " << c.seed << '\n';
  o << "source = " << (c.source == DataSource::Nystrom ? "nystrom" : "series") << '\n';
  o << "n_quad = " << c.n_quad << '\n';
  o << "extended_rows = " << (c.extended_rows ? "true" : "false") << "\n\n";
  o << "[completion]\n";
  o << "method = " << to_string(c.completion) << '\n';
  o << "J = " << c.completion_cfg.J << '\n';
  o << "reg = " << c.completion_cfg.reg.to_string() << '\n';
  o << "threshold_factor = "
    << (std::isfinite(c.completion_cfg.threshold_factor) ? format_double(c.completion_cfg.threshold_factor) : "inf")
    << '\n';
  o << "ball_radius = " << format_double(c.completion_cfg.ball_radius) << "\n\n";
  o << "[imaging]\n";
  o << "method = " << to_string(c.imaging) << '\n';
  o << "reg = " << c.imaging_reg.to_string() << '\n';
  o << "x_min = " << format_double(c.sampling.x_min) << '\n';
  o << "x_max = " << format_double(c.sampling.x_max) << '\n';
  o << "y_min = " << format_double(c.sampling.y_min) << '\n';
  o << "y_max = " << format_double(c.sampling.y_max) << '\n';
  o << "resolution = " << c.sampling.resolution << '\n';
  o << "compare = " << (c.compare ? "true" : "false") << "\n\n";
  o << "[output]\n";
  o << "dir = " << c.output_dir << '\n';
  o << "png = " << (c.png ? "true" : "false") << '\n';
  return o.str();
}

}  // namespace dcomp
