#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dcomp/completion.hpp"
#include "dcomp/imaging.hpp"
#include "dcomp/scene.hpp"

namespace dcomp {

enum class CompletionMethod { None, DCFS, DCIE };
std::string to_string(CompletionMethod m);
CompletionMethod parse_completion_method(const std::string& text);

enum class DataSource { Nystrom, Series };

/// Everything one experiment needs. Defaults are the sound-soft peanut at
/// k = 5, alpha = pi/2, L = 128, 5% noise, DC-IE with J = 9 and spectral
/// eps = 1e-3, imaged by DSM.
struct ExperimentConfig {
  // [scene]
  ShapeKind shape = ShapeKind::Peanut;
  BoundaryCondition bc = BoundaryCondition::Dirichlet;
  double radius = 2.0;  ///< disk only
  Vec2 position = Vec2::Zero();
  std::vector<double> cos_coeffs{1.0};  ///< custom only
  std::vector<double> sin_coeffs;
  double k = 5.0;

  // [data]
  double alpha = kPi / 2;
  int L = 128;
  double delta = 0.05;
  std::uint64_t seed = 20240601;
  DataSource source = DataSource::Nystrom;
  int n_quad = 128;
  /// Also simulate (noisy) measurements at the complementary incidences on
  /// the measured observation aperture and hand them to DC-IE.
  bool extended_rows = false;

  // [completion]
  CompletionMethod completion = CompletionMethod::DCIE;
  CompletionConfig completion_cfg;

  // [imaging]
  ImagingMethod imaging = ImagingMethod::DSM;
  RegularizationSpec imaging_reg = RegularizationSpec::tsvd(1e-8);
  SamplingGrid sampling;
  /// Also produce the four comparison images: DSM on the raw limited data,
  /// DSM after DC-FS, DSM after DC-IE and FM after DC-IE.
  bool compare = true;

  // [output]
  std::string output_dir = "out";
  bool png = true;

  Boundary boundary() const;
  /// Throws ConfigError if a single setting is out of range.
  void validate() const;
  /// validate() plus the cross-stage requirements of run_pipeline (J against
  /// L, FM only on full-aperture data, an even M for FM).
  void validate_pipeline() const;
};

/// Parses the INI text, then applies "section.key=value" overrides in order.
/// Unknown sections or keys are errors.
ExperimentConfig parse_config(const std::string& text, const std::vector<std::string>& overrides = {});
ExperimentConfig load_config(const std::string& path, const std::vector<std::string>& overrides = {});

/// INI text that parses back to an identical configuration.
std::string dump_config(const ExperimentConfig& cfg);

/// Angle expression: a number, or one of "pi", "<a>pi", "<a>*pi", "pi/<b>", "<a>*pi/<b>".
double parse_angle(const std::string& text);

}  // namespace dcomp
