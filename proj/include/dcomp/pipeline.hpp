#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dcomp/config.hpp"
#include "dcomp/far_field.hpp"
#include "dcomp/parallel.hpp"

namespace dcomp {

struct ManifestEntry {
  std::string path;  ///< relative to the output directory
  std::string kind;  ///< msr, field_csv, field_png, config
  std::string sha256;
  std::uintmax_t bytes = 0;
  std::map<std::string, std::string> params;
};

struct Manifest {
  std::map<std::string, std::string> params;
  std::vector<ManifestEntry> files;

  /// Deterministic JSON (no timestamps). The manifest does not list itself.
  std::string to_json() const;
};

/// Noiseless MSR data for the configured scene on the measured aperture
/// (Limited) or the whole paired grid (Full).
FarFieldMatrix simulate_msr(const ExperimentConfig& cfg, DataExtent extent, Exec exec = Exec::Parallel);

/// Noiseless (M-L) x L block: complementary incidences theta_inc[L..M) on the
/// measured observation aperture.
CMatrix simulate_extended_rows(const ExperimentConfig& cfg, Exec exec = Exec::Parallel);

/// Seeds derived from the single config seed, one per random stream.
std::uint64_t stream_seed(std::uint64_t seed, int stream);

FarFieldMatrix complete(const FarFieldMatrix& F, CompletionMethod method, const CompletionConfig& cfg,
                        const std::optional<CMatrix>& extended_rows = std::nullopt);

/// forward -> noise -> completion -> imaging. Writes into cfg.output_dir:
///   config.ini                 the effective configuration
///   msr_limited.csv            noisy measured L x L block
///   msr_completed_<tag>.csv    each completion that was run (tag dcfs, dcie)
///   image_<method>_<tag>.csv   (and .png) each reconstruction; tag none for raw data
///   manifest.json
/// A failure is rethrown with the failing stage named; ConfigError stays
/// ConfigError, anything else becomes NumericalError.
Manifest run_pipeline(const ExperimentConfig& cfg, Exec exec = Exec::Parallel);

std::string sha256_file(const std::string& path);

}  // namespace dcomp
