#include "dcomp/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "dcomp/error.hpp"
#include "dcomp/field_io.hpp"
#include "dcomp/forward.hpp"
#include "dcomp/msr_io.hpp"

namespace dcomp {
namespace fs = std::filesystem;
namespace {

template <class Fn>
auto stage(const std::string& name, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    throw ConfigError("stage '" + name + "': " + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError("stage '" + name + "': " + e.what());
  } catch (const std::exception& e) {
    throw NumericalError("stage '" + name + "': " + e.what());
  }
}

std::string tag(CompletionMethod m) {
  switch (m) {
    case CompletionMethod::None: return "none";
    case CompletionMethod::DCFS: return "dcfs";
    case CompletionMethod::DCIE: return "dcie";
  }
  return "?";
}

std::string lower(std::string s) {
  for (auto& c : s) c = char(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

NystromOptions nystrom_options(const ExperimentConfig& cfg, Exec exec) {
  NystromOptions o;
  o.n_quad = cfg.n_quad;
  o.exec = exec;
  return o;
}

int series_truncation(const ExperimentConfig& cfg) {
  return static_cast<int>(std::ceil(cfg.k * cfg.radius)) + 30;
}

}  // namespace

std::uint64_t stream_seed(std::uint64_t seed, int stream) {
  // splitmix64 step on seed + stream
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

FarFieldMatrix simulate_msr(const ExperimentConfig& cfg, DataExtent extent, Exec exec) {
  const ApertureGrid grid = make_grid(cfg.alpha, cfg.L);
  if (cfg.source == DataSource::Series) {
    return solve_disk_series(cfg.radius, cfg.bc, cfg.k, grid, series_truncation(cfg), extent);
  }
  return solve_nystrom(cfg.boundary(), cfg.bc, cfg.k, grid, nystrom_options(cfg, exec), extent);
}

CMatrix simulate_extended_rows(const ExperimentConfig& cfg, Exec exec) {
  const ApertureGrid grid = make_grid(cfg.alpha, cfg.L);
  const int L = grid.L, M = grid.M;
  if (cfg.source == DataSource::Series) {
    const FarFieldMatrix full = solve_disk_series(cfg.radius, cfg.bc, cfg.k, grid, series_truncation(cfg));
    return full.entries.bottomLeftCorner(M - L, L);
  }
  const NystromSolver solver(cfg.boundary(), cfg.bc, cfg.k, nystrom_options(cfg, exec));
  return nystrom_far_field(solver, std::span(grid.theta_inc.data() + L, std::size_t(M - L)), grid.measured_obs(), exec);
}

FarFieldMatrix complete(const FarFieldMatrix& F, CompletionMethod method, const CompletionConfig& cfg,
                        const std::optional<CMatrix>& extended_rows) {
  switch (method) {
    case CompletionMethod::None: return F;
    case CompletionMethod::DCFS: return dc_fs(F, cfg);
    case CompletionMethod::DCIE: return dc_ie(F, cfg, extended_rows);
  }
  throw ConfigError("unknown completion method");
}

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path + "' for hashing");
  std::unique_ptr<EVP_MD_CTX, void (*)(EVP_MD_CTX*)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw std::runtime_error("sha256 init failed");
  char buf[1 << 15];
  while (in) {
    in.read(buf, sizeof buf);
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &len);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

std::string Manifest::to_json() const {
  nlohmann::ordered_json j;
  j["params"] = params;
  j["files"] = nlohmann::ordered_json::array();
  for (const auto& f : files) {
    nlohmann::ordered_json e;
    e["path"] = f.path;
    e["kind"] = f.kind;
    e["bytes"] = f.bytes;
    e["sha256"] = f.sha256;
    e["params"] = f.params;
    j["files"].push_back(e);
  }
  return j.dump(2) + "\n";
}

Manifest run_pipeline(const ExperimentConfig& cfg, Exec exec) {
  stage("config", [&] { cfg.validate_pipeline(); });
  const fs::path dir(cfg.output_dir);
  stage("output", [&] { fs::create_directories(dir); });

  Manifest manifest;
  const std::string effective = dump_config(cfg);
  {
    std::istringstream in(effective);
    std::string line, section;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      if (line.front() == '[') {
        section = line.substr(1, line.size() - 2);
        continue;
      }
      const auto eq = line.find(" = ");
      manifest.params[section + "." + line.substr(0, eq)] = line.substr(eq + 3);
    }
  }

  auto record = [&](const std::string& name, const std::string& kind, std::map<std::string, std::string> params) {
    const fs::path p = dir / name;
    manifest.files.push_back({name, kind, sha256_file(p.string()), fs::file_size(p), std::move(params)});
  };

  stage("output", [&] {
    std::ofstream out(dir / "config.ini", std::ios::binary);
    out << effective;
    if (!out) throw ConfigError("cannot write config.ini");
  });
  record("config.ini", "config", {});

  // forward + noise
  const FarFieldMatrix clean = stage("forward", [&] { return simulate_msr(cfg, DataExtent::Limited, exec); });
  const FarFieldMatrix measured = stage("noise", [&] { return add_noise(clean, cfg.delta, stream_seed(cfg.seed, 0)); });
  std::optional<CMatrix> extended;
  if (cfg.extended_rows && cfg.completion == CompletionMethod::DCIE) {
    extended = stage("forward", [&] { return simulate_extended_rows(cfg, exec); });
    extended = stage("noise", [&] { return add_noise(*extended, cfg.delta, stream_seed(cfg.seed, 1)); });
  }
  stage("output", [&] { write_msr((dir / "msr_limited.csv").string(), measured); });
  record("msr_limited.csv", "msr", {{"delta", format_double(cfg.delta)}, {"extent", "limited"}});

  // reconstructions to produce: the configured one plus the comparison set
  std::vector<std::pair<ImagingMethod, CompletionMethod>> variants{{cfg.imaging, cfg.completion}};
  if (cfg.compare) {
    for (auto v : {std::pair{ImagingMethod::DSM, CompletionMethod::None}, {ImagingMethod::DSM, CompletionMethod::DCFS},
                   {ImagingMethod::DSM, CompletionMethod::DCIE}, {ImagingMethod::FM, CompletionMethod::DCIE}}) {
      if (std::find(variants.begin(), variants.end(), v) == variants.end()) variants.push_back(v);
    }
  }

  std::map<CompletionMethod, FarFieldMatrix> completed;
  for (const auto& [imaging, method] : variants) {
    if (completed.count(method)) continue;
    const auto name = "msr_completed_" + tag(method) + ".csv";
    completed[method] = stage("completion", [&] {
      return complete(measured, method, cfg.completion_cfg, method == CompletionMethod::DCIE ? extended : std::nullopt);
    });
    if (method == CompletionMethod::None) continue;
    stage("output", [&] { write_msr((dir / name).string(), completed[method]); });
    record(name, "msr",
           {{"completed_by", to_string(method)},
            {"J", std::to_string(cfg.completion_cfg.J)},
            {"reg", cfg.completion_cfg.reg.to_string()}});
  }

  for (const auto& [imaging, method] : variants) {
    const FarFieldMatrix& data = completed.at(method);
    const ImagingField field = stage("imaging", [&] {
      return imaging == ImagingMethod::DSM ? dsm(data, cfg.sampling, cfg.k, exec)
                                           : fm(data, cfg.sampling, cfg.k, cfg.imaging_reg, data.noise_level, exec);
    });
    const std::string base = "image_" + lower(to_string(imaging)) + "_" + tag(method);
    std::map<std::string, std::string> params{{"method", to_string(imaging)}, {"completion", to_string(method)}};
    if (imaging == ImagingMethod::FM) params["reg"] = cfg.imaging_reg.to_string();
    stage("output", [&] { write_field_csv((dir / (base + ".csv")).string(), field); });
    record(base + ".csv", "field_csv", params);
    if (cfg.png) {
      stage("output", [&] { write_field_png((dir / (base + ".png")).string(), field); });
      record(base + ".png", "field_png", params);
    }
  }

  stage("output", [&] {
    std::ofstream out(dir / "manifest.json", std::ios::binary);
    out << manifest.to_json();
    if (!out) throw ConfigError("cannot write manifest.json");
  });
  return manifest;
}

}  // namespace dcomp
