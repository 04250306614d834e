// dcomp: forward simulation, noise, data completion and imaging from the
// command line. Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dcomp/config.hpp"
#include "dcomp/error.hpp"
#include "dcomp/field_io.hpp"
#include "dcomp/forward.hpp"
#include "dcomp/msr_io.hpp"
#include "dcomp/pipeline.hpp"
#include "dcomp/prolate.hpp"

namespace {

using namespace dcomp;

struct Common {
  std::string config_path;
  std::vector<std::string> overrides;

  ExperimentConfig load() const {
    std::string text;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw ConfigError("cannot open config '" + config_path + "'");
      std::stringstream ss;
      ss << in.rdbuf();
      text = ss.str();
    }
    return parse_config(text, overrides);
  }
};

// Adds --name that becomes the override section.key=value.
void mirror(CLI::App* app, Common& common, const std::string& flag, const std::string& key, const std::string& help) {
  app->add_option_function<std::string>(
      flag, [&common, key](const std::string& v) { common.overrides.push_back(key + "=" + v); }, help + " (" + key + ")");
}

void add_common(CLI::App* app, Common& common) {
  app->add_option("-c,--config", common.config_path, "INI configuration file");
  app->add_option("--set", common.overrides, "override, section.key=value (repeatable)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Limited-aperture inverse scattering: data completion and imaging"};
  app.require_subcommand(1);

  // forward
  Common fwd;
  std::string fwd_out, fwd_extent = "limited";
  auto* forward = app.add_subcommand("forward", "simulate a noiseless MSR matrix");
  add_common(forward, fwd);
  mirror(forward, fwd, "--shape", "scene.shape", "peanut, disk or custom");
  mirror(forward, fwd, "--bc", "scene.bc", "dirichlet or neumann");
  mirror(forward, fwd, "--radius", "scene.radius", "disk radius");
  mirror(forward, fwd, "--k", "scene.k", "wavenumber");
  mirror(forward, fwd, "--alpha", "data.alpha", "half aperture, e.g. pi/2");
  mirror(forward, fwd, "--L", "data.L", "measured directions");
  mirror(forward, fwd, "--source", "data.source", "nystrom or series");
  mirror(forward, fwd, "--n-quad", "data.n_quad", "Nystrom nodes");
  forward->add_option("--extent", fwd_extent, "limited (L x L) or full (M x M)")->check(CLI::IsMember({"limited", "full"}));
  forward->add_option("-o,--output", fwd_out, "output MSR file")->required();

  // noise
  Common noi;
  std::string noi_in, noi_out;
  auto* noise = app.add_subcommand("noise", "add relative Gaussian noise to an MSR matrix");
  add_common(noise, noi);
  mirror(noise, noi, "--delta", "data.delta", "relative noise level");
  mirror(noise, noi, "--seed", "data.seed", "random seed");
  noise->add_option("-i,--input", noi_in, "input MSR file")->required();
  noise->add_option("-o,--output", noi_out, "output MSR file")->required();

  // complete
  Common com;
  std::string com_in, com_out, com_ext;
  auto* completion = app.add_subcommand("complete", "complete limited-aperture data to the full aperture");
  add_common(completion, com);
  mirror(completion, com, "--method", "completion.method", "DC-FS or DC-IE");
  mirror(completion, com, "--J", "completion.J", "Fourier truncation");
  mirror(completion, com, "--reg", "completion.reg", "scheme:param, e.g. spectral:1e-3");
  mirror(completion, com, "--threshold", "completion.threshold_factor", "magnitude clamp factor or inf");
  completion->add_option("-i,--input", com_in, "limited MSR file")->required();
  completion->add_option("--extended-rows", com_ext, "complementary-incidence rows for DC-IE");
  completion->add_option("-o,--output", com_out, "output MSR file")->required();

  // image
  Common img;
  std::string img_in, img_csv, img_png;
  double img_noise = -1.0;
  auto* image = app.add_subcommand("image", "DSM or FM indicator on a sampling grid");
  add_common(image, img);
  mirror(image, img, "--method", "imaging.method", "DSM or FM");
  mirror(image, img, "--reg", "imaging.reg", "FM regularisation, e.g. tsvd:1e-8");
  mirror(image, img, "--x-min", "imaging.x_min", "sampling box");
  mirror(image, img, "--x-max", "imaging.x_max", "sampling box");
  mirror(image, img, "--y-min", "imaging.y_min", "sampling box");
  mirror(image, img, "--y-max", "imaging.y_max", "sampling box");
  mirror(image, img, "--resolution", "imaging.resolution", "points per axis");
  image->add_option("--noise-level", img_noise, "noise level for the discrepancy principle (default: from file)");
  image->add_option("-i,--input", img_in, "MSR file")->required();
  image->add_option("--csv", img_csv, "output field CSV")->required();
  image->add_option("--png", img_png, "output heatmap PNG");

  // prolate-spectrum
  std::string pro_alpha = "pi/2", pro_out, pro_variant = "observation";
  int pro_J = 39;
  bool pro_ext = false;
  auto* prolate = app.add_subcommand("prolate-spectrum", "eigenvalues of the prolate matrix as CSV");
  prolate->add_option("--alpha", pro_alpha, "half aperture");
  prolate->add_option("--J", pro_J, "truncation, matrix size 2J+1");
  prolate->add_option("--variant", pro_variant, "observation or incidence")->check(CLI::IsMember({"observation", "incidence"}));
  prolate->add_flag("--extended-precision", pro_ext, "add a column computed in extended precision");
  prolate->add_option("-o,--output", pro_out, "output CSV (default stdout)");

  // pipeline
  Common pip;
  bool pip_dump = false;
  auto* pipeline = app.add_subcommand("pipeline", "forward -> noise -> completion -> imaging with artifacts");
  add_common(pipeline, pip);
  mirror(pipeline, pip, "--output-dir", "output.dir", "artifact directory");
  mirror(pipeline, pip, "--seed", "data.seed", "random seed");
  pipeline->add_flag("--dump-config", pip_dump, "print the effective configuration and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*forward) {
      const ExperimentConfig cfg = fwd.load();
      write_msr(fwd_out, simulate_msr(cfg, fwd_extent == "full" ? DataExtent::Full : DataExtent::Limited));
    } else if (*noise) {
      const ExperimentConfig cfg = noi.load();
      write_msr(noi_out, add_noise(read_msr(noi_in), cfg.delta, stream_seed(cfg.seed, 0)));
    } else if (*completion) {
      const ExperimentConfig cfg = com.load();
      if (cfg.completion == CompletionMethod::None) throw ConfigError("complete: choose DC-FS or DC-IE");
      std::optional<CMatrix> ext;
      if (!com_ext.empty()) ext = read_complex_rows(com_ext);
      write_msr(com_out, complete(read_msr(com_in), cfg.completion, cfg.completion_cfg, ext));
    } else if (*image) {
      const ExperimentConfig cfg = img.load();
      const FarFieldMatrix F = read_msr(img_in);
      const double noise_level = img_noise >= 0.0 ? img_noise : F.noise_level;
      const ImagingField field = cfg.imaging == ImagingMethod::DSM
                                     ? dsm(F, cfg.sampling, F.k)
                                     : fm(F, cfg.sampling, F.k, cfg.imaging_reg, noise_level);
      write_field_csv(img_csv, field);
      if (!img_png.empty()) write_field_png(img_png, field);
    } else if (*prolate) {
      const double alpha = parse_angle(pro_alpha);
      const auto variant = pro_variant == "incidence" ? ProlateVariant::Incidence : ProlateVariant::Observation;
      const ProlateSpectrum s = spectrum(build_prolate(alpha, pro_J, variant));
      std::vector<double> ext;
      if (pro_ext) ext = extended_precision_eigenvalues(alpha, pro_J);
      std::ofstream file;
      if (!pro_out.empty()) {
        file.open(pro_out, std::ios::binary);
        if (!file) throw ConfigError("cannot open '" + pro_out + "'");
      }
      std::ostream& out = pro_out.empty() ? std::cout : file;
      out << "index,eigenvalue" << (pro_ext ? ",eigenvalue_extended" : "") << '\n';
      for (Eigen::Index j = 0; j < s.eigenvalues.size(); ++j) {
        out << j + 1 << ',' << format_double(s.eigenvalues(j));
        if (pro_ext) out << ',' << format_double(ext[std::size_t(j)]);
        out << '\n';
      }
    } else if (*pipeline) {
      const ExperimentConfig cfg = pip.load();
      cfg.validate_pipeline();
      if (pip_dump) {
        std::cout << dump_config(cfg);
        return 0;
      }
      const Manifest m = run_pipeline(cfg);
      std::cout << "wrote " << m.files.size() + 1 << " files to " << cfg.output_dir << '\n';
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "dcomp: configuration error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "dcomp: numerical failure: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
