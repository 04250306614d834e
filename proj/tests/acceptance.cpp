// One line per acceptance criterion; exit status is the number of failures.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "dcomp/completion.hpp"
#include "dcomp/config.hpp"
#include "dcomp/forward.hpp"
#include "dcomp/imaging.hpp"
#include "dcomp/pipeline.hpp"
#include "dcomp/prolate.hpp"
#include "oracles.hpp"

using namespace dcomp;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome r;
  try {
    r = body();
  } catch (const std::exception& e) {
    r = {false, std::string("exception: ") + e.what()};
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0.0 && dt > budget_s) {
    r.pass = false;
    r.detail += " [over time budget " + std::to_string(budget_s) + " s]";
  }
  failures += !r.pass;
  std::printf("%s criterion %2d: %-38s %8.2f s  %s\n", r.pass ? "PASS" : "FAIL", id, name, dt, r.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

CMatrix random_coefficients(int J, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  CMatrix B(2 * J + 1, 2 * J + 1);
  for (Eigen::Index i = 0; i < B.size(); ++i) B(i) = Complex(n(rng), n(rng));
  return B;
}

FarFieldMatrix synthesized(const CMatrix& B, int J, const ApertureGrid& g, int size) {
  FarFieldMatrix F;
  F.grid = g;
  F.k = 5.0;
  const std::vector<double> inc(g.theta_inc.begin(), g.theta_inc.begin() + size);
  const std::vector<double> obs(g.theta_obs.begin(), g.theta_obs.begin() + size);
  F.entries = oracle::synthesize(B, J, inc, obs);
  return F;
}

double contrast(const ImagingField& f, double radius, double k) {
  const double wavelength = 2 * oracle::pi / k;
  double in = 0, out = 0;
  int nin = 0, nout = 0;
  for (int iy = 0; iy < f.grid.resolution; ++iy)
    for (int ix = 0; ix < f.grid.resolution; ++ix) {
      const double r = f.grid.point(ix, iy).norm();
      if (r < radius) in += f.values(iy, ix), ++nin;
      if (r > radius + wavelength) out += f.values(iy, ix), ++nout;
    }
  return (in / nin) / (out / nout);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main() {
  criterion(1, "prolate identity at alpha = pi", 1.0, [] {
    double worst = 0;
    for (int J : {4, 9, 39}) {
      const auto P = build_prolate(kPi, J);
      worst = std::max(worst, (P.entries() - RMatrix::Identity(P.size(), P.size())).cwiseAbs().maxCoeff());
    }
    return Outcome{worst < 1e-14, fmt("max|P-I| = %.2e", worst)};
  });

  criterion(2, "prolate spectral suite, N = 79", 5.0, [] {
    // strict interior via extended precision at 0.3pi and 0.7pi; 1 - sigma_j(a) = sigma_-j(pi - a)
    const auto lo = extended_precision_eigenvalues(0.3 * kPi, 39);
    const auto hi = extended_precision_eigenvalues(0.7 * kPi, 39);
    const auto mid = extended_precision_eigenvalues(kPi / 2, 39);
    bool inside = true;
    for (const auto* v : {&lo, &hi, &mid})
      for (double s : *v) inside = inside && s > 0.0 && s <= 1.0;
    inside = inside && mid.back() > 0.0;  // 1 - sigma_max(pi/2) = sigma_min(pi/2)
    const auto A = spectrum(build_prolate(0.3 * kPi, 39)), B = spectrum(build_prolate(0.7 * kPi, 39));
    double sym = 0;
    for (int j = 0; j < 79; ++j) sym = std::max(sym, std::abs(A.eigenvalues(j) + B.eigenvalues(78 - j) - 1.0));
    const auto C = spectrum(build_prolate(kPi / 2, 39));
    int cluster = 0;
    for (int j = 0; j < 79; ++j) cluster += C.eigenvalues(j) > 0.1 && C.eigenvalues(j) < 0.9;
    double xs[3] = {21, 41, 79}, ys[3];
    ys[0] = std::log(extended_precision_eigenvalues(kPi / 2, 10).back());
    ys[1] = std::log(extended_precision_eigenvalues(kPi / 2, 20).back());
    ys[2] = std::log(mid.back());
    const double xm = (xs[0] + xs[1] + xs[2]) / 3, ym = (ys[0] + ys[1] + ys[2]) / 3;
    double num = 0, den = 0;
    for (int i = 0; i < 3; ++i) num += (xs[i] - xm) * (ys[i] - ym), den += (xs[i] - xm) * (xs[i] - xm);
    const double slope = num / den;
    const double s = std::sqrt(1.0 - std::cos(kPi / 2));
    const double gamma = std::log((std::sqrt(2.0) + s) / (std::sqrt(2.0) - s));
    const bool ok = inside && sym < 1e-8 && cluster <= 12 && std::abs(slope + gamma) < 0.3 * gamma;
    std::ostringstream d;
    d << "interior=" << (inside ? "yes" : "no") << " symmetry=" << fmt("%.1e", sym) << " cluster=" << cluster
      << " slope=" << fmt("%.3f", slope) << " (-gamma=" << fmt("%.3f", -gamma) << ")";
    return Outcome{ok, d.str()};
  });

  criterion(3, "Nystrom vs disk series", 30.0, [] {
    const auto g = make_grid(kPi, 64);
    NystromOptions o;
    o.n_quad = 128;
    const double ed = relative_error(solve_nystrom_dirichlet(Boundary::disk(2.0), 5.0, g, o).entries,
                                     solve_disk_series(2.0, BoundaryCondition::Dirichlet, 5.0, g, 40).entries);
    const double en = relative_error(solve_nystrom_neumann(Boundary::disk(2.0), 5.0, g, o).entries,
                                     solve_disk_series(2.0, BoundaryCondition::Neumann, 5.0, g, 40).entries);
    return Outcome{ed < 1e-6 && en < 1e-5, fmt("dirichlet %.2e", ed) + fmt(", neumann %.2e", en)};
  });

  criterion(4, "peanut reciprocity", 0.0, [] {
    const auto F = solve_nystrom_dirichlet(Boundary::peanut(), 5.0, make_grid(kPi, 128), NystromOptions{});
    const double a = (F.entries - F.entries.transpose()).norm() / F.entries.norm();
    return Outcome{a < 1e-6, fmt("||F-F^T||/||F|| = %.2e", a)};
  });

  criterion(5, "completion round trips, forward map", 0.0, [] {
    std::mt19937_64 rng(5);
    const int J = 9;
    // alpha = pi round trips
    const auto gf = make_grid(kPi, 64);
    const auto F = synthesized(random_coefficients(J, rng), J, gf, 64);
    CompletionConfig cfg;
    cfg.J = J;
    cfg.reg = RegularizationSpec::tsvd(1e-6);
    const double efs = relative_error(dc_fs(F, cfg).entries, F.entries);
    const double eie = relative_error(dc_ie(F, cfg).entries, F.entries);
    // forward-map identity at alpha = pi/2, 10 trials
    const double a = kPi / 2;
    const auto g = make_grid(a, 512);
    RMatrix P(2 * J + 1, 2 * J + 1);
    for (int m = -J; m <= J; ++m)
      for (int n = -J; n <= J; ++n) P(m + J, n + J) = oracle::prolate(a, m, n);
    RMatrix S = RMatrix::Zero(2 * J + 1, 2 * J + 1);
    for (int m = -J; m <= J; ++m) S(m + J, m + J) = (m % 2) ? -1.0 : 1.0;
    const CMatrix Px = P.cast<Complex>(), Pd = (S * P * S).cast<Complex>();
    double fwd = 0;
    for (int trial = 0; trial < 10; ++trial) {
      const CMatrix B = random_coefficients(J, rng);
      const auto Ba = limited_moments(synthesized(B, J, g, g.L), J);
      const CMatrix expected = Px.transpose() * B * Pd;  // sum_mn p_mp b_mn (-1)^(n-q) p_nq
      fwd = std::max(fwd, (Ba.coefficients - expected).cwiseAbs().maxCoeff() / B.cwiseAbs().maxCoeff());
    }
    const bool ok = efs < 1e-8 && eie < 1e-8 && fwd < 1e-8;
    return Outcome{ok, fmt("dc-fs %.1e", efs) + fmt(", dc-ie %.1e", eie) + fmt(", forward map %.1e (L=512)", fwd)};
  });

  criterion(6, "paper-setting completion, delta = 5%", 120.0, [] {
    ExperimentConfig cfg = parse_config("");
    const auto clean = simulate_msr(cfg, DataExtent::Limited);
    double worst_fs = 0, worst_ie = 0;
    for (std::uint64_t seed : {cfg.seed, std::uint64_t(1), std::uint64_t(2), std::uint64_t(3)}) {
      const auto noisy = add_noise(clean, cfg.delta, stream_seed(seed, 0));
      const int L = cfg.L;
      worst_fs = std::max(worst_fs, relative_error(dc_fs(noisy, cfg.completion_cfg).entries.topLeftCorner(L, L), noisy.entries));
      worst_ie = std::max(worst_ie, relative_error(dc_ie(noisy, cfg.completion_cfg).entries.topLeftCorner(L, L), noisy.entries));
    }
    return Outcome{worst_fs <= 0.10 && worst_ie <= 0.10,
                   fmt("worst over 4 seeds: dc-fs %.3f", worst_fs) + fmt(", dc-ie %.3f", worst_ie)};
  });

  criterion(7, "DSM point scatterer", 0.0, [] {
    const Vec2 z0(0.8, -1.2);
    const double k = 5.0;
    const int M = 160;
    FarFieldMatrix F;
    F.grid = make_grid(kPi, M);
    F.k = k;
    F.entries.resize(M, M);
    for (int i = 0; i < M; ++i)
      for (int j = 0; j < M; ++j) {
        const double ti = F.grid.theta_inc[std::size_t(i)], tj = F.grid.theta_obs[std::size_t(j)];
        F.entries(i, j) = std::exp(Complex(0.0, k * ((std::cos(ti) - std::cos(tj)) * z0.x() + (std::sin(ti) - std::sin(tj)) * z0.y())));
      }
    SamplingGrid g;
    g.resolution = 51;
    const auto I = dsm(F, g, k);
    double worst = 0;
    for (int iy = 0; iy < 51; ++iy)
      for (int ix = 0; ix < 51; ++ix)
        worst = std::max(worst, std::abs(I.values(iy, ix) - oracle::dsm_point(k, (g.point(ix, iy) - z0).norm())));
    worst /= 4 * kPi * kPi;
    Eigen::Index r, c;
    I.values.maxCoeff(&r, &c);
    const double off = (g.point(int(c), int(r)) - z0).norm();
    return Outcome{worst < 1e-3 && off <= g.cell(), fmt("max deviation / (2pi)^2 = %.2e", worst) + fmt(", peak offset %.3f", off)};
  });

  criterion(8, "imaging contrast on the sound-soft disk", 0.0, [] {
    const SamplingGrid g;
    const auto full = solve_nystrom_dirichlet(Boundary::disk(2.0), 5.0, make_grid(kPi, 128), NystromOptions{});
    const double c_full = contrast(fm(full, g, 5.0), 2.0, 5.0);
    const auto D = dsm(full, g, 5.0);
    Eigen::Index r, c;
    D.values.maxCoeff(&r, &c);
    const bool dsm_inside = g.point(int(c), int(r)).norm() < 2.0;
    const auto lim = solve_nystrom_dirichlet(Boundary::disk(2.0), 5.0, make_grid(kPi / 2, 128), NystromOptions{}, DataExtent::Limited);
    const double c_ie = contrast(fm(dc_ie(lim, CompletionConfig{}), g, 5.0), 2.0, 5.0);
    const bool ok = c_full >= 10.0 && dsm_inside && c_ie >= 3.0;
    return Outcome{ok, fmt("FM full %.3g", c_full) + fmt(", FM after DC-IE %.3g", c_ie) +
                           ", DSM argmax " + (dsm_inside ? "inside" : "outside")};
  });

  criterion(9, "DC-IE improves DSM in the shadow half", 0.0, [] {
    const ExperimentConfig cfg = parse_config("");
    const auto noisy = add_noise(simulate_msr(cfg, DataExtent::Limited), cfg.delta, stream_seed(cfg.seed, 0));
    const auto raw = dsm(noisy, cfg.sampling, cfg.k);
    const auto ie = dsm(dc_ie(noisy, cfg.completion_cfg), cfg.sampling, cfg.k);
    const auto curve = boundary_points(cfg.boundary(), 2048);
    const SamplingGrid& g = cfg.sampling;
    // boundary-adjacent: within one cell of the curve
    double raw_x = 0, ie_x = 0, raw_y = 0, ie_y = 0;
    int nx = 0, ny = 0;
    for (int iy = 0; iy < g.resolution; ++iy)
      for (int ix = 0; ix < g.resolution; ++ix) {
        const Vec2 z = g.point(ix, iy);
        double dist = 1e300;
        for (const auto& s : curve) dist = std::min(dist, (s.point - z).norm());
        if (dist > g.cell()) continue;
        if (z.x() < 0) raw_x += raw.values(iy, ix), ie_x += ie.values(iy, ix), ++nx;
        if (z.y() < 0) raw_y += raw.values(iy, ix), ie_y += ie.values(iy, ix), ++ny;
      }
    raw_x /= nx, ie_x /= nx, raw_y /= ny, ie_y /= ny;
    const double rmax = raw.values.maxCoeff(), imax = ie.values.maxCoeff();
    // shadow half of the measured configuration: incidences from +x travel toward -x
    const bool ok = ie_x > raw_x;
    std::ostringstream d;
    d << "x<0: raw " << fmt("%.3g", raw_x) << " vs dc-ie " << fmt("%.3g", ie_x) << " (normalized "
      << fmt("%.3f", raw_x / rmax) << " vs " << fmt("%.3f", ie_x / imax) << "); y<0: raw " << fmt("%.3g", raw_y)
      << " vs dc-ie " << fmt("%.3g", ie_y) << " (normalized " << fmt("%.3f", raw_y / rmax) << " vs "
      << fmt("%.3f", ie_y / imax) << ")";
    return Outcome{ok, d.str()};
  });

  criterion(10, "pipeline determinism", 0.0, [] {
    const char* env = std::getenv("DCOMP_TEST_TMP");
    const fs::path root = env ? fs::path(env) : fs::temp_directory_path() / "dcomp_acceptance";
    const fs::path a = root / "run_a", b = root / "run_b";
    fs::remove_all(a);
    fs::remove_all(b);
    ExperimentConfig cfg = parse_config("");
    cfg.output_dir = a.string();
    run_pipeline(cfg);
    cfg.output_dir = b.string();
    run_pipeline(cfg);
    int compared = 0, differing = 0;
    for (const auto& e : fs::directory_iterator(a)) {
      if (e.path().extension() != ".csv") continue;
      ++compared;
      differing += slurp(e.path()) != slurp(b / e.path().filename());
    }
    return Outcome{compared > 0 && differing == 0,
                   std::to_string(compared) + " CSV files compared, " + std::to_string(differing) + " differ"};
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
