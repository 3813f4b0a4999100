// Acceptance checks: one PASS/FAIL line per criterion, non-zero exit on any FAIL.
// Usage: dfwm_acceptance <path to dfwm CLI>

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
#include <vector>

#include "dfwm/atomvapor.hpp"
#include "dfwm/constants.hpp"
#include "dfwm/errors.hpp"
#include "dfwm/mcoracle.hpp"
#include "dfwm/quantumnoise.hpp"
#include "dfwm/sweep.hpp"

using namespace dfwm;
using constants::pi;
using fwmcoupling::Geometry;
using quantumnoise::Detection;
using quantumnoise::DetectionConfig;
using quantumnoise::LossChannel;

namespace {

struct Outcome
{
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(const std::string& id, const std::string& name, double limit_s,
            const std::function<Outcome()>& check)
{
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (seconds > limit_s) {
    o.pass = false;
    o.detail += " [runtime limit exceeded]";
  }
  if (!o.pass) ++failures;
  std::printf("[%s] %-3s %s (%.2f s of %.0f s): %s\n", o.pass ? "PASS" : "FAIL", id.c_str(),
              name.c_str(), seconds, limit_s, o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0)
{
  char buffer[256];
  std::snprintf(buffer, sizeof buffer, format, a, b, c);
  return buffer;
}

quantumnoise::LossyTransform lossy(Geometry g, double x, double phase, double eta)
{
  const auto c = fwmcoupling::coupling_from_magnitude(g, x, phase, 0.03);
  return quantumnoise::apply_loss(quantumnoise::mode_transform(c), {eta, eta});
}

DetectionConfig difference(double gamma)
{
  DetectionConfig d;
  d.detection = Detection::IntensityDifference;
  d.seed_photons = gamma;
  return d;
}

DetectionConfig quadrature(double theta_f, double theta_b)
{
  DetectionConfig d;
  d.theta_f = theta_f;
  d.theta_b = theta_b;
  return d;
}

double rel_or_abs(double a, double b)
{
  return std::abs(a - b) / std::max(1.0, std::abs(b));
}

// 1. Closed-form checkpoints ----------------------------------------------

void closed_forms()
{
  report("1a", "PC joint quadrature, |kappa|L = pi/4, phase 3pi/2 -> 10log10((sqrt2-1)^2)", 1.0,
         [] {
           const double target = 10.0 * std::log10(std::pow(std::sqrt(2.0) - 1.0, 2));
           const double got = quantumnoise::quadrature_squeezing_db(
                                  lossy(Geometry::PhaseConjugate, pi / 4.0, 0.0, 1.0),
                                  quadrature(1.5 * pi, 0.0))
                                  .squeezing_db;
           return Outcome{std::abs(got - target) < 1e-9,
                          fmt("%.12f dB vs %.12f dB", got, target)};
         });
  report("1b", "PC intensity difference, gamma >> 1, |kappa|L = pi/3 -> -8.45 dB", 1.0, [] {
    const double target = 10.0 * std::log10(1.0 / 7.0);
    const double lossless =
        quantumnoise::intensity_diff_squeezing_db(lossy(Geometry::PhaseConjugate, pi / 3.0, 0.0, 1.0),
                                                  difference(1e12))
            .squeezing_db;
    const double bright = 10.0 * std::log10(quantumnoise::pc_intensity_diff_ratio_bright(pi / 3.0, 1.0));
    double worst = 0.0;
    for (int i = 1; i <= 100; ++i) {
      const double x = 0.5 * pi * i / 101.0;
      const double a = 10.0 * std::log10(quantumnoise::pc_intensity_diff_ratio_bright(x, 1.0));
      const double b =
          10.0 * std::log10(std::pow(std::cos(x), 2) / (1.0 + std::pow(std::sin(x), 2)));
      worst = std::max(worst, std::abs(a - b));
    }
    const bool ok = std::abs(lossless - target) < 1e-9 && std::abs(bright - target) < 1e-9 &&
                    worst < 1e-9;
    return Outcome{ok, fmt("lossless %.12f, eta=1 formula %.12f dB; 100-point identity max |d| %.1e dB",
                           lossless, bright, worst)};
  });
  report("1c", "forward intensity difference, eta = 1, cosh(2|nu|L) = 2 -> -3.01 dB", 1.0, [] {
    const double target = 10.0 * std::log10(0.5);
    const double x = 0.5 * std::acosh(2.0);
    const double lossless =
        quantumnoise::intensity_diff_squeezing_db(lossy(Geometry::Forward, x, 0.0, 1.0),
                                                  difference(1e12))
            .squeezing_db;
    const double bright = 10.0 * std::log10(quantumnoise::ffwm_intensity_diff_ratio_bright(x, 1.0));
    const bool ok = std::abs(lossless - target) < 1e-9 && std::abs(bright - target) < 1e-9;
    return Outcome{ok, fmt("lossless %.12f, eta=1 formula %.12f, target %.12f dB", lossless, bright,
                           target)};
  });
  report("1d", "forward optimal quadrature, |nu|L = 1 -> -8.686 dB", 1.0, [] {
    const double target = 10.0 * std::log10(std::exp(-2.0));
    const double got = quantumnoise::optimal_quadrature_squeezing(
                           lossy(Geometry::Forward, 1.0, 0.0, 1.0))
                           .result.squeezing_db;
    return Outcome{std::abs(got - target) < 1e-9, fmt("%.12f dB vs %.12f dB", got, target)};
  });
}

// 2. Oracle equivalence ---------------------------------------------------

void oracle_equivalence()
{
  report("2", "quantumnoise vs covariance oracle (1e-9) and Monte-Carlo (4 SE, 1e6 samples)", 300.0,
         [] {
           int cases = 0, mc_cases = 0, bad = 0;
           double worst_rel = 0.0, worst_z = 0.0;
           std::string first_bad;
           mcoracle::SamplingOptions options;
           options.samples = 1'000'000;
           const double couplings[] = {0.3, 0.8, 1.3};
           for (Geometry g : {Geometry::PhaseConjugate, Geometry::Forward}) {
             for (double eta : {1.0, 0.7, 0.3, 0.0}) {
               for (double x : couplings) {
                 const double phase = 0.37 * x;
                 const auto t = lossy(g, x, phase, eta);
                 const auto map = mcoracle::AffineModeMap::from_transform(t);
                 auto note = [&](bool ok, const std::string& what) {
                   ++cases;
                   if (!ok) {
                     ++bad;
                     if (first_bad.empty()) first_bad = what;
                   }
                 };
                 auto describe = [&](const char* what) {
                   return std::string(what) + fmt(" (g=%g eta=%g x=%g)", g == Geometry::Forward, eta, x);
                 };

                 // Joint quadrature at a fixed and at the optimal phase.
                 const auto best = quantumnoise::optimal_quadrature_squeezing(t);
                 const double optimal_theta_f =
                     g == Geometry::PhaseConjugate ? best.phase : best.phase;
                 for (const auto& det : {quadrature(1.1, 0.4), quadrature(optimal_theta_f, 0.0)}) {
                   const auto r = quantumnoise::quadrature_squeezing_db(t, det);
                   const auto [phi_1, phi_2] = quantumnoise::detector_phases(g, det);
                   const auto obs = mcoracle::Observable::quadrature(phi_1, phi_2);
                   const auto in = mcoracle::GaussianState::vacuum(2);
                   const auto exact = mcoracle::observable_variance(mcoracle::propagate(in, map), obs);
                   const double rel = std::abs(r.noise_variance - exact.variance) / exact.variance;
                   worst_rel = std::max(worst_rel, rel);
                   note(rel < 1e-9 && std::abs(r.shot_noise_variance - exact.shot_noise) < 1e-12,
                        describe("quadrature covariance"));
                   const auto mc = mcoracle::mc_estimate(in, map, obs, options);
                   const double z = std::abs(mc.variance - r.noise_variance) / mc.standard_error;
                   worst_z = std::max(worst_z, z);
                   ++mc_cases;
                   note(z < 4.0, describe("quadrature Monte-Carlo"));
                 }

                 // Intensity difference: bright seed (closed form vs linearized oracle,
                 // exact Wick vs exact oracle) and a dim seed (exact path).
                 for (double gamma : {1e6, 10.0}) {
                   const auto det = difference(gamma);
                   const auto in = mcoracle::GaussianState::coherent_seed(2, gamma);
                   const auto out = mcoracle::propagate(in, map);
                   const auto obs = mcoracle::Observable::intensity_difference();
                   const auto exact = mcoracle::observable_variance(out, obs);
                   const double wick = quantumnoise::intensity_diff_variance(t, det);
                   const double rel_w = rel_or_abs(wick, exact.variance);
                   worst_rel = std::max(worst_rel, rel_w);
                   note(rel_w < 1e-9, describe("intensity-difference Wick vs oracle"));
                   const auto r = quantumnoise::intensity_diff_squeezing_db(t, det);
                   if (r.bright_limit) {
                     const auto lin = mcoracle::observable_variance_linearized(out, obs);
                     const double ratio = lin.shot_noise > 0.0 ? lin.variance / lin.shot_noise : 1.0;
                     const double mine = std::pow(10.0, r.squeezing_db / 10.0);
                     const double rel_b = std::abs(mine - ratio) / ratio;
                     worst_rel = std::max(worst_rel, rel_b);
                     note(rel_b < 1e-9, describe("bright closed form vs linearized oracle"));
                     const auto mc = mcoracle::mc_estimate(in, map, obs, options);
                     const double expected = mine * out.mean.squaredNorm();
                     const double z = mc.standard_error > 0.0
                                          ? std::abs(mc.variance - expected) / mc.standard_error
                                          : (mc.variance == expected ? 0.0 : 1e300);
                     worst_z = std::max(worst_z, z);
                     ++mc_cases;
                     note(z < 4.0, describe("intensity-difference Monte-Carlo"));
                   } else {
                     const double mine = r.shot_noise_variance > 0.0
                                             ? r.noise_variance / r.shot_noise_variance
                                             : 1.0;
                     const double theirs =
                         exact.shot_noise > 0.0 ? exact.variance / exact.shot_noise : 1.0;
                     const double rel_d = std::abs(mine - theirs) / theirs;
                     worst_rel = std::max(worst_rel, rel_d);
                     note(rel_d < 1e-9, describe("dim-seed ratio vs oracle"));
                   }
                 }
               }
             }
           }
           std::string detail = fmt("%.0f checks (%.0f Monte-Carlo), worst relative %.1e", cases,
                                    mc_cases, worst_rel) +
                                fmt(", worst |z| %.2f", worst_z);
           if (bad) detail += fmt("; %.0f failed, first: ", bad) + first_bad;
           return Outcome{bad == 0, detail};
         });
}

// 3. Limit suite -----------------------------------------------------------

void limits()
{
  report("3a", "Gamma_23 = 0: four-level chi equals the two-level closed form (1e-10)", 5.0, [] {
    const auto atom = atomvapor::reference_atom(0.0);
    double worst = 0.0;
    for (double mult : {-200.0, -10.0, 0.0, 0.5, 3.0, 50.0, 500.0}) {
      for (double intensity : {0.0, 1e2, 8e4, 1e7}) {
        const double delta = mult * atomvapor::reference_gamma;
        const atomvapor::ComplexRateFactors rates(atom, delta, delta);
        const double field2 =
            intensity / (2.0 * constants::epsilon0 * constants::speed_of_light);
        const auto four = atomvapor::chi_31(atom, rates, intensity);
        const auto two = atomvapor::two_level_chi(atom, delta, field2);
        worst = std::max(worst, std::abs(four - two) / std::abs(two));
      }
    }
    return Outcome{worst < 1e-10, fmt("max relative difference %.2e over 28 points", worst)};
  });
  report("3b", "numeric Bloch steady state vs weak-pump sigma_11,33 at I/I_s <= 1e-3 (1e-6 abs)",
         10.0, [] {
           double worst = 0.0;
           int points = 0;
           for (double g23 : {0.0, 0.05, 0.1, 0.2, 0.5}) {
             const auto atom = atomvapor::reference_atom(g23 * atomvapor::reference_gamma);
             for (double mult : {0.0, 1.0, 10.0, 50.0, 200.0}) {
               auto drive = atomvapor::reference_drive(0.0);
               drive.delta_1 = drive.delta_2 = mult * atomvapor::reference_gamma;
               const atomvapor::ComplexRateFactors rates(atom, drive.delta_1, drive.delta_2);
               const double is = atomvapor::saturation_intensity(atom, rates);
               for (double ratio : {1e-6, 1e-4, 1e-3}) {
                 drive.pump_intensity = ratio * is;
                 const double omega = atomvapor::rabi_frequency(atom, drive.pump_intensity);
                 const auto s = atomvapor::steady_state_numeric(atom, drive, omega, omega);
                 const double numeric = std::real(s(0, 0) - s(2, 2));
                 worst = std::max(worst, std::abs(numeric - atomvapor::population_diff_weak_pump(
                                                                 atom, rates, drive.pump_intensity)));
                 ++points;
               }
             }
           }
           return Outcome{worst <= 1e-6, fmt("max |difference| %.3e over %.0f points", worst, points)};
         });
  report("3c", "eta = 0 gives 0 dB for every geometry, detection and coupling", 5.0, [] {
    double worst = 0.0;
    for (Geometry g : {Geometry::PhaseConjugate, Geometry::Forward}) {
      for (double x : {0.0, 0.4, 1.0, 1.5}) {
        const auto t = lossy(g, x, 0.7, 0.0);
        worst = std::max(worst, std::abs(quantumnoise::optimal_quadrature_squeezing(t).result.squeezing_db));
        worst = std::max(worst, std::abs(quantumnoise::quadrature_squeezing_db(t, quadrature(2.0, 0.5)).squeezing_db));
        for (double gamma : {0.0, 5.0, 1e6}) {
          worst = std::max(worst, std::abs(quantumnoise::intensity_diff_squeezing_db(t, difference(gamma)).squeezing_db));
        }
      }
    }
    return Outcome{worst < 1e-12, fmt("max |M| %.1e dB", worst)};
  });
}

// 4. Trends with the reference parameters ---------------------------------

struct Curve
{
  std::vector<double> intensity;  // W/cm^2
  std::vector<double> db;
  std::vector<bool> physical;     // below threshold
};

Curve curve(const std::string& panel, std::size_t index)
{
  const auto run = sweep::preset(panel).at(index);
  const auto table = sweep::run_sweep(run.config);
  Curve c;
  const bool id = run.config.detection == Detection::IntensityDifference;
  for (const auto& r : table.rows) {
    c.intensity.push_back(r.axis_value);
    c.db.push_back(id ? r.mid_db : r.mq_optimal_db);
    c.physical.push_back(!r.above_threshold);
  }
  return c;
}

int slope_sign_changes(const std::vector<double>& y)
{
  int changes = 0, last = 0;
  for (std::size_t i = 1; i < y.size(); ++i) {
    const double d = y[i] - y[i - 1];
    const int s = d > 1e-9 ? 1 : (d < -1e-9 ? -1 : 0);
    if (s != 0 && last != 0 && s != last) ++changes;
    if (s != 0) last = s;
  }
  return changes;
}

void trends()
{
  const char* panels[] = {"fig4a", "fig4b", "fig4c", "fig4d"};
  // preset index 3 is Gamma_23 = 0.05 Gamma; 0..3 run 0.5, 0.2, 0.1, 0.05.
  std::vector<std::vector<Curve>> curves(4);
  report("4a", "Gamma_23 = 0.05 Gamma: best squeezing below -3 dB for I_p <= 10 W/cm^2", 120.0,
         [&] {
           for (int p = 0; p < 4; ++p) {
             for (std::size_t k = 0; k < 4; ++k) curves[p].push_back(curve(panels[p], k));
           }
           std::string detail;
           bool any = false;
           for (int p = 0; p < 4; ++p) {
             const Curve& c = curves[p][3];
             double best = 0.0, at = 0.0;
             for (std::size_t i = 0; i < c.db.size(); ++i) {
               if (c.intensity[i] <= 10.0 + 1e-12 && c.physical[i] && c.db[i] < best) {
                 best = c.db[i];
                 at = c.intensity[i];
               }
             }
             any = any || best < -3.0;
             detail += std::string(panels[p]) + fmt(" %.2f dB at %.2f W/cm^2; ", best, at);
           }
           detail += "PC rows above threshold excluded";
           return Outcome{any, detail};
         });
  report("4b", "PC curves oscillate with I_p, forward curves fall monotonically and saturate", 1.0,
         [&] {
           bool ok = true;
           std::string detail;
           for (int p = 0; p < 4; ++p) {
             const bool forward = p >= 2;
             for (std::size_t k = 0; k < 4; ++k) {
               const Curve& c = curves[p][k];
               const int changes = slope_sign_changes(c.db);
               const std::size_t n = c.db.size();
               const double tail = std::abs(c.db[n - 1] - c.db[(4 * n) / 5]);
               const double drop = std::abs(c.db[n - 1] - c.db[0]);
               bool good;
               if (forward) {
                 // Monotone (no slope reversals), and the last fifth of the
                 // range moves less than 2% of the total change.
                 good = changes == 0 && tail < 0.02 * drop;
               } else {
                 good = changes >= 2;
               }
               ok = ok && good;
               if (k == 3 || !good) {
                 detail += std::string(panels[p]) + fmt("[%.0f]: %.0f slope reversals, tail %.3f dB; ",
                                                        static_cast<double>(k), changes, tail);
               }
             }
           }
           return Outcome{ok, detail};
         });
  report("4c", "squeezing weakens as Gamma_23 grows through 0.05, 0.1, 0.2, 0.5 Gamma", 1.0, [&] {
    bool ok = true;
    std::string detail;
    for (int p = 0; p < 4; ++p) {
      for (double target : {0.5, 1.0, 1.5}) {
        // Preset order is 0.5, 0.2, 0.1, 0.05: magnitudes must rise along it.
        std::vector<double> mags;
        for (std::size_t k = 0; k < 4; ++k) {
          const Curve& c = curves[p][k];
          std::size_t i = 0;
          while (i + 1 < c.intensity.size() && c.intensity[i] < target - 1e-9) ++i;
          mags.push_back(-c.db[i]);
        }
        for (std::size_t k = 1; k < 4; ++k) {
          if (!(mags[k] >= mags[k - 1])) {
            ok = false;
            detail += std::string(panels[p]) + fmt(" at %.2f W/cm^2 not ordered; ", target);
          }
        }
        if (target == 1.0) {
          detail += std::string(panels[p]) +
                    fmt(" @1 W/cm^2 |M| %.2f < %.2f < ", mags[0], mags[1]) +
                    fmt("%.2f < %.2f dB; ", mags[2], mags[3]);
        }
      }
    }
    return Outcome{ok, detail};
  });
  report("4d", "lossless PC optimal quadrature below -30 dB at |kappa|L = pi/2 - 1e-3", 1.0, [] {
    const double got = quantumnoise::optimal_quadrature_squeezing(
                           lossy(Geometry::PhaseConjugate, 0.5 * pi - 1e-3, 0.0, 1.0))
                           .result.squeezing_db;
    return Outcome{got < -30.0, fmt("%.3f dB", got)};
  });
}

// 5. Doppler averaging vs velocity sampling --------------------------------

void doppler()
{
  const auto atom = atomvapor::reference_atom(0.1 * atomvapor::reference_gamma);
  auto drive_at = [](double mult) {
    auto d = atomvapor::reference_drive(0.0);
    d.delta_1 = d.delta_2 = mult * atomvapor::reference_gamma;
    d.temperature = 383.0;
    return d;
  };
  auto compare = [&](atomvapor::DopplerMethod method) {
    std::string detail;
    bool ok = true;
    mcoracle::SamplingOptions options;
    options.samples = 1'000'000;
    for (double mult : {10.0, 50.0, 200.0}) {
      const auto drive = drive_at(mult);
      const auto mc = mcoracle::velocity_average_mc(atom, drive, atomvapor::DopplerShift::Common,
                                                    options);
      atomvapor::DopplerOptions opts;
      opts.method = method;
      try {
        const auto quad = atomvapor::doppler_average(atom, drive, opts);
        const double rel = std::abs(quad.chi_lin - mc.chi_lin) / std::abs(mc.chi_lin);
        ok = ok && rel < 1e-2;
        detail += fmt("%.0f Gamma: %.2e; ", mult, rel);
      } catch (const IntegrationError& e) {
        ok = false;
        detail += fmt("%.0f Gamma: ", mult) + e.what() + "; ";
      }
    }
    return Outcome{ok, detail};
  };
  report("5", "Doppler chi_lin, Gauss-Hermite rule vs Monte-Carlo (1%), 383 K", 30.0,
         [&] { return compare(atomvapor::DopplerMethod::GaussHermite); });
  report("5*", "Doppler chi_lin, default adaptive quadrature vs Monte-Carlo (1%), 383 K", 30.0,
         [&] { return compare(atomvapor::DopplerMethod::Adaptive); });
}

// 6. Determinism ------------------------------------------------------------

std::string slurp(const std::filesystem::path& p)
{
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void determinism(const std::string& cli)
{
  report("6", "dfwm preset fig4a twice -> byte-identical CSV", 120.0, [&] {
    namespace fs = std::filesystem;
    const fs::path base = fs::temp_directory_path() / "dfwm_acceptance";
    fs::remove_all(base);
    const fs::path a = base / "a", b = base / "b";
    for (const auto& dir : {a, b}) {
      fs::create_directories(dir);
      const std::string cmd = "\"" + cli + "\" preset fig4a --out \"" + dir.string() + "\" > \"" +
                              (dir / "log.txt").string() + "\" 2>&1";
      const int rc = std::system(cmd.c_str());
      if (rc != 0) return Outcome{false, "CLI exited with status " + std::to_string(rc)};
    }
    int files = 0;
    for (const auto& entry : fs::directory_iterator(a)) {
      if (entry.path().extension() != ".csv") continue;
      ++files;
      const fs::path other = b / entry.path().filename();
      if (!fs::exists(other) || slurp(entry.path()) != slurp(other)) {
        return Outcome{false, entry.path().filename().string() + " differs"};
      }
    }
    fs::remove_all(base);
    return Outcome{files == 4, fmt("%.0f CSV files identical", files)};
  });
}

}  // namespace

int main(int argc, char** argv)
{
  if (argc < 2) {
    std::fprintf(stderr, "usage: dfwm_acceptance <dfwm executable>\n");
    return 2;
  }
  closed_forms();
  oracle_equivalence();
  limits();
  trends();
  doppler();
  determinism(argv[1]);
  std::printf("%d failing criteria\n", failures);
  return failures == 0 ? 0 : 1;
}
