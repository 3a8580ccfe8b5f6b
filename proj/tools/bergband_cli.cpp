// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Exit codes: 0 success or pass, 1 verdict fail, 2 usage or
// validation error, 3 numerical error (JSON payload on stderr).

#include <cmath>
#include <complex>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>
#include <CLI11.hpp>
#include <json.hpp>
#include "bergband/band_solver.hpp"
#include "bergband/conformal.hpp"
#include "bergband/disc_spectrum.hpp"
#include "bergband/errors.hpp"
#include "bergband/floquet.hpp"
#include "bergband/geometry.hpp"
#include "bergband/io.hpp"
#include "bergband/pipeline.hpp"
#include "bergband/symbols.hpp"

using namespace bergband;
using json = nlohmann::json;

namespace
{

// Runs fn with an output stream that is stdout for "-" and a file otherwise.
void WithOutput(const std::string &path, const std::function<void(std::ostream &)> &fn)
{
  if (path == "-")
  {
    fn(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream os(path);
  if (!os)
  {
    throw ParameterError("cannot open '" + path + "' for writing");
  }
  fn(os);
}

json ReadJsonFile(const std::string &path)
{
  std::ifstream is(path);
  if (!is)
  {
    throw ParameterError("cannot open '" + path + "'");
  }
  try
  {
    return json::parse(is);
  }
  catch (const json::exception &e)
  {
    throw ParameterError("'" + path + "' is not valid JSON: " + e.what());
  }
}

int ThreadsFromEnvironment()
{
  const char *env = std::getenv("BERGMAN_BAND_THREADS");
  if (!env || !*env)
  {
    return 0;
  }
  char *end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 0)
  {
    throw ParameterError("BERGMAN_BAND_THREADS must be a nonnegative integer");
  }
  return static_cast<int>(n);
}

// f_k(z) = sum_{j <= k} (1 + i j) / (j + 1) z^j.
ComplexMap TestPolynomial(int k)
{
  return [k](Complex z)
  {
    Complex s = 0.0, p = 1.0;
    for (int j = 0; j <= k; j++)
    {
      s += Complex(1.0, j) / (j + 1.0) * p;
      p *= z;
    }
    return s;
  };
}

struct Options
{
  int threads = -1;

  std::string targets;
  std::string profile_path;
  std::string config_path;
  std::string bands_path;
  std::string out = "-";
  std::string convention = "standard";
  double R0 = 0.4;
  int n = 10;
  double h = 0.0;

  double epsilon = 0.0;
  double delta = 0.0;
  double merge_tol = -1.0;
  double zero_threshold = -1.0;

  int M = 16;
  int trials = 10;
  unsigned seed = 1;
  double tol = 1e-10;

  std::string h_list = "0.1,0.05,0.02";
  double eta = 0.0;
  std::string n_track;
  int K_modes = 10;

  std::string pair = "moebius";
  double alpha_re = 0.3, alpha_im = 0.0, theta = 0.0;
  int functions = 10;
  int N = 10;
};

int ResolveThreads(const Options &opt)
{
  return opt.threads >= 0 ? opt.threads : ThreadsFromEnvironment();
}

int CmdSynth(const Options &opt)
{
  const auto targets = ParseRealList(opt.targets);
  const MomentConvention conv = ParseMomentConvention(opt.convention);
  const RadialProfile profile = SynthesizeProfile(targets, conv);
  json j = ProfileToJson(profile, opt.R0);
  j["targets"] = targets;
  j["moment_convention"] = ToString(conv);
  j["condition"] = MomentGramCondition(static_cast<int>(targets.size()));
  WithOutput(opt.out, [&](std::ostream &os) { os << j.dump(2) << '\n'; });
  return 0;
}

int CmdDiscSpec(const Options &opt)
{
  const MomentConvention conv = ParseMomentConvention(opt.convention);
  const RadialProfile profile = opt.profile_path.empty()
                                    ? SynthesizeProfile(ParseRealList(opt.targets), conv)
                                    : ProfileFromJson(ReadJsonFile(opt.profile_path));
  WithOutput(opt.out, [&](std::ostream &os) { WriteDiscSpectrumCsv(os, profile, opt.n, conv); });
  return 0;
}

RadialProfile ProfileForConfig(const RunConfig &config)
{
  return config.targets.empty() ? RadialProfile::Zero()
                                : SynthesizeProfile(config.targets, config.convention);
}

int CmdBands(const Options &opt)
{
  RunConfig config = RunConfigFromJson(ReadJsonFile(opt.config_path));
  if (opt.threads >= 0 || std::getenv("BERGMAN_BAND_THREADS"))
  {
    config.threads = ResolveThreads(opt);
  }
  const double h = opt.h > 0.0 ? opt.h : config.h_initial;
  const CellGeometry cell(config.R0, h);
  const BandStructure bands = ComputeBands(cell, ProfileForConfig(config),
                                           UniformEtaGrid(config.eta_points), config.Settings());
  const std::string out = opt.out == "-" ? config.bands_csv : opt.out;
  WithOutput(out, [&](std::ostream &os) { WriteBandsCsv(os, bands); });
  return 0;
}

int CmdReport(const Options &opt)
{
  std::ifstream is(opt.bands_path);
  if (!is)
  {
    throw ParameterError("cannot open '" + opt.bands_path + "'");
  }
  const BandStructure bands = ReadBandsCsv(is);
  const TargetSpec spec{ParseRealList(opt.targets), opt.epsilon, opt.delta};
  spec.Validate();
  const double merge_tol = opt.merge_tol >= 0.0 ? opt.merge_tol : DefaultMergeTolerance(bands);
  const double zero_thr = opt.zero_threshold >= 0.0 ? opt.zero_threshold : 0.5 * opt.delta;
  const SpectrumReport report = GapReport(EssentialSpectrum(bands, merge_tol, zero_thr), spec);
  json j = ReportToJson(report);
  j["config"] = {{"bands", opt.bands_path},
                 {"targets", spec.targets},
                 {"epsilon", spec.epsilon},
                 {"delta", spec.delta},
                 {"merge_tol", merge_tol},
                 {"zero_threshold", zero_thr}};
  WithOutput(opt.out, [&](std::ostream &os) { os << j.dump(2) << '\n'; });
  return report.pass ? 0 : 1;
}

int CmdFloquetCheck(const Options &opt)
{
  const CellGeometry cell(0.4, 0.05);
  const QuadratureRule quad = BuildCellQuadrature(cell, 8, 16, 6);
  const Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(
      quad.weights.data(), static_cast<Eigen::Index>(quad.weights.size()));

  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> normal;
  double parseval = 0.0, round_trip = 0.0;
  for (int t = 0; t < opt.trials; t++)
  {
    CellField f;
    f.M = opt.M;
    f.samples.resize(w.size(), f.cells());
    for (Eigen::Index c = 0; c < f.samples.cols(); c++)
    {
      for (Eigen::Index r = 0; r < f.samples.rows(); r++)
      {
        const double re = normal(rng);
        f.samples(r, c) = Complex(re, normal(rng));
      }
    }
    const double norm = FieldNorm(f, w);
    const FloquetField ff = FloquetForward(f);
    parseval = std::max(parseval, std::abs(FieldNorm(ff, w) - norm) / norm);
    const CellField back = FloquetInverse(ff);
    round_trip = std::max(round_trip, (back.samples - f.samples).cwiseAbs().maxCoeff());
  }
  const bool pass = parseval <= opt.tol && round_trip <= opt.tol;
  const json j = {{"M", opt.M},
                  {"trials", opt.trials},
                  {"seed", opt.seed},
                  {"max_parseval_residual", parseval},
                  {"max_round_trip_error", round_trip},
                  {"tolerance", opt.tol},
                  {"verdict", pass ? "pass" : "fail"}};
  WithOutput(opt.out, [&](std::ostream &os) { os << j.dump(2) << '\n'; });
  return pass ? 0 : 1;
}

int CmdStudyH(const Options &opt)
{
  const MomentConvention conv = ParseMomentConvention(opt.convention);
  const auto targets = ParseRealList(opt.targets);
  const RadialProfile profile = SynthesizeProfile(targets, conv);
  std::vector<int> n_track = ParseIntList(opt.n_track);
  if (n_track.empty())
  {
    for (int n = 1; n <= profile.K(); n++)
    {
      n_track.push_back(n);
    }
  }
  BandSettings settings;
  settings.K_modes = opt.K_modes;
  settings.threads = ResolveThreads(opt);
  const auto rows =
      HConvergenceStudy(opt.R0, profile, ParseRealList(opt.h_list), opt.eta, n_track, settings, conv);
  WithOutput(opt.out, [&](std::ostream &os) { WriteConvergenceCsv(os, rows); });
  return 0;
}

int CmdConformalCheck(const Options &opt)
{
  ConformalPair pair;
  QuadratureRule domain, image;
  if (opt.pair == "rect_exp")
  {
    pair = ConformalPair::RectExp();
    domain = BuildAnnulusQuadrature(std::exp(-3.0 * std::numbers::pi), std::exp(-std::numbers::pi),
                                    40, 60);
    image = BuildRectangleQuadrature(-0.5, 0.5, -0.5, 0.5, 40, 40);
  }
  else
  {
    if (opt.pair == "identity")
    {
      pair = ConformalPair::Identity();
    }
    else if (opt.pair == "rotation")
    {
      pair = ConformalPair::Rotation(opt.theta);
    }
    else
    {
      pair = ConformalPair::Moebius(Complex(opt.alpha_re, opt.alpha_im));
    }
    domain = BuildDiscQuadrature(1.0, 40, 80);
    image = domain;
  }

  std::vector<double> defects;
  double worst = 0.0;
  for (int k = 0; k < opt.functions; k++)
  {
    defects.push_back(IsometryDefect(pair, TestPolynomial(k), domain, image));
    worst = std::max(worst, defects.back());
  }
  json j = {{"pair", pair.tag},
            {"isometry_defects", defects},
            {"max_isometry_defect", worst},
            {"tolerance", opt.tol}};
  if (pair.disc_automorphism)
  {
    // Symbol with exact disc spectrum 2 / ((n + 2)(n + 3)).
    const SymbolFn a = [](Complex z) { return std::pow(1.0 - std::norm(z), 2); };
    j["spectral_distance"] = SpectralEquivalenceCheck(a, pair, opt.N, domain);
    j["N"] = opt.N;
  }
  const bool pass = worst <= opt.tol;
  j["verdict"] = pass ? "pass" : "fail";
  WithOutput(opt.out, [&](std::ostream &os) { os << j.dump(2) << '\n'; });
  return pass ? 0 : 1;
}

int CmdRun(const Options &opt)
{
  RunConfig config = RunConfigFromJson(ReadJsonFile(opt.config_path));
  if (opt.threads >= 0 || std::getenv("BERGMAN_BAND_THREADS"))
  {
    config.threads = ResolveThreads(opt);
  }
  const RunResult result = RunPrescribedSpectrum(config);
  WriteRunOutputs(result, config);
  std::cout << "verdict " << (result.pass ? "pass" : "fail") << " at h = "
            << FormatDouble(result.chosen_h) << ", delta = " << FormatDouble(result.delta)
            << '\n';
  return result.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Band spectra of Bergman-Toeplitz operators on periodic domains"};
  app.require_subcommand(1);
  Options opt;
  std::function<int(const Options &)> action;
  app.add_option("--threads", opt.threads,
                 "Worker cap for the eta sweep (default: BERGMAN_BAND_THREADS or all cores)")
      ->check(CLI::NonNegativeNumber);

  auto convention = [&](CLI::App *sub)
  {
    sub->add_option("--convention", opt.convention, "Moment constant convention")
        ->check(CLI::IsMember({"standard", "pi_scaled"}));
  };
  auto output = [&](CLI::App *sub) { sub->add_option("-o,--out", opt.out, "Output path, - for stdout"); };

  auto *synth = app.add_subcommand("synth", "Synthesize a radial profile from target eigenvalues");
  synth->add_option("--targets", opt.targets, "Comma-separated targets")->required();
  synth->add_option("--R0", opt.R0, "Disc radius recorded with the profile")
      ->check(CLI::Range(0.25, 0.5));
  convention(synth);
  output(synth);
  synth->callback([&] { action = CmdSynth; });

  auto *disc = app.add_subcommand("disc-spec", "Disc Toeplitz eigenvalues for Taylor indices 0..n-1");
  auto *t_opt = disc->add_option("--targets", opt.targets, "Synthesize the profile from targets");
  auto *p_opt = disc->add_option("--profile", opt.profile_path, "Profile JSON written by synth")
                    ->check(CLI::ExistingFile);
  t_opt->excludes(p_opt);
  disc->add_option("--n", opt.n, "Number of Taylor indices")->check(CLI::Range(1, 100000));
  convention(disc);
  output(disc);
  disc->callback(
      [&]
      {
        if (opt.targets.empty() && opt.profile_path.empty())
        {
          throw CLI::ValidationError("disc-spec", "one of --targets or --profile is required");
        }
        action = CmdDiscSpec;
      });

  auto *bands = app.add_subcommand("bands", "Band functions on a uniform eta grid");
  bands->add_option("--config", opt.config_path, "Run config JSON")->required()->check(CLI::ExistingFile);
  // -h would clash with the ligament half-width.
  bands->set_help_flag("--help", "Print this help message and exit");
  bands->add_option("--h", opt.h, "Ligament half-width (default: h_initial)")
      ->check(CLI::Range(0.0, 0.1));
  output(bands);
  bands->callback([&] { action = CmdBands; });

  auto *report = app.add_subcommand("report", "Essential spectrum and gap report from a bands CSV");
  report->add_option("--bands", opt.bands_path, "Bands CSV")->required()->check(CLI::ExistingFile);
  report->add_option("--targets", opt.targets, "Comma-separated targets");
  report->add_option("--epsilon", opt.epsilon, "Proximity tolerance")
      ->required()
      ->check(CLI::PositiveNumber);
  report->add_option("--delta", opt.delta, "Required separation")->check(CLI::NonNegativeNumber);
  report->add_option("--merge-tol", opt.merge_tol, "Merge tolerance (default: largest eta step)")
      ->check(CLI::NonNegativeNumber);
  report->add_option("--zero-threshold", opt.zero_threshold, "Zero-cluster radius (default: delta/2)")
      ->check(CLI::NonNegativeNumber);
  output(report);
  report->callback([&] { action = CmdReport; });

  auto *floquet = app.add_subcommand("floquet-check", "Parseval and round-trip check of the Floquet transform");
  floquet->add_option("--M", opt.M, "Cells -M..M")->check(CLI::Range(0, 4096));
  floquet->add_option("--trials", opt.trials, "Random fields")->check(CLI::Range(1, 100000));
  floquet->add_option("--seed", opt.seed, "RNG seed");
  floquet->add_option("--tol", opt.tol, "Residual tolerance")->check(CLI::PositiveNumber);
  output(floquet);
  floquet->callback([&] { action = CmdFloquetCheck; });

  auto *study = app.add_subcommand("study-h", "Band values against disc eigenvalues as h shrinks");
  study->add_option("--targets", opt.targets, "Comma-separated targets")->required();
  study->add_option("--R0", opt.R0, "Cell disc radius")->check(CLI::Range(0.25, 0.5));
  study->add_option("--h-list", opt.h_list, "Strictly decreasing h values");
  study->add_option("--eta", opt.eta, "Floquet parameter")
      ->check(CLI::Range(-std::numbers::pi, std::numbers::pi));
  study->add_option("--n-track", opt.n_track, "Taylor indices to track (default 1..K)");
  study->add_option("--K-modes", opt.K_modes, "Laurent mode cap")->check(CLI::Range(0, 64));
  convention(study);
  output(study);
  study->callback([&] { action = CmdStudyH; });

  auto *conformal = app.add_subcommand("conformal-check", "Isometry of conformal transplantation");
  conformal->add_option("--pair", opt.pair, "Conformal pair")
      ->check(CLI::IsMember({"identity", "rotation", "moebius", "rect_exp"}));
  conformal->add_option("--alpha", opt.alpha_re, "Real part of the Moebius parameter");
  conformal->add_option("--alpha-im", opt.alpha_im, "Imaginary part of the Moebius parameter");
  conformal->add_option("--theta", opt.theta, "Rotation angle");
  conformal->add_option("--functions", opt.functions, "Number of polynomial test functions")
      ->check(CLI::Range(1, 40));
  conformal->add_option("--N", opt.N, "Galerkin size for the spectral comparison")
      ->check(CLI::Range(1, 30));
  conformal->add_option("--tol", opt.tol, "Isometry tolerance")->check(CLI::PositiveNumber);
  output(conformal);
  conformal->callback(
      [&]
      {
        if (conformal->count("--tol") == 0)
        {
          opt.tol = 1e-8;
        }
        if (std::norm(Complex(opt.alpha_re, opt.alpha_im)) >= 1.0)
        {
          throw CLI::ValidationError("--alpha", "Moebius parameter must lie in the unit disc");
        }
        action = CmdConformalCheck;
      });

  auto *run = app.add_subcommand("run", "Prescribed-spectrum pipeline");
  run->add_option("--config", opt.config_path, "Run config JSON")->required()->check(CLI::ExistingFile);
  run->callback([&] { action = CmdRun; });

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::Success &e)
  {
    return app.exit(e);
  }
  catch (const CLI::ParseError &e)
  {
    app.exit(e);
    return 2;
  }

  try
  {
    return action(opt);
  }
  catch (const ParameterError &e)
  {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  catch (const NumericalError &e)
  {
    json payload = {{"error", "numerical"}, {"message", e.what()}};
    if (const auto *ill = dynamic_cast<const IllConditionedError *>(&e))
    {
      payload["condition"] = ill->condition();
    }
    if (const auto *deg = dynamic_cast<const DegenerateBasisError *>(&e))
    {
      payload["eta"] = deg->eta();
    }
    std::cerr << payload.dump() << '\n';
    return 3;
  }
  catch (const std::exception &e)
  {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
