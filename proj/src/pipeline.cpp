// SPDX-License-Identifier: Apache-2.0

#include "bergband/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include "bergband/errors.hpp"
#include "bergband/io.hpp"

namespace bergband
{

void RunConfig::Validate() const
{
  if (!(epsilon > 0.0))
  {
    throw ParameterError("epsilon must be positive");
  }
  if (delta_override && !(*delta_override >= 0.0))
  {
    throw ParameterError("delta must be nonnegative");
  }
  if (!(R0 > 0.25 && R0 < 0.5))
  {
    throw ParameterError("R0 must lie in (1/4, 1/2)");
  }
  if (eta_points < 3 || eta_points % 2 == 0)
  {
    throw ParameterError("eta_points must be odd and at least 3");
  }
  if (K_modes < 0)
  {
    throw ParameterError("K_modes must be nonnegative");
  }
  if (!(cutoff > 0.0 && cutoff < 1.0))
  {
    throw ParameterError("cutoff must lie in (0, 1)");
  }
  if (!(h_initial > 0.0 && h_initial <= 0.1))
  {
    throw ParameterError("h_initial must lie in (0, 1/10]");
  }
  if (!(h_min > 0.0 && h_min <= h_initial))
  {
    throw ParameterError("h_min must lie in (0, h_initial]");
  }
  if (N_keep < 1)
  {
    throw ParameterError("N_keep must be positive");
  }
  if (quad.n_r < 1 || quad.n_t < 1 || quad.n_strip < 1)
  {
    throw ParameterError("quadrature orders must be positive");
  }
  if (targets.size() > 8)
  {
    throw ParameterError("at most 8 targets are supported");
  }
  TargetSpec{targets, epsilon, delta_override.value_or(0.0)}.Validate();
}

BandSettings RunConfig::Settings() const
{
  BandSettings s;
  s.K_modes = K_modes;
  s.cutoff = cutoff;
  s.N_keep = N_keep;
  s.quad = quad;
  s.threads = threads;
  return s;
}

RunConfig RunConfigFromJson(const nlohmann::json &doc)
{
  const nlohmann::json &j = doc.contains("config") ? doc.at("config") : doc;
  if (!j.is_object())
  {
    throw ParameterError("config must be a JSON object");
  }
  static const std::set<std::string> known = {
      "targets", "epsilon",  "delta",     "R0",     "eta_points",       "K_modes",
      "cutoff",  "h_initial", "h_min",    "N_keep", "quadrature",       "moment_convention",
      "threads", "outputs"};
  for (const auto &[key, value] : j.items())
  {
    if (!known.count(key))
    {
      throw ParameterError("unknown config key '" + key + "'");
    }
  }

  RunConfig c;
  try
  {
    c.targets = j.value("targets", c.targets);
    c.epsilon = j.value("epsilon", c.epsilon);
    if (j.contains("delta") && !j.at("delta").is_null())
    {
      c.delta_override = j.at("delta").get<double>();
    }
    c.R0 = j.value("R0", c.R0);
    c.eta_points = j.value("eta_points", c.eta_points);
    c.K_modes = j.value("K_modes", c.K_modes);
    c.cutoff = j.value("cutoff", c.cutoff);
    c.h_initial = j.value("h_initial", c.h_initial);
    c.h_min = j.value("h_min", c.h_min);
    c.N_keep = j.value("N_keep", c.N_keep);
    c.threads = j.value("threads", c.threads);
    if (j.contains("quadrature"))
    {
      const auto &q = j.at("quadrature");
      c.quad.n_r = q.value("n_r", c.quad.n_r);
      c.quad.n_t = q.value("n_t", c.quad.n_t);
      c.quad.n_strip = q.value("n_strip", c.quad.n_strip);
    }
    if (j.contains("moment_convention"))
    {
      c.convention = ParseMomentConvention(j.at("moment_convention").get<std::string>());
    }
    if (j.contains("outputs"))
    {
      const auto &o = j.at("outputs");
      c.bands_csv = o.value("bands_csv", c.bands_csv);
      c.report_json = o.value("report_json", c.report_json);
      c.diagnostics_json = o.value("diagnostics_json", c.diagnostics_json);
    }
  }
  catch (const nlohmann::json::exception &e)
  {
    throw ParameterError(std::string("invalid config: ") + e.what());
  }
  c.Validate();
  return c;
}

nlohmann::json RunConfigToJson(const RunConfig &c)
{
  return {{"targets", c.targets},
          {"epsilon", c.epsilon},
          {"delta", c.delta_override ? nlohmann::json(*c.delta_override) : nlohmann::json(nullptr)},
          {"R0", c.R0},
          {"eta_points", c.eta_points},
          {"K_modes", c.K_modes},
          {"cutoff", c.cutoff},
          {"h_initial", c.h_initial},
          {"h_min", c.h_min},
          {"N_keep", c.N_keep},
          {"quadrature", {{"n_r", c.quad.n_r}, {"n_t", c.quad.n_t}, {"n_strip", c.quad.n_strip}}},
          {"moment_convention", ToString(c.convention)},
          {"threads", c.threads},
          {"outputs",
           {{"bands_csv", c.bands_csv},
            {"report_json", c.report_json},
            {"diagnostics_json", c.diagnostics_json}}}};
}

RunResult RunPrescribedSpectrum(const RunConfig &config)
{
  config.Validate();
  RunResult result;
  const int K = static_cast<int>(config.targets.size());
  if (K > 0)
  {
    result.synthesis_condition = MomentGramCondition(K);
    result.profile = SynthesizeProfile(config.targets, config.convention);
  }
  constexpr int disc_kept = 32;
  result.disc_spectrum = ComputeDiscSpectrum(result.profile, disc_kept, config.convention);

  // The targets sit at Taylor indices 1..K; N is the deepest modulus rank among them.
  for (int n = 1; n <= K; n++)
  {
    const int rank = result.disc_spectrum.RankOf(n);
    if (rank == 0)
    {
      throw NumericalError("target eigenvalue fell outside the kept disc spectrum");
    }
    result.N = std::max(result.N, rank);
  }
  if (result.N > 0)
  {
    result.spectral_gap = SpectralGap(result.disc_spectrum, result.N);
    if (!(result.spectral_gap > 0.0) && !config.delta_override)
    {
      throw NumericalError("disc spectrum has no gap after the targets");
    }
  }
  result.delta = config.delta_override.value_or(result.spectral_gap / 4.0);

  const TargetSpec spec{config.targets, config.epsilon, result.delta};
  const std::vector<double> etas = UniformEtaGrid(config.eta_points);
  const BandSettings settings = config.Settings();

  for (double h = config.h_initial; h >= config.h_min; h *= 0.5)
  {
    const CellGeometry cell(config.R0, h);
    BandStructure bands = ComputeBands(cell, result.profile, etas, settings);

    HIteration it;
    it.h = h;
    it.merge_tol = DefaultMergeTolerance(bands);
    it.report = GapReport(EssentialSpectrum(bands, it.merge_tol, 0.5 * result.delta), spec);
    it.min_dim_eff = bands.fibers.front().dim_eff;
    it.max_dim_eff = it.min_dim_eff;
    for (const auto &f : bands.fibers)
    {
      it.min_dim_eff = std::min(it.min_dim_eff, f.dim_eff);
      it.max_dim_eff = std::max(it.max_dim_eff, f.dim_eff);
      it.max_hermiticity_residual = std::max(it.max_hermiticity_residual, f.hermiticity_residual);
      it.max_spectral_radius = std::max(it.max_spectral_radius, f.spectral_radius);
      it.max_gram_residual = std::max(it.max_gram_residual, f.gram_residual);
    }
    result.iterations.push_back(it);

    result.chosen_h = h;
    result.band_structure = std::move(bands);
    result.spectrum_report = it.report;
    result.pass = it.report.pass;
    if (result.pass)
    {
      break;
    }
  }

  const std::size_t n_it = result.iterations.size();
  if (n_it >= 2)
  {
    const auto &a = result.iterations[n_it - 2].report.target_hits;
    const auto &b = result.iterations[n_it - 1].report.target_hits;
    for (std::size_t t = 0; t < a.size(); t++)
    {
      result.monotone_final_two = result.monotone_final_two && b[t].distance <= a[t].distance;
    }
  }
  return result;
}

nlohmann::json RunReportToJson(const RunResult &result, const RunConfig &config)
{
  nlohmann::json j = ReportToJson(result.spectrum_report);
  j["h"] = result.chosen_h;
  j["N"] = result.N;
  j["delta"] = result.delta;
  j["config"] = RunConfigToJson(config);
  return j;
}

nlohmann::json RunDiagnosticsToJson(const RunResult &result, const RunConfig &config)
{
  nlohmann::json disc = nlohmann::json::array();
  for (std::size_t i = 0; i < result.disc_spectrum.eigenvalues.size(); i++)
  {
    disc.push_back({{"n", result.disc_spectrum.indices[i]},
                    {"lambda", result.disc_spectrum.eigenvalues[i]}});
  }
  nlohmann::json iterations = nlohmann::json::array();
  for (const auto &it : result.iterations)
  {
    std::vector<double> distances;
    for (const auto &t : it.report.target_hits)
    {
      distances.push_back(t.distance);
    }
    iterations.push_back({{"h", it.h},
                          {"merge_tol", it.merge_tol},
                          {"target_distances", distances},
                          {"delta_achieved", std::isfinite(it.report.delta_achieved)
                                                 ? nlohmann::json(it.report.delta_achieved)
                                                 : nlohmann::json(nullptr)},
                          {"pass", it.report.pass},
                          {"dim_eff_min", it.min_dim_eff},
                          {"dim_eff_max", it.max_dim_eff},
                          {"max_hermiticity_residual", it.max_hermiticity_residual},
                          {"max_spectral_radius", it.max_spectral_radius},
                          {"max_gram_residual", it.max_gram_residual}});
  }
  nlohmann::json fibers = nlohmann::json::array();
  for (const auto &f : result.band_structure.fibers)
  {
    fibers.push_back({{"eta", f.eta},
                      {"dim_eff", f.dim_eff},
                      {"gram_residual", f.gram_residual},
                      {"hermiticity_residual", f.hermiticity_residual},
                      {"spectral_radius", f.spectral_radius}});
  }
  return {{"profile", ProfileToJson(result.profile, config.R0)},
          {"synthesis_condition", result.synthesis_condition},
          {"disc_spectrum", disc},
          {"N", result.N},
          {"spectral_gap", result.spectral_gap},
          {"delta", result.delta},
          {"chosen_h", result.chosen_h},
          {"verdict", result.pass ? "pass" : "fail"},
          {"monotone_final_two", result.monotone_final_two},
          {"iterations", iterations},
          {"fibers", fibers},
          {"config", RunConfigToJson(config)}};
}

namespace
{

std::ofstream OpenOutput(const std::string &path)
{
  std::ofstream os(path);
  if (!os)
  {
    throw Error("cannot open '" + path + "' for writing");
  }
  return os;
}

}  // namespace

void WriteRunOutputs(const RunResult &result, const RunConfig &config)
{
  {
    auto os = OpenOutput(config.bands_csv);
    WriteBandsCsv(os, result.band_structure);
  }
  {
    auto os = OpenOutput(config.report_json);
    os << RunReportToJson(result, config).dump(2) << '\n';
  }
  {
    auto os = OpenOutput(config.diagnostics_json);
    os << RunDiagnosticsToJson(result, config).dump(2) << '\n';
  }
}

}  // namespace bergband
