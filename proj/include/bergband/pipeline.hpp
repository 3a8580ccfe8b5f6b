// SPDX-License-Identifier: Apache-2.0

#ifndef BERGBAND_PIPELINE_HPP
#define BERGBAND_PIPELINE_HPP

#include <optional>
#include <string>
#include <vector>
#include <json.hpp>
#include "bergband/band_solver.hpp"
#include "bergband/disc_spectrum.hpp"
#include "bergband/symbols.hpp"

namespace bergband
{

struct RunConfig
{
  std::vector<double> targets;
  double epsilon = 0.02;
  std::optional<double> delta_override;
  double R0 = 0.4;
  int eta_points = 65;
  int K_modes = 10;
  double cutoff = 1e-12;
  double h_initial = 0.1;
  double h_min = 1e-3;
  int N_keep = 32;
  QuadratureOrders quad;
  MomentConvention convention = MomentConvention::Standard;
  int threads = 0;

  std::string bands_csv = "bands.csv";
  std::string report_json = "report.json";
  std::string diagnostics_json = "diagnostics.json";

  void Validate() const;
  BandSettings Settings() const;
};

// Accepts either the bare config object or a document with the config under "config"
// (as echoed in report and diagnostics files). Unknown keys are rejected.
RunConfig RunConfigFromJson(const nlohmann::json &j);
nlohmann::json RunConfigToJson(const RunConfig &config);

struct HIteration
{
  double h = 0.0;
  double merge_tol = 0.0;
  SpectrumReport report;
  int min_dim_eff = 0, max_dim_eff = 0;
  double max_hermiticity_residual = 0.0;
  double max_spectral_radius = 0.0;
  double max_gram_residual = 0.0;
};

struct RunResult
{
  RadialProfile profile;
  DiscSpectrum disc_spectrum;
  double synthesis_condition = 0.0;
  int N = 0;
  double spectral_gap = 0.0;
  double delta = 0.0;

  // Data of the last h visited: the passing one, or the one below which h_min was hit.
  double chosen_h = 0.0;
  BandStructure band_structure;
  SpectrumReport spectrum_report;
  bool pass = false;

  std::vector<HIteration> iterations;
  // Per-target distances did not increase between the last two iterations.
  bool monotone_final_two = true;
};

// Targets -> profile -> disc spectrum and gap parameters -> halving loop over h until
// the gap report passes or h drops below h_min.
RunResult RunPrescribedSpectrum(const RunConfig &config);

nlohmann::json RunReportToJson(const RunResult &result, const RunConfig &config);
nlohmann::json RunDiagnosticsToJson(const RunResult &result, const RunConfig &config);

// Writes the bands CSV, report JSON and diagnostics JSON named in the config.
void WriteRunOutputs(const RunResult &result, const RunConfig &config);

}  // namespace bergband

#endif  // BERGBAND_PIPELINE_HPP
