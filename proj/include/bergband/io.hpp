// SPDX-License-Identifier: Apache-2.0

#ifndef BERGBAND_IO_HPP
#define BERGBAND_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>
#include <json.hpp>
#include "bergband/band_solver.hpp"
#include "bergband/disc_spectrum.hpp"
#include "bergband/symbols.hpp"

namespace bergband
{

// Shortest decimal string that parses back to the same double.
std::string FormatDouble(double x);

// Columns eta,n,lambda with n the 1-based band rank.
void WriteBandsCsv(std::ostream &os, const BandStructure &bands);
// Recovers etas and per-eta band values; provenance fields are left default.
BandStructure ReadBandsCsv(std::istream &is);

// Columns n,lambda for Taylor indices 0..count-1.
void WriteDiscSpectrumCsv(std::ostream &os, const RadialProfile &profile, int count,
                          MomentConvention convention = MomentConvention::Standard);

void WriteConvergenceCsv(std::ostream &os, const std::vector<ConvergenceRow> &rows);

// {"R0": ..., "coeffs": [...], "constant": ..., "support": ..., "sup_norm": ...}
nlohmann::json ProfileToJson(const RadialProfile &profile, double R0);
RadialProfile ProfileFromJson(const nlohmann::json &j);

nlohmann::json IntervalsToJson(const std::vector<Interval> &intervals);
nlohmann::json ReportToJson(const SpectrumReport &report);

// Comma-separated list of reals, e.g. "0.3,0.2,0.1"; empty string gives an empty list.
std::vector<double> ParseRealList(const std::string &text);
std::vector<int> ParseIntList(const std::string &text);

}  // namespace bergband

#endif  // BERGBAND_IO_HPP
