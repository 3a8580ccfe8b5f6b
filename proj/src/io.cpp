// SPDX-License-Identifier: Apache-2.0

#include "bergband/io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include "bergband/errors.hpp"

namespace bergband
{

std::string FormatDouble(double x)
{
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

void WriteBandsCsv(std::ostream &os, const BandStructure &bands)
{
  os << "eta,n,lambda\n";
  for (std::size_t j = 0; j < bands.etas.size(); j++)
  {
    for (std::size_t n = 0; n < bands.lambdas[j].size(); n++)
    {
      os << FormatDouble(bands.etas[j]) << ',' << n + 1 << ','
         << FormatDouble(bands.lambdas[j][n]) << '\n';
    }
  }
}

namespace
{

double ParseDouble(const std::string &s)
{
  double x = 0.0;
  const char *first = s.data(), *last = s.data() + s.size();
  while (first < last && *first == ' ')
  {
    ++first;
  }
  const auto res = std::from_chars(first, last, x);
  if (res.ec != std::errc() || res.ptr != last)
  {
    throw ParameterError("cannot parse '" + s + "' as a number");
  }
  return x;
}

std::vector<std::string> SplitComma(const std::string &line)
{
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ','))
  {
    out.push_back(field);
  }
  return out;
}

}  // namespace

BandStructure ReadBandsCsv(std::istream &is)
{
  std::string line;
  if (!std::getline(is, line) || line.rfind("eta,n,lambda", 0) != 0)
  {
    throw ParameterError("bands CSV must start with the header eta,n,lambda");
  }
  BandStructure bands;
  while (std::getline(is, line))
  {
    if (line.empty())
    {
      continue;
    }
    const auto f = SplitComma(line);
    if (f.size() != 3)
    {
      throw ParameterError("malformed bands CSV row: " + line);
    }
    const double eta = ParseDouble(f[0]);
    const double lambda = ParseDouble(f[2]);
    if (bands.etas.empty() || bands.etas.back() != eta)
    {
      bands.etas.push_back(eta);
      bands.lambdas.emplace_back();
    }
    bands.lambdas.back().push_back(lambda);
  }
  return bands;
}

void WriteDiscSpectrumCsv(std::ostream &os, const RadialProfile &profile, int count,
                          MomentConvention convention)
{
  os << "n,lambda\n";
  for (int n = 0; n < count; n++)
  {
    os << n << ',' << FormatDouble(MomentEigenvalue(profile, n, convention)) << '\n';
  }
}

void WriteConvergenceCsv(std::ostream &os, const std::vector<ConvergenceRow> &rows)
{
  os << "h,n,band,disc,error\n";
  for (const auto &r : rows)
  {
    os << FormatDouble(r.h) << ',' << r.n << ',' << FormatDouble(r.band) << ','
       << FormatDouble(r.disc) << ',' << FormatDouble(r.error) << '\n';
  }
}

nlohmann::json ProfileToJson(const RadialProfile &profile, double R0)
{
  return {{"R0", R0},
          {"coeffs", profile.coeffs},
          {"constant", profile.constant},
          {"support", profile.support},
          {"sup_norm", profile.SupNorm()}};
}

RadialProfile ProfileFromJson(const nlohmann::json &j)
{
  RadialProfile p;
  try
  {
    p.coeffs = j.at("coeffs").get<std::vector<double>>();
    p.constant = j.value("constant", 0.0);
    p.support = j.value("support", 0.5);
  }
  catch (const nlohmann::json::exception &e)
  {
    throw ParameterError(std::string("invalid profile document: ") + e.what());
  }
  if (!(p.support > 0.0 && p.support <= 1.0))
  {
    throw ParameterError("profile support must lie in (0, 1]");
  }
  return p;
}

nlohmann::json IntervalsToJson(const std::vector<Interval> &intervals)
{
  nlohmann::json out = nlohmann::json::array();
  for (const auto &iv : intervals)
  {
    out.push_back({iv.lo, iv.hi});
  }
  return out;
}

nlohmann::json ReportToJson(const SpectrumReport &report)
{
  nlohmann::json targets = nlohmann::json::array();
  for (const auto &t : report.target_hits)
  {
    targets.push_back({{"target", t.target}, {"distance", t.distance}, {"hit", t.hit}});
  }
  // Infinite separations (no near or no far components) are written as null.
  nlohmann::json delta_achieved = std::isfinite(report.delta_achieved)
                                      ? nlohmann::json(report.delta_achieved)
                                      : nlohmann::json(nullptr);
  return {{"components", IntervalsToJson(report.components)},
          {"gaps", IntervalsToJson(report.gaps)},
          {"targets", targets},
          {"epsilon", report.epsilon},
          {"delta_required", report.delta_required},
          {"delta_achieved", delta_achieved},
          {"verdict", report.pass ? "pass" : "fail"},
          {"components_are_sampled_hulls", true}};
}

std::vector<double> ParseRealList(const std::string &text)
{
  std::vector<double> out;
  if (text.empty())
  {
    return out;
  }
  for (const auto &f : SplitComma(text))
  {
    out.push_back(ParseDouble(f));
  }
  return out;
}

std::vector<int> ParseIntList(const std::string &text)
{
  std::vector<int> out;
  for (double x : ParseRealList(text))
  {
    if (x != std::floor(x))
    {
      throw ParameterError("expected an integer list");
    }
    out.push_back(static_cast<int>(x));
  }
  return out;
}

}  // namespace bergband
