// SPDX-License-Identifier: Apache-2.0

#include "bergband/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <Eigen/Dense>
#include "bergband/errors.hpp"

namespace bergband
{

namespace
{

constexpr int MAX_SYNTH_MODES = 8;

// G_{nm} = int_0^{1/2} r^{2n+1} r^{2m+1} dr for n, m = 1..K.
Eigen::MatrixXd MomentGram(int K)
{
  Eigen::MatrixXd G(K, K);
  for (int n = 1; n <= K; n++)
  {
    for (int m = 1; m <= K; m++)
    {
      const int p = 2 * n + 2 * m + 3;
      G(n - 1, m - 1) = std::pow(0.5, p) / p;
    }
  }
  return G;
}

}  // namespace

double MomentConstant(int n, MomentConvention convention)
{
  return convention == MomentConvention::Standard ? 2.0 * (n + 1)
                                                   : (n + 1) / std::numbers::pi;
}

MomentConvention ParseMomentConvention(const std::string &name)
{
  if (name == "standard")
  {
    return MomentConvention::Standard;
  }
  if (name == "pi_scaled")
  {
    return MomentConvention::PiScaled;
  }
  throw ParameterError("unknown moment convention '" + name + "' (expected standard or pi_scaled)");
}

std::string ToString(MomentConvention convention)
{
  return convention == MomentConvention::Standard ? "standard" : "pi_scaled";
}

RadialProfile RadialProfile::Unit()
{
  RadialProfile p;
  p.constant = 1.0;
  p.support = 1.0;
  return p;
}

bool RadialProfile::IsZero() const
{
  return constant == 0.0 && std::all_of(coeffs.begin(), coeffs.end(),
                                        [](double c) { return c == 0.0; });
}

double RadialProfile::operator()(double r) const
{
  if (r >= support)
  {
    return 0.0;
  }
  // Horner in s = r^2 for sum c_m r^{2m+1} = r^3 sum c_m s^{m-1}.
  const double s = r * r;
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
  {
    acc = acc * s + *it;
  }
  return constant + acc * r * s;
}

double RadialProfile::SupNorm() const
{
  constexpr int samples = 4096;
  const double dr = support / samples;
  int best = 0;
  double best_val = 0.0;
  for (int i = 0; i <= samples; i++)
  {
    // The right end is excluded from the support; sample just inside.
    const double r = (i == samples) ? std::nextafter(support, 0.0) : i * dr;
    const double v = std::abs((*this)(r));
    if (v > best_val)
    {
      best_val = v;
      best = i;
    }
  }
  // Golden-section refinement around the best sample.
  double a = std::max(0.0, (best - 1) * dr), b = std::min(support, (best + 1) * dr);
  b = std::min(b, std::nextafter(support, 0.0));
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 80; it++)
  {
    const double x1 = b - g * (b - a), x2 = a + g * (b - a);
    if (std::abs((*this)(x1)) > std::abs((*this)(x2)))
    {
      b = x2;
    }
    else
    {
      a = x1;
    }
  }
  return std::max(best_val, std::abs((*this)(0.5 * (a + b))));
}

void TargetSpec::Validate() const
{
  for (std::size_t i = 0; i < targets.size(); i++)
  {
    if (!std::isfinite(targets[i]))
    {
      throw ParameterError("targets must be finite");
    }
    for (std::size_t j = 0; j < i; j++)
    {
      if (targets[i] == targets[j])
      {
        throw ParameterError("targets must be pairwise distinct");
      }
    }
  }
  if (!(epsilon >= 0.0) || !(delta >= 0.0))
  {
    throw ParameterError("epsilon and delta must be nonnegative");
  }
}

double MomentGramCondition(int K)
{
  if (K < 1)
  {
    return 1.0;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(MomentGram(K));
  const auto &s = svd.singularValues();
  return s(0) / s(s.size() - 1);
}

RadialProfile SynthesizeProfile(const std::vector<double> &targets, MomentConvention convention,
                                double max_condition)
{
  const int K = static_cast<int>(targets.size());
  if (K < 1)
  {
    throw ParameterError("synthesis needs at least one target");
  }
  if (!std::all_of(targets.begin(), targets.end(), [](double x) { return std::isfinite(x); }))
  {
    throw ParameterError("targets must be finite");
  }
  if (K > MAX_SYNTH_MODES)
  {
    throw IllConditionedError("at most 8 targets are supported, got " + std::to_string(K),
                              MomentGramCondition(K));
  }
  const double cond = MomentGramCondition(K);
  if (cond > max_condition)
  {
    throw IllConditionedError("moment Gram matrix is too ill-conditioned (cond = " +
                                  std::to_string(cond) + ")",
                              cond);
  }

  // G = D H D with D = diag(2^{-(2n+3/2)}) and H_{nm} = 1/(2n+2m+3); solve the Hilbert-like
  // core and refine once to recover digits lost to the scaling.
  Eigen::MatrixXd H(K, K);
  Eigen::VectorXd d(K), rhs(K);
  for (int n = 1; n <= K; n++)
  {
    d(n - 1) = std::pow(0.5, 2 * n + 1.5);
    rhs(n - 1) = targets[n - 1] / MomentConstant(n, convention);
    for (int m = 1; m <= K; m++)
    {
      H(n - 1, m - 1) = 1.0 / (2 * n + 2 * m + 3);
    }
  }
  const Eigen::VectorXd scaled_rhs = rhs.cwiseQuotient(d);
  const auto ldlt = H.ldlt();
  Eigen::VectorXd y = ldlt.solve(scaled_rhs);
  y += ldlt.solve(scaled_rhs - H * y);
  const Eigen::VectorXd c = y.cwiseQuotient(d);

  RadialProfile profile;
  profile.coeffs.assign(c.data(), c.data() + K);
  return profile;
}

double EvalDiscSymbol(const RadialProfile &profile, Complex z)
{
  return profile(std::abs(z));
}

double EvalCellSymbol(const RadialProfile &profile, const CellGeometry &cell, Complex z)
{
  const double r = std::abs(z);
  if (r >= cell.R0())
  {
    return 0.0;
  }
  return profile(r / cell.R0());
}

double EvalPeriodicSymbol(const RadialProfile &profile, const CellGeometry &cell, Complex z)
{
  const double m = std::round(z.real());
  return EvalCellSymbol(profile, cell, z - m);
}

}  // namespace bergband
