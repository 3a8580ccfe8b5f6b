// SPDX-License-Identifier: Apache-2.0

#ifndef BERGBAND_SYMBOLS_HPP
#define BERGBAND_SYMBOLS_HPP

#include <string>
#include <vector>
#include "bergband/geometry.hpp"

namespace bergband
{

// Normalization of the radial moment formula lambda_n = c(n) int_0^1 a(r) r^{2n+1} dr.
// Standard: c(n) = 2(n+1), which makes the unit symbol the identity. PiScaled:
// c(n) = (n+1)/pi, which omits the angular integral and scales every eigenvalue by 1/(2 pi).
enum class MomentConvention
{
  Standard,
  PiScaled
};

double MomentConstant(int n, MomentConvention convention);
MomentConvention ParseMomentConvention(const std::string &name);
std::string ToString(MomentConvention convention);

//
// Radial symbol b(r) = constant + sum_{m=1..K} coeffs[m-1] r^{2m+1} for r < support,
// and b = 0 beyond. Synthesized profiles have constant 0 and support 1/2.
//
struct RadialProfile
{
  std::vector<double> coeffs;
  double constant = 0.0;
  double support = 0.5;

  // The symbol a = 1 on the whole unit disc.
  static RadialProfile Unit();
  static RadialProfile Zero() { return {}; }

  int K() const { return static_cast<int>(coeffs.size()); }
  bool IsZero() const;

  // Value at radius r >= 0.
  double operator()(double r) const;

  // sup over [0, support] of |b|, by dense sampling refined at the best sample.
  double SupNorm() const;
};

struct TargetSpec
{
  std::vector<double> targets;
  double epsilon = 0.0;
  double delta = 0.0;

  // Throws ParameterError on repeated targets or a negative radius.
  void Validate() const;
};

// Solves the K x K moment system for targets x_1..x_K (K <= 8) so that the n-th moment
// eigenvalue equals x_n for n = 1..K. Throws IllConditionedError when the Gram matrix
// condition number exceeds max_condition.
RadialProfile SynthesizeProfile(const std::vector<double> &targets,
                                MomentConvention convention = MomentConvention::Standard,
                                double max_condition = 1e12);

// Condition number (2-norm) of the K x K moment Gram matrix.
double MomentGramCondition(int K);

// b(|z|) on the unit disc, zero outside the support.
double EvalDiscSymbol(const RadialProfile &profile, Complex z);

// b(|z| / R0) inside the cell disc and zero elsewhere in the cell.
double EvalCellSymbol(const RadialProfile &profile, const CellGeometry &cell, Complex z);

// Cell symbol applied to z - m, m = round(Re z); 1-periodic in Re z.
double EvalPeriodicSymbol(const RadialProfile &profile, const CellGeometry &cell, Complex z);

}  // namespace bergband

#endif  // BERGBAND_SYMBOLS_HPP
