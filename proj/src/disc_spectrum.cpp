// SPDX-License-Identifier: Apache-2.0

#include "bergband/disc_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include "bergband/errors.hpp"

namespace bergband
{

int DiscSpectrum::RankOf(int n) const
{
  const auto it = std::find(indices.begin(), indices.end(), n);
  return it == indices.end() ? 0 : static_cast<int>(it - indices.begin()) + 1;
}

double MomentEigenvalue(const RadialProfile &profile, int n, MomentConvention convention)
{
  if (n < 0)
  {
    throw ParameterError("moment index must be nonnegative");
  }
  const double s = std::min(profile.support, 1.0);
  double integral = profile.constant * std::pow(s, 2 * n + 2) / (2 * n + 2);
  for (int m = 1; m <= profile.K(); m++)
  {
    const int p = 2 * n + 2 * m + 3;
    integral += profile.coeffs[m - 1] * std::pow(s, p) / p;
  }
  return MomentConstant(n, convention) * integral;
}

DiscSpectrum ComputeDiscSpectrum(const RadialProfile &profile, int N_kept,
                                 MomentConvention convention)
{
  if (N_kept < 1)
  {
    throw ParameterError("N_kept must be positive");
  }
  std::vector<double> lambda(N_kept);
  for (int n = 0; n < N_kept; n++)
  {
    const double v = MomentEigenvalue(profile, n, convention);
    lambda[n] = std::abs(v) < ZERO_CLUSTER_THRESHOLD ? 0.0 : v;
  }
  std::vector<int> order(N_kept);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b)
                   {
                     const double ma = std::abs(lambda[a]), mb = std::abs(lambda[b]);
                     if (ma != mb)
                     {
                       return ma > mb;
                     }
                     return lambda[a] > lambda[b];
                   });

  DiscSpectrum spectrum;
  spectrum.N_kept = N_kept;
  for (int i : order)
  {
    spectrum.eigenvalues.push_back(lambda[i]);
    spectrum.indices.push_back(i);
  }
  return spectrum;
}

Eigen::MatrixXcd DiscGalerkinMatrix(const RadialProfile &profile, double R0, int N,
                                    const QuadratureRule &quad)
{
  if (N < 1)
  {
    throw ParameterError("Galerkin size must be positive");
  }
  if (quad.radial_order == 0 || N > quad.radial_order - 2 || N >= quad.angular_order)
  {
    throw ParameterError("quadrature too coarse for a Galerkin matrix of size " +
                         std::to_string(N));
  }
  const std::size_t nq = quad.disc_count;
  Eigen::MatrixXcd E(nq, N);
  Eigen::VectorXd wb(nq);
  for (std::size_t i = 0; i < nq; i++)
  {
    const Complex z = quad.nodes[i];
    if (std::abs(z) > R0 * (1.0 + 1e-14))
    {
      throw ParameterError("quadrature node outside the disc of radius R0");
    }
    const double r = std::abs(z);
    wb(i) = quad.weights[i] * (r < R0 ? profile(r / R0) : 0.0);
    // Normalized monomials, ||z^n||^2 = pi R0^{2n+2} / (n+1), built in scaled form.
    const Complex u = z / R0;
    Complex un = 1.0;
    for (int n = 0; n < N; n++)
    {
      E(i, n) = un * std::sqrt((n + 1) / std::numbers::pi) / R0;
      un *= u;
    }
  }
  return E.adjoint() * (wb.asDiagonal() * E);
}

double SpectralGap(const DiscSpectrum &spectrum, int N)
{
  if (N < 1 || N >= static_cast<int>(spectrum.eigenvalues.size()))
  {
    throw ParameterError("spectral gap index out of range");
  }
  return std::abs(spectrum.eigenvalues[N - 1]) - std::abs(spectrum.eigenvalues[N]);
}

}  // namespace bergband
