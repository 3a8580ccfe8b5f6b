// SPDX-License-Identifier: Apache-2.0

#ifndef BERGBAND_DISC_SPECTRUM_HPP
#define BERGBAND_DISC_SPECTRUM_HPP

#include <vector>
#include <Eigen/Core>
#include "bergband/geometry.hpp"
#include "bergband/symbols.hpp"

namespace bergband
{

// Eigenvalues below this modulus are reported as exact zeros (the accumulation point).
constexpr double ZERO_CLUSTER_THRESHOLD = 1e-14;

//
// Spectrum of the radial Toeplitz operator on the disc, i.e. the Taylor multipliers
// lambda_n, n = 0..N_kept-1, ordered by decreasing modulus. Ties go to the larger signed
// value, then to the smaller index.
//
struct DiscSpectrum
{
  std::vector<double> eigenvalues;
  // Taylor index n of each entry of eigenvalues.
  std::vector<int> indices;
  int N_kept = 0;

  // Position (1-based) of Taylor index n in the modulus ordering, or 0 if not kept.
  int RankOf(int n) const;
};

// lambda_n = c(n) int_0^1 b(r) r^{2n+1} dr, closed form for polynomial profiles.
double MomentEigenvalue(const RadialProfile &profile, int n,
                        MomentConvention convention = MomentConvention::Standard);

DiscSpectrum ComputeDiscSpectrum(const RadialProfile &profile, int N_kept = 32,
                                 MomentConvention convention = MomentConvention::Standard);

// Galerkin matrix M_{jk} = int b(|z|/R0) e_k conj(e_j) dA, j, k = 0..N-1, with e_n the
// normalized monomials of the Bergman space of |z| < R0. The rule must be a disc rule on
// that disc with N <= radial_order - 2.
Eigen::MatrixXcd DiscGalerkinMatrix(const RadialProfile &profile, double R0, int N,
                                    const QuadratureRule &quad);

// |lambda_N| - |lambda_{N+1}| for 1 <= N < N_kept.
double SpectralGap(const DiscSpectrum &spectrum, int N);

}  // namespace bergband

#endif  // BERGBAND_DISC_SPECTRUM_HPP
