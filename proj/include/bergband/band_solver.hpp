// SPDX-License-Identifier: Apache-2.0

#ifndef BERGBAND_BAND_SOLVER_HPP
#define BERGBAND_BAND_SOLVER_HPP

#include <optional>
#include <vector>
#include <Eigen/Core>
#include "bergband/geometry.hpp"
#include "bergband/quasi_bergman.hpp"
#include "bergband/symbols.hpp"

namespace bergband
{

struct BandSettings
{
  int K_modes = 10;
  double cutoff = 1e-12;
  int N_keep = 32;
  QuadratureOrders quad;
  // Worker cap for the eta sweep; 0 picks the hardware concurrency.
  int threads = 0;
};

// Per-eta numerical health of one fiber computation.
struct FiberDiagnostics
{
  double eta = 0.0;
  int dim_eff = 0;
  double gram_residual = 0.0;
  double hermiticity_residual = 0.0;
  double spectral_radius = 0.0;
};

//
// Band functions lambda^n(eta): for every eta, the eigenvalues of the fiber Toeplitz
// matrix ordered by decreasing modulus (ties to the larger signed value).
//
struct BandStructure
{
  std::vector<double> etas;
  std::vector<std::vector<double>> lambdas;
  std::vector<FiberDiagnostics> fibers;

  double R0 = 0.0, h = 0.0;
  RadialProfile profile;
  int K_modes = 0;
  double cutoff = 0.0;
};

// A_{jk} = sum_i w_i b(z_i) q_k(z_i) conj(q_j(z_i)).
Eigen::MatrixXcd ToeplitzMatrix(const CellGeometry &cell, const RadialProfile &profile,
                                const TwistedBasis &basis);

// max |A - A^H|.
double HermiticityResidual(const Eigen::MatrixXcd &A);

// Eigenvalues of a Hermitian matrix in band order (decreasing modulus).
std::vector<double> BandOrderedEigenvalues(const Eigen::MatrixXcd &A);

// Uniform grid of n points on [-pi, pi] including both endpoints.
std::vector<double> UniformEtaGrid(int n);

BandStructure ComputeBands(const CellGeometry &cell, const RadialProfile &profile,
                           const std::vector<double> &eta_grid, const BandSettings &settings);

// Closed interval [lo, hi].
struct Interval
{
  double lo = 0.0, hi = 0.0;
  bool operator==(const Interval &) const = default;
};

// Largest change of any band between adjacent eta samples, bands taken in signed order.
double DefaultMergeTolerance(const BandStructure &bands);

// Union of all band values merged into closed intervals: sorted values closer than
// merge_tol join the same interval, and values with |lambda| < zero_threshold join the
// 0-cluster, which is always present.
std::vector<Interval> EssentialSpectrum(const BandStructure &bands, double merge_tol,
                                        double zero_threshold = 0.0);
std::vector<Interval> MergeSpectrumValues(std::vector<double> values, double merge_tol,
                                          double zero_threshold);

struct TargetHit
{
  double target = 0.0;
  double distance = 0.0;
  bool hit = false;
};

struct SpectrumReport
{
  std::vector<Interval> components;
  std::vector<Interval> gaps;  // open intervals between consecutive components
  std::vector<TargetHit> target_hits;
  // Distance between the components within epsilon of a target and all other
  // components; +inf when either group is empty.
  double delta_achieved = 0.0;
  double delta_required = 0.0;
  double epsilon = 0.0;
  bool pass = false;
};

SpectrumReport GapReport(const std::vector<Interval> &spectrum, const TargetSpec &spec);

struct ConvergenceRow
{
  double h = 0.0;
  int n = 0;            // Taylor index being tracked
  double band = 0.0;    // band value at the same modulus rank
  double disc = 0.0;    // disc eigenvalue lambda_n
  double error = 0.0;
};

// Fiber eigenvalues at one eta for each h, matched to the disc eigenvalues lambda_n by
// their rank in the modulus ordering. h_list must be decreasing.
std::vector<ConvergenceRow> HConvergenceStudy(
    double R0, const RadialProfile &profile, const std::vector<double> &h_list, double eta,
    const std::vector<int> &n_track, const BandSettings &settings,
    MomentConvention convention = MomentConvention::Standard);

// Distance from mu to the spectrum of a Hermitian matrix; by the spectral theorem it
// never exceeds ||A v - mu v|| for a unit vector v. Throws on non-Hermitian input.
double AlmostEigenCheck(const Eigen::MatrixXcd &A, const Eigen::VectorXcd &v, double mu);

}  // namespace bergband

#endif  // BERGBAND_BAND_SOLVER_HPP
