// SPDX-License-Identifier: Apache-2.0

#include "bergband/band_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <Eigen/Eigenvalues>
#include "bergband/disc_spectrum.hpp"
#include "bergband/errors.hpp"
#include "bergband/parallel.hpp"

namespace bergband
{

namespace
{

double IntervalDistance(const Interval &a, const Interval &b)
{
  return std::max({0.0, b.lo - a.hi, a.lo - b.hi});
}

double PointDistance(double x, const Interval &a)
{
  return std::max({0.0, a.lo - x, x - a.hi});
}

}  // namespace

Eigen::MatrixXcd ToeplitzMatrix(const CellGeometry &cell, const RadialProfile &profile,
                                const TwistedBasis &basis)
{
  if (basis.cell().R0() != cell.R0() || basis.cell().h() != cell.h())
  {
    throw ParameterError("basis was built for a different cell");
  }
  const QuadratureRule &quad = basis.quad();
  // The symbol vanishes off the disc, so only the disc nodes contribute.
  const auto nd = static_cast<Eigen::Index>(quad.disc_count);
  Eigen::VectorXd wb(nd);
  for (Eigen::Index i = 0; i < nd; i++)
  {
    wb(i) = quad.weights[i] * EvalCellSymbol(profile, cell, quad.nodes[i]);
  }
  const auto Qd = basis.Q().topRows(nd);
  return Qd.adjoint() * (wb.asDiagonal() * Qd);
}

double HermiticityResidual(const Eigen::MatrixXcd &A)
{
  if (A.size() == 0)
  {
    return 0.0;
  }
  return (A - A.adjoint()).cwiseAbs().maxCoeff();
}

std::vector<double> BandOrderedEigenvalues(const Eigen::MatrixXcd &A)
{
  if (A.size() == 0)
  {
    return {};
  }
  const Eigen::MatrixXcd H = 0.5 * (A + A.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(H, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success)
  {
    throw NumericalError("Hermitian eigensolver did not converge");
  }
  std::vector<double> ev(eig.eigenvalues().data(),
                         eig.eigenvalues().data() + eig.eigenvalues().size());
  std::stable_sort(ev.begin(), ev.end(),
                   [](double a, double b)
                   {
                     if (std::abs(a) != std::abs(b))
                     {
                       return std::abs(a) > std::abs(b);
                     }
                     return a > b;
                   });
  return ev;
}

std::vector<double> UniformEtaGrid(int n)
{
  if (n < 1)
  {
    throw ParameterError("eta grid needs at least one point");
  }
  if (n == 1)
  {
    return {0.0};
  }
  std::vector<double> etas(n);
  for (int i = 0; i < n; i++)
  {
    etas[i] = -std::numbers::pi + 2.0 * std::numbers::pi * i / (n - 1);
  }
  etas.back() = std::numbers::pi;
  return etas;
}

BandStructure ComputeBands(const CellGeometry &cell, const RadialProfile &profile,
                           const std::vector<double> &eta_grid, const BandSettings &settings)
{
  if (eta_grid.empty())
  {
    throw ParameterError("eta grid must be nonempty");
  }
  for (double eta : eta_grid)
  {
    if (!(std::abs(eta) <= std::numbers::pi + 1e-12))
    {
      throw ParameterError("eta grid must lie in [-pi, pi]");
    }
  }
  if (settings.N_keep < 1)
  {
    throw ParameterError("N_keep must be positive");
  }
  auto quad = std::make_shared<const QuadratureRule>(
      BuildCellQuadrature(cell, settings.quad.n_r, settings.quad.n_t, settings.quad.n_strip));

  BandStructure bands;
  bands.etas = eta_grid;
  bands.R0 = cell.R0();
  bands.h = cell.h();
  bands.profile = profile;
  bands.K_modes = settings.K_modes;
  bands.cutoff = settings.cutoff;
  bands.lambdas.resize(eta_grid.size());
  bands.fibers.resize(eta_grid.size());

  ParallelFor(static_cast<int>(eta_grid.size()), settings.threads,
              [&](int j)
              {
                const double eta = eta_grid[j];
                TwistedBasis basis = [&]
                {
                  try
                  {
                    return BuildBasis(cell, eta, settings.K_modes, quad, settings.cutoff);
                  }
                  catch (const DegenerateBasisError &e)
                  {
                    throw DegenerateBasisError(
                        std::string(e.what()) + " at eta = " + std::to_string(eta), eta);
                  }
                }();
                const Eigen::MatrixXcd A = ToeplitzMatrix(cell, profile, basis);
                std::vector<double> ev = BandOrderedEigenvalues(A);

                FiberDiagnostics &diag = bands.fibers[j];
                diag.eta = eta;
                diag.dim_eff = basis.dim_eff();
                diag.gram_residual = basis.GramResidual();
                diag.hermiticity_residual = HermiticityResidual(A);
                diag.spectral_radius = ev.empty() ? 0.0 : std::abs(ev.front());

                if (static_cast<int>(ev.size()) > settings.N_keep)
                {
                  ev.resize(settings.N_keep);
                }
                bands.lambdas[j] = std::move(ev);
              });
  return bands;
}

double DefaultMergeTolerance(const BandStructure &bands)
{
  double tol = 0.0;
  for (std::size_t j = 0; j + 1 < bands.lambdas.size(); j++)
  {
    std::vector<double> a = bands.lambdas[j], b = bands.lambdas[j + 1];
    std::sort(a.begin(), a.end(), std::greater<>());
    std::sort(b.begin(), b.end(), std::greater<>());
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; i++)
    {
      tol = std::max(tol, std::abs(a[i] - b[i]));
    }
  }
  return tol;
}

std::vector<Interval> MergeSpectrumValues(std::vector<double> values, double merge_tol,
                                          double zero_threshold)
{
  Interval zero{0.0, 0.0};
  std::vector<Interval> items;
  for (double v : values)
  {
    if (std::abs(v) < zero_threshold || v == 0.0)
    {
      zero.lo = std::min(zero.lo, v);
      zero.hi = std::max(zero.hi, v);
    }
    else
    {
      items.push_back({v, v});
    }
  }
  items.push_back(zero);
  std::sort(items.begin(), items.end(),
            [](const Interval &a, const Interval &b) { return a.lo < b.lo; });

  std::vector<Interval> merged;
  for (const Interval &it : items)
  {
    if (!merged.empty() && it.lo - merged.back().hi <= merge_tol)
    {
      merged.back().hi = std::max(merged.back().hi, it.hi);
    }
    else
    {
      merged.push_back(it);
    }
  }
  return merged;
}

std::vector<Interval> EssentialSpectrum(const BandStructure &bands, double merge_tol,
                                        double zero_threshold)
{
  std::vector<double> values;
  for (const auto &row : bands.lambdas)
  {
    values.insert(values.end(), row.begin(), row.end());
  }
  return MergeSpectrumValues(std::move(values), merge_tol, zero_threshold);
}

SpectrumReport GapReport(const std::vector<Interval> &spectrum, const TargetSpec &spec)
{
  spec.Validate();
  SpectrumReport report;
  report.components = spectrum;
  std::sort(report.components.begin(), report.components.end(),
            [](const Interval &a, const Interval &b) { return a.lo < b.lo; });
  report.epsilon = spec.epsilon;
  report.delta_required = spec.delta;
  for (std::size_t i = 0; i + 1 < report.components.size(); i++)
  {
    report.gaps.push_back({report.components[i].hi, report.components[i + 1].lo});
  }

  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<bool> near(report.components.size(), false);
  bool all_hit = true;
  for (double x : spec.targets)
  {
    TargetHit hit{x, inf, false};
    for (std::size_t i = 0; i < report.components.size(); i++)
    {
      const double d = PointDistance(x, report.components[i]);
      hit.distance = std::min(hit.distance, d);
      if (d <= spec.epsilon)
      {
        near[i] = true;
      }
    }
    hit.hit = hit.distance <= spec.epsilon;
    all_hit = all_hit && hit.hit;
    report.target_hits.push_back(hit);
  }

  report.delta_achieved = inf;
  for (std::size_t i = 0; i < report.components.size(); i++)
  {
    for (std::size_t j = 0; j < report.components.size(); j++)
    {
      if (near[i] && !near[j])
      {
        report.delta_achieved = std::min(
            report.delta_achieved, IntervalDistance(report.components[i], report.components[j]));
      }
    }
  }
  report.pass = all_hit && report.delta_achieved >= spec.delta;
  return report;
}

std::vector<ConvergenceRow> HConvergenceStudy(double R0, const RadialProfile &profile,
                                              const std::vector<double> &h_list, double eta,
                                              const std::vector<int> &n_track,
                                              const BandSettings &settings,
                                              MomentConvention convention)
{
  for (std::size_t i = 1; i < h_list.size(); i++)
  {
    if (!(h_list[i] < h_list[i - 1]))
    {
      throw ParameterError("h_list must be strictly decreasing");
    }
  }
  int max_n = 0;
  for (int n : n_track)
  {
    if (n < 0)
    {
      throw ParameterError("tracked indices must be nonnegative");
    }
    max_n = std::max(max_n, n);
  }
  const DiscSpectrum disc = ComputeDiscSpectrum(profile, std::max(32, max_n + 1), convention);

  std::vector<std::vector<ConvergenceRow>> per_h(h_list.size());
  ParallelFor(static_cast<int>(h_list.size()), settings.threads,
              [&](int i)
              {
                const CellGeometry cell(R0, h_list[i]);
                auto quad = std::make_shared<const QuadratureRule>(BuildCellQuadrature(
                    cell, settings.quad.n_r, settings.quad.n_t, settings.quad.n_strip));
                const TwistedBasis basis =
                    BuildBasis(cell, eta, settings.K_modes, quad, settings.cutoff);
                const std::vector<double> ev =
                    BandOrderedEigenvalues(ToeplitzMatrix(cell, profile, basis));
                for (int n : n_track)
                {
                  const int rank = disc.RankOf(n);
                  if (rank < 1 || rank > static_cast<int>(ev.size()))
                  {
                    throw ParameterError("tracked index " + std::to_string(n) +
                                         " exceeds the fiber dimension");
                  }
                  const double lam = MomentEigenvalue(profile, n, convention);
                  const double band = ev[rank - 1];
                  per_h[i].push_back({h_list[i], n, band, lam, std::abs(band - lam)});
                }
              });
  std::vector<ConvergenceRow> rows;
  for (auto &r : per_h)
  {
    rows.insert(rows.end(), r.begin(), r.end());
  }
  return rows;
}

double AlmostEigenCheck(const Eigen::MatrixXcd &A, const Eigen::VectorXcd &v, double mu)
{
  if (A.rows() != A.cols() || A.rows() != v.size() || A.rows() == 0)
  {
    throw ParameterError("almost-eigenvalue check needs a square matrix matching the vector");
  }
  const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  if (HermiticityResidual(A) > 1e-10 * scale)
  {
    throw ParameterError("almost-eigenvalue check needs a Hermitian matrix");
  }
  if (std::abs(v.norm() - 1.0) > 1e-10)
  {
    throw ParameterError("almost-eigenvalue check needs a unit vector");
  }
  const std::vector<double> ev = BandOrderedEigenvalues(A);
  double dist = std::numeric_limits<double>::infinity();
  for (double lam : ev)
  {
    dist = std::min(dist, std::abs(lam - mu));
  }
  return dist;
}

}  // namespace bergband
