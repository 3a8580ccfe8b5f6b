// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <numbers>
#include <random>
#include <string>
#include <vector>
#include "bergband/band_solver.hpp"
#include "bergband/conformal.hpp"
#include "bergband/disc_spectrum.hpp"
#include "bergband/floquet.hpp"
#include "bergband/pipeline.hpp"
#include "bergband/quasi_bergman.hpp"

using namespace bergband;

namespace
{

struct Outcome
{
  bool pass = false;
  std::string detail;
};

// Worst Hermiticity residual and spectral-radius excess over the symbol bound, collected
// from every matrix assembled by the other criteria.
struct MatrixAudit
{
  double hermiticity = 0.0;
  double radius_excess = -INFINITY;
  int matrices = 0;

  void Record(double herm, double radius, double bound)
  {
    hermiticity = std::max(hermiticity, herm);
    radius_excess = std::max(radius_excess, radius - bound);
    matrices++;
  }
  void Record(const Eigen::MatrixXcd &A, double bound)
  {
    const auto ev = BandOrderedEigenvalues(A);
    Record(HermiticityResidual(A), ev.empty() ? 0.0 : std::abs(ev.front()), bound);
  }
};

MatrixAudit audit;

std::string Fmt(const char *fmt, double a = 0, double b = 0, double c = 0, double d = 0)
{
  char buf[512];
  std::snprintf(buf, sizeof(buf), fmt, a, b, c, d);
  return buf;
}

const std::vector<double> kTargets{0.3, 0.2, 0.1};

Outcome IdentitySymbol()
{
  double err = 0.0;
  for (int n = 0; n <= 20; n++)
  {
    err = std::max(err, std::abs(MomentEigenvalue(RadialProfile::Unit(), n) - 1.0));
  }
  const DiscSpectrum spec = ComputeDiscSpectrum(RadialProfile::Unit(), 21);
  for (double v : spec.eigenvalues)
  {
    err = std::max(err, std::abs(v - 1.0));
  }
  return {err <= 1e-10, Fmt("max |lambda_n - 1| = %.2e over n = 0..20", err)};
}

Outcome QuadratureExactness()
{
  const double R0 = 0.4;
  const QuadratureOrders q;
  const QuadratureRule rule = BuildDiscQuadrature(R0, q.n_r, q.n_t, {0.5 * R0});
  double err = 0.0;
  for (int n = 0; n <= 20; n++)
  {
    double s = 0.0;
    for (std::size_t i = 0; i < rule.size(); i++)
    {
      s += rule.weights[i] * std::pow(std::abs(rule.nodes[i]), 2 * n);
    }
    const double exact = std::numbers::pi * std::pow(R0, 2 * n + 2) / (n + 1);
    err = std::max(err, std::abs(s - exact) / exact);
  }
  return {err <= 1e-10, Fmt("max relative error = %.2e over n = 0..20", err)};
}

Outcome SynthesisRoundTrip()
{
  const RadialProfile p = SynthesizeProfile(kTargets);
  double target_err = 0.0;
  for (int n = 1; n <= 3; n++)
  {
    target_err = std::max(target_err, std::abs(MomentEigenvalue(p, n) - kTargets[n - 1]));
  }
  const double R0 = 0.4;
  const QuadratureOrders q;
  const int N = 12;
  const Eigen::MatrixXcd A =
      DiscGalerkinMatrix(p, R0, N, BuildDiscQuadrature(R0, q.n_r, q.n_t, {0.5 * R0}));
  audit.Record(A, p.SupNorm());
  double off = 0.0, diag = 0.0;
  for (int j = 0; j < N; j++)
  {
    for (int k = 0; k < N; k++)
    {
      if (j == k)
      {
        diag = std::max(diag, std::abs(A(j, j) - MomentEigenvalue(p, j)));
      }
      else
      {
        off = std::max(off, std::abs(A(j, k)));
      }
    }
  }
  return {target_err <= 1e-8 && off <= 1e-8 && diag <= 1e-8,
          Fmt("target error %.2e, Galerkin off-diagonal %.2e, diagonal mismatch %.2e", target_err,
              off, diag)};
}

Outcome FloquetUnitarity()
{
  const CellGeometry cell(0.4, 0.05);
  const QuadratureRule q = BuildCellQuadrature(cell, 8, 16, 6);
  const Eigen::VectorXd w =
      Eigen::Map<const Eigen::VectorXd>(q.weights.data(), static_cast<Eigen::Index>(q.size()));
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> normal;
  const int M = 32;
  double parseval = 0.0, round_trip = 0.0;
  for (int t = 0; t < 20; t++)
  {
    CellField f;
    f.M = M;
    f.samples.resize(w.size(), 2 * M + 1);
    for (Eigen::Index c = 0; c < f.samples.cols(); c++)
    {
      for (Eigen::Index r = 0; r < w.size(); r++)
      {
        const double re = normal(rng);
        f.samples(r, c) = Complex(re, normal(rng));
      }
    }
    const double norm = FieldNorm(f, w);
    const FloquetField ff = FloquetForward(f);
    parseval = std::max(parseval, std::abs(FieldNorm(ff, w) - norm) / norm);
    const CellField back = FloquetInverse(ff);
    round_trip = std::max(round_trip, FieldNorm(CellField{M, back.samples - f.samples}, w) / norm);
  }
  return {parseval <= 1e-10 && round_trip <= 1e-12,
          Fmt("Parseval residual %.2e, round-trip error %.2e (M = 32, 20 fields)", parseval,
              round_trip)};
}

Outcome ProjectorHolder()
{
  const CellGeometry cell(0.4, 0.05);
  const QuadratureOrders q;
  auto quad = std::make_shared<const QuadratureRule>(BuildCellQuadrature(cell, q.n_r, q.n_t, q.n_strip));
  const std::vector<double> grid = UniformEtaGrid(17);
  std::vector<TwistedBasis> bases;
  for (double eta : grid)
  {
    bases.push_back(BuildBasis(cell, eta, 10, quad));
  }

  // C from grid pairs at |eta - mu| >= 0.5.
  double C = 0.0;
  int fit_pairs = 0;
  for (std::size_t i = 0; i < grid.size(); i++)
  {
    for (std::size_t j = i + 1; j < grid.size(); j++)
    {
      const double d = std::abs(grid[i] - grid[j]);
      if (d >= 0.5)
      {
        C = std::max(C, ProjectorDistance(bases[i], bases[j]) / std::sqrt(d));
        fit_pairs++;
      }
    }
  }

  // Grid spacing is 2 pi / 16, so close pairs come from companions of each grid point.
  double worst = 0.0;
  int close_pairs = 0;
  for (std::size_t i = 0; i < grid.size(); i++)
  {
    for (double d : {0.1, 0.03, 0.01})
    {
      for (double s : {-1.0, 1.0})
      {
        const double mu = grid[i] + s * d;
        if (std::abs(mu) > std::numbers::pi)
        {
          continue;
        }
        const TwistedBasis b = BuildBasis(cell, mu, 10, quad);
        worst = std::max(worst, ProjectorDistance(bases[i], b) / std::sqrt(d));
        close_pairs++;
      }
    }
  }
  return {fit_pairs > 0 && close_pairs > 0 && worst <= 1.25 * C,
          Fmt("C = %.3f from %g far pairs; worst close ratio %.3f over %g pairs", C, fit_pairs,
              worst, close_pairs)};
}

Outcome BandConvergence()
{
  const RadialProfile p = SynthesizeProfile(kTargets);
  const double bound = p.SupNorm();
  const DiscSpectrum disc = ComputeDiscSpectrum(p);
  const QuadratureOrders q;
  const std::vector<double> hs{0.1, 0.05, 0.02};
  const std::vector<double> etas{0.0, 0.5 * std::numbers::pi, std::numbers::pi};

  // err[eta][h][n] for the target-tracking bands (Taylor indices 1..3 at their modulus
  // rank) and for the three largest-modulus bands.
  double tracked[3][3][3], literal[3][3][3];
  for (std::size_t k = 0; k < hs.size(); k++)
  {
    const CellGeometry cell(0.4, hs[k]);
    auto quad =
        std::make_shared<const QuadratureRule>(BuildCellQuadrature(cell, q.n_r, q.n_t, q.n_strip));
    for (std::size_t e = 0; e < etas.size(); e++)
    {
      const TwistedBasis basis = BuildBasis(cell, etas[e], 10, quad);
      const Eigen::MatrixXcd A = ToeplitzMatrix(cell, p, basis);
      audit.Record(A, bound);
      const auto ev = BandOrderedEigenvalues(A);
      for (int n = 1; n <= 3; n++)
      {
        tracked[e][k][n - 1] = std::abs(ev[disc.RankOf(n) - 1] - MomentEigenvalue(p, n));
        literal[e][k][n - 1] = std::abs(ev[n - 1] - disc.eigenvalues[n - 1]);
      }
    }
  }
  bool monotone = true, literal_monotone = true;
  double final_err = 0.0, literal_final = 0.0;
  for (int e = 0; e < 3; e++)
  {
    for (int n = 0; n < 3; n++)
    {
      monotone = monotone && tracked[e][0][n] > tracked[e][1][n] && tracked[e][1][n] > tracked[e][2][n];
      literal_monotone = literal_monotone && literal[e][0][n] > literal[e][1][n] &&
                         literal[e][1][n] > literal[e][2][n];
      final_err = std::max(final_err, tracked[e][2][n]);
      literal_final = std::max(literal_final, literal[e][2][n]);
    }
  }
  std::printf("  info: three largest-modulus bands (incl. the uncontrolled lambda_0): "
              "monotone %s, worst error %.4f at h = 0.02\n",
              literal_monotone ? "yes" : "no", literal_final);
  return {monotone && final_err <= 0.02,
          std::string("target bands strictly improve: ") + (monotone ? "yes" : "no") +
              Fmt("; worst error %.4f at h = 0.02 (eta in {0, pi/2, pi})", final_err)};
}

Outcome EndToEnd()
{
  RunConfig config;
  config.targets = kTargets;
  config.epsilon = 0.02;
  const RunResult r = RunPrescribedSpectrum(config);
  const double bound = r.profile.SupNorm();
  for (const auto &it : r.iterations)
  {
    audit.Record(it.max_hermiticity_residual, it.max_spectral_radius, bound);
  }
  double worst = 0.0;
  bool all_hit = true;
  for (const auto &t : r.spectrum_report.target_hits)
  {
    worst = std::max(worst, t.distance);
    all_hit = all_hit && t.distance <= 0.02;
  }
  const double delta = SpectralGap(r.disc_spectrum, r.N) / 4.0;
  const bool pass = r.pass && all_hit && r.delta == delta && r.spectrum_report.delta_achieved >= delta;
  return {pass, Fmt("h = %.4g, worst target distance %.4f, separation %.4f >= delta %.4f",
                    r.chosen_h, worst, r.spectrum_report.delta_achieved, delta)};
}

Outcome HermiticityAndBound()
{
  // Also the transplanted Galerkin matrices, whose symbols are bounded by 1.
  const QuadratureRule disc = BuildDiscQuadrature(1.0, 40, 80);
  const SymbolFn a = [](Complex z) { return std::pow(1.0 - std::norm(z), 2); };
  audit.Record(UnitDiscGalerkin(TransplantSymbol(a, ConformalPair::Moebius(0.3)), 20, disc), 1.0);
  const bool pass = audit.matrices > 0 && audit.hermiticity <= 1e-12 && audit.radius_excess <= 1e-8;
  return {pass, Fmt("max Hermiticity residual %.2e, max (radius - bound) %.3g over %g matrix sets",
                    audit.hermiticity, audit.radius_excess, audit.matrices)};
}

Outcome ConformalIsometry()
{
  const QuadratureRule disc = BuildDiscQuadrature(1.0, 40, 80);
  auto poly = [](int k) -> ComplexMap
  {
    return [k](Complex z)
    {
      Complex s = 0.0, p = 1.0;
      for (int j = 0; j <= k; j++)
      {
        s += Complex(1.0, j) / (j + 1.0) * p;
        p *= z;
      }
      return s;
    };
  };
  double moebius = 0.0, exact = 0.0;
  for (int k = 0; k < 10; k++)
  {
    moebius = std::max(moebius, IsometryDefect(ConformalPair::Moebius(0.3), poly(k), disc, disc));
    exact = std::max(exact, IsometryDefect(ConformalPair::Identity(), poly(k), disc, disc));
    exact = std::max(exact, IsometryDefect(ConformalPair::Rotation(0.7), poly(k), disc, disc));
  }
  return {moebius <= 1e-8 && exact <= 1e-12,
          Fmt("Moebius(0.3) defect %.2e; identity/rotation defect %.2e", moebius, exact)};
}

Outcome AlmostEigenvalues()
{
  std::mt19937_64 rng(99);
  std::normal_distribution<double> normal;
  std::uniform_int_distribution<int> size(1, 40);
  int violations = 0;
  double min_slack = INFINITY;
  for (int t = 0; t < 100; t++)
  {
    const int n = size(rng);
    Eigen::MatrixXcd A(n, n);
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; i++)
    {
      for (int j = 0; j < n; j++)
      {
        const double re = normal(rng);
        A(i, j) = Complex(re, normal(rng));
      }
      const double re = normal(rng);
      v(i) = Complex(re, normal(rng));
    }
    A = (0.5 * (A + A.adjoint())).eval();
    v.normalize();
    const double mu = 3.0 * normal(rng);
    const double residual = (A * v - mu * v).norm() / v.norm();
    const double dist = AlmostEigenCheck(A, v, mu);
    violations += dist > residual;
    min_slack = std::min(min_slack, residual - dist);
  }
  return {violations == 0,
          Fmt("%g violations in 100 trials; min (residual - distance) %.3e", violations, min_slack)};
}

}  // namespace

int main()
{
  struct Criterion
  {
    int id;
    const char *name;
    double budget_s;
    std::function<Outcome()> run;
  };
  // Criterion 8 audits matrices from the runs before it, so order matters.
  const std::vector<Criterion> criteria{
      {1, "identity-symbol oracle", 1.0, IdentitySymbol},
      {2, "quadrature exactness", 1.0, QuadratureExactness},
      {3, "synthesis round trip", 5.0, SynthesisRoundTrip},
      {4, "Floquet unitarity and round trip", 5.0, FloquetUnitarity},
      {5, "projector Hoelder bound", 60.0, ProjectorHolder},
      {6, "band convergence", 300.0, BandConvergence},
      {7, "end-to-end prescribed spectrum", 600.0, EndToEnd},
      {8, "Hermiticity and norm bound", INFINITY, HermiticityAndBound},
      {9, "conformal isometry", INFINITY, ConformalIsometry},
      {10, "almost-eigenvalue soundness", INFINITY, AlmostEigenvalues},
  };

  int failures = 0;
  for (const auto &c : criteria)
  {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try
    {
      out = c.run();
    }
    catch (const std::exception &e)
    {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.budget_s;
    const bool pass = out.pass && in_time;
    failures += !pass;
    std::printf("%s [%d] %s: %s; %.2f s%s\n", pass ? "PASS" : "FAIL", c.id, c.name,
                out.detail.c_str(), secs, in_time ? "" : " (over time budget)");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
