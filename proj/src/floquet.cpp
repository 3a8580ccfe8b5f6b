// SPDX-License-Identifier: Apache-2.0

#include "bergband/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include "bergband/errors.hpp"

namespace bergband
{

using namespace std::complex_literals;

namespace
{

constexpr double TWO_PI = 2.0 * std::numbers::pi;

// E_{mj} = e^{-i eta_j m} / sqrt(2 pi), rows m = -M..M.
Eigen::MatrixXcd ForwardKernel(int M, const std::vector<double> &etas)
{
  const int C = 2 * M + 1;
  Eigen::MatrixXcd E(C, C);
  const double s = 1.0 / std::sqrt(TWO_PI);
  for (int r = 0; r < C; r++)
  {
    for (int j = 0; j < C; j++)
    {
      E(r, j) = s * std::exp(-1i * (etas[j] * (r - M)));
    }
  }
  return E;
}

}  // namespace

double FloquetField::EtaWeight() const
{
  return TWO_PI / static_cast<double>(etas.size());
}

std::vector<double> FloquetEtaGrid(int M)
{
  if (M < 0)
  {
    throw ParameterError("truncation half-width must be nonnegative");
  }
  const int C = 2 * M + 1;
  std::vector<double> etas(C);
  for (int j = 0; j < C; j++)
  {
    etas[j] = -std::numbers::pi + TWO_PI * j / C;
  }
  return etas;
}

double FieldNorm(const CellField &field, const Eigen::VectorXd &weights)
{
  return std::sqrt((weights.asDiagonal() * field.samples.cwiseAbs2()).sum());
}

double FieldNorm(const FloquetField &field, const Eigen::VectorXd &weights)
{
  return std::sqrt(field.EtaWeight() * (weights.asDiagonal() * field.samples.cwiseAbs2()).sum());
}

Complex FieldInner(const CellField &a, const CellField &b, const Eigen::VectorXd &weights)
{
  if (a.samples.rows() != b.samples.rows() || a.samples.cols() != b.samples.cols())
  {
    throw ParameterError("fields have different shapes");
  }
  return (b.samples.adjoint() * (weights.asDiagonal() * a.samples)).trace();
}

FloquetField FloquetForward(const CellField &field)
{
  if (field.samples.cols() != field.cells())
  {
    throw ParameterError("cell field has the wrong number of cells");
  }
  FloquetField ff;
  ff.etas = FloquetEtaGrid(field.M);
  ff.samples = field.samples * ForwardKernel(field.M, ff.etas);
  return ff;
}

CellField FloquetInverse(const FloquetField &ff)
{
  const auto C = static_cast<int>(ff.etas.size());
  if (C % 2 != 1 || ff.samples.cols() != C)
  {
    throw ParameterError("Floquet grid and cell count do not match");
  }
  CellField field;
  field.M = (C - 1) / 2;
  if (ff.etas != FloquetEtaGrid(field.M))
  {
    throw ParameterError("Floquet field is not on the matched eta grid");
  }
  field.samples = ff.EtaWeight() * (ff.samples * ForwardKernel(field.M, ff.etas).adjoint());
  return field;
}

CellField Translate(const CellField &field, int s)
{
  CellField out{field.M, Eigen::MatrixXcd::Zero(field.samples.rows(), field.samples.cols())};
  const int C = field.cells();
  for (int c = 0; c < C; c++)
  {
    const int src = c - s;
    if (src >= 0 && src < C)
    {
      out.samples.col(c) = field.samples.col(src);
    }
  }
  return out;
}

CellField QuasimodeSynthesize(const Eigen::VectorXcd &band_eigvec, const TwistedBasis &basis,
                              double mu, int n_width, int M)
{
  if (band_eigvec.size() != basis.dim_eff())
  {
    throw ParameterError("eigenvector does not match the basis dimension");
  }
  if (n_width < 1)
  {
    throw ParameterError("indicator width parameter must be positive");
  }
  FloquetField ff;
  ff.etas = FloquetEtaGrid(M);
  const double d = ff.EtaWeight();
  const auto on_grid = std::find_if(ff.etas.begin(), ff.etas.end(),
                                    [&](double e) { return std::abs(e - mu) < 1e-12; });
  if (on_grid == ff.etas.end())
  {
    throw ParameterError("mu is not a point of the Floquet grid");
  }

  Eigen::VectorXcd g = basis.Q() * band_eigvec;
  g /= WeightedNorm(basis.weights(), g);

  // Cell averages of X^2 over [eta_j - d/2, eta_j + d/2], clipped to [-pi, pi].
  const double half = 0.5 / n_width;
  const double lo = std::max(mu - half, -std::numbers::pi);
  const double hi = std::min(mu + half, std::numbers::pi);
  ff.samples = Eigen::MatrixXcd::Zero(g.size(), static_cast<Eigen::Index>(ff.etas.size()));
  for (std::size_t j = 0; j < ff.etas.size(); j++)
  {
    const double a = std::max(lo, ff.etas[j] - 0.5 * d);
    const double b = std::min(hi, ff.etas[j] + 0.5 * d);
    if (b > a)
    {
      ff.samples.col(j) = std::sqrt(n_width * (b - a) / d) * g;
    }
  }
  return FloquetInverse(ff);
}

}  // namespace bergband
