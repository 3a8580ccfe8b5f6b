// SPDX-License-Identifier: Apache-2.0

#ifndef BERGBAND_FLOQUET_HPP
#define BERGBAND_FLOQUET_HPP

#include <vector>
#include <Eigen/Core>
#include "bergband/geometry.hpp"
#include "bergband/quasi_bergman.hpp"

namespace bergband
{

// Field on the truncated periodic domain: column m + M holds f(z + m) at the shared cell
// nodes, m = -M..M.
struct CellField
{
  int M = 0;
  Eigen::MatrixXcd samples;

  int cells() const { return 2 * M + 1; }
};

// Floquet transform on the (2M+1)-point grid eta_j = -pi + 2 pi j / (2M+1). Each eta
// node carries the measure weight 2 pi / (2M+1), which makes the discrete transform
// exactly unitary.
struct FloquetField
{
  std::vector<double> etas;
  Eigen::MatrixXcd samples;

  double EtaWeight() const;
};

std::vector<double> FloquetEtaGrid(int M);

// Norms on the truncated domain and on L^2([-pi, pi]; L^2(cell)), with node weights w.
double FieldNorm(const CellField &field, const Eigen::VectorXd &weights);
double FieldNorm(const FloquetField &field, const Eigen::VectorXd &weights);
Complex FieldInner(const CellField &a, const CellField &b, const Eigen::VectorXd &weights);

// F f(z, eta_j) = (2 pi)^{-1/2} sum_m e^{-i eta_j m} f(z + m).
FloquetField FloquetForward(const CellField &field);

// f(z + m) = (2 pi)^{-1/2} sum_j (2 pi / (2M+1)) e^{i eta_j m} F f(z, eta_j).
CellField FloquetInverse(const FloquetField &ff);

// Shift by s cells, g(z + m) = f(z + m - s), with zero fill at the truncation edge.
CellField Translate(const CellField &field, int s);

// Inverse transform of g(z) X(eta), where g = Q c is the basis function with coefficients
// band_eigvec (normalized) and X is the cell average on the eta grid of sqrt(n_width)
// times the indicator of |eta - mu| <= 1/(2 n_width). mu must be a grid point.
CellField QuasimodeSynthesize(const Eigen::VectorXcd &band_eigvec, const TwistedBasis &basis,
                              double mu, int n_width, int M);

}  // namespace bergband

#endif  // BERGBAND_FLOQUET_HPP
