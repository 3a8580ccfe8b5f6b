// SPDX-License-Identifier: Apache-2.0

#ifndef BERGBAND_QUASI_BERGMAN_HPP
#define BERGBAND_QUASI_BERGMAN_HPP

#include <memory>
#include <vector>
#include <Eigen/Core>
#include "bergband/geometry.hpp"

namespace bergband
{

// e^{i (eta + 2 pi k) z}; satisfies f(1/2 + iy) = e^{i eta} f(-1/2 + iy).
Complex RawMode(double eta, int k, Complex z);

//
// Orthonormal basis, in the quadrature-weighted inner product, of the span of the
// twisted Laurent modes RawMode(eta, k), |k| <= K_modes. Columns are generated by
// repeated multiplication with w = e^{2 pi i z} (and w^{-1}) followed by two passes of
// Gram-Schmidt, so the recurrence can be replayed at points off the quadrature.
//
class TwistedBasis
{
public:
  TwistedBasis(const CellGeometry &cell, double eta, int K_modes,
               std::shared_ptr<const QuadratureRule> quad, double cutoff = 1e-12);

  double eta() const { return eta_; }
  int K_modes() const { return K_modes_; }
  int dim_eff() const { return static_cast<int>(Q_.cols()); }
  double cutoff() const { return cutoff_; }
  const CellGeometry &cell() const { return cell_; }
  const QuadratureRule &quad() const { return *quad_; }
  const std::shared_ptr<const QuadratureRule> &quad_ptr() const { return quad_; }

  // Basis values at the quadrature nodes, one column per basis function.
  const Eigen::MatrixXcd &Q() const { return Q_; }
  const Eigen::VectorXd &weights() const { return w_; }

  // Values of every basis function at an arbitrary point.
  Eigen::VectorXcd Evaluate(Complex z) const;

  // max |Q^H W Q - I|.
  double GramResidual() const;

private:
  struct Step
  {
    int parent;
    int power;  // +1 multiplies by w, -1 by 1/w
    Eigen::VectorXcd coeffs;
    double norm;
  };

  CellGeometry cell_;
  double eta_;
  int K_modes_;
  double cutoff_;
  std::shared_ptr<const QuadratureRule> quad_;
  Eigen::VectorXd w_;
  Eigen::MatrixXcd Q_;
  double norm0_ = 1.0;
  std::vector<Step> steps_;
};

// Throws DegenerateBasisError when nothing survives the cutoff.
TwistedBasis BuildBasis(const CellGeometry &cell, double eta, int K_modes,
                        std::shared_ptr<const QuadratureRule> quad, double cutoff = 1e-12);

// c = Q^H W f; the discrete projection of f is Q c.
Eigen::VectorXcd Project(const TwistedBasis &basis, const Eigen::VectorXcd &f_samples);

// ||f||_W for samples on the basis quadrature.
double WeightedNorm(const Eigen::VectorXd &weights, const Eigen::VectorXcd &f);

// Pointwise multiplication by e^{i (mu - eta) z}.
Eigen::VectorXcd Twist(double eta, double mu, const Eigen::VectorXcd &f_samples,
                       const std::vector<Complex> &nodes);

// Discrete operator norm of I - J_{eta,mu} on the weighted node space, which for a
// multiplication operator is the largest |1 - e^{i (mu - eta) z}| over the nodes.
double TwistDefectNorm(double eta, double mu, const std::vector<Complex> &nodes);

// Spectral norm of P_a - P_b as operators on the weighted node space.
double ProjectorDistance(const TwistedBasis &a, const TwistedBasis &b);

}  // namespace bergband

#endif  // BERGBAND_QUASI_BERGMAN_HPP
