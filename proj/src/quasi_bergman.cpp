// SPDX-License-Identifier: Apache-2.0

#include "bergband/quasi_bergman.hpp"

#include <cmath>
#include <numbers>
#include <Eigen/Dense>
#include "bergband/errors.hpp"

namespace bergband
{

using namespace std::complex_literals;

Complex RawMode(double eta, int k, Complex z)
{
  return std::exp(1i * (eta + 2.0 * std::numbers::pi * k) * z);
}

double WeightedNorm(const Eigen::VectorXd &weights, const Eigen::VectorXcd &f)
{
  return std::sqrt(weights.dot(f.cwiseAbs2()));
}

TwistedBasis::TwistedBasis(const CellGeometry &cell, double eta, int K_modes,
                           std::shared_ptr<const QuadratureRule> quad, double cutoff)
  : cell_(cell), eta_(eta), K_modes_(K_modes), cutoff_(cutoff), quad_(std::move(quad))
{
  if (!quad_ || quad_->size() == 0)
  {
    throw ParameterError("basis needs a nonempty quadrature");
  }
  if (K_modes < 0)
  {
    throw ParameterError("K_modes must be nonnegative");
  }
  const auto n = static_cast<Eigen::Index>(quad_->size());
  w_ = Eigen::Map<const Eigen::VectorXd>(quad_->weights.data(), n);
  Eigen::VectorXcd wz(n), q0(n);
  for (Eigen::Index i = 0; i < n; i++)
  {
    const Complex z = quad_->nodes[i];
    wz(i) = std::exp(2i * std::numbers::pi * z);
    q0(i) = std::exp(1i * eta * z);
  }
  norm0_ = WeightedNorm(w_, q0);
  if (!(norm0_ > 0.0))
  {
    throw DegenerateBasisError("zero-norm generating mode", eta);
  }

  std::vector<Eigen::VectorXcd> cols{q0 / norm0_};
  auto extend = [&](int parent, int power) -> bool
  {
    Eigen::VectorXcd v = (power > 0) ? Eigen::VectorXcd(cols[parent].cwiseProduct(wz))
                                     : Eigen::VectorXcd(cols[parent].cwiseQuotient(wz));
    const double raw_norm = WeightedNorm(w_, v);
    const auto m = static_cast<Eigen::Index>(cols.size());
    Eigen::VectorXcd coeffs = Eigen::VectorXcd::Zero(m);
    // Classical Gram-Schmidt, twice.
    for (int pass = 0; pass < 2; pass++)
    {
      for (Eigen::Index j = 0; j < m; j++)
      {
        const Complex c = cols[j].dot(w_.cwiseProduct(v).eval());
        coeffs(j) += c;
        v -= c * cols[j];
      }
    }
    const double norm = WeightedNorm(w_, v);
    if (!(norm > cutoff_ * raw_norm))
    {
      return false;
    }
    cols.push_back(v / norm);
    steps_.push_back({parent, power, coeffs, norm});
    return true;
  };

  int pos = 0, neg = 0;
  bool pos_alive = true, neg_alive = true;
  for (int k = 1; k <= K_modes; k++)
  {
    if (pos_alive && (pos_alive = extend(pos, +1)))
    {
      pos = static_cast<int>(cols.size()) - 1;
    }
    if (neg_alive && (neg_alive = extend(neg, -1)))
    {
      neg = static_cast<int>(cols.size()) - 1;
    }
  }

  Q_.resize(n, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); j++)
  {
    Q_.col(j) = cols[j];
  }
}

Eigen::VectorXcd TwistedBasis::Evaluate(Complex z) const
{
  Eigen::VectorXcd q(dim_eff());
  const Complex w = std::exp(2i * std::numbers::pi * z);
  q(0) = std::exp(1i * eta_ * z) / norm0_;
  for (std::size_t s = 0; s < steps_.size(); s++)
  {
    const Step &step = steps_[s];
    const auto j = static_cast<Eigen::Index>(s) + 1;
    Complex v = (step.power > 0) ? q(step.parent) * w : q(step.parent) / w;
    v -= (step.coeffs.transpose() * q.head(j))(0);
    q(j) = v / step.norm;
  }
  return q;
}

double TwistedBasis::GramResidual() const
{
  const Eigen::MatrixXcd G = Q_.adjoint() * (w_.asDiagonal() * Q_);
  return (G - Eigen::MatrixXcd::Identity(G.rows(), G.cols())).cwiseAbs().maxCoeff();
}

TwistedBasis BuildBasis(const CellGeometry &cell, double eta, int K_modes,
                        std::shared_ptr<const QuadratureRule> quad, double cutoff)
{
  TwistedBasis basis(cell, eta, K_modes, std::move(quad), cutoff);
  if (basis.dim_eff() == 0)
  {
    throw DegenerateBasisError("basis is empty after the singular-value cutoff", eta);
  }
  return basis;
}

Eigen::VectorXcd Project(const TwistedBasis &basis, const Eigen::VectorXcd &f_samples)
{
  if (f_samples.size() != basis.Q().rows())
  {
    throw ParameterError("sample vector does not match the basis quadrature");
  }
  return basis.Q().adjoint() * basis.weights().cwiseProduct(f_samples);
}

Eigen::VectorXcd Twist(double eta, double mu, const Eigen::VectorXcd &f_samples,
                       const std::vector<Complex> &nodes)
{
  if (static_cast<std::size_t>(f_samples.size()) != nodes.size())
  {
    throw ParameterError("sample vector does not match the node list");
  }
  Eigen::VectorXcd out(f_samples.size());
  for (Eigen::Index i = 0; i < out.size(); i++)
  {
    out(i) = std::exp(1i * (mu - eta) * nodes[i]) * f_samples(i);
  }
  return out;
}

double TwistDefectNorm(double eta, double mu, const std::vector<Complex> &nodes)
{
  double norm = 0.0;
  for (const Complex &z : nodes)
  {
    norm = std::max(norm, std::abs(1.0 - std::exp(1i * (mu - eta) * z)));
  }
  return norm;
}

double ProjectorDistance(const TwistedBasis &a, const TwistedBasis &b)
{
  if (a.quad_ptr() != b.quad_ptr() &&
      (a.quad().nodes != b.quad().nodes || a.quad().weights != b.quad().weights))
  {
    throw ParameterError("projector distance needs bases on the same quadrature");
  }
  // With U = W^{1/2} Q orthonormal, ||P_a - P_b|| = max(||(I - P_b) U_a||, ||(I - P_a) U_b||).
  const Eigen::VectorXd sw = a.weights().cwiseSqrt();
  const Eigen::MatrixXcd Ua = sw.asDiagonal() * a.Q();
  const Eigen::MatrixXcd Ub = sw.asDiagonal() * b.Q();
  auto leak = [](const Eigen::MatrixXcd &U, const Eigen::MatrixXcd &V)
  {
    const Eigen::MatrixXcd X = U - V * (V.adjoint() * U);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(X);
    return svd.singularValues()(0);
  };
  return std::max(leak(Ua, Ub), leak(Ub, Ua));
}

}  // namespace bergband
