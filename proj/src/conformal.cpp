// SPDX-License-Identifier: Apache-2.0

#include "bergband/conformal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <Eigen/Eigenvalues>
#include "bergband/errors.hpp"

namespace bergband
{

using namespace std::complex_literals;

ConformalPair ConformalPair::Identity()
{
  return {[](Complex w) { return w; }, [](Complex) { return Complex(1.0); },
          [](Complex z) { return z; }, [](Complex) { return Complex(1.0); },
          "identity", true};
}

ConformalPair ConformalPair::Rotation(double theta)
{
  const Complex e = std::polar(1.0, theta);
  return {[e](Complex w) { return e * w; }, [e](Complex) { return e; },
          [e](Complex z) { return std::conj(e) * z; }, [e](Complex) { return std::conj(e); },
          "rotation", true};
}

ConformalPair ConformalPair::Moebius(Complex alpha)
{
  if (!(std::abs(alpha) < 1.0))
  {
    throw ParameterError("Moebius parameter must lie in the unit disc");
  }
  const Complex ca = std::conj(alpha);
  const double s = 1.0 - std::norm(alpha);
  return {[alpha, ca](Complex w) { return (w + alpha) / (1.0 + ca * w); },
          [ca, s](Complex w) { return s / ((1.0 + ca * w) * (1.0 + ca * w)); },
          [alpha, ca](Complex z) { return (z - alpha) / (1.0 - ca * z); },
          [ca, s](Complex z) { return s / ((1.0 - ca * z) * (1.0 - ca * z)); },
          "moebius", true};
}

ConformalPair ConformalPair::RectExp()
{
  static constexpr double two_pi = 2.0 * std::numbers::pi;
  return {[](Complex w) { return (std::log(w) + two_pi) / (1i * two_pi); },
          [](Complex w) { return 1.0 / (1i * two_pi * w); },
          [](Complex z) { return std::exp(1i * two_pi * z - two_pi); },
          [](Complex z) { return 1i * two_pi * std::exp(1i * two_pi * z - two_pi); },
          "rect_exp", false};
}

ConformalPair ConformalPair::Inverse() const
{
  return {phi, dphi, psi, dpsi, tag + "_inverse", disc_automorphism};
}

Eigen::VectorXcd Transplant(const ConformalPair &pair, const std::vector<Complex> &disc_nodes,
                            const Eigen::VectorXcd &f_on_image)
{
  if (static_cast<std::size_t>(f_on_image.size()) != disc_nodes.size())
  {
    throw ParameterError("samples do not match the node list");
  }
  Eigen::VectorXcd out(f_on_image.size());
  for (std::size_t i = 0; i < disc_nodes.size(); i++)
  {
    const Complex d = pair.dpsi(disc_nodes[i]);
    if (std::abs(d) < 1e-14)
    {
      throw NumericalError("conformal derivative vanishes at a node");
    }
    out(i) = d * f_on_image(i);
  }
  return out;
}

Eigen::VectorXcd Transplant(const ConformalPair &pair, const std::vector<Complex> &disc_nodes,
                            const ComplexMap &f)
{
  Eigen::VectorXcd samples(static_cast<Eigen::Index>(disc_nodes.size()));
  for (std::size_t i = 0; i < disc_nodes.size(); i++)
  {
    samples(i) = f(pair.psi(disc_nodes[i]));
  }
  return Transplant(pair, disc_nodes, samples);
}

double IsometryDefect(const ConformalPair &pair, const ComplexMap &f,
                      const QuadratureRule &domain_quad, const QuadratureRule &image_quad)
{
  const Eigen::VectorXcd Lf = Transplant(pair, domain_quad.nodes, f);
  double lhs = 0.0, rhs = 0.0;
  for (Eigen::Index i = 0; i < Lf.size(); i++)
  {
    lhs += domain_quad.weights[i] * std::norm(Lf(i));
  }
  for (std::size_t i = 0; i < image_quad.nodes.size(); i++)
  {
    rhs += image_quad.weights[i] * std::norm(f(image_quad.nodes[i]));
  }
  if (!(rhs > 0.0))
  {
    throw ParameterError("isometry check needs a nonzero test function");
  }
  return std::abs(std::sqrt(lhs / rhs) - 1.0);
}

SymbolFn TransplantSymbol(const SymbolFn &a, const ConformalPair &pair)
{
  return [a, psi = pair.psi](Complex w) { return a(psi(w)); };
}

Eigen::MatrixXcd UnitDiscGalerkin(const SymbolFn &a, int N, const QuadratureRule &quad)
{
  if (N < 1 || quad.radial_order == 0 || N > quad.radial_order - 2 || N >= quad.angular_order)
  {
    throw ParameterError("quadrature too coarse for a Galerkin matrix of size " +
                         std::to_string(N));
  }
  const auto n = static_cast<Eigen::Index>(quad.size());
  Eigen::MatrixXcd E(n, N);
  Eigen::VectorXd wa(n);
  for (Eigen::Index i = 0; i < n; i++)
  {
    const Complex z = quad.nodes[i];
    wa(i) = quad.weights[i] * a(z);
    Complex zn = 1.0;
    for (int k = 0; k < N; k++)
    {
      E(i, k) = zn * std::sqrt((k + 1) / std::numbers::pi);
      zn *= z;
    }
  }
  return E.adjoint() * (wa.asDiagonal() * E);
}

double SpectralEquivalenceCheck(const SymbolFn &a, const ConformalPair &pair, int N,
                                const QuadratureRule &quad)
{
  if (!pair.disc_automorphism)
  {
    throw ParameterError("spectral equivalence check needs a disc automorphism");
  }
  auto spectrum = [&](const SymbolFn &symbol)
  {
    const Eigen::MatrixXcd A = UnitDiscGalerkin(symbol, N, quad);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(0.5 * (A + A.adjoint()),
                                                        Eigen::EigenvaluesOnly);
    return Eigen::VectorXd(eig.eigenvalues());
  };
  const Eigen::VectorXd s1 = spectrum(a);
  const Eigen::VectorXd s2 = spectrum(TransplantSymbol(a, pair));
  auto directed = [](const Eigen::VectorXd &x, const Eigen::VectorXd &y)
  {
    double d = 0.0;
    for (Eigen::Index i = 0; i < x.size(); i++)
    {
      d = std::max(d, (y.array() - x(i)).abs().minCoeff());
    }
    return d;
  };
  return std::max(directed(s1, s2), directed(s2, s1));
}

}  // namespace bergband
