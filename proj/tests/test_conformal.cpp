// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>
#include <catch_amalgamated.hpp>
#include "bergband/conformal.hpp"
#include "bergband/errors.hpp"

using namespace bergband;
using Catch::Matchers::WithinAbs;

namespace
{

ComplexMap Polynomial(int k)
{
  return [k](Complex z)
  {
    Complex s = 0.0, p = 1.0;
    for (int j = 0; j <= k; j++)
    {
      s += Complex(1.0, -0.5 * j) / (j + 1.0) * p;
      p *= z;
    }
    return s;
  };
}

double Weight(Complex z) { return std::pow(1.0 - std::norm(z), 2); }

}  // namespace

TEST_CASE("Conformal pairs invert each other", "[conformal]")
{
  const std::vector<Complex> pts{{0.1, 0.2}, {-0.5, 0.3}, {0.0, -0.7}};
  for (const ConformalPair &pair :
       {ConformalPair::Identity(), ConformalPair::Rotation(0.8), ConformalPair::Moebius({0.3, 0.1})})
  {
    for (const Complex &w : pts)
    {
      CHECK(std::abs(pair.phi(pair.psi(w)) - w) <= 1e-14);
      // psi' against a centered difference.
      const double e = 1e-6;
      const Complex fd = (pair.psi(w + e) - pair.psi(w - e)) / (2.0 * e);
      CHECK(std::abs(fd - pair.dpsi(w)) <= 1e-8);
    }
  }
  const ConformalPair r = ConformalPair::RectExp();
  const Complex z(0.2, -0.3);
  CHECK(std::abs(r.psi(r.phi(z)) - z) <= 1e-14);
  CHECK_FALSE(r.disc_automorphism);
  const ConformalPair inv = ConformalPair::Moebius(0.3).Inverse();
  CHECK(std::abs(inv.psi(0.3) - 0.0) <= 1e-15);
  CHECK_THROWS_AS(ConformalPair::Moebius(1.0), ParameterError);
}

TEST_CASE("Transplantation is an isometry", "[conformal]")
{
  const QuadratureRule disc = BuildDiscQuadrature(1.0, 40, 80);
  for (int k = 0; k < 10; k++)
  {
    CHECK(IsometryDefect(ConformalPair::Identity(), Polynomial(k), disc, disc) <= 1e-12);
    CHECK(IsometryDefect(ConformalPair::Rotation(1.1), Polynomial(k), disc, disc) <= 1e-12);
    CHECK(IsometryDefect(ConformalPair::Moebius(0.3), Polynomial(k), disc, disc) <= 1e-8);
    CHECK(IsometryDefect(ConformalPair::Moebius({-0.2, 0.4}), Polynomial(k), disc, disc) <= 1e-8);
  }
  const QuadratureRule ann = BuildAnnulusQuadrature(std::exp(-3.0 * std::numbers::pi),
                                                    std::exp(-std::numbers::pi), 40, 60);
  const QuadratureRule square = BuildRectangleQuadrature(-0.5, 0.5, -0.5, 0.5, 40, 40);
  for (int k = 0; k < 10; k++)
  {
    CHECK(IsometryDefect(ConformalPair::RectExp(), Polynomial(k), ann, square) <= 1e-8);
  }
  CHECK_THROWS_AS(IsometryDefect(ConformalPair::Identity(), [](Complex) { return Complex(0.0); },
                                 disc, disc),
                  ParameterError);
}

TEST_CASE("Transplant samples", "[conformal]")
{
  const ConformalPair pair = ConformalPair::Moebius(0.3);
  const std::vector<Complex> nodes{{0.1, 0.0}, {0.0, 0.5}};
  Eigen::VectorXcd f(2);
  f << 2.0, Complex(0.0, 1.0);
  const Eigen::VectorXcd Lf = Transplant(pair, nodes, f);
  CHECK(std::abs(Lf(0) - pair.dpsi(nodes[0]) * 2.0) <= 1e-15);
  CHECK_THROWS_AS(Transplant(pair, nodes, Eigen::VectorXcd(3)), ParameterError);

  const SymbolFn a = TransplantSymbol(Weight, pair);
  CHECK_THAT(a(0.1), WithinAbs(Weight(pair.psi(0.1)), 1e-15));
}

TEST_CASE("Galerkin matrix of a radial weight on the unit disc", "[conformal]")
{
  const QuadratureRule disc = BuildDiscQuadrature(1.0, 40, 80);
  const int N = 12;
  const Eigen::MatrixXcd A = UnitDiscGalerkin(Weight, N, disc);
  for (int j = 0; j < N; j++)
  {
    for (int k = 0; k < N; k++)
    {
      const double expected = j == k ? 2.0 / ((j + 2.0) * (j + 3.0)) : 0.0;
      CHECK(std::abs(A(j, k) - expected) <= 1e-13);
    }
  }
}

TEST_CASE("Spectral equivalence under disc automorphisms", "[conformal]")
{
  const QuadratureRule disc = BuildDiscQuadrature(1.0, 40, 80);
  CHECK(SpectralEquivalenceCheck(Weight, ConformalPair::Identity(), 10, disc) <= 1e-13);
  CHECK(SpectralEquivalenceCheck(Weight, ConformalPair::Rotation(0.4), 10, disc) <= 1e-13);
  // Truncations see different subspaces under a Moebius map; the discrepancy shrinks with N.
  double prev = INFINITY;
  for (int N : {4, 8, 16, 24})
  {
    const double d = SpectralEquivalenceCheck(Weight, ConformalPair::Moebius(0.3), N, disc);
    CHECK(d < prev);
    prev = d;
  }
  CHECK_THROWS_AS(SpectralEquivalenceCheck(Weight, ConformalPair::RectExp(), 4, disc),
                  ParameterError);
}
