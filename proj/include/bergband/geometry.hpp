// SPDX-License-Identifier: Apache-2.0

#ifndef BERGBAND_GEOMETRY_HPP
#define BERGBAND_GEOMETRY_HPP

#include <complex>
#include <utility>
#include <vector>

namespace bergband
{

using Complex = std::complex<double>;

//
// Periodic cell made of the disc |z| < R0 and the horizontal strip |Re z| < 1/2,
// |Im z| < h. Cell edges sit at Re z = -1/2 and Re z = 1/2.
//
class CellGeometry
{
public:
  // Throws ParameterError unless 1/4 < R0 < 1/2 and 0 < h <= 1/10.
  CellGeometry(double R0, double h);

  double R0() const { return R0_; }
  double h() const { return h_; }

  // Exact area of the union, pi R0^2 + 2h - |disc and strip overlap|.
  double Area() const;

private:
  double R0_, h_;
};

bool Contains(const CellGeometry &cell, Complex z);

// Area quadrature: integral of f over the region ~ sum_i weights[i] * f(nodes[i]).
struct QuadratureRule
{
  std::vector<Complex> nodes;
  std::vector<double> weights;

  // Number of leading nodes that belong to the disc part (all of them for a disc rule).
  std::size_t disc_count = 0;
  // Orders used to build the polar part; zero when the rule has none.
  int radial_order = 0;
  int angular_order = 0;

  std::size_t size() const { return nodes.size(); }
  double TotalWeight() const;
};

// n-point Gauss-Legendre rule on [a, b].
std::pair<std::vector<double>, std::vector<double>> GaussLegendre(int n, double a, double b);

// Polar product rule on |z| < R: Gauss-Legendre in r on each radial panel (split at the
// optional interior breakpoints) times the n_t-point trapezoidal rule in angle. Exact
// for r^p e^{ik theta} with p <= 2 n_r - 1 and |k| < n_t.
QuadratureRule BuildDiscQuadrature(double R, int n_r, int n_t,
                                   const std::vector<double> &radial_breaks = {});

// Disc rule plus tensor Gauss-Legendre rules on the two strip pieces outside the disc,
// each resolved along x for every Gauss line in y. The disc part is split radially at
// R0/2, where lifted profile symbols are cut off.
QuadratureRule BuildCellQuadrature(const CellGeometry &cell, int n_r, int n_t, int n_strip);

// Tensor Gauss-Legendre rule on [x0, x1] x [y0, y1].
QuadratureRule BuildRectangleQuadrature(double x0, double x1, double y0, double y1, int nx,
                                        int ny);

// Rule on r0 < |z| < r1, Gauss-Legendre in log r and in the angle over (-pi, pi), for
// wide annuli and integrands with a jump across the negative real axis.
QuadratureRule BuildAnnulusQuadrature(double r0, double r1, int n_r, int n_t);

struct QuadratureOrders
{
  int n_r = 24;
  int n_t = 48;
  int n_strip = 16;
};

}  // namespace bergband

#endif  // BERGBAND_GEOMETRY_HPP
