// SPDX-License-Identifier: Apache-2.0

#ifndef BERGBAND_CONFORMAL_HPP
#define BERGBAND_CONFORMAL_HPP

#include <functional>
#include <string>
#include <vector>
#include <Eigen/Core>
#include "bergband/geometry.hpp"

namespace bergband
{

using ComplexMap = std::function<Complex(Complex)>;
using SymbolFn = std::function<double(Complex)>;

//
// Closed-form conformal pair: psi maps the unit disc (or, for rect_exp, a subset of it)
// onto Omega and phi is its inverse.
//
struct ConformalPair
{
  ComplexMap psi, dpsi, phi, dphi;
  std::string tag;
  // True when Omega is the unit disc itself.
  bool disc_automorphism = false;

  static ConformalPair Identity();
  static ConformalPair Rotation(double theta);
  // psi(w) = (w + alpha) / (1 + conj(alpha) w), |alpha| < 1.
  static ConformalPair Moebius(Complex alpha);
  // phi(z) = e^{2 pi i z - 2 pi} from the centered unit square into the disc.
  static ConformalPair RectExp();

  // Same maps with the roles of psi and phi exchanged.
  ConformalPair Inverse() const;
};

// (L f)(w) = psi'(w) f(psi(w)) for f sampled at psi(w_i). Throws NumericalError when
// |psi'| < 1e-14 at a node.
Eigen::VectorXcd Transplant(const ConformalPair &pair, const std::vector<Complex> &disc_nodes,
                            const Eigen::VectorXcd &f_on_image);
Eigen::VectorXcd Transplant(const ConformalPair &pair, const std::vector<Complex> &disc_nodes,
                            const ComplexMap &f);

// |‖L f‖ / ‖f‖ - 1| with ‖L f‖ integrated by domain_quad (the domain of psi) and ‖f‖
// by image_quad (its image).
double IsometryDefect(const ConformalPair &pair, const ComplexMap &f,
                      const QuadratureRule &domain_quad, const QuadratureRule &image_quad);

// a o psi.
SymbolFn TransplantSymbol(const SymbolFn &a, const ConformalPair &pair);

// Galerkin matrix of T_a on the unit disc in the normalized monomial basis.
Eigen::MatrixXcd UnitDiscGalerkin(const SymbolFn &a, int N, const QuadratureRule &quad);

// Hausdorff distance between the spectra of the N x N Galerkin matrices of T_a on Omega
// and of T_{a o psi} on the unit disc. Only disc automorphisms are supported.
double SpectralEquivalenceCheck(const SymbolFn &a, const ConformalPair &pair, int N,
                                const QuadratureRule &quad);

}  // namespace bergband

#endif  // BERGBAND_CONFORMAL_HPP
