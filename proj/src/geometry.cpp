// SPDX-License-Identifier: Apache-2.0

#include "bergband/geometry.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include "bergband/errors.hpp"

namespace bergband
{

CellGeometry::CellGeometry(double R0, double h) : R0_(R0), h_(h)
{
  if (!(R0 > 0.25 && R0 < 0.5))
  {
    throw ParameterError("cell radius R0 must lie in (1/4, 1/2), got " +
                         std::to_string(R0));
  }
  if (!(h > 0.0 && h <= 0.1))
  {
    throw ParameterError("ligament half-width h must lie in (0, 1/10], got " +
                         std::to_string(h));
  }
}

double CellGeometry::Area() const
{
  // Overlap of the disc with the strip |Im z| < h.
  const double lens = 2.0 * (h_ * std::sqrt(R0_ * R0_ - h_ * h_) + R0_ * R0_ * std::asin(h_ / R0_));
  return std::numbers::pi * R0_ * R0_ + 2.0 * h_ - lens;
}

bool Contains(const CellGeometry &cell, Complex z)
{
  if (std::abs(z) < cell.R0())
  {
    return true;
  }
  return std::abs(z.real()) < 0.5 && std::abs(z.imag()) < cell.h();
}

double QuadratureRule::TotalWeight() const
{
  return std::accumulate(weights.begin(), weights.end(), 0.0);
}

std::pair<std::vector<double>, std::vector<double>> GaussLegendre(int n, double a, double b)
{
  if (n < 1)
  {
    throw ParameterError("Gauss-Legendre order must be positive");
  }
  // P_n(t) and P_n'(t) by the three-term recurrence.
  auto legendre = [n](double t)
  {
    double p0 = 1.0, p1 = t;
    for (int k = 2; k <= n; k++)
    {
      const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    return std::pair{p1, n * (t * p1 - p0) / (t * t - 1.0)};
  };

  std::vector<double> x(n), w(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < (n + 1) / 2; i++)
  {
    double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; it++)
    {
      const auto [p, dp] = legendre(t);
      const double dt = p / dp;
      t -= dt;
      if (std::abs(dt) < 1e-16)
      {
        break;
      }
    }
    const double dp = legendre(t).second;
    x[i] = mid - half * t;
    x[n - 1 - i] = mid + half * t;
    w[i] = w[n - 1 - i] = half * 2.0 / ((1.0 - t * t) * dp * dp);
  }
  if (n % 2 == 1)
  {
    x[n / 2] = mid;
  }
  return {x, w};
}

QuadratureRule BuildDiscQuadrature(double R, int n_r, int n_t,
                                   const std::vector<double> &radial_breaks)
{
  if (!(R > 0.0))
  {
    throw ParameterError("disc radius must be positive");
  }
  if (n_r < 1 || n_t < 1)
  {
    throw ParameterError("disc quadrature orders must be positive");
  }
  std::vector<double> edges{0.0};
  for (double r : radial_breaks)
  {
    if (!(r > edges.back() && r < R))
    {
      throw ParameterError("radial breakpoints must increase strictly inside (0, R)");
    }
    edges.push_back(r);
  }
  edges.push_back(R);

  QuadratureRule rule;
  rule.radial_order = n_r;
  rule.angular_order = n_t;
  const double dtheta = 2.0 * std::numbers::pi / n_t;
  for (std::size_t p = 0; p + 1 < edges.size(); p++)
  {
    const auto [r, wr] = GaussLegendre(n_r, edges[p], edges[p + 1]);
    for (int i = 0; i < n_r; i++)
    {
      for (int j = 0; j < n_t; j++)
      {
        rule.nodes.push_back(std::polar(r[i], j * dtheta));
        rule.weights.push_back(wr[i] * r[i] * dtheta);
      }
    }
  }
  rule.disc_count = rule.nodes.size();
  return rule;
}

QuadratureRule BuildCellQuadrature(const CellGeometry &cell, int n_r, int n_t, int n_strip)
{
  if (n_strip < 1)
  {
    throw ParameterError("strip quadrature order must be positive");
  }
  const double R0 = cell.R0(), h = cell.h();
  QuadratureRule rule = BuildDiscQuadrature(R0, n_r, n_t, {0.5 * R0});

  // Pieces {z in S_h : |Re z| > sqrt(R0^2 - (Im z)^2)}, one Gauss line in x per y node.
  const auto [y, wy] = GaussLegendre(n_strip, -h, h);
  for (int i = 0; i < n_strip; i++)
  {
    const double x0 = std::sqrt(R0 * R0 - y[i] * y[i]);
    const auto [x, wx] = GaussLegendre(n_strip, x0, 0.5);
    for (int j = 0; j < n_strip; j++)
    {
      rule.nodes.emplace_back(x[j], y[i]);
      rule.weights.push_back(wx[j] * wy[i]);
      rule.nodes.emplace_back(-x[j], y[i]);
      rule.weights.push_back(wx[j] * wy[i]);
    }
  }
  return rule;
}

QuadratureRule BuildRectangleQuadrature(double x0, double x1, double y0, double y1, int nx,
                                        int ny)
{
  if (!(x1 > x0 && y1 > y0))
  {
    throw ParameterError("rectangle must have positive side lengths");
  }
  const auto [x, wx] = GaussLegendre(nx, x0, x1);
  const auto [y, wy] = GaussLegendre(ny, y0, y1);
  QuadratureRule rule;
  for (int i = 0; i < nx; i++)
  {
    for (int j = 0; j < ny; j++)
    {
      rule.nodes.emplace_back(x[i], y[j]);
      rule.weights.push_back(wx[i] * wy[j]);
    }
  }
  rule.disc_count = 0;
  return rule;
}

QuadratureRule BuildAnnulusQuadrature(double r0, double r1, int n_r, int n_t)
{
  if (!(r0 > 0.0 && r1 > r0))
  {
    throw ParameterError("annulus radii must satisfy 0 < r0 < r1");
  }
  // Nodes in s = log r, where dA = r^2 ds dtheta.
  const auto [s, ws] = GaussLegendre(n_r, std::log(r0), std::log(r1));
  const auto [t, wt] = GaussLegendre(n_t, -std::numbers::pi, std::numbers::pi);
  QuadratureRule rule;
  rule.radial_order = n_r;
  rule.angular_order = n_t;
  for (int i = 0; i < n_r; i++)
  {
    const double r = std::exp(s[i]);
    for (int j = 0; j < n_t; j++)
    {
      rule.nodes.push_back(std::polar(r, t[j]));
      rule.weights.push_back(ws[i] * r * r * wt[j]);
    }
  }
  rule.disc_count = rule.nodes.size();
  return rule;
}

}  // namespace bergband
