#include "adhesion/elliptic1d.hpp"

#include <cmath>

#include "adhesion/errors.hpp"

namespace adhesion {

TridiagonalOperator assemble(std::span<const double> c, double kappa, const SpaceGrid& grid) {
  const auto n = c.size();
  if (n != static_cast<std::size_t>(grid.nx)) throw GridMismatch("coefficient size differs from the space grid");
  if (!(kappa >= 0.0)) throw DegenerateOperator("negative diffusion weight");
  bool any_positive = kappa > 0.0;
  for (double v : c) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw DegenerateOperator("reaction coefficient negative or non-finite");
    if (v > 0.0) any_positive = true;
  }
  if (!any_positive) throw DegenerateOperator("c == 0 and kappa == 0");

  TridiagonalOperator op;
  op.c.assign(c.begin(), c.end());
  op.kappa = kappa;
  op.dx = grid.dx;
  const double off = kappa / (grid.dx * grid.dx);
  op.main.resize(n);
  op.lower.assign(n, -off);
  op.upper.assign(n, -off);
  for (std::size_t i = 0; i < n; ++i) op.main[i] = c[i] + 2.0 * off;
  op.lower.front() = 0.0;
  op.upper.back() = 0.0;
  return op;
}

TridiagonalOperator assemble(double c, double kappa, const SpaceGrid& grid) {
  const Field cf(static_cast<std::size_t>(grid.nx), c);
  return assemble(cf, kappa, grid);
}

Field solve(const TridiagonalOperator& op, std::span<const double> rhs) {
  const auto n = op.main.size();
  if (rhs.size() != n) throw GridMismatch("right-hand side size differs from the operator");
  std::vector<double> cp(n);
  Field x(n);
  double denom = op.main[0];
  if (denom == 0.0) throw DegenerateOperator("zero pivot");
  cp[0] = op.upper[0] / denom;
  x[0] = rhs[0] / denom;
  for (std::size_t i = 1; i < n; ++i) {
    denom = op.main[i] - op.lower[i] * cp[i - 1];
    if (denom == 0.0) throw DegenerateOperator("zero pivot");
    cp[i] = op.upper[i] / denom;
    x[i] = (rhs[i] - op.lower[i] * x[i - 1]) / denom;
  }
  for (std::size_t i = n - 1; i-- > 0;) x[i] -= cp[i] * x[i + 1];
  return x;
}

Field apply(const TridiagonalOperator& op, std::span<const double> z) {
  const auto n = op.main.size();
  Field out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = op.main[i] * z[i];
    if (i > 0) s += op.lower[i] * z[i - 1];
    if (i + 1 < n) s += op.upper[i] * z[i + 1];
    out[i] = s;
  }
  return out;
}

Field laplacian(std::span<const double> z, double dx) {
  const auto n = z.size();
  Field out(n);
  const double inv = 1.0 / (dx * dx);
  for (std::size_t i = 0; i < n; ++i) {
    const double left = i > 0 ? z[i - 1] : 0.0;
    const double right = i + 1 < n ? z[i + 1] : 0.0;
    out[i] = (left - 2.0 * z[i] + right) * inv;
  }
  return out;
}

std::vector<double> with_boundary(std::span<const double> z) {
  std::vector<double> out(z.size() + 2, 0.0);
  std::copy(z.begin(), z.end(), out.begin() + 1);
  return out;
}

}  // namespace adhesion
