#pragma once

#include <span>
#include <vector>

#include "adhesion/grid.hpp"

namespace adhesion {

/// Discretization of c(x) I - kappa * Laplacian with homogeneous Dirichlet
/// conditions, on the interior nodes of a SpaceGrid.
struct TridiagonalOperator {
  std::vector<double> lower;  // lower[i] couples row i to i-1; lower[0] unused
  std::vector<double> main;
  std::vector<double> upper;  // upper[i] couples row i to i+1; upper[n-1] unused
  Field c;
  double kappa = 0.0;
  double dx = 0.0;

  int size() const { return static_cast<int>(main.size()); }
};

/// Throws DegenerateOperator when c is identically zero and kappa is zero,
/// or when c has a negative entry.
TridiagonalOperator assemble(std::span<const double> c, double kappa, const SpaceGrid& grid);
TridiagonalOperator assemble(double c, double kappa, const SpaceGrid& grid);

/// Thomas algorithm. Returns interior values only.
Field solve(const TridiagonalOperator& op, std::span<const double> rhs);

/// op * z on interior nodes.
Field apply(const TridiagonalOperator& op, std::span<const double> z);

/// Discrete Laplacian (z_{i-1} - 2 z_i + z_{i+1}) / dx^2 with zero boundary values.
Field laplacian(std::span<const double> z, double dx);

/// Interior values padded with the two zero boundary values.
std::vector<double> with_boundary(std::span<const double> z);

}  // namespace adhesion
