#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "latineq/lattice.hpp"
#include "latineq/rational.hpp"

namespace latineq {

// Discrete calculus on Z^n with the counting measure. Integrals are finite
// sums over the support.

/// lambda * chi_A. Throws InvalidInput for lambda == 0 or empty A.
SparseFunction indicator(const LatticeSet& a, const Rational& lambda = Rational(1));

/// (d_i f)(z) = f(z + e_i) - f(z).
SparseFunction partial_difference(const SparseFunction& f, Axis i);

/// sum_z |f(z)|^k, exact.
Rational power_sum(const SparseFunction& f, unsigned long k);

/// ||f||_1 = sum_z |f(z)|, exact.
Rational l1_norm(const SparseFunction& f);

/// ||f||_p = (sum_z |f(z)|^p)^(1/p) for p > 0, in floating point.
double norm(const SparseFunction& f, const Rational& p);

/// ||d_i f||_1, exact.
Rational partial_l1(const SparseFunction& f, Axis i);

/// ||df||_1 = sum_i ||d_i f||_1, exact.
Rational diff_l1(const SparseFunction& f);

/// ||df||_p = (sum_i ||d_i f||_p^p)^(1/p).
double diff_norm(const SparseFunction& f, const Rational& p);

/// f_i(z without z_i) = max over z_i of f(z). Requires f >= 0 and dim >= 2.
SparseFunction max_projection(const SparseFunction& f, Axis i);

/// pi_i(A) = { z_i : z in A }, sorted.
std::vector<Coord> coord_projection(const LatticeSet& a, Axis i);

/// Image of A under deletion of coordinate i (a subset of Z^{n-1}).
LatticeSet hyperplane_projection(const LatticeSet& a, Axis i);

using Edge = std::pair<LatticePoint, LatticePoint>;

/// |dA|: lattice edges with exactly one endpoint in A.
std::size_t boundary_count(const LatticeSet& a);

/// Boundary edges crossing axis i, i.e. ||d_i chi_A||_1.
std::size_t boundary_count(const LatticeSet& a, Axis i);

/// The edges of dA as (inside, outside) pairs.
std::vector<Edge> boundary_edges(const LatticeSet& a);

/// sum over supp f of f^p log f^p, in floating point. Requires f >= 0.
double entropy(const SparseFunction& f, const Rational& p);

/// Outcome of checking |f(z)| <= 1/2 sum_k |d_i f(z + k e_i)| on every line
/// parallel to e_i that meets the support.
struct LineBoundReport {
  bool holds = true;
  /// Every line meets the bound with equality.
  bool all_equal = true;
  std::size_t lines_checked = 0;
  /// Line with the smallest slack, identified by its remaining n-1 coordinates.
  std::optional<LatticePoint> worst_line;
  /// max_line |f| and half of the line's total variation at the worst line.
  Rational worst_max;
  Rational worst_half_variation;
};

LineBoundReport pointwise_line_bound(const SparseFunction& f, Axis i);

}  // namespace latineq
