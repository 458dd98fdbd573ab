#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "latineq/lattice.hpp"
#include "latineq/rational.hpp"

namespace latineq {

enum class Inequality {
  kGagliardoNirenberg,
  kSobolev,
  kIsoperimetric,
  kLogSobolevDirectional,
  kLogSobolev,
  kBrascampLieb,
  kLogBrascampLieb,
  kLoomisWhitney,
};

enum class Relation { kExactEqual, kEqualWithinTol, kStrict, kViolated };

/// Shape classes ordered from most to least specific: every cube is a
/// cuboid and every cuboid is a product set.
enum class ShapeClass { kCube, kCuboid, kProductSet, kNone };

/// Integer comparison equivalent to an inequality on (scaled) indicators.
struct ExactCertificate {
  enum class Reduction {
    kGnCuboid,    // 2^n |A|^(n-1)        vs prod_i ||d_i chi_A||_1
    kSobolevIso,  // (2n)^n |A|^(n-1)     vs |dA|^n
    kBlLw,        // |A|^(n-1)            vs prod_i |A with coordinate i deleted|
  };
  Reduction reduction;
  BigInt lhs;
  BigInt rhs;

  bool holds() const { return lhs <= rhs; }
  bool equal() const { return lhs == rhs; }
};

struct InequalityReport {
  Inequality inequality;
  std::size_t n = 0;
  std::optional<Rational> p;
  double lhs = 0;
  double rhs = 0;
  /// rhs - lhs.
  double deficit = 0;
  Relation relation = Relation::kStrict;
  ShapeClass extremal_class = ShapeClass::kNone;
  std::optional<ExactCertificate> certificate;
};

inline constexpr double kDefaultTolerance = 1e-9;

std::string_view to_string(Inequality ineq);
std::string_view to_string(Relation relation);
std::string_view to_string(ShapeClass shape);
std::string_view to_string(ExactCertificate::Reduction reduction);

/// Accepts the short CLI names (gn, sobolev, iso, logsob-dir, logsob, bl,
/// logbl, lw) as well as the names printed by to_string.
std::optional<Inequality> parse_inequality(std::string_view name);

/// Float verdict for lhs <= rhs: equal when |rhs - lhs| <= tol * max(1, |lhs|, |rhs|).
Relation relation_from_floats(double lhs, double rhs, double tol);

/// Most specific of cube, cuboid, product set. Throws DegenerateInput for
/// the empty set.
ShapeClass classify_shape(const LatticeSet& a);

/// (lambda, supp f) when all nonzero values of f coincide.
std::optional<std::pair<Rational, LatticeSet>> is_scaled_indicator(const SparseFunction& f);

// Certificates for the three reductions, computed from the set alone.
ExactCertificate gn_certificate(const LatticeSet& a);
ExactCertificate sobolev_certificate(const LatticeSet& a);
ExactCertificate bl_certificate(const LatticeSet& a);

/// ||f||_{n/(n-1)} <= 1/2 prod_i ||d_i f||_1^(1/n).
InequalityReport check_gn(const SparseFunction& f, double tol = kDefaultTolerance);

/// ||f||_{n/(n-1)} <= ||df||_1 / (2n).
InequalityReport check_sobolev(const SparseFunction& f, double tol = kDefaultTolerance);

/// |A|^(n-1) <= |dA|^n / (2n)^n, decided exactly.
InequalityReport check_isoperimetric(const LatticeSet& a, double tol = kDefaultTolerance);

/// Logarithmic Sobolev inequalities for f >= 0 with ||f||_p = 1:
///   (1/n + 1/p - 1) sum f^p log f^p <= -log 2 + (1/n) sum_i log ||d_i f||_1   (directional)
///   (1/n + 1/p - 1) sum f^p log f^p <= log(||df||_1 / (2n))                   (otherwise)
/// With normalize, f is first rescaled to unit p-norm; without it a p-norm
/// further than tol from 1 raises PreconditionError.
InequalityReport check_log_sobolev(const SparseFunction& f, const Rational& p, bool directional,
                                   double tol = kDefaultTolerance, bool normalize = false);

/// ||f||_{n/(n-1)} <= (prod_i ||f_i||_1)^(1/n) with f_i the max-projections.
InequalityReport check_bl(const SparseFunction& f, double tol = kDefaultTolerance);

/// (1/n + 1/p - 1) sum f^p log f^p <= (1/n) sum_i log ||f_i||_1 for f >= 0, ||f||_p = 1.
InequalityReport check_log_bl(const SparseFunction& f, const Rational& p,
                              double tol = kDefaultTolerance, bool normalize = false);

/// |A|^(n-1) <= prod_i |A with coordinate i deleted|, decided exactly.
InequalityReport check_loomis_whitney(const LatticeSet& a, double tol = kDefaultTolerance);

}  // namespace latineq
