#include "latineq/certifiers.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "latineq/calculus.hpp"
#include "latineq/errors.hpp"

namespace latineq {
namespace {

void require_dimension(std::size_t n) {
  if (n < 2) {
    throw InvalidInput("dimension n = " + std::to_string(n) +
                       ": the inequalities hold under the hypothesis n >= 2");
  }
}

void require_function(const SparseFunction& f) {
  require_dimension(f.dim());
  if (f.is_zero()) throw DegenerateInput("degenerate input: zero function");
}

void require_set(const LatticeSet& a) {
  require_dimension(a.dim());
  if (a.empty()) throw DegenerateInput("degenerate input: empty set");
}

void require_nonnegative(const SparseFunction& f, std::string_view what) {
  if (!f.is_nonnegative()) {
    throw DomainError(std::string(what) + " requires a nonnegative function");
  }
}

Rational sobolev_exponent(std::size_t n) {
  return Rational(static_cast<long>(n), static_cast<long>(n - 1));
}

BigInt big_pow(const BigInt& base, std::size_t k) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), k);
  return out;
}

BigInt big(std::size_t v) { return BigInt(static_cast<unsigned long>(v)); }

// x^(1/n) for x >= 0.
double nth_root(const Rational& x, std::size_t n) {
  if (x == 0) return 0.0;
  double xd = to_double(x);
  if (std::isfinite(xd) && xd > 0) {
    if (n == 2) return std::sqrt(xd);
    return std::pow(xd, 1.0 / static_cast<double>(n));
  }
  return std::exp(log_of(x) / static_cast<double>(n));
}

InequalityReport make_report(Inequality ineq, std::size_t n, double lhs, double rhs, double tol) {
  InequalityReport r;
  r.inequality = ineq;
  r.n = n;
  r.lhs = lhs;
  r.rhs = rhs;
  r.deficit = rhs - lhs;
  r.relation = relation_from_floats(lhs, rhs, tol);
  return r;
}

// The certificate decides the relation outright when it applies.
void apply_certificate(InequalityReport& r, ExactCertificate cert, ShapeClass equality_class) {
  if (cert.equal()) {
    r.relation = Relation::kExactEqual;
    r.extremal_class = equality_class;
  } else {
    r.relation = cert.holds() ? Relation::kStrict : Relation::kViolated;
    r.extremal_class = ShapeClass::kNone;
  }
  r.certificate = std::move(cert);
}

void require_tolerance(double tol) {
  if (!(tol > 0)) throw InvalidInput("tolerance must be positive");
}

// Scale c with ||f / c||_p = 1, or 1 when f is taken as already normalized.
double unit_norm_scale(const SparseFunction& f, const Rational& p, double tol, bool normalize) {
  double c = norm(f, p);
  if (normalize) return c;
  if (std::abs(c - 1.0) > tol * std::max(1.0, c)) {
    throw PreconditionError("||f||_p = " + std::to_string(c) +
                            " but the logarithmic inequalities need ||f||_p = 1 (use normalize)");
  }
  return 1.0;
}

// (1/n + 1/p - 1) * sum (f/c)^p log (f/c)^p.
double log_lhs(const SparseFunction& f, const Rational& p, double log_c) {
  const std::size_t n = f.dim();
  Rational coef = Rational(1, static_cast<long>(n)) + 1 / p - 1;
  if (coef == 0) return 0.0;
  const double pd = to_double(p);
  const double c_p = std::exp(pd * log_c);
  long double total = 0;
  for (const auto& e : f) {
    double w = pow_abs(e.value, p) / c_p;
    total += static_cast<long double>(w) * pd * (log_of(e.value) - log_c);
  }
  return to_double(coef) * static_cast<double>(total);
}

void require_log_inputs(const SparseFunction& f, const Rational& p, double tol, const char* what) {
  if (p <= 0) throw InvalidInput("exponent p must be positive, got " + to_string(p));
  require_tolerance(tol);
  require_dimension(f.dim());
  require_nonnegative(f, what);
  if (f.is_zero()) throw DegenerateInput("degenerate input: zero function");
}

}  // namespace

std::string_view to_string(Inequality ineq) {
  switch (ineq) {
    case Inequality::kGagliardoNirenberg: return "GN";
    case Inequality::kSobolev: return "SOBOLEV";
    case Inequality::kIsoperimetric: return "ISOPERIMETRIC";
    case Inequality::kLogSobolevDirectional: return "LOG_SOBOLEV_DIR";
    case Inequality::kLogSobolev: return "LOG_SOBOLEV";
    case Inequality::kBrascampLieb: return "BL";
    case Inequality::kLogBrascampLieb: return "LOG_BL";
    case Inequality::kLoomisWhitney: return "LW";
  }
  return "?";
}

std::string_view to_string(Relation relation) {
  switch (relation) {
    case Relation::kExactEqual: return "EXACT_EQUAL";
    case Relation::kEqualWithinTol: return "EQUAL_WITHIN_TOL";
    case Relation::kStrict: return "STRICT";
    case Relation::kViolated: return "VIOLATED";
  }
  return "?";
}

std::string_view to_string(ShapeClass shape) {
  switch (shape) {
    case ShapeClass::kCube: return "CUBE";
    case ShapeClass::kCuboid: return "CUBOID";
    case ShapeClass::kProductSet: return "PRODUCT_SET";
    case ShapeClass::kNone: return "NONE";
  }
  return "?";
}

std::string_view to_string(ExactCertificate::Reduction reduction) {
  switch (reduction) {
    case ExactCertificate::Reduction::kGnCuboid: return "GN_CUBOID";
    case ExactCertificate::Reduction::kSobolevIso: return "SOBOLEV_ISO";
    case ExactCertificate::Reduction::kBlLw: return "BL_LW";
  }
  return "?";
}

std::optional<Inequality> parse_inequality(std::string_view name) {
  struct Alias {
    std::string_view short_name;
    Inequality ineq;
  };
  static constexpr std::array<Alias, 8> kAliases{{
      {"gn", Inequality::kGagliardoNirenberg},
      {"sobolev", Inequality::kSobolev},
      {"iso", Inequality::kIsoperimetric},
      {"logsob-dir", Inequality::kLogSobolevDirectional},
      {"logsob", Inequality::kLogSobolev},
      {"bl", Inequality::kBrascampLieb},
      {"logbl", Inequality::kLogBrascampLieb},
      {"lw", Inequality::kLoomisWhitney},
  }};
  for (const auto& alias : kAliases) {
    if (name == alias.short_name || name == to_string(alias.ineq)) return alias.ineq;
  }
  return std::nullopt;
}

Relation relation_from_floats(double lhs, double rhs, double tol) {
  double deficit = rhs - lhs;
  double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
  if (std::abs(deficit) <= tol * scale) return Relation::kEqualWithinTol;
  return deficit > 0 ? Relation::kStrict : Relation::kViolated;
}

ShapeClass classify_shape(const LatticeSet& a) {
  if (a.empty()) throw DegenerateInput("degenerate input: empty set");
  BigInt product = 1;
  bool intervals = true;
  bool equal_sides = true;
  std::size_t first_side = 0;
  for (Axis i = 0; i < a.dim(); ++i) {
    auto proj = coord_projection(a, i);
    product *= big(proj.size());
    if (proj.back() - proj.front() + 1 != static_cast<Coord>(proj.size())) intervals = false;
    if (i == 0) first_side = proj.size();
    if (proj.size() != first_side) equal_sides = false;
  }
  if (product != big(a.size())) return ShapeClass::kNone;
  if (!intervals) return ShapeClass::kProductSet;
  return equal_sides ? ShapeClass::kCube : ShapeClass::kCuboid;
}

std::optional<std::pair<Rational, LatticeSet>> is_scaled_indicator(const SparseFunction& f) {
  if (f.is_zero()) return std::nullopt;
  const Rational& lambda = f.entries().front().value;
  for (const auto& e : f) {
    if (e.value != lambda) return std::nullopt;
  }
  return std::make_pair(lambda, f.support());
}

ExactCertificate gn_certificate(const LatticeSet& a) {
  require_set(a);
  const std::size_t n = a.dim();
  ExactCertificate cert{ExactCertificate::Reduction::kGnCuboid, 0, 1};
  cert.lhs = big_pow(2, n) * big_pow(big(a.size()), n - 1);
  for (Axis i = 0; i < n; ++i) cert.rhs *= big(boundary_count(a, i));
  return cert;
}

ExactCertificate sobolev_certificate(const LatticeSet& a) {
  require_set(a);
  const std::size_t n = a.dim();
  ExactCertificate cert{ExactCertificate::Reduction::kSobolevIso, 0, 0};
  cert.lhs = big_pow(big(2 * n), n) * big_pow(big(a.size()), n - 1);
  cert.rhs = big_pow(big(boundary_count(a)), n);
  return cert;
}

ExactCertificate bl_certificate(const LatticeSet& a) {
  require_set(a);
  const std::size_t n = a.dim();
  ExactCertificate cert{ExactCertificate::Reduction::kBlLw, 0, 1};
  cert.lhs = big_pow(big(a.size()), n - 1);
  for (Axis i = 0; i < n; ++i) cert.rhs *= big(hyperplane_projection(a, i).size());
  return cert;
}

InequalityReport check_gn(const SparseFunction& f, double tol) {
  require_tolerance(tol);
  require_function(f);
  const std::size_t n = f.dim();
  Rational product = 1;
  for (Axis i = 0; i < n; ++i) product *= partial_l1(f, i);
  auto r = make_report(Inequality::kGagliardoNirenberg, n, norm(f, sobolev_exponent(n)),
                       0.5 * nth_root(product, n), tol);
  if (auto ind = is_scaled_indicator(f)) {
    apply_certificate(r, gn_certificate(ind->second), ShapeClass::kCuboid);
  }
  return r;
}

InequalityReport check_sobolev(const SparseFunction& f, double tol) {
  require_tolerance(tol);
  require_function(f);
  const std::size_t n = f.dim();
  Rational rhs = diff_l1(f) / Rational(static_cast<long>(2 * n));
  auto r = make_report(Inequality::kSobolev, n, norm(f, sobolev_exponent(n)), to_double(rhs), tol);
  if (auto ind = is_scaled_indicator(f)) {
    apply_certificate(r, sobolev_certificate(ind->second), ShapeClass::kCube);
  }
  return r;
}

InequalityReport check_isoperimetric(const LatticeSet& a, double tol) {
  require_tolerance(tol);
  require_set(a);
  const std::size_t n = a.dim();
  Rational lhs(big_pow(big(a.size()), n - 1));
  Rational rhs(big_pow(big(boundary_count(a)), n), big_pow(big(2 * n), n));
  rhs.canonicalize();
  auto r = make_report(Inequality::kIsoperimetric, n, to_double(lhs), to_double(rhs), tol);
  apply_certificate(r, sobolev_certificate(a), ShapeClass::kCube);
  return r;
}

InequalityReport check_log_sobolev(const SparseFunction& f, const Rational& p, bool directional,
                                   double tol, bool normalize) {
  require_log_inputs(f, p, tol, "log-Sobolev inequality");
  const std::size_t n = f.dim();
  const double log_c = std::log(unit_norm_scale(f, p, tol, normalize));
  double rhs = 0;
  if (directional) {
    long double sum = 0;
    for (Axis i = 0; i < n; ++i) sum += log_of(partial_l1(f, i)) - log_c;
    rhs = -std::numbers::ln2 + static_cast<double>(sum) / static_cast<double>(n);
  } else {
    rhs = log_of(Rational(diff_l1(f) / Rational(static_cast<long>(2 * n)))) - log_c;
  }
  auto r = make_report(directional ? Inequality::kLogSobolevDirectional : Inequality::kLogSobolev,
                       n, log_lhs(f, p, log_c), rhs, tol);
  r.p = p;
  // A positive scaled indicator with unit p-norm is |A|^(-1/p) chi_A, where
  // p cancels and the GN / Sobolev integer comparison decides equality.
  if (auto ind = is_scaled_indicator(f)) {
    if (directional) {
      apply_certificate(r, gn_certificate(ind->second), ShapeClass::kCuboid);
    } else {
      apply_certificate(r, sobolev_certificate(ind->second), ShapeClass::kCube);
    }
  }
  return r;
}

InequalityReport check_bl(const SparseFunction& f, double tol) {
  require_tolerance(tol);
  require_dimension(f.dim());
  require_nonnegative(f, "Brascamp-Lieb inequality");
  require_function(f);
  const std::size_t n = f.dim();
  Rational product = 1;
  for (Axis i = 0; i < n; ++i) product *= l1_norm(max_projection(f, i));
  auto r = make_report(Inequality::kBrascampLieb, n, norm(f, sobolev_exponent(n)),
                       nth_root(product, n), tol);
  if (auto ind = is_scaled_indicator(f)) {
    apply_certificate(r, bl_certificate(ind->second), ShapeClass::kProductSet);
  }
  return r;
}

InequalityReport check_log_bl(const SparseFunction& f, const Rational& p, double tol,
                              bool normalize) {
  require_log_inputs(f, p, tol, "log-Brascamp-Lieb inequality");
  const std::size_t n = f.dim();
  const double log_c = std::log(unit_norm_scale(f, p, tol, normalize));
  long double sum = 0;
  for (Axis i = 0; i < n; ++i) sum += log_of(l1_norm(max_projection(f, i))) - log_c;
  auto r = make_report(Inequality::kLogBrascampLieb, n, log_lhs(f, p, log_c),
                       static_cast<double>(sum) / static_cast<double>(n), tol);
  r.p = p;
  if (auto ind = is_scaled_indicator(f)) {
    apply_certificate(r, bl_certificate(ind->second), ShapeClass::kProductSet);
  }
  return r;
}

InequalityReport check_loomis_whitney(const LatticeSet& a, double tol) {
  require_tolerance(tol);
  require_set(a);
  auto cert = bl_certificate(a);
  auto r = make_report(Inequality::kLoomisWhitney, a.dim(), to_double(Rational(cert.lhs)),
                       to_double(Rational(cert.rhs)), tol);
  apply_certificate(r, std::move(cert), ShapeClass::kProductSet);
  return r;
}

}  // namespace latineq
