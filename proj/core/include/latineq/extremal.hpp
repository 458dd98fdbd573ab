#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "latineq/certifiers.hpp"
#include "latineq/lattice.hpp"
#include "latineq/rational.hpp"

namespace latineq {

// Normalized objectives: lhs / rhs of an inequality, so the sharp bound is 1.
// Each returns exactly 1.0 when the integer certificate shows equality.

double gn_ratio(const SparseFunction& f);
/// |A|^((n-1)/n) * 2n / |dA|.
double iso_ratio(const LatticeSet& a);
double bl_ratio(const SparseFunction& f);

// ---------------------------------------------------------------------------
// Exhaustive rigidity enumeration.

struct EnumerationConfig {
  std::size_t n = 2;
  /// Side m of the box [0, m-1]^n.
  std::size_t box_side = 4;
  /// Largest subset size; 0 means all sizes.
  std::size_t max_size = 0;
  /// Upper bound on the number of subsets visited.
  std::uint64_t budget = std::uint64_t{1} << 24;
};

/// One translation class of subsets of the box.
struct EnumeratedSet {
  /// Row-major bitmask of the canonical translate inside the box.
  std::uint64_t set_id = 0;
  std::size_t size = 0;
  ShapeClass shape = ShapeClass::kNone;
  bool gn_equal = false;
  bool iso_equal = false;
  bool lw_equal = false;
  /// Number of subsets of the box in this translation class.
  std::uint64_t translates = 0;
};

struct EnumerationReport {
  EnumerationConfig config;
  std::uint64_t subsets = 0;
  std::vector<EnumeratedSet> classes;
  /// Per shape class: subsets of the box and distinct translation classes.
  std::map<ShapeClass, std::uint64_t> subsets_per_shape;
  std::map<ShapeClass, std::uint64_t> classes_per_shape;
  std::uint64_t gn_equal_subsets = 0;
  std::uint64_t iso_equal_subsets = 0;
  std::uint64_t lw_equal_subsets = 0;
  /// set_ids where an equality flag disagrees with the shape class.
  std::vector<std::uint64_t> mismatches;
};

/// Number of subsets the configuration would visit.
std::uint64_t enumeration_size(const EnumerationConfig& config);

/// Checks GN equality <=> cuboid, isoperimetric equality <=> cube and
/// Loomis-Whitney equality <=> product set on every nonempty subset of the
/// box, through the exact certificates. Throws BudgetExceeded.
EnumerationReport enumerate_rigidity(const EnumerationConfig& config);

/// Decodes a set_id back into a set inside [0, m-1]^n.
LatticeSet set_from_mask(std::uint64_t mask, std::size_t n, std::size_t box_side);

// ---------------------------------------------------------------------------
// Searches.

enum class Objective { kGnRatio, kIsoRatio, kBlRatio };
std::string_view to_string(Objective objective);

struct SearchTrace {
  std::uint64_t seed = 0;
  Objective objective = Objective::kIsoRatio;
  std::uint64_t iterations = 0;
  double best_value = 0;
  std::variant<LatticeSet, SparseFunction> best_input = LatticeSet(0);
  /// (iteration, running maximum) samples.
  std::vector<std::pair<std::uint64_t, double>> history;
  /// Iteration at which best_value was first reached.
  std::uint64_t best_iteration = 0;
};

struct AnnealSchedule {
  double initial_temperature = 0.05;
  double cooling = 0.999;
};

struct AnnealConfig {
  std::size_t n = 2;
  std::size_t size = 9;
  std::uint64_t iterations = 100000;
  std::uint64_t seed = 0;
  AnnealSchedule schedule;
  /// Side of the bounding box [0, side-1]^n; 0 picks max(size, 2).
  std::size_t box_side = 0;
  /// Number of history samples.
  std::size_t samples = 100;
};

/// Simulated annealing on iso_ratio over sets of fixed cardinality. A move
/// removes one point and adds an outside lattice neighbour of the set.
SearchTrace anneal_sets(const AnnealConfig& config);

struct AscendConfig {
  Cuboid window = Cuboid({{0, 0}, {0, 0}});
  std::uint64_t iterations = 10000;
  std::uint64_t seed = 0;
  /// Start from these values instead of a random grid point; must live on the window.
  std::optional<SparseFunction> start;
  std::size_t samples = 100;
};

/// Cyclic coordinate ascent on gn_ratio over f: window -> [0, 1]. Each step
/// line-searches one cell over {j/64} and refines once around the best value.
SearchTrace ascend_function(const AscendConfig& config);

// ---------------------------------------------------------------------------
// Fuzzing.

struct FuzzConfig {
  std::size_t count = 1000;
  std::size_t n = 2;
  std::uint64_t seed = 0;
  double tol = kDefaultTolerance;
  /// Support is sampled inside [0, window-1]^n.
  std::size_t window = 4;
  /// Inclusion probability of a window cell.
  double density = 0.5;
  /// Values are k / denominator with k uniform in [1, denominator].
  unsigned denominator = 16;
  /// Fraction of samples drawn as scaled indicators.
  double indicator_fraction = 0.1;
  /// Exponents cycled through for the logarithmic inequalities; empty means
  /// {1/2, 1, 2, n/(n-1)}.
  std::vector<Rational> exponents;
  /// Worker threads; 0 uses the hardware concurrency.
  std::size_t threads = 0;
};

struct FuzzStats {
  std::uint64_t instances = 0;
  double min_deficit = 0;
  double max_deficit = 0;
  /// Smallest deficit among samples that were not EXACT_EQUAL.
  std::optional<double> min_deficit_non_extremal;
  std::uint64_t exact_equal = 0;
  std::uint64_t violations = 0;
  /// Index of the sample holding min_deficit.
  std::uint64_t worst_index = 0;
};

struct FuzzSummary {
  FuzzConfig config;
  std::map<Inequality, FuzzStats> per_inequality;
  std::uint64_t line_bound_checks = 0;
  std::uint64_t line_bound_failures = 0;
  std::uint64_t chain_checks = 0;
  std::uint64_t chain_failures = 0;
  /// Sample with the smallest relative deficit over every check.
  std::uint64_t worst_index = 0;
  std::optional<SparseFunction> worst_input;

  std::uint64_t total_violations() const;
};

/// Draws sample `index` of a fuzz run. Depends only on (seed, index).
SparseFunction fuzz_sample(const FuzzConfig& config, std::uint64_t index);

/// Runs every applicable inequality, pointwise_line_bound on each axis and
/// the chain ||f||_{n/(n-1)} <= BL rhs(|f|) <= GN rhs(f) on `count` samples.
FuzzSummary fuzz(const FuzzConfig& config);

}  // namespace latineq
