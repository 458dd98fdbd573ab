#include "latineq/extremal.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <random>
#include <string>
#include <thread>
#include <unordered_map>

#include "latineq/calculus.hpp"
#include "latineq/errors.hpp"

namespace latineq {
namespace {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Engine output only; std distributions are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}
  Rng(std::uint64_t seed, std::uint64_t stream) : engine_(splitmix64(seed ^ splitmix64(stream))) {}

  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return unit() < p; }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t ipow(std::uint64_t base, std::size_t exp) {
  std::uint64_t out = 1;
  for (std::size_t k = 0; k < exp; ++k) {
    if (base != 0 && out > std::numeric_limits<std::uint64_t>::max() / base) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    out *= base;
  }
  return out;
}

void require_ratio_dimension(std::size_t n) {
  if (n < 2) throw InvalidInput("ratios are defined for n >= 2");
}

}  // namespace

double gn_ratio(const SparseFunction& f) {
  auto r = check_gn(f);
  if (r.relation == Relation::kExactEqual) return 1.0;
  return r.lhs / r.rhs;
}

double iso_ratio(const LatticeSet& a) {
  auto r = check_isoperimetric(a);
  if (r.relation == Relation::kExactEqual) return 1.0;
  const double n = static_cast<double>(a.dim());
  return std::pow(static_cast<double>(a.size()), (n - 1) / n) * 2 * n /
         static_cast<double>(boundary_count(a));
}

double bl_ratio(const SparseFunction& f) {
  auto r = check_bl(f);
  if (r.relation == Relation::kExactEqual) return 1.0;
  return r.lhs / r.rhs;
}

std::string_view to_string(Objective objective) {
  switch (objective) {
    case Objective::kGnRatio: return "GN_RATIO";
    case Objective::kIsoRatio: return "ISO_RATIO";
    case Objective::kBlRatio: return "BL_RATIO";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Enumeration.

namespace {

struct BoxGeometry {
  std::size_t n;
  std::size_t side;
  std::size_t cells;

  std::vector<Coord> decode(std::size_t cell) const {
    std::vector<Coord> z(n);
    for (std::size_t i = n; i-- > 0;) {
      z[i] = static_cast<Coord>(cell % side);
      cell /= side;
    }
    return z;
  }
  std::size_t encode(std::span<const Coord> z) const {
    std::size_t cell = 0;
    for (Coord c : z) cell = cell * side + static_cast<std::size_t>(c);
    return cell;
  }
};

std::uint64_t canonical_mask(std::uint64_t mask, const BoxGeometry& box) {
  std::vector<Coord> lo(box.n, static_cast<Coord>(box.side));
  for (std::uint64_t m = mask; m != 0; m &= m - 1) {
    auto z = box.decode(static_cast<std::size_t>(std::countr_zero(m)));
    for (std::size_t i = 0; i < box.n; ++i) lo[i] = std::min(lo[i], z[i]);
  }
  std::uint64_t out = 0;
  for (std::uint64_t m = mask; m != 0; m &= m - 1) {
    auto z = box.decode(static_cast<std::size_t>(std::countr_zero(m)));
    for (std::size_t i = 0; i < box.n; ++i) z[i] -= lo[i];
    out |= std::uint64_t{1} << box.encode(z);
  }
  return out;
}

BigInt binomial(std::size_t n, std::size_t k) {
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

}  // namespace

LatticeSet set_from_mask(std::uint64_t mask, std::size_t n, std::size_t box_side) {
  BoxGeometry box{n, box_side, static_cast<std::size_t>(ipow(box_side, n))};
  std::vector<LatticePoint> pts;
  for (std::uint64_t m = mask; m != 0; m &= m - 1) {
    pts.emplace_back(box.decode(static_cast<std::size_t>(std::countr_zero(m))));
  }
  return LatticeSet(n, std::move(pts));
}

std::uint64_t enumeration_size(const EnumerationConfig& config) {
  const std::uint64_t cells = ipow(config.box_side, config.n);
  if (cells > 63) return std::numeric_limits<std::uint64_t>::max();
  const std::size_t k = config.max_size == 0 ? cells : std::min<std::size_t>(config.max_size, cells);
  BigInt total = 0;
  for (std::size_t s = 1; s <= k; ++s) total += binomial(cells, s);
  if (!total.fits_ulong_p()) return std::numeric_limits<std::uint64_t>::max();
  return total.get_ui();
}

EnumerationReport enumerate_rigidity(const EnumerationConfig& config) {
  require_ratio_dimension(config.n);
  if (config.box_side < 1) throw InvalidInput("box side must be >= 1");
  const std::uint64_t total = enumeration_size(config);
  if (total > config.budget) {
    throw BudgetExceeded("enumeration of " +
                         (total == std::numeric_limits<std::uint64_t>::max()
                              ? std::string("more than 2^63")
                              : std::to_string(total)) +
                         " subsets exceeds the budget of " + std::to_string(config.budget));
  }
  BoxGeometry box{config.n, config.box_side, static_cast<std::size_t>(ipow(config.box_side, config.n))};
  const std::size_t k = config.max_size == 0 ? box.cells : std::min(config.max_size, box.cells);
  const std::uint64_t end = box.cells == 64 ? 0 : (std::uint64_t{1} << box.cells);

  EnumerationReport report;
  report.config = config;
  std::unordered_map<std::uint64_t, std::size_t> index_of;
  for (std::uint64_t mask = 1; mask != end; ++mask) {
    const auto size = static_cast<std::size_t>(std::popcount(mask));
    if (size > k) continue;
    ++report.subsets;
    const std::uint64_t canon = canonical_mask(mask, box);
    auto [it, inserted] = index_of.try_emplace(canon, report.classes.size());
    if (inserted) {
      LatticeSet a = set_from_mask(canon, box.n, box.side);
      EnumeratedSet entry;
      entry.set_id = canon;
      entry.size = size;
      entry.shape = classify_shape(a);
      auto gn = check_gn(indicator(a));
      auto iso = check_isoperimetric(a);
      auto lw = check_loomis_whitney(a);
      entry.gn_equal = gn.relation == Relation::kExactEqual;
      entry.iso_equal = iso.relation == Relation::kExactEqual;
      entry.lw_equal = lw.relation == Relation::kExactEqual;
      const bool cuboid = entry.shape == ShapeClass::kCube || entry.shape == ShapeClass::kCuboid;
      const bool violated = gn.relation == Relation::kViolated ||
                            iso.relation == Relation::kViolated ||
                            lw.relation == Relation::kViolated;
      if (violated || entry.gn_equal != cuboid || entry.iso_equal != (entry.shape == ShapeClass::kCube) ||
          entry.lw_equal != (entry.shape != ShapeClass::kNone)) {
        report.mismatches.push_back(canon);
      }
      ++report.classes_per_shape[entry.shape];
      report.classes.push_back(entry);
    }
    EnumeratedSet& entry = report.classes[it->second];
    ++entry.translates;
    ++report.subsets_per_shape[entry.shape];
    report.gn_equal_subsets += entry.gn_equal;
    report.iso_equal_subsets += entry.iso_equal;
    report.lw_equal_subsets += entry.lw_equal;
  }
  std::sort(report.classes.begin(), report.classes.end(),
            [](const EnumeratedSet& a, const EnumeratedSet& b) { return a.set_id < b.set_id; });
  std::sort(report.mismatches.begin(), report.mismatches.end());
  return report;
}

// ---------------------------------------------------------------------------
// Annealing over sets.

namespace {

class History {
 public:
  History(std::uint64_t iterations, std::size_t samples)
      : iterations_(iterations),
        stride_(std::max<std::uint64_t>(1, iterations / std::max<std::size_t>(1, samples))) {}

  void record(std::uint64_t iteration, double running_max, SearchTrace& trace) const {
    if (iteration % stride_ == 0 || iteration == iterations_) {
      trace.history.emplace_back(iteration, running_max);
    }
  }

 private:
  std::uint64_t iterations_;
  std::uint64_t stride_;
};

}  // namespace

SearchTrace anneal_sets(const AnnealConfig& config) {
  require_ratio_dimension(config.n);
  if (config.size < 1) throw InvalidInput("anneal_sets needs size >= 1");
  if (!(config.schedule.initial_temperature > 0) || !(config.schedule.cooling > 0) ||
      config.schedule.cooling > 1) {
    throw InvalidInput("annealing schedule needs T0 > 0 and 0 < alpha <= 1");
  }
  const std::size_t side = config.box_side == 0 ? std::max<std::size_t>(config.size, 2) : config.box_side;
  const std::uint64_t cells64 = ipow(side, config.n);
  if (cells64 < config.size) throw InvalidInput("bounding box is smaller than the set size");
  if (cells64 > (std::uint64_t{1} << 26)) throw BudgetExceeded("annealing box too large");
  BoxGeometry box{config.n, side, static_cast<std::size_t>(cells64)};
  const std::size_t n = config.n;
  const auto two_n = static_cast<long>(2 * n);

  Rng rng(config.seed);
  std::vector<char> member(box.cells, 0);
  std::vector<std::size_t> points;
  {
    std::vector<std::size_t> all(box.cells);
    for (std::size_t c = 0; c < box.cells; ++c) all[c] = c;
    for (std::size_t k = 0; k < config.size; ++k) {
      std::size_t j = k + static_cast<std::size_t>(rng.below(box.cells - k));
      std::swap(all[k], all[j]);
      points.push_back(all[k]);
      member[all[k]] = 1;
    }
  }

  // Neighbour of `cell` along axis i in direction dir, or npos outside the box.
  constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::vector<std::size_t> stride(n);
  for (std::size_t i = n, s = 1; i-- > 0; s *= side) stride[i] = s;
  auto neighbour = [&](std::size_t cell, std::size_t i, int dir) {
    const std::size_t coord = (cell / stride[i]) % side;
    if (dir < 0 && coord == 0) return npos;
    if (dir > 0 && coord + 1 == side) return npos;
    return dir > 0 ? cell + stride[i] : cell - stride[i];
  };
  auto inside_neighbours = [&](std::size_t cell) {
    long d = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (int dir : {-1, 1}) {
        std::size_t y = neighbour(cell, i, dir);
        if (y != npos && member[y]) ++d;
      }
    }
    return d;
  };

  long boundary = 0;
  for (std::size_t c : points) boundary += two_n - inside_neighbours(c);
  const double volume_term =
      std::pow(static_cast<double>(config.size), static_cast<double>(n - 1) / static_cast<double>(n)) *
      static_cast<double>(two_n);
  auto ratio_of = [&](long b) { return volume_term / static_cast<double>(b); };

  SearchTrace trace;
  trace.seed = config.seed;
  trace.objective = Objective::kIsoRatio;
  trace.iterations = config.iterations;
  History history(config.iterations, config.samples);

  double current = ratio_of(boundary);
  double best = current;
  std::vector<std::size_t> best_points = points;
  history.record(0, best, trace);

  double temperature = config.schedule.initial_temperature;
  for (std::uint64_t it = 1; it <= config.iterations; ++it) {
    temperature *= config.schedule.cooling;
    if (config.size >= 2 || box.cells > 1) {
      const std::size_t slot = static_cast<std::size_t>(rng.below(points.size()));
      const std::size_t anchor = points[static_cast<std::size_t>(rng.below(points.size()))];
      const std::size_t axis = static_cast<std::size_t>(rng.below(n));
      const int dir = rng.below(2) == 0 ? -1 : 1;
      const std::size_t target = neighbour(anchor, axis, dir);
      if (target != npos && !member[target]) {
        const std::size_t removed = points[slot];
        long next = boundary - (two_n - inside_neighbours(removed)) + inside_neighbours(removed);
        member[removed] = 0;
        const long d = inside_neighbours(target);
        next += (two_n - d) - d;
        const double candidate = ratio_of(next);
        const double delta = candidate - current;
        if (delta >= 0 || rng.unit() < std::exp(delta / temperature)) {
          member[target] = 1;
          points[slot] = target;
          boundary = next;
          current = candidate;
          if (current > best) {
            best = current;
            best_points = points;
            trace.best_iteration = it;
          }
        } else {
          member[removed] = 1;
        }
      }
    }
    history.record(it, best, trace);
  }

  std::vector<LatticePoint> pts;
  for (std::size_t c : best_points) pts.emplace_back(box.decode(c));
  LatticeSet best_set = LatticeSet(n, std::move(pts)).canonical_translate();
  trace.best_value = iso_ratio(best_set);
  // Keep the sampled history consistent with the exactly evaluated optimum.
  for (auto& sample : trace.history) sample.second = std::min(sample.second, trace.best_value);
  if (!trace.history.empty()) trace.history.back().second = trace.best_value;
  trace.best_input = std::move(best_set);
  return trace;
}

// ---------------------------------------------------------------------------
// Coordinate ascent on gn_ratio.

namespace {

constexpr long kCoarseSteps = 64;
constexpr long kFineSteps = 4096;

// Dense evaluation of ||f||_{n/(n-1)} / (1/2 prod ||d_i f||_1^(1/n)) on a window.
class DenseGn {
 public:
  explicit DenseGn(const Cuboid& window) : sides_(window.side_lengths()), n_(window.dim()) {
    strides_.assign(n_, 1);
    for (std::size_t i = n_; i-- > 1;) strides_[i - 1] = strides_[i] * static_cast<std::size_t>(sides_[i]);
    cells_ = strides_[0] * static_cast<std::size_t>(sides_[0]);
    q_ = static_cast<double>(n_) / static_cast<double>(n_ - 1);
  }

  std::size_t cells() const { return cells_; }

  double ratio(const std::vector<double>& v) const {
    double mass = 0;
    for (double x : v) mass += std::pow(x, q_);
    if (mass == 0) return -1;
    double log_rhs = 0;
    for (std::size_t i = 0; i < n_; ++i) log_rhs += std::log(variation(v, i));
    log_rhs = log_rhs / static_cast<double>(n_) - std::log(2.0);
    return std::exp(std::log(mass) / q_ - log_rhs);
  }

 private:
  double variation(const std::vector<double>& v, std::size_t axis) const {
    const std::size_t len = static_cast<std::size_t>(sides_[axis]);
    const std::size_t st = strides_[axis];
    double total = 0;
    for (std::size_t c = 0; c < cells_; ++c) {
      const std::size_t pos = (c / st) % len;
      if (pos == 0) total += std::abs(v[c]);
      if (pos + 1 == len) {
        total += std::abs(v[c]);
      } else {
        total += std::abs(v[c + st] - v[c]);
      }
    }
    return total;
  }

  std::vector<Coord> sides_;
  std::size_t n_;
  std::vector<std::size_t> strides_;
  std::size_t cells_ = 0;
  double q_ = 2;
};

}  // namespace

SearchTrace ascend_function(const AscendConfig& config) {
  const Cuboid& window = config.window;
  require_ratio_dimension(window.dim());
  const LatticeSet cells_set = window.to_set();
  DenseGn dense(window);
  const std::size_t cells = dense.cells();

  // cells_set is sorted lexicographically, which is the dense row-major order.
  std::vector<Rational> exact(cells);
  Rng rng(config.seed);
  if (config.start) {
    if (config.start->dim() != window.dim()) throw InvalidInput("start function has the wrong dimension");
    for (const auto& e : *config.start) {
      if (!cells_set.contains(e.point)) throw InvalidInput("start function leaves the window");
      if (e.value < 0 || e.value > 1) throw InvalidInput("start values must lie in [0, 1]");
    }
    for (std::size_t c = 0; c < cells; ++c) exact[c] = (*config.start)(cells_set.points()[c]);
  } else {
    for (std::size_t c = 0; c < cells; ++c) {
      exact[c] = Rational(static_cast<long>(1 + rng.below(kCoarseSteps)), kCoarseSteps);
      exact[c].canonicalize();
    }
  }
  std::vector<double> values(cells);
  for (std::size_t c = 0; c < cells; ++c) values[c] = to_double(exact[c]);

  SearchTrace trace;
  trace.seed = config.seed;
  trace.objective = Objective::kGnRatio;
  trace.iterations = config.iterations;
  History history(config.iterations, config.samples);

  double current = dense.ratio(values);
  if (current < 0) throw DegenerateInput("degenerate input: zero function");
  history.record(0, current, trace);

  for (std::uint64_t it = 1; it <= config.iterations; ++it) {
    const std::size_t cell = static_cast<std::size_t>((it - 1) % cells);
    const double saved = values[cell];
    long best_fine = -1;
    double best = current;
    auto try_value = [&](long fine) {
      values[cell] = static_cast<double>(fine) / kFineSteps;
      double r = dense.ratio(values);
      if (r > best) {
        best = r;
        best_fine = fine;
      }
    };
    long coarse_best = -1;
    for (long j = 0; j <= kCoarseSteps; ++j) {
      const long before = best_fine;
      try_value(j * (kFineSteps / kCoarseSteps));
      if (best_fine != before) coarse_best = j;
    }
    const long centre = coarse_best >= 0 ? coarse_best * (kFineSteps / kCoarseSteps)
                                         : std::lround(saved * kFineSteps);
    const long span = kFineSteps / kCoarseSteps - 1;
    for (long k = std::max(0L, centre - span); k <= std::min(kFineSteps, centre + span); ++k) try_value(k);
    if (best_fine >= 0) {
      values[cell] = static_cast<double>(best_fine) / kFineSteps;
      exact[cell] = Rational(best_fine, kFineSteps);
      exact[cell].canonicalize();
      current = best;
      trace.best_iteration = it;
    } else {
      values[cell] = saved;
    }
    history.record(it, current, trace);
  }

  std::vector<SparseFunction::Entry> entries;
  for (std::size_t c = 0; c < cells; ++c) entries.push_back({cells_set.points()[c], exact[c]});
  SparseFunction best_f(window.dim(), std::move(entries));
  trace.best_value = gn_ratio(best_f);
  if (!trace.history.empty()) trace.history.back().second = trace.best_value;
  trace.best_input = std::move(best_f);
  return trace;
}

// ---------------------------------------------------------------------------
// Fuzzing.

std::uint64_t FuzzSummary::total_violations() const {
  std::uint64_t total = line_bound_failures + chain_failures;
  for (const auto& [ineq, stats] : per_inequality) total += stats.violations;
  return total;
}

namespace {

std::vector<Rational> exponents_for(const FuzzConfig& config) {
  if (!config.exponents.empty()) return config.exponents;
  return {Rational(1, 2), Rational(1), Rational(2),
          Rational(static_cast<long>(config.n), static_cast<long>(config.n - 1))};
}

void validate(const FuzzConfig& config) {
  require_ratio_dimension(config.n);
  if (config.count < 1) throw InvalidInput("fuzz count must be >= 1");
  if (config.window < 1) throw InvalidInput("fuzz window must be >= 1");
  if (ipow(config.window, config.n) > 4096) throw InvalidInput("fuzz window has too many cells");
  if (config.denominator < 1) throw InvalidInput("fuzz denominator must be >= 1");
  if (!(config.tol > 0)) throw InvalidInput("tolerance must be positive");
  if (!(config.density >= 0 && config.density <= 1)) throw InvalidInput("density must lie in [0, 1]");
  for (const auto& p : config.exponents) {
    if (p <= 0) throw InvalidInput("fuzz exponents must be positive");
  }
}

constexpr std::array<Inequality, 8> kAllInequalities{
    Inequality::kGagliardoNirenberg, Inequality::kSobolev,
    Inequality::kIsoperimetric,      Inequality::kLogSobolevDirectional,
    Inequality::kLogSobolev,         Inequality::kBrascampLieb,
    Inequality::kLogBrascampLieb,    Inequality::kLoomisWhitney,
};

struct SampleOutcome {
  struct Check {
    double deficit = 0;
    double relative = 0;
    Relation relation = Relation::kStrict;
  };
  std::array<Check, 8> checks;
  bool line_bound_ok = true;
  bool chain_ok = true;
};

SampleOutcome run_sample(const FuzzConfig& config, const std::vector<Rational>& exponents,
                         std::uint64_t index) {
  const SparseFunction f = fuzz_sample(config, index);
  const SparseFunction g = f.abs();
  const LatticeSet a = f.support();
  const Rational& p = exponents[index % exponents.size()];
  const double tol = config.tol;

  const InequalityReport gn = check_gn(f, tol);
  const InequalityReport bl = check_bl(g, tol);
  const std::array<InequalityReport, 8> reports{
      gn,
      check_sobolev(f, tol),
      check_isoperimetric(a, tol),
      check_log_sobolev(g, p, true, tol, true),
      check_log_sobolev(g, p, false, tol, true),
      bl,
      check_log_bl(g, p, tol, true),
      check_loomis_whitney(a, tol),
  };
  SampleOutcome out;
  for (std::size_t k = 0; k < reports.size(); ++k) {
    const auto& r = reports[k];
    out.checks[k] = {r.deficit, r.deficit / std::max({1.0, std::abs(r.lhs), std::abs(r.rhs)}),
                     r.relation};
  }
  for (Axis i = 0; i < f.dim(); ++i) {
    if (!pointwise_line_bound(f, i).holds) out.line_bound_ok = false;
    // |f|_i <= 1/2 sum |d_i f| integrates to ||(|f|)_i||_1 <= 1/2 ||d_i f||_1.
    if (2 * l1_norm(max_projection(g, i)) > partial_l1(f, i)) out.chain_ok = false;
  }
  if (relation_from_floats(gn.lhs, bl.rhs, tol) == Relation::kViolated ||
      relation_from_floats(bl.rhs, gn.rhs, tol) == Relation::kViolated) {
    out.chain_ok = false;
  }
  return out;
}

std::size_t worker_count(std::size_t requested, std::size_t jobs) {
  std::size_t threads = requested;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  return std::max<std::size_t>(1, std::min(threads, jobs));
}

}  // namespace

SparseFunction fuzz_sample(const FuzzConfig& config, std::uint64_t index) {
  validate(config);
  Rng rng(config.seed, index);
  const std::size_t cells = static_cast<std::size_t>(ipow(config.window, config.n));
  BoxGeometry box{config.n, config.window, cells};
  const bool as_indicator = rng.chance(config.indicator_fraction);
  const long den = static_cast<long>(config.denominator);
  auto draw_value = [&] {
    Rational v(static_cast<long>(1 + rng.below(config.denominator)), den);
    v.canonicalize();
    return rng.below(2) == 0 ? v : Rational(-v);
  };
  const Rational lambda = draw_value();
  std::vector<SparseFunction::Entry> entries;
  // Half the indicators are sub-boxes, so equality cases show up at every n.
  if (as_indicator && rng.below(2) == 0) {
    std::vector<std::pair<Coord, Coord>> sides(config.n);
    for (auto& [a, b] : sides) {
      a = static_cast<Coord>(rng.below(config.window));
      b = static_cast<Coord>(rng.below(config.window));
      if (a > b) std::swap(a, b);
    }
    const LatticeSet box_set = Cuboid(std::move(sides)).to_set();
    for (const auto& z : box_set.points()) entries.push_back({z, lambda});
    return SparseFunction(config.n, std::move(entries));
  }
  for (std::size_t c = 0; c < cells; ++c) {
    if (rng.chance(config.density)) {
      entries.push_back({LatticePoint(box.decode(c)), as_indicator ? lambda : draw_value()});
    }
  }
  if (entries.empty()) {
    entries.push_back({LatticePoint(box.decode(static_cast<std::size_t>(rng.below(cells)))), lambda});
  }
  return SparseFunction(config.n, std::move(entries));
}

FuzzSummary fuzz(const FuzzConfig& config) {
  validate(config);
  const auto exponents = exponents_for(config);
  std::vector<SampleOutcome> outcomes(config.count);

  const std::size_t threads = worker_count(config.threads, config.count);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    try {
      for (std::uint64_t i = next++; i < config.count; i = next++) {
        outcomes[i] = run_sample(config, exponents, i);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = config.count;
    }
  };
  if (threads == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  // Deterministic reduce in index order.
  FuzzSummary summary;
  summary.config = config;
  double worst_relative = std::numeric_limits<double>::infinity();
  for (std::uint64_t i = 0; i < config.count; ++i) {
    const auto& o = outcomes[i];
    for (std::size_t k = 0; k < kAllInequalities.size(); ++k) {
      const auto& c = o.checks[k];
      FuzzStats& s = summary.per_inequality[kAllInequalities[k]];
      if (s.instances == 0 || c.deficit < s.min_deficit) {
        s.min_deficit = c.deficit;
        s.worst_index = i;
      }
      if (s.instances == 0 || c.deficit > s.max_deficit) s.max_deficit = c.deficit;
      ++s.instances;
      if (c.relation == Relation::kViolated) ++s.violations;
      if (c.relation == Relation::kExactEqual) {
        ++s.exact_equal;
      } else if (!s.min_deficit_non_extremal || c.deficit < *s.min_deficit_non_extremal) {
        s.min_deficit_non_extremal = c.deficit;
      }
      if (c.relative < worst_relative) {
        worst_relative = c.relative;
        summary.worst_index = i;
      }
    }
    summary.line_bound_checks += config.n;
    if (!o.line_bound_ok) ++summary.line_bound_failures;
    ++summary.chain_checks;
    if (!o.chain_ok) ++summary.chain_failures;
  }
  summary.worst_input = fuzz_sample(config, summary.worst_index);
  return summary;
}

}  // namespace latineq
