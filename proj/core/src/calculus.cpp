#include "latineq/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "latineq/errors.hpp"

namespace latineq {
namespace {

void require_axis(std::size_t dim, Axis i) {
  if (i >= dim) {
    throw InvalidInput("axis " + std::to_string(i) + " out of range for dimension " +
                       std::to_string(dim));
  }
}

void require_positive_exponent(const Rational& p) {
  if (p <= 0) throw InvalidInput("exponent p must be positive, got " + to_string(p));
}

// One support entry seen along axis i: the line it lies on and its position.
struct LineEntry {
  LatticePoint line;
  Coord position;
  const Rational* value;
};

// Support entries grouped by line parallel to e_i, ordered by position.
std::vector<LineEntry> entries_by_line(const SparseFunction& f, Axis i) {
  std::vector<LineEntry> out;
  out.reserve(f.support_size());
  for (const auto& e : f) out.push_back({e.point.dropped(i), e.point[i], &e.value});
  std::sort(out.begin(), out.end(), [](const LineEntry& a, const LineEntry& b) {
    if (a.line != b.line) return a.line < b.line;
    return a.position < b.position;
  });
  return out;
}

// Calls visit(first, last) for each run of entries sharing a line.
template <typename Visit>
void for_each_line(const std::vector<LineEntry>& entries, Visit&& visit) {
  std::size_t start = 0;
  while (start < entries.size()) {
    std::size_t stop = start + 1;
    while (stop < entries.size() && entries[stop].line == entries[start].line) ++stop;
    visit(start, stop);
    start = stop;
  }
}

// sum_k |d_i f| along one line: the values with zeros filled in between gaps.
Rational line_variation(const std::vector<LineEntry>& entries, std::size_t start,
                        std::size_t stop) {
  Rational total = abs(*entries[start].value);
  for (std::size_t k = start + 1; k < stop; ++k) {
    const Rational& prev = *entries[k - 1].value;
    const Rational& cur = *entries[k].value;
    if (entries[k].position == entries[k - 1].position + 1) {
      total += abs(cur - prev);
    } else {
      total += abs(prev) + abs(cur);
    }
  }
  total += abs(*entries[stop - 1].value);
  return total;
}

double root(long double sum, const Rational& p) {
  if (sum <= 0) return 0.0;
  if (p == 1) return static_cast<double>(sum);
  if (p == 2) return static_cast<double>(std::sqrt(sum));
  return static_cast<double>(std::pow(sum, 1.0L / static_cast<long double>(to_double(p))));
}

}  // namespace

SparseFunction indicator(const LatticeSet& a, const Rational& lambda) {
  if (lambda == 0) throw InvalidInput("indicator scale must be nonzero");
  if (a.empty()) throw InvalidInput("indicator of the empty set");
  std::vector<SparseFunction::Entry> entries;
  entries.reserve(a.size());
  for (const auto& z : a) entries.push_back({z, lambda});
  return SparseFunction(a.dim(), std::move(entries));
}

SparseFunction partial_difference(const SparseFunction& f, Axis i) {
  require_axis(f.dim(), i);
  std::map<LatticePoint, Rational> acc;
  for (const auto& e : f) {
    acc[e.point] -= e.value;
    acc[e.point.shifted(i, -1)] += e.value;
  }
  std::vector<SparseFunction::Entry> entries;
  entries.reserve(acc.size());
  for (auto& [z, v] : acc) {
    if (v != 0) entries.push_back({z, std::move(v)});
  }
  return SparseFunction(f.dim(), std::move(entries));
}

Rational power_sum(const SparseFunction& f, unsigned long k) {
  Rational total = 0;
  for (const auto& e : f) total += pow_exact(e.value, k);
  return total;
}

Rational l1_norm(const SparseFunction& f) {
  Rational total = 0;
  for (const auto& e : f) total += abs(e.value);
  return total;
}

double norm(const SparseFunction& f, const Rational& p) {
  require_positive_exponent(p);
  if (f.is_zero()) return 0.0;
  if (is_positive_integer(p) && p.get_num().fits_ulong_p()) {
    Rational exact = power_sum(f, p.get_num().get_ui());
    if (p == 1) return to_double(exact);
    if (p == 2) return std::sqrt(to_double(exact));
    return std::pow(to_double(exact), 1.0 / to_double(p));
  }
  long double sum = 0;
  for (const auto& e : f) sum += pow_abs(e.value, p);
  return root(sum, p);
}

Rational partial_l1(const SparseFunction& f, Axis i) {
  require_axis(f.dim(), i);
  auto entries = entries_by_line(f, i);
  Rational total = 0;
  for_each_line(entries, [&](std::size_t start, std::size_t stop) {
    total += line_variation(entries, start, stop);
  });
  return total;
}

Rational diff_l1(const SparseFunction& f) {
  Rational total = 0;
  for (Axis i = 0; i < f.dim(); ++i) total += partial_l1(f, i);
  return total;
}

double diff_norm(const SparseFunction& f, const Rational& p) {
  require_positive_exponent(p);
  if (p == 1) return to_double(diff_l1(f));
  if (is_positive_integer(p) && p.get_num().fits_ulong_p()) {
    Rational exact = 0;
    for (Axis i = 0; i < f.dim(); ++i) exact += power_sum(partial_difference(f, i), p.get_num().get_ui());
    if (p == 2) return std::sqrt(to_double(exact));
    return std::pow(to_double(exact), 1.0 / to_double(p));
  }
  long double sum = 0;
  for (Axis i = 0; i < f.dim(); ++i) {
    for (const auto& e : partial_difference(f, i)) sum += pow_abs(e.value, p);
  }
  return root(sum, p);
}

SparseFunction max_projection(const SparseFunction& f, Axis i) {
  if (f.dim() < 2) throw InvalidInput("max_projection needs dimension >= 2");
  require_axis(f.dim(), i);
  if (!f.is_nonnegative()) throw DomainError("max_projection requires a nonnegative function");
  auto entries = entries_by_line(f, i);
  std::vector<SparseFunction::Entry> out;
  for_each_line(entries, [&](std::size_t start, std::size_t stop) {
    const Rational* best = entries[start].value;
    for (std::size_t k = start + 1; k < stop; ++k) {
      if (*entries[k].value > *best) best = entries[k].value;
    }
    out.push_back({entries[start].line, *best});
  });
  return SparseFunction(f.dim() - 1, std::move(out));
}

std::vector<Coord> coord_projection(const LatticeSet& a, Axis i) {
  require_axis(a.dim(), i);
  std::vector<Coord> out;
  out.reserve(a.size());
  for (const auto& z : a) out.push_back(z[i]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

LatticeSet hyperplane_projection(const LatticeSet& a, Axis i) {
  if (a.dim() < 2) throw InvalidInput("hyperplane_projection needs dimension >= 2");
  require_axis(a.dim(), i);
  std::vector<LatticePoint> pts;
  pts.reserve(a.size());
  for (const auto& z : a) pts.push_back(z.dropped(i));
  return LatticeSet(a.dim() - 1, std::move(pts));
}

std::size_t boundary_count(const LatticeSet& a, Axis i) {
  require_axis(a.dim(), i);
  std::size_t count = 0;
  for (const auto& z : a) {
    if (!a.contains(z.shifted(i, 1))) ++count;
    if (!a.contains(z.shifted(i, -1))) ++count;
  }
  return count;
}

std::size_t boundary_count(const LatticeSet& a) {
  std::size_t count = 0;
  for (Axis i = 0; i < a.dim(); ++i) count += boundary_count(a, i);
  return count;
}

std::vector<Edge> boundary_edges(const LatticeSet& a) {
  std::vector<Edge> out;
  for (const auto& z : a) {
    for (Axis i = 0; i < a.dim(); ++i) {
      for (Coord step : {Coord{-1}, Coord{1}}) {
        LatticePoint y = z.shifted(i, step);
        if (!a.contains(y)) out.emplace_back(z, std::move(y));
      }
    }
  }
  return out;
}

double entropy(const SparseFunction& f, const Rational& p) {
  require_positive_exponent(p);
  if (!f.is_nonnegative()) throw DomainError("entropy requires a nonnegative function");
  const double pd = to_double(p);
  long double total = 0;
  for (const auto& e : f) {
    if (e.value == 1) continue;
    total += static_cast<long double>(pow_abs(e.value, p)) * pd * log_of(e.value);
  }
  return static_cast<double>(total);
}

LineBoundReport pointwise_line_bound(const SparseFunction& f, Axis i) {
  require_axis(f.dim(), i);
  LineBoundReport report;
  auto entries = entries_by_line(f, i);
  std::optional<Rational> worst_slack;
  for_each_line(entries, [&](std::size_t start, std::size_t stop) {
    ++report.lines_checked;
    Rational peak = 0;
    for (std::size_t k = start; k < stop; ++k) peak = std::max(peak, Rational(abs(*entries[k].value)));
    Rational half = line_variation(entries, start, stop) / 2;
    Rational slack = half - peak;
    if (slack < 0) report.holds = false;
    if (slack != 0) report.all_equal = false;
    if (!worst_slack || slack < *worst_slack) {
      worst_slack = slack;
      report.worst_line = entries[start].line;
      report.worst_max = peak;
      report.worst_half_variation = half;
    }
  });
  return report;
}

}  // namespace latineq
