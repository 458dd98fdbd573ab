#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "latineq/rational.hpp"

namespace latineq {

using Coord = std::int64_t;

/// Axis index, 0-based.
using Axis = std::size_t;

/// A point z of Z^n.
class LatticePoint {
 public:
  LatticePoint() = default;
  explicit LatticePoint(std::vector<Coord> coords) : coords_(std::move(coords)) {}
  LatticePoint(std::initializer_list<Coord> coords) : coords_(coords) {}

  std::size_t dim() const { return coords_.size(); }
  Coord operator[](Axis i) const { return coords_[i]; }
  std::span<const Coord> coords() const { return coords_; }

  /// z + k e_i.
  LatticePoint shifted(Axis i, Coord k = 1) const;
  /// z with coordinate i deleted (a point of Z^{n-1}).
  LatticePoint dropped(Axis i) const;
  /// z + v.
  LatticePoint translated(std::span<const Coord> offset) const;

  auto operator<=>(const LatticePoint&) const = default;
  bool operator==(const LatticePoint&) const = default;

 private:
  std::vector<Coord> coords_;
};

/// A finite subset A of Z^n. Points are kept sorted and unique.
class LatticeSet {
 public:
  explicit LatticeSet(std::size_t dim) : dim_(dim) {}
  /// Duplicates are merged; every point must have length dim.
  LatticeSet(std::size_t dim, std::vector<LatticePoint> points);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  bool contains(const LatticePoint& z) const;
  std::span<const LatticePoint> points() const { return points_; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  /// Per-axis minimum and maximum; requires a nonempty set.
  std::vector<std::pair<Coord, Coord>> bounding_box() const;
  LatticeSet translated(std::span<const Coord> offset) const;
  /// The translate whose per-axis minimum is 0.
  LatticeSet canonical_translate() const;

  bool operator==(const LatticeSet&) const = default;

 private:
  std::size_t dim_;
  std::vector<LatticePoint> points_;
};

/// Finitely supported function Z^n -> Q. Stored entries are never zero, so
/// the stored keys are exactly the support.
class SparseFunction {
 public:
  struct Entry {
    LatticePoint point;
    Rational value;
  };

  explicit SparseFunction(std::size_t dim) : dim_(dim) {}
  /// Zero values are dropped. Repeated points are an error.
  SparseFunction(std::size_t dim, std::vector<Entry> entries);

  std::size_t dim() const { return dim_; }
  std::size_t support_size() const { return entries_.size(); }
  bool is_zero() const { return entries_.empty(); }
  std::span<const Entry> entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  /// f(z); zero off the support.
  Rational operator()(const LatticePoint& z) const;
  LatticeSet support() const;
  bool is_nonnegative() const;

  SparseFunction scaled(const Rational& factor) const;
  SparseFunction abs() const;
  SparseFunction translated(std::span<const Coord> offset) const;

  bool operator==(const SparseFunction& other) const;

 private:
  std::size_t dim_;
  std::vector<Entry> entries_;
};

/// Product of integer intervals [a_i, b_i].
class Cuboid {
 public:
  /// Throws InvalidInput unless a_i <= b_i for all i and n >= 1.
  explicit Cuboid(std::vector<std::pair<Coord, Coord>> intervals);
  /// [0, s_1 - 1] x ... x [0, s_n - 1].
  static Cuboid with_sides(std::span<const Coord> sides);

  std::size_t dim() const { return intervals_.size(); }
  std::span<const std::pair<Coord, Coord>> intervals() const { return intervals_; }
  /// b_i - a_i + 1.
  std::vector<Coord> side_lengths() const;
  BigInt cardinality() const;
  bool is_cube() const;
  LatticeSet to_set() const;

 private:
  std::vector<std::pair<Coord, Coord>> intervals_;
};

}  // namespace latineq
