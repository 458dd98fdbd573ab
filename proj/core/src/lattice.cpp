#include "latineq/lattice.hpp"

#include <algorithm>
#include <string>

#include "latineq/errors.hpp"

namespace latineq {

LatticePoint LatticePoint::shifted(Axis i, Coord k) const {
  LatticePoint out = *this;
  out.coords_[i] += k;
  return out;
}

LatticePoint LatticePoint::dropped(Axis i) const {
  std::vector<Coord> out;
  out.reserve(coords_.size() - 1);
  for (Axis j = 0; j < coords_.size(); ++j) {
    if (j != i) out.push_back(coords_[j]);
  }
  return LatticePoint(std::move(out));
}

LatticePoint LatticePoint::translated(std::span<const Coord> offset) const {
  LatticePoint out = *this;
  for (Axis j = 0; j < coords_.size(); ++j) out.coords_[j] += offset[j];
  return out;
}

namespace {

void require_dim(const LatticePoint& z, std::size_t dim) {
  if (z.dim() != dim) {
    throw InvalidInput("point of length " + std::to_string(z.dim()) +
                       " in a container of dimension " + std::to_string(dim));
  }
}

}  // namespace

LatticeSet::LatticeSet(std::size_t dim, std::vector<LatticePoint> points)
    : dim_(dim), points_(std::move(points)) {
  for (const auto& z : points_) require_dim(z, dim_);
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
}

bool LatticeSet::contains(const LatticePoint& z) const {
  return std::binary_search(points_.begin(), points_.end(), z);
}

std::vector<std::pair<Coord, Coord>> LatticeSet::bounding_box() const {
  if (points_.empty()) throw DegenerateInput("degenerate input: empty set");
  std::vector<std::pair<Coord, Coord>> box(dim_);
  for (Axis i = 0; i < dim_; ++i) box[i] = {points_.front()[i], points_.front()[i]};
  for (const auto& z : points_) {
    for (Axis i = 0; i < dim_; ++i) {
      box[i].first = std::min(box[i].first, z[i]);
      box[i].second = std::max(box[i].second, z[i]);
    }
  }
  return box;
}

LatticeSet LatticeSet::translated(std::span<const Coord> offset) const {
  LatticeSet out(dim_);
  out.points_.reserve(points_.size());
  // Translation preserves lexicographic order.
  for (const auto& z : points_) out.points_.push_back(z.translated(offset));
  return out;
}

LatticeSet LatticeSet::canonical_translate() const {
  if (points_.empty()) return *this;
  auto box = bounding_box();
  std::vector<Coord> offset(dim_);
  for (Axis i = 0; i < dim_; ++i) offset[i] = -box[i].first;
  return translated(offset);
}

SparseFunction::SparseFunction(std::size_t dim, std::vector<Entry> entries) : dim_(dim) {
  entries_.reserve(entries.size());
  for (auto& e : entries) {
    require_dim(e.point, dim_);
    if (e.value != 0) entries_.push_back(std::move(e));
  }
  std::sort(entries_.begin(), entries_.end(),
            [](const Entry& a, const Entry& b) { return a.point < b.point; });
  for (std::size_t k = 1; k < entries_.size(); ++k) {
    if (entries_[k].point == entries_[k - 1].point) {
      throw InvalidInput("duplicate point in sparse function");
    }
  }
}

Rational SparseFunction::operator()(const LatticePoint& z) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), z,
                             [](const Entry& e, const LatticePoint& p) { return e.point < p; });
  if (it != entries_.end() && it->point == z) return it->value;
  return Rational(0);
}

LatticeSet SparseFunction::support() const {
  std::vector<LatticePoint> pts;
  pts.reserve(entries_.size());
  for (const auto& e : entries_) pts.push_back(e.point);
  return LatticeSet(dim_, std::move(pts));
}

bool SparseFunction::is_nonnegative() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const Entry& e) { return e.value > 0; });
}

SparseFunction SparseFunction::scaled(const Rational& factor) const {
  SparseFunction out(dim_);
  if (factor == 0) return out;
  out.entries_.reserve(entries_.size());
  for (const auto& e : entries_) out.entries_.push_back({e.point, e.value * factor});
  return out;
}

SparseFunction SparseFunction::abs() const {
  SparseFunction out(dim_);
  out.entries_.reserve(entries_.size());
  for (const auto& e : entries_) out.entries_.push_back({e.point, ::abs(e.value)});
  return out;
}

SparseFunction SparseFunction::translated(std::span<const Coord> offset) const {
  SparseFunction out(dim_);
  out.entries_.reserve(entries_.size());
  for (const auto& e : entries_) out.entries_.push_back({e.point.translated(offset), e.value});
  return out;
}

bool SparseFunction::operator==(const SparseFunction& other) const {
  if (dim_ != other.dim_ || entries_.size() != other.entries_.size()) return false;
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    if (entries_[k].point != other.entries_[k].point ||
        entries_[k].value != other.entries_[k].value) {
      return false;
    }
  }
  return true;
}

Cuboid::Cuboid(std::vector<std::pair<Coord, Coord>> intervals) : intervals_(std::move(intervals)) {
  if (intervals_.empty()) throw InvalidInput("cuboid needs at least one interval");
  for (const auto& [a, b] : intervals_) {
    if (a > b) {
      throw InvalidInput("cuboid interval [" + std::to_string(a) + ", " + std::to_string(b) +
                         "] has a > b");
    }
  }
}

Cuboid Cuboid::with_sides(std::span<const Coord> sides) {
  std::vector<std::pair<Coord, Coord>> intervals;
  for (Coord s : sides) {
    if (s < 1) throw InvalidInput("cuboid side length must be >= 1");
    intervals.emplace_back(0, s - 1);
  }
  return Cuboid(std::move(intervals));
}

std::vector<Coord> Cuboid::side_lengths() const {
  std::vector<Coord> out;
  out.reserve(intervals_.size());
  for (const auto& [a, b] : intervals_) out.push_back(b - a + 1);
  return out;
}

BigInt Cuboid::cardinality() const {
  BigInt out = 1;
  for (Coord s : side_lengths()) out *= static_cast<long>(s);
  return out;
}

bool Cuboid::is_cube() const {
  auto sides = side_lengths();
  return std::all_of(sides.begin(), sides.end(), [&](Coord s) { return s == sides.front(); });
}

LatticeSet Cuboid::to_set() const {
  std::vector<LatticePoint> pts;
  std::vector<Coord> cur;
  for (const auto& iv : intervals_) cur.push_back(iv.first);
  while (true) {
    pts.emplace_back(cur);
    Axis i = dim();
    while (i > 0) {
      --i;
      if (cur[i] < intervals_[i].second) {
        ++cur[i];
        break;
      }
      cur[i] = intervals_[i].first;
      if (i == 0) return LatticeSet(dim(), std::move(pts));
    }
  }
}

}  // namespace latineq
