// Finite unions of closed intervals on the energy axis.
#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace quasispec {

struct Interval {
  double lo = 0, hi = 0;
  double length() const { return hi - lo; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

// Disjoint, sorted, closed intervals. Normalization merges overlaps and
// near-touches (gap <= merge_tol) and drops degenerate slivers shorter than
// zero; zero-length points are kept (band can be a single energy).
class BandSet {
 public:
  static constexpr double merge_tol = 1e-10;

  BandSet() = default;
  explicit BandSet(std::vector<Interval> intervals);  // normalizes

  const std::vector<Interval>& intervals() const { return parts_; }
  std::size_t size() const { return parts_.size(); }
  bool empty() const { return parts_.empty(); }
  double measure() const;
  double min() const;  // throws std::logic_error when empty
  double max() const;

  bool contains(double e, double tol = 0) const;
  // whole [a,b] inside one component, up to tol at the edges.
  bool contains_interval(double a, double b, double tol = 0) const;

  BandSet unite(const BandSet& other) const;
  BandSet intersect(const BandSet& other) const;
  BandSet difference(const BandSet& other) const;  // closure of set difference
  // Minkowski fattening by eps >= 0: union of [lo - eps, hi + eps].
  BandSet fatten(double eps) const;

  double symmetric_difference_measure(const BandSet& other) const;
  // Hausdorff distance between closed sets; +inf when exactly one is empty,
  // 0 when both are.
  static double hausdorff(const BandSet& a, const BandSet& b);

  std::string str() const;

 private:
  std::vector<Interval> parts_;
};

}  // namespace quasispec
