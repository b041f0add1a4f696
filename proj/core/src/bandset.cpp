#include "quasispec/bandset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace quasispec {

namespace {
constexpr double inf = std::numeric_limits<double>::infinity();
}

BandSet::BandSet(std::vector<Interval> intervals) {
  for (const auto& iv : intervals) {
    if (!(iv.lo <= iv.hi) || !std::isfinite(iv.lo) || !std::isfinite(iv.hi))
      throw std::invalid_argument("BandSet: malformed interval");
  }
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& a, const Interval& b) {
              return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
            });
  for (const auto& iv : intervals) {
    if (!parts_.empty() && iv.lo <= parts_.back().hi + merge_tol)
      parts_.back().hi = std::max(parts_.back().hi, iv.hi);
    else
      parts_.push_back(iv);
  }
}

double BandSet::measure() const {
  double m = 0;
  for (const auto& iv : parts_) m += iv.length();
  return m;
}

double BandSet::min() const {
  if (parts_.empty()) throw std::logic_error("BandSet::min: empty set");
  return parts_.front().lo;
}

double BandSet::max() const {
  if (parts_.empty()) throw std::logic_error("BandSet::max: empty set");
  return parts_.back().hi;
}

bool BandSet::contains(double e, double tol) const {
  for (const auto& iv : parts_)
    if (e >= iv.lo - tol && e <= iv.hi + tol) return true;
  return false;
}

bool BandSet::contains_interval(double a, double b, double tol) const {
  for (const auto& iv : parts_)
    if (a >= iv.lo - tol && b <= iv.hi + tol) return true;
  return false;
}

BandSet BandSet::unite(const BandSet& other) const {
  std::vector<Interval> all = parts_;
  all.insert(all.end(), other.parts_.begin(), other.parts_.end());
  return BandSet(std::move(all));
}

BandSet BandSet::intersect(const BandSet& other) const {
  std::vector<Interval> out;
  std::size_t i = 0, j = 0;
  while (i < parts_.size() && j < other.parts_.size()) {
    const Interval& a = parts_[i];
    const Interval& b = other.parts_[j];
    const double lo = std::max(a.lo, b.lo);
    const double hi = std::min(a.hi, b.hi);
    if (lo <= hi) out.push_back({lo, hi});
    if (a.hi < b.hi)
      ++i;
    else
      ++j;
  }
  return BandSet(std::move(out));
}

BandSet BandSet::difference(const BandSet& other) const {
  std::vector<Interval> out;
  for (const auto& a : parts_) {
    double cursor = a.lo;
    for (const auto& b : other.parts_) {
      if (b.hi < cursor) continue;
      if (b.lo > a.hi) break;
      if (b.lo > cursor) out.push_back({cursor, std::min(b.lo, a.hi)});
      cursor = std::max(cursor, b.hi);
      if (cursor >= a.hi) break;
    }
    if (cursor < a.hi) out.push_back({cursor, a.hi});
  }
  return BandSet(std::move(out));
}

BandSet BandSet::fatten(double eps) const {
  if (eps < 0) throw std::invalid_argument("BandSet::fatten: eps must be >= 0");
  std::vector<Interval> out;
  out.reserve(parts_.size());
  for (const auto& iv : parts_) out.push_back({iv.lo - eps, iv.hi + eps});
  return BandSet(std::move(out));
}

double BandSet::symmetric_difference_measure(const BandSet& other) const {
  return difference(other).measure() + other.difference(*this).measure();
}

namespace {

double dist_to(const BandSet& s, double x) {
  double d = inf;
  for (const auto& iv : s.intervals()) {
    if (x < iv.lo)
      d = std::min(d, iv.lo - x);
    else if (x > iv.hi)
      d = std::min(d, x - iv.hi);
    else
      return 0;
  }
  return d;
}

// sup_{x in a} dist(x, b): the restricted distance function is piecewise
// linear with peaks only at endpoints of a or at gap midpoints of b.
double directed(const BandSet& a, const BandSet& b) {
  double worst = 0;
  for (const auto& iv : a.intervals()) {
    worst = std::max(worst, dist_to(b, iv.lo));
    worst = std::max(worst, dist_to(b, iv.hi));
  }
  const auto& bp = b.intervals();
  for (std::size_t j = 0; j + 1 < bp.size(); ++j) {
    const double mid = 0.5 * (bp[j].hi + bp[j + 1].lo);
    if (a.contains(mid)) worst = std::max(worst, dist_to(b, mid));
  }
  return worst;
}

}  // namespace

double BandSet::hausdorff(const BandSet& a, const BandSet& b) {
  if (a.empty() && b.empty()) return 0;
  if (a.empty() || b.empty()) return inf;
  return std::max(directed(a, b), directed(b, a));
}

std::string BandSet::str() const {
  std::string s = "{";
  char buf[80];
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%s[%.12g, %.12g]", i ? ", " : "", parts_[i].lo,
                  parts_[i].hi);
    s += buf;
  }
  return s + "}";
}

}  // namespace quasispec
