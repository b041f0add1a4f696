#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "quasispec/bandset.hpp"

using namespace quasispec;

TEST_CASE("construction normalizes: sorted, merged, degenerate kept") {
  const BandSet b({{3.0, 4.0}, {0.0, 1.0}, {0.5, 2.0}});
  REQUIRE(b.size() == 2);
  CHECK((b.intervals()[0] == Interval{0.0, 2.0}));
  CHECK((b.intervals()[1] == Interval{3.0, 4.0}));
  CHECK(b.measure() == doctest::Approx(3.0));
  CHECK(b.min() == 0.0);
  CHECK(b.max() == 4.0);

  const BandSet point({{1.0, 1.0}});
  CHECK(point.size() == 1);
  CHECK(point.measure() == 0.0);
  CHECK_FALSE(point.empty());

  CHECK_THROWS_AS(BandSet({{2.0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(BandSet({{0.0, std::nan("")}}), std::invalid_argument);
  CHECK(BandSet{}.empty());
  CHECK_THROWS_AS(BandSet{}.min(), std::logic_error);
}

TEST_CASE("membership with tolerance") {
  const BandSet b({{0.0, 1.0}, {2.0, 3.0}});
  CHECK(b.contains(0.5, 0.0));
  CHECK(b.contains(1.0, 0.0));
  CHECK_FALSE(b.contains(1.5, 0.0));
  CHECK(b.contains(1.0 + 1e-10, 1e-9));
  CHECK(b.contains_interval(2.1, 2.9, 0.0));
  CHECK_FALSE(b.contains_interval(0.5, 2.5, 0.0));  // spans the gap
}

TEST_CASE("set algebra on closed interval unions") {
  const BandSet a({{0.0, 3.0}});
  const BandSet b({{1.0, 2.0}});
  const BandSet diff = a.difference(b);
  REQUIRE(diff.size() == 2);
  CHECK((diff.intervals()[0] == Interval{0.0, 1.0}));
  CHECK((diff.intervals()[1] == Interval{2.0, 3.0}));

  const BandSet u = diff.unite(b);
  REQUIRE(u.size() == 1);
  CHECK((u.intervals()[0] == Interval{0.0, 3.0}));

  const BandSet i = a.intersect(BandSet({{2.5, 5.0}, {-1.0, 0.5}}));
  REQUIRE(i.size() == 2);
  CHECK((i.intervals()[0] == Interval{0.0, 0.5}));
  CHECK((i.intervals()[1] == Interval{2.5, 3.0}));

  CHECK(a.intersect(BandSet({{5.0, 6.0}})).empty());
  CHECK(a.difference(a).measure() == doctest::Approx(0.0));
}

TEST_CASE("symmetric difference measure") {
  const BandSet a({{0.0, 2.0}});
  const BandSet b({{1.0, 3.0}});
  CHECK(a.symmetric_difference_measure(b) == doctest::Approx(2.0));
  CHECK(a.symmetric_difference_measure(a) == doctest::Approx(0.0));
}

TEST_CASE("fatten expands endpoints and merges across closed gaps") {
  const BandSet b({{0.0, 1.0}, {1.5, 2.0}});
  const BandSet f = b.fatten(0.3);
  REQUIRE(f.size() == 1);
  CHECK(f.intervals()[0].lo == doctest::Approx(-0.3));
  CHECK(f.intervals()[0].hi == doctest::Approx(2.3));
}

TEST_CASE("Hausdorff distance: hand-checked cases") {
  const BandSet whole({{0.0, 10.0}});
  const BandSet gapped({{0.0, 4.0}, {6.0, 10.0}});
  // farthest point of `whole` from `gapped` is the gap midpoint 5
  CHECK(BandSet::hausdorff(whole, gapped) == doctest::Approx(1.0));
  CHECK(BandSet::hausdorff(gapped, whole) == doctest::Approx(1.0));

  CHECK(BandSet::hausdorff(BandSet({{0.0, 1.0}}), BandSet({{3.0, 4.0}})) ==
        doctest::Approx(3.0));
  CHECK(BandSet::hausdorff(whole, whole) == 0.0);
  CHECK(BandSet::hausdorff(BandSet{}, BandSet{}) == 0.0);
  CHECK(std::isinf(BandSet::hausdorff(whole, BandSet{})));

  // asymmetric containment: directed distances differ, max wins
  const BandSet inner({{4.0, 5.0}});
  CHECK(BandSet::hausdorff(inner, whole) == doctest::Approx(5.0));
}

TEST_CASE("string rendering") {
  CHECK_FALSE(BandSet({{0.0, 1.0}}).str().empty());
}
