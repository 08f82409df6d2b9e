#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "tropivor/bisect.hpp"

using namespace tropivor;

namespace {

TorusPoint pt(std::vector<Rational> c) { return TorusPoint(std::move(c)); }

TorusPoint random_point(std::mt19937_64& rng, int d, int spread = 8) {
  std::uniform_int_distribution<int> num(-spread, spread), den(1, 3);
  std::vector<Rational> c(d + 1);
  for (auto& x : c) x = Rational(num(rng), den(rng));
  return TorusPoint(std::move(c));
}

std::vector<FaceType> all_proper_faces(int d) {
  std::vector<FaceType> out;
  for (int k = 0; k < d; ++k)
    for (auto& f : enumerate_faces(d, k)) out.push_back(std::move(f));
  return out;
}

bool in_poly(const HPolyhedron& h, const TorusPoint& x) {
  for (const auto& r : h.rows) {
    Rational lhs = 0;
    for (int j = 0; j <= h.d; ++j) lhs += r.coef[j] * x[j];
    if (r.rel == Rel::EQ ? lhs != r.rhs : lhs > r.rhs) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("labeling partition covers all indices once") {
  std::mt19937_64 rng(3);
  for (int d = 2; d <= 3; ++d) {
    auto faces = all_proper_faces(d);
    std::uniform_int_distribution<size_t> pick(0, faces.size() - 1);
    for (int trial = 0; trial < 300; ++trial) {
      const FaceType &f = faces[pick(rng)], &g = faces[pick(rng)];
      LabelingPartition l = labeling_partition(f, g);
      CHECK(l.l0.size() + l.lp.size() + l.lm.size() + l.lp1.size() + l.lm1.size() +
                l.lstar.size() ==
            static_cast<size_t>(d + 1));
    }
  }
}

TEST_CASE("closed-form cell feasibility agrees with the (gamma, delta) LP") {
  std::mt19937_64 rng(5);
  for (int d = 2; d <= 3; ++d) {
    auto faces = all_proper_faces(d);
    std::uniform_int_distribution<size_t> pick(0, faces.size() - 1);
    for (int trial = 0; trial < 400; ++trial) {
      TorusPoint a = random_point(rng, d), b = random_point(rng, d);
      if (a == b) continue;
      std::vector<Rational> v = diff(a, b);
      for (int rep = 0; rep < 8; ++rep) {
        const FaceType &f = faces[pick(rng)], &g = faces[pick(rng)];
        CHECK(cell_feasible_two(f, g, v) == cell_feasible_two_lp(f, g, v));
      }
    }
  }
}

TEST_CASE("cell feasibility agrees with the x-space polyhedron") {
  std::mt19937_64 rng(7);
  for (int d = 2; d <= 3; ++d) {
    auto faces = all_proper_faces(d);
    std::uniform_int_distribution<size_t> pick(0, faces.size() - 1);
    for (int trial = 0; trial < 150; ++trial) {
      TorusPoint a = random_point(rng, d), b = random_point(rng, d);
      if (a == b) continue;
      SiteSet s = SiteSet::make({a, b});
      for (int rep = 0; rep < 6; ++rep) {
        const FaceType &f = faces[pick(rng)], &g = faces[pick(rng)];
        bool wanted = feasible(cell_polyhedron(s, {0, 1}, {f, g})).has_value();
        CHECK(cell_feasible_two(f, g, diff(a, b)) == wanted);
      }
    }
  }
}

TEST_CASE("cell witnesses are equidistant and touch the right faces") {
  std::mt19937_64 rng(11);
  for (int d = 2; d <= 3; ++d) {
    auto faces = all_proper_faces(d);
    std::uniform_int_distribution<size_t> pick(0, faces.size() - 1);
    int lifted = 0;
    for (int trial = 0; trial < 800; ++trial) {
      TorusPoint a = random_point(rng, d), b = random_point(rng, d);
      if (a == b) continue;
      const FaceType &f = faces[pick(rng)], &g = faces[pick(rng)];
      auto x = cell_witness_two(a, b, f, g);
      CHECK(x.has_value() == cell_feasible_two(f, g, diff(a, b)));
      if (!x) continue;
      ++lifted;
      CHECK(trop_dist(a, *x) == trop_dist(b, *x));
      CHECK(Polytrope::cone_of_face(a, f).contains(*x));
      CHECK(Polytrope::cone_of_face(b, g).contains(*x));
    }
    CHECK(lifted > 20);
  }
}

TEST_CASE("bisector of two generic planar sites") {
  TorusPoint a = pt({0, 0, 0}), b = pt({0, 1, 3});
  auto cells = bisector_two(a, b);
  REQUIRE(!cells.empty());
  for (const auto& c : cells) {
    CHECK(c.dim == 1);  // pure of dimension d - 1
    CHECK(trop_dist(a, c.witness) == trop_dist(b, c.witness));
  }
  // The tropical midpoint of the connecting segment lies on the bisector.
  TorusPoint m = tropical_segment(a, b).midpoint;
  bool found = false;
  for (const auto& c : cells) found = found || in_poly(c.poly, m);
  CHECK(found);
}

TEST_CASE("bisector cells vanish on the degree-(d+1) hypersurface") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    TorusPoint a = random_point(rng, 2), b = random_point(rng, 2);
    if (a == b || weak_general_position(SiteSet::make({a, b}))) continue;
    auto terms = hypersurface_terms(a, b);
    for (const auto& c : bisector_two(a, b))
      CHECK(hypersurface_vanishes(terms, c.witness));
  }
}

TEST_CASE("bisected ordered partition classifies bisector patterns") {
  // Two pairs share a pattern of nonempty cells over all face pairs iff their
  // difference vectors induce the same bisected ordered partition.
  std::mt19937_64 rng(17);
  for (int d = 2; d <= 3; ++d) {
    auto faces = all_proper_faces(d);
    auto pattern = [&](const std::vector<Rational>& v) {
      std::vector<bool> bits;
      for (const auto& f : faces)
        for (const auto& g : faces) bits.push_back(cell_feasible_two(f, g, v));
      return bits;
    };
    for (int trial = 0; trial < 250; ++trial) {
      TorusPoint a = random_point(rng, d), b = random_point(rng, d);
      TorusPoint a2 = random_point(rng, d), b2 = random_point(rng, d);
      if (a == b || a2 == b2) continue;
      CHECK(same_bisector_class(a, b, a2, b2) ==
            (pattern(diff(a, b)) == pattern(diff(a2, b2))));
    }
  }
}

TEST_CASE("halfsphere splits the facets evenly for generic directions") {
  std::mt19937_64 rng(19);
  for (int d = 2; d <= 3; ++d) {
    for (int trial = 0; trial < 100; ++trial) {
      TorusPoint a = random_point(rng, d), b = random_point(rng, d);
      if (a == b || weak_general_position(SiteSet::make({a, b}))) continue;
      auto up = halfsphere(diff(a, b)), down = halfsphere(diff(b, a));
      CHECK(up.size() + down.size() == static_cast<size_t>(d * (d + 1)));
      // Opposite halfspheres are disjoint and exchange under negation.
      std::set<FaceType> seen(up.begin(), up.end());
      for (const auto& f : down) CHECK(seen.count(f) == 0);
    }
  }
}

TEST_CASE("sectors partition the facets under weak general position") {
  std::mt19937_64 rng(23);
  int done = 0;
  while (done < 100) {
    std::vector<TorusPoint> pts;
    for (int i = 0; i < 3; ++i) pts.push_back(random_point(rng, 3));
    SiteSet s = SiteSet::make_or_empty(std::move(pts));
    if (s.size() != 3 || weak_general_position(s)) continue;
    ++done;
    size_t total = 0;
    std::set<FaceType> seen;
    for (int i = 0; i < 3; ++i) {
      auto sec = sector(s, i);
      total += sec.size();
      for (const auto& f : sec) CHECK(seen.insert(f).second);
    }
    CHECK(total == 12);  // every facet's functional has a strict minimizer
  }
}

TEST_CASE("predicted component count matches the sector formula example") {
  // Sites whose sector components come out as (2, 1, 1): the bisector has
  // two connected components.
  SiteSet s = SiteSet::make({pt({0, 0, 4, 4}), pt({-3, 0, 2, 0}), pt({0, -3, 0, 2})});
  auto h0 = sector(s, 0);
  CHECK(h0.size() == 2);
  CHECK(sector_components(h0) == 2);
  CHECK(sector(s, 1).size() == 5);
  CHECK(sector(s, 2).size() == 5);
  CHECK(sector_components(sector(s, 1)) == 1);
  CHECK(sector_components(sector(s, 2)) == 1);
  CHECK(predicted_components_3pts(s) == 2);
}

TEST_CASE("empty bisector despite nonempty sectors") {
  SiteSet s = SiteSet::make({pt({1, -1, 0, 0}), pt({-1, 1, 0, 0}), pt({0, 0, 2, -2}),
                             pt({0, 0, -2, 2})});
  for (int i = 0; i < 4; ++i) CHECK(!sector(s, i).empty());
  CHECK(bisector_k(s).empty());
}

TEST_CASE("two circumcenters for the four-site example") {
  SiteSet s = SiteSet::make({pt({0, 2, 3, 3}), pt({0, 4, 2, 2}), pt({2, 4, 1, 1}),
                             pt({4, 0, 2, 2})});
  auto cc = circumcenters(s);
  REQUIRE(cc.size() == 2);
  CHECK(cc[0] == pt({0, 0, -1, 1}));
  CHECK(cc[1] == pt({0, 0, 1, -1}));
  for (const auto& x : cc)
    for (int i = 0; i < 4; ++i) CHECK(trop_dist(s[i], x) == 4);
}

TEST_CASE("multi-site bisectors are pure in general position") {
  std::mt19937_64 rng(29);
  int checked = 0;
  while (checked < 25) {
    std::vector<TorusPoint> pts;
    for (int i = 0; i < 3; ++i) pts.push_back(random_point(rng, 2, 6));
    SiteSet s = SiteSet::make_or_empty(std::move(pts));
    if (s.size() != 3 || !set_general_position(s)) continue;
    ++checked;
    auto cells = bisector_k(s);
    for (const auto& c : cells) {
      CHECK(c.dim == 0);  // d + 1 - k = 2 + 1 - 3
      for (int i = 1; i < 3; ++i)
        CHECK(trop_dist(s[0], c.witness) == trop_dist(s[i], c.witness));
    }
    CHECK(cells.size() <= 1);  // at most one circumcenter in the plane
  }
}

TEST_CASE("pair general position matches the set predicate on two sites") {
  std::mt19937_64 rng(31);
  for (int d = 2; d <= 3; ++d) {
    int agree = 0;
    for (int trial = 0; trial < 60; ++trial) {
      TorusPoint a = random_point(rng, d, 4), b = random_point(rng, d, 4);
      if (a == b) continue;
      CHECK(set_general_position(SiteSet::make({a, b})) ==
            pair_general_position(a, b));
      ++agree;
    }
    CHECK(agree > 30);
  }
}

TEST_CASE("parallel bisector enumeration matches sequential") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<TorusPoint> pts;
    for (int i = 0; i < 3; ++i) pts.push_back(random_point(rng, 2));
    SiteSet s = SiteSet::make_or_empty(std::move(pts));
    if (s.size() != 3) continue;
    BisectorOptions par;
    par.parallel = true;
    auto seq = bisector_k(s), prl = bisector_k(s, {}, par);
    REQUIRE(seq.size() == prl.size());
    std::set<std::vector<Rational>> wit;
    for (const auto& c : seq) wit.insert(c.witness.coords());
    for (const auto& c : prl) CHECK(wit.count(c.witness.coords()) == 1);
  }
}
