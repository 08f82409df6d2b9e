#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "tropivor/sweep2d.hpp"
#include "tropivor/voronoi.hpp"

using namespace tropivor;

namespace {

TorusPoint pt(std::vector<Rational> c) { return TorusPoint(std::move(c)); }

TorusPoint chart(Rational u, Rational v) {
  return TorusPoint({Rational(0), std::move(u), std::move(v)});
}

SiteSet tvd_sites() {
  return SiteSet::make({pt({0, 0, 0}), pt({0, 1, 3}), pt({0, -3, -1}),
                        pt({0, -1, -3}), pt({0, 2, -1})});
}

SiteSet random_weak_gp(std::mt19937_64& rng, int n, int spread = 30) {
  std::uniform_int_distribution<int> coord(-spread, spread);
  while (true) {
    std::vector<TorusPoint> pts;
    for (int i = 0; i < n; ++i)
      pts.push_back(pt({0, coord(rng), coord(rng)}));
    auto s = SiteSet::make_or_empty(std::move(pts));
    if (s.size() == n && !weak_general_position(s)) return s;
  }
}

// Weak general position implies distinct chart coordinates, but the sweep
// may still hit combinatorial ties; retry with fresh sites when it does.
std::pair<SiteSet, SweepDiagram> random_sweepable(std::mt19937_64& rng, int n) {
  for (int tries = 0; tries < 50; ++tries) {
    auto s = random_weak_gp(rng, n);
    try {
      auto d = sweep_diagram(s);
      return {s, d};
    } catch (const Error& e) {
      if (e.kind() != "degeneracy") throw;
    }
  }
  FAIL("could not generate a sweepable instance");
  return {SiteSet{}, SweepDiagram{}};
}

TorusPoint random_point(std::mt19937_64& rng, int spread = 50) {
  std::uniform_int_distribution<int> num(-spread, spread), den(1, 7);
  return chart(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
}

std::vector<int> brute_owners(const SiteSet& s, const TorusPoint& x) {
  Rational best;
  std::vector<int> arg;
  for (int i = 0; i < s.size(); ++i) {
    Rational d = trop_dist(x, s[i]);
    if (arg.empty() || d < best) {
      best = d;
      arg = {i};
    } else if (d == best) {
      arg.push_back(i);
    }
  }
  return arg;
}

}  // namespace

TEST_CASE("parabola points are equidistant to the site and the line") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coord(-20, 20);
  for (int trial = 0; trial < 200; ++trial) {
    auto site = chart(coord(rng), coord(rng));
    Rational t = site[1] + Rational(std::uniform_int_distribution<int>(1, 30)(rng),
                                    std::uniform_int_distribution<int>(1, 5)(rng));
    Rational top = parabola_top(site, t);
    CHECK(top == site[2] + (t - site[1]));
    // Sample heights at and below the top.
    Rational r = t - site[1];
    for (int k = 0; k <= 8; ++k) {
      Rational v = top - r * Rational(k, 4);  // from top down to two radii below
      Rational u = parabola_u(site, t, v);
      auto x = chart(u, v);
      CHECK(trop_dist(x, site) == t - u);
    }
    CHECK_THROWS_AS(parabola_u(site, t, top + 1), Error);
  }
}

TEST_CASE("parabola is rightmost: points right of the graph are closer to the line") {
  auto site = chart(0, 0);
  Rational t = 4;
  for (int k = -8; k <= 4; ++k) {
    Rational v(k, 1);
    Rational u = parabola_u(site, t, v);
    auto right = chart(u + Rational(1, 3), v);
    CHECK(trop_dist(right, site) > t - right[1]);
  }
}

TEST_CASE("breakpoints are equidistant to both sites and the line") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coord(-15, 15);
  int found = 0;
  for (int trial = 0; trial < 300; ++trial) {
    auto a = chart(coord(rng), coord(rng));
    auto b = chart(coord(rng), coord(rng));
    if (a[1] == b[1] || a == b) continue;
    Rational t = (a[1] < b[1] ? b[1] : a[1]) + std::uniform_int_distribution<int>(1, 20)(rng);
    for (const auto* lo : {&a, &b}) {
      const auto& up = (lo == &a) ? b : a;
      std::optional<TorusPoint> bp;
      try {
        bp = beach_breakpoint(*lo, up, t);
      } catch (const Error& e) {
        if (e.kind() != "degeneracy") throw;
        continue;
      }
      if (!bp) continue;
      ++found;
      Rational da = trop_dist(*bp, *lo), db = trop_dist(*bp, up);
      CHECK(da == db);
      CHECK(da == t - (*bp)[1]);
    }
  }
  CHECK(found > 100);
}

TEST_CASE("two sites: one edge, unbounded at both ends") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 5; ++trial) {
    auto [s, d] = random_sweepable(rng, 2);
    REQUIRE(d.edges.size() == 1);
    CHECK(d.vertices.empty());
    CHECK(d.edges[0].v0 == -1);
    CHECK(d.edges[0].v1 == -1);
    CHECK(d.edges[0].ray0);
    CHECK(d.edges[0].ray1);
    CHECK(d.euler_ok);
    CHECK(d.face_count == 2);
    for (int k = 0; k < 150; ++k) {
      auto x = random_point(rng);
      CHECK(owners(d, x) == brute_owners(s, x));
    }
  }
}

TEST_CASE("sweep vertices are equidistant to at least three sites") {
  std::mt19937_64 rng(17);
  auto [s, d] = random_sweepable(rng, 7);
  CHECK(!d.vertices.empty());
  for (const auto& v : d.vertices) {
    auto own = brute_owners(s, v);
    CHECK(own.size() >= 3);
  }
}

TEST_CASE("sweep classification matches brute force and the polytrope routes") {
  std::mt19937_64 rng(19);
  for (int n : {3, 4, 5, 6, 8}) {
    auto [s, d] = random_sweepable(rng, n);
    CHECK(d.euler_ok);
    CHECK(d.face_count == n);
    auto std_dia = voronoi_standard(s);
    for (int k = 0; k < 200; ++k) {
      auto x = random_point(rng);
      auto bo = brute_owners(s, x);
      CHECK(owners(d, x) == bo);
      CHECK(owners(std_dia, x) == bo);
    }
    for (int i = 0; i < n; ++i)
      CHECK(owners(d, s[i]) == std::vector<int>{i});
  }
}

TEST_CASE("five-site figure: sweep agrees with the standard construction") {
  auto s = tvd_sites();
  auto d = sweep_diagram(s);
  CHECK(d.euler_ok);
  CHECK(d.face_count == 5);
  auto std_dia = voronoi_standard(s);
  std::mt19937_64 rng(23);
  for (int k = 0; k < 400; ++k) {
    auto x = random_point(rng, 25);
    auto bo = brute_owners(s, x);
    CHECK(owners(d, x) == bo);
    CHECK(owners(std_dia, x) == bo);
  }
  // Every sweep vertex is a true corner of the diagram.
  for (const auto& v : d.vertices) CHECK(brute_owners(s, v).size() >= 3);
}

TEST_CASE("edge interiors are equidistant to their two sites") {
  std::mt19937_64 rng(29);
  auto [s, d] = random_sweepable(rng, 6);
  for (const auto& e : d.edges) {
    for (const auto& p : e.polyline) {
      Rational da = trop_dist(p, s[e.site_a]);
      Rational db = trop_dist(p, s[e.site_b]);
      CHECK(da == db);
      // No other site is strictly closer.
      for (int i = 0; i < s.size(); ++i) CHECK(trop_dist(p, s[i]) >= da);
    }
  }
}

TEST_CASE("sweep preconditions") {
  // Equal first chart coordinates.
  auto s = SiteSet::make({pt({0, 1, 2}), pt({0, 1, 5})});
  CHECK_THROWS_AS(sweep_diagram(s), Error);
  // Wrong dimension.
  auto s3 = SiteSet::make({pt({0, 1, 2, 3}), pt({0, 5, 1, 2})});
  CHECK_THROWS_AS(sweep_diagram(s3), Error);
  // A single site is trivial.
  auto s1 = SiteSet::make({pt({0, 3, -2})});
  auto d = sweep_diagram(s1);
  CHECK(d.euler_ok);
  CHECK(owners(d, chart(10, -7)) == std::vector<int>{0});
}
