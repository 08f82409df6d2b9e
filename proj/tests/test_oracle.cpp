#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "tropivor/bisect.hpp"
#include "tropivor/oracle.hpp"
#include "tropivor/sweep2d.hpp"
#include "tropivor/voronoi.hpp"

using namespace tropivor;

namespace {

TorusPoint pt(std::vector<Rational> c) { return TorusPoint(std::move(c)); }

SiteSet tvd_sites() {
  return SiteSet::make({pt({0, 0, 0}), pt({0, 1, 3}), pt({0, -3, -1}), pt({0, -1, -3}),
                        pt({0, 2, -1})});
}

SiteSet circumcenter_example() {
  return SiteSet::make({pt({0, 2, 3, 3}), pt({0, 4, 2, 2}), pt({2, 4, 1, 1}),
                        pt({4, 0, 2, 2})});
}

TorusPoint random_point(std::mt19937_64& rng, int d, int spread = 25) {
  std::uniform_int_distribution<int> num(-spread, spread);
  std::uniform_int_distribution<int> den(1, 7);
  std::vector<Rational> c(d + 1, Rational(0));
  for (int i = 1; i <= d; ++i) c[i] = Rational(num(rng)) / den(rng);
  return pt(std::move(c));
}

SiteSet random_weak_gp(std::mt19937_64& rng, int n, int d, int spread = 30) {
  std::uniform_int_distribution<int> coord(-spread, spread);
  while (true) {
    std::vector<TorusPoint> pts;
    for (int i = 0; i < n; ++i) {
      std::vector<Rational> c(d + 1, Rational(0));
      for (int j = 1; j <= d; ++j) c[j] = coord(rng);
      pts.push_back(pt(std::move(c)));
    }
    SiteSet s = SiteSet::make_or_empty(std::move(pts));
    if (s.size() == n && !weak_general_position(s)) return s;
  }
}

}  // namespace

TEST_CASE("nearest_sites: direct evaluation basics") {
  SiteSet s = tvd_sites();
  for (int i = 0; i < s.size(); ++i) {
    auto [dist, arg] = nearest_sites(s[i], s);
    CHECK(sign(dist) == 0);
    CHECK(arg == std::vector<int>{i});
  }

  SiteSet four = circumcenter_example();
  auto [dist, arg] = nearest_sites(pt({0, 0, 1, -1}), four);
  CHECK(dist == 4);
  CHECK(arg == std::vector<int>{0, 1, 2, 3});

  // Midpoints of tropical segments tie exactly the two endpoints.
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 100; ++trial) {
    TorusPoint a = random_point(rng, 3), b = random_point(rng, 3);
    if (a == b) continue;
    TorusPoint m = tropical_segment(a, b).midpoint;
    auto [dm, am] = nearest_sites(m, SiteSet::make({a, b}));
    CHECK(dm * 2 == trop_dist(a, b));
    CHECK(am == std::vector<int>{0, 1});
  }

  CHECK_THROWS_AS(nearest_sites(pt({0, 0}), SiteSet::make_or_empty({})), Error);
}

TEST_CASE("nearest_sites re-verifies the metric axioms independently") {
  std::mt19937_64 rng(72);
  for (int trial = 0; trial < 1000; ++trial) {
    int d = 2 + (trial % 2);
    TorusPoint a = random_point(rng, d), b = random_point(rng, d), c = random_point(rng, d);
    Rational ab = nearest_sites(a, SiteSet::make({b})).first;
    CHECK(ab == nearest_sites(b, SiteSet::make({a})).first);
    CHECK(sign(ab) >= 0);
    CHECK((sign(ab) == 0) == (a == b));
    Rational bc = trop_dist(b, c), ac = trop_dist(a, c);
    CHECK(ac <= ab + bc);
  }
}

TEST_CASE("sample_points: seeded, exact, and inside the box") {
  SampleConfig cfg;
  cfg.seed = 1234;
  cfg.count = 200;
  auto xs = sample_points(2, cfg);
  auto ys = sample_points(2, cfg);
  REQUIRE(xs.size() == 200);
  CHECK(xs == ys);  // reproducible
  cfg.seed = 1235;
  CHECK(xs != sample_points(2, cfg));
  for (const auto& x : xs) {
    for (int i = 1; i <= 2; ++i) {
      CHECK(rational_abs(x[i]) <= 20);
      CHECK(denominator(x[i]) <= 997);
    }
  }
}

TEST_CASE("verify_diagram passes on all three construction routes") {
  SiteSet s = tvd_sites();
  SampleConfig cfg;
  cfg.seed = 9;
  cfg.count = 800;

  CHECK(verify_diagram(voronoi_standard(s), cfg).pass());
  CHECK(verify_diagram(voronoi_incremental(s, 5), cfg).pass());
  CHECK(verify_diagram(sweep_diagram(s), cfg).pass());

  // Single site: trivially correct.
  SampleConfig tiny;
  tiny.count = 50;
  CHECK(verify_diagram(voronoi_standard(SiteSet::make({pt({0, 1, 2})})), tiny).pass());
}

TEST_CASE("verify_diagram flags a corrupted diagram with exact witnesses") {
  std::mt19937_64 rng(73);
  SiteSet s = random_weak_gp(rng, 5, 2);
  VoronoiDiagram d = voronoi_standard(s);

  SampleConfig cfg;
  cfg.seed = 10;
  cfg.count = 4000;

  // Flip one halfspace: find a subcell with a cut that contains a sample
  // point, then tighten that cut until the point falls out of the region.
  bool corrupted = false;
  for (const auto& x : sample_points(2, cfg)) {
    for (auto& cell : d.cells) {
      for (auto& [site, sp] : cell.subcells) {
        if (sp.extra.empty() || !sp.contains(x)) continue;
        DiffRow& row = sp.extra.front();
        row.rhs = (x[row.p] - x[row.q]) - (x[row.r] - x[row.s]) - 1;
        corrupted = true;
        break;
      }
      if (corrupted) break;
    }
    if (corrupted) break;
  }
  REQUIRE(corrupted);
  VerifyReport rep = verify_diagram(d, cfg);
  CHECK_FALSE(rep.pass());
  for (const auto& v : rep.violations) {
    std::vector<int> truth = nearest_sites(v.x, s).second;
    CHECK(v.truth == truth);   // the witness really disagrees
    CHECK(v.claimed != truth);
  }
}

TEST_CASE("verify_diagram parallel aggregation is deterministic") {
  SiteSet s = tvd_sites();
  VoronoiDiagram d = voronoi_standard(s);
  SampleConfig cfg;
  cfg.seed = 11;
  cfg.count = 400;
  VerifyReport serial = verify_diagram(d, cfg);
  cfg.parallel = true;
  VerifyReport par = verify_diagram(d, cfg);
  CHECK(serial.pass());
  CHECK(par.pass());
  CHECK(serial.checked == par.checked);
}

TEST_CASE("brute_circumcenters agrees with the cell-enumeration route") {
  // The four-site d=3 example with exactly two isolated equidistant points.
  SiteSet four = circumcenter_example();
  auto brute = brute_circumcenters(four);
  auto cells = circumcenters(four);
  std::sort(cells.begin(), cells.end());
  CHECK(brute == cells);
  REQUIRE(brute.size() == 2);
  CHECK(brute[0] == pt({0, 0, -1, 1}));
  CHECK(brute[1] == pt({0, 0, 1, -1}));

  // Random d=2 triples: zero or one center, both routes identical.
  std::mt19937_64 rng(74);
  int found = 0;
  for (int trial = 0; trial < 150; ++trial) {
    SiteSet s = random_weak_gp(rng, 3, 2);
    auto a = brute_circumcenters(s);
    auto b = circumcenters(s);
    std::sort(b.begin(), b.end());
    CHECK(a == b);
    CHECK(a.size() <= 1);
    found += static_cast<int>(a.size());
    for (const auto& c : a) {
      Rational r = trop_dist(c, s[0]);
      CHECK(trop_dist(c, s[1]) == r);
      CHECK(trop_dist(c, s[2]) == r);
    }
  }
  CHECK(found > 0);

  // Random d=3 quadruples: dual-path equality.
  for (int trial = 0; trial < 40; ++trial) {
    SiteSet s = random_weak_gp(rng, 4, 3);
    auto a = brute_circumcenters(s);
    auto b = circumcenters(s);
    std::sort(b.begin(), b.end());
    CHECK(a == b);
  }

  CHECK_THROWS_AS(brute_circumcenters(tvd_sites()), Error);  // 5 sites, d=2
}

TEST_CASE("pattern_table basics") {
  std::vector<Rational> v{0, -1, 1, Rational(1) / 2};
  std::vector<Rational> v32{0, Rational(-3) / 2, Rational(3) / 2, Rational(3) / 4};
  CHECK(pattern_table(v) == pattern_table(v32));  // scale invariance

  std::vector<Rational> w{0, -1, 1, 0};
  CHECK(pattern_table(v) != pattern_table(w));

  CHECK(pattern_table(v).size() == 144);  // (d(d+1))^2 with d = 3
  CHECK_THROWS_AS(pattern_table(std::vector<Rational>{0, 0, 0}), Error);
}

TEST_CASE("pattern_table equality is exactly BOP equality") {
  std::mt19937_64 rng(75);
  for (int d : {2, 3}) {
    int agree = 0, differ = 0;
    for (int trial = 0; trial < 550; ++trial) {
      TorusPoint a1 = random_point(rng, d, 6), b1 = random_point(rng, d, 6);
      TorusPoint a2 = random_point(rng, d, 6), b2 = random_point(rng, d, 6);
      if (a1 == b1 || a2 == b2) continue;
      bool tables = pattern_table(pt(diff(a1, b1))) == pattern_table(pt(diff(a2, b2)));
      bool bops = same_bisector_class(a1, b1, a2, b2);
      CHECK(tables == bops);
      (bops ? agree : differ)++;
    }
    CHECK(agree > 0);
    CHECK(differ > 0);
  }
}
