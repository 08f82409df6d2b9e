#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tropivor/polyhedra.hpp"

using namespace tropivor;

namespace {

TorusPoint pt(std::vector<Rational> c) { return TorusPoint(std::move(c)); }

LinConstraint lin(std::vector<Rational> coef, Rational rhs, Rel rel = Rel::LE) {
  return LinConstraint{std::move(coef), std::move(rhs), rel};
}

Polytrope random_polytrope(std::mt19937_64& rng, int d) {
  std::uniform_int_distribution<int> val(-6, 6), skip(0, 3);
  Polytrope p(d);
  for (int i = 0; i <= d; ++i)
    for (int j = 0; j <= d; ++j) {
      if (i == j || skip(rng) == 0) continue;
      p.add(i, j, val(rng));
    }
  p.close();
  return p;
}

TorusPoint random_point(std::mt19937_64& rng, int d) {
  std::uniform_int_distribution<int> num(-8, 8), den(1, 3);
  std::vector<Rational> c(d + 1);
  for (auto& x : c) x = Rational(num(rng), den(rng));
  return TorusPoint(std::move(c));
}

}  // namespace

TEST_CASE("feasibility and dimension of a torus triangle") {
  // x1 - x0 in [0, 2], x2 - x0 = 1 in the 2-torus: a segment.
  HPolyhedron h;
  h.d = 2;
  h.rows = {lin({-1, 1, 0}, 2), lin({1, -1, 0}, 0), lin({-1, 0, 1}, 1, Rel::EQ)};
  auto x = feasible(h);
  REQUIRE(x.has_value());
  CHECK((*x)[2] == 1);
  CHECK(affine_dimension(h) == 1);
  // Strict mode sharpens inequalities but keeps equalities, so the segment's
  // relative interior is still reachable.
  CHECK(feasible(h, true).has_value());
  CHECK(implies(h, lin({0, -1, 1}, 1)));       // x2 - x1 <= 1 on the segment
  CHECK_FALSE(implies(h, lin({0, 1, -1}, 0)));
  h.rows.push_back(lin({1, -1, 0}, 0));  // ties x1 = x0 through inequalities
  h.rows.push_back(lin({-1, 1, 0}, 0));
  CHECK(feasible(h).has_value());
  CHECK_FALSE(feasible(h, true).has_value());
}

TEST_CASE("vertex enumeration of a box in the 2-torus") {
  HPolyhedron h;
  h.d = 2;
  h.rows = {lin({-1, 1, 0}, 1), lin({1, -1, 0}, 0), lin({-1, 0, 1}, 2),
            lin({1, 0, -1}, 0)};
  auto v = vertices(h);
  REQUIRE(v.size() == 4);
  CHECK(v[0] == pt({0, 0, 0}));
  CHECK(v[1] == pt({0, 0, 2}));
  CHECK(v[2] == pt({0, 1, 0}));
  CHECK(v[3] == pt({0, 1, 2}));
}

TEST_CASE("closure detects emptiness via negative cycles") {
  Polytrope p(2);
  p.add(1, 0, -1);  // x1 - x0 <= -1
  p.add(0, 1, 0);   // x0 - x1 <= 0
  p.close();
  CHECK(p.is_empty());

  Polytrope q(2);
  q.add(1, 0, 1);
  q.add(0, 1, -1);  // forces x1 - x0 = 1
  q.close();
  CHECK_FALSE(q.is_empty());
  CHECK_FALSE(q.is_full_dim());
  CHECK(q.contains(pt({0, 1, 5})));
  CHECK_FALSE(q.contains(pt({0, 0, 0})));
}

TEST_CASE("closure computes tight difference intervals") {
  Polytrope p(2);
  p.add(1, 0, 2);
  p.add(0, 1, 0);
  p.add(2, 1, 1);
  p.add(1, 2, 1);
  p.close();
  // x2 - x0 = (x2 - x1) + (x1 - x0) ranges over [-1, 3].
  CHECK(p.upper(2, 0) == Bound::of(3));
  CHECK(p.upper(0, 2) == Bound::of(1));
  CHECK(p.is_full_dim());
}

TEST_CASE("closed matrix entries are exact maxima") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    Polytrope p = random_polytrope(rng, 3);
    if (p.is_empty()) continue;
    HPolyhedron h = p.to_hpoly();
    for (int i = 0; i <= 3; ++i)
      for (int j = 0; j <= 3; ++j) {
        if (i == j) continue;
        Bound u = p.upper(i, j);
        std::vector<Rational> coef(4, Rational(0));
        coef[i] = 1;
        coef[j] = -1;
        if (u.inf) {
          // Unbounded: some point exceeds any fixed threshold.
          CHECK_FALSE(implies(h, lin(coef, 1000)));
        } else {
          CHECK(implies(h, lin(coef, u.v)));
          if (u.v != 0) {
            CHECK_FALSE(implies(h, lin(coef, u.v - Rational(1, 1000))));
          }
        }
      }
  }
}

TEST_CASE("intersection agrees with pointwise membership") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 300; ++trial) {
    Polytrope a = random_polytrope(rng, 2), b = random_polytrope(rng, 2);
    Polytrope c = Polytrope::intersect(a, b);
    for (int k = 0; k < 20; ++k) {
      TorusPoint x = random_point(rng, 2);
      CHECK(c.contains(x) == (a.contains(x) && b.contains(x)));
    }
    if (!c.is_empty()) {
      auto w = feasible(c.to_hpoly());
      REQUIRE(w.has_value());
      CHECK(a.contains(*w));
      CHECK(b.contains(*w));
    }
  }
}

TEST_CASE("facet cones partition directions around the apex") {
  std::mt19937_64 rng(41);
  for (int d = 2; d <= 3; ++d) {
    auto facets = enumerate_faces(d, d - 1);
    for (int trial = 0; trial < 150; ++trial) {
      TorusPoint a = random_point(rng, d), x = random_point(rng, d);
      if (a == x) continue;
      FaceType f = face_of_direction(diff(a, x));
      int members = 0;
      for (const auto& g : facets) {
        Polytrope cone = Polytrope::cone_of_facet(a, g);
        CHECK(cone.contains(a));
        if (cone.contains(x)) {
          ++members;
          // x lies in the cone of g exactly when g contains the face of x - a.
          std::vector<int> fplus = f.plus, fminus = f.minus;
          CHECK(std::binary_search(fplus.begin(), fplus.end(), g.top()));
          CHECK(std::binary_search(fminus.begin(), fminus.end(), g.bottom()));
        }
      }
      CHECK(members == static_cast<int>(f.plus.size() * f.minus.size()));
    }
  }
}

TEST_CASE("facet cone membership matches the distance formula") {
  // Inside cone(p, q) at a, the distance to a is (x_p - a_p) - (x_q - a_q).
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 300; ++trial) {
    TorusPoint a = random_point(rng, 2), x = random_point(rng, 2);
    if (a == x) continue;
    for (const auto& g : enumerate_faces(2, 1)) {
      if (!Polytrope::cone_of_facet(a, g).contains(x)) continue;
      Rational lhs = (x[g.top()] - a[g.top()]) - (x[g.bottom()] - a[g.bottom()]);
      CHECK(lhs == trop_dist(a, x));
    }
  }
}

TEST_CASE("semipolytrope cuts deduplicate by normal") {
  SemiPolytrope s;
  s.base = Polytrope(2);
  s.cut({1, 0, 2, 0, Rational(5)});
  s.cut({1, 0, 2, 0, Rational(3)});
  s.cut({1, 0, 2, 0, Rational(4)});
  REQUIRE(s.extra.size() == 1);
  CHECK(s.extra[0].rhs == 3);
  // (x1 - x0) - (x2 - x0) <= 3 is x1 - x2 <= 3.
  auto h = s.to_hpoly();
  CHECK(implies(h, lin({0, 1, -1}, 3)));
  CHECK_FALSE(implies(h, lin({0, 1, -1}, 2)));
}
