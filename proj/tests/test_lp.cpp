#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tropivor/lp.hpp"

using namespace tropivor;

namespace {

LinRow row(std::vector<Rational> a, Rational rhs, Rel rel = Rel::LE) {
  return LinRow{std::move(a), std::move(rhs), rel};
}

bool satisfies(const std::vector<LinRow>& rows, const std::vector<Rational>& x) {
  for (const auto& r : rows) {
    Rational lhs = 0;
    for (size_t j = 0; j < x.size(); ++j) lhs += r.a[j] * x[j];
    switch (r.rel) {
      case Rel::LE:
        if (!(lhs <= r.rhs)) return false;
        break;
      case Rel::LT:
        if (!(lhs < r.rhs)) return false;
        break;
      case Rel::EQ:
        if (lhs != r.rhs) return false;
        break;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("feasible box returns a satisfying witness") {
  std::vector<LinRow> rows = {
      row({1, 0}, 3), row({-1, 0}, -1), row({0, 1}, 2), row({0, -1}, 2)};
  auto x = lp_feasible(rows, 2);
  REQUIRE(x.has_value());
  CHECK(satisfies(rows, *x));
}

TEST_CASE("contradictory bounds are infeasible") {
  CHECK_FALSE(lp_feasible({row({1}, 0), row({-1}, -1)}, 1).has_value());
}

TEST_CASE("strictness is respected") {
  CHECK_FALSE(lp_feasible({row({1}, 1, Rel::LT), row({-1}, -1)}, 1).has_value());
  std::vector<LinRow> rows = {row({1}, 1, Rel::LT), row({-1}, 0, Rel::LT)};
  auto x = lp_feasible(rows, 1);
  REQUIRE(x.has_value());
  CHECK(satisfies(rows, *x));
}

TEST_CASE("equalities are solved exactly") {
  std::vector<LinRow> rows = {row({1, 1}, 2, Rel::EQ), row({1, -1}, 0, Rel::EQ)};
  auto x = lp_feasible(rows, 2);
  REQUIRE(x.has_value());
  CHECK((*x)[0] == 1);
  CHECK((*x)[1] == 1);
  CHECK_FALSE(
      lp_feasible({row({1, 1}, 2, Rel::EQ), row({1, 1}, 3, Rel::EQ)}, 2).has_value());
}

TEST_CASE("equality mixed with strict inequalities") {
  // x = y, x < 1, y > 0 has interior points; x = y, x < 1, y >= 1 does not.
  std::vector<LinRow> rows = {row({1, -1}, 0, Rel::EQ), row({1, 0}, 1, Rel::LT),
                              row({0, -1}, 0, Rel::LT)};
  auto x = lp_feasible(rows, 2);
  REQUIRE(x.has_value());
  CHECK(satisfies(rows, *x));
  rows[2] = row({0, -1}, -1);
  CHECK_FALSE(lp_feasible(rows, 2).has_value());
}

TEST_CASE("implication of valid and invalid inequalities") {
  std::vector<LinRow> rows = {row({1, 0}, 1), row({0, 1}, 1)};
  CHECK(lp_implies(rows, 2, row({1, 1}, 2)));
  CHECK_FALSE(lp_implies(rows, 2, row({1, 1}, 1)));
  // On the segment x + y = 2 inside the box, x = 1 is forced.
  rows.push_back(row({1, 1}, 2, Rel::EQ));
  CHECK(lp_implies(rows, 2, row({1, 0}, 1, Rel::EQ)));
}

TEST_CASE("affine dimension detects implicit equalities") {
  std::vector<LinRow> box = {row({1, 0}, 1), row({-1, 0}, 0), row({0, 1}, 1),
                             row({0, -1}, 0)};
  CHECK(lp_affine_dimension(box, 2) == 2);
  box.push_back(row({1, 0}, 0));  // with -x <= 0 forces x = 0
  CHECK(lp_affine_dimension(box, 2) == 1);
  box.push_back(row({0, 1}, 0, Rel::EQ));
  CHECK(lp_affine_dimension(box, 2) == 0);
  box.push_back(row({0, -1}, -1));
  CHECK(lp_affine_dimension(box, 2) == -1);
}

TEST_CASE("rank and square solving") {
  CHECK(matrix_rank({{1, 2}, {2, 4}}) == 1);
  CHECK(matrix_rank({{1, 2}, {2, 5}}) == 2);
  CHECK(matrix_rank({}) == 0);
  auto x = solve_square({{2, 1}, {1, -1}}, {Rational(3), Rational(0)});
  REQUIRE(x.has_value());
  CHECK((*x)[0] == 1);
  CHECK((*x)[1] == 1);
  CHECK_FALSE(solve_square({{1, 2}, {2, 4}}, {Rational(1), Rational(1)}).has_value());
}

TEST_CASE("random systems: witness satisfies every row") {
  std::mt19937_64 rng(20260826);
  std::uniform_int_distribution<int> coef(-4, 4), nv(1, 4), nr(1, 8), kind(0, 9);
  int feasible_count = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    int n = nv(rng);
    std::vector<LinRow> rows;
    int m = nr(rng);
    for (int i = 0; i < m; ++i) {
      LinRow r;
      r.a.resize(n);
      for (auto& c : r.a) c = coef(rng);
      r.rhs = coef(rng);
      int k = kind(rng);
      r.rel = k == 0 ? Rel::EQ : (k <= 2 ? Rel::LT : Rel::LE);
      rows.push_back(std::move(r));
    }
    auto x = lp_feasible(rows, n);
    if (!x) continue;
    ++feasible_count;
    REQUIRE(satisfies(rows, *x));
  }
  CHECK(feasible_count > 200);  // the sampler must exercise the witness path
}
