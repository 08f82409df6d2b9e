#include "tropivor/polyhedra.hpp"

#include <algorithm>
#include <set>

namespace tropivor {

// ---------------------------------------------------------------------------
// H-polyhedra

std::vector<LinRow> chart_rows(const HPolyhedron& p) {
  std::vector<LinRow> rows;
  rows.reserve(p.rows.size());
  for (const auto& c : p.rows) {
    LinRow r;
    r.a.assign(c.coef.begin() + 1, c.coef.end());  // x_0 = 0 chart
    r.rhs = c.rhs;
    r.rel = c.rel;
    rows.push_back(std::move(r));
  }
  return rows;
}

std::optional<TorusPoint> feasible(const HPolyhedron& p, bool strict) {
  auto rows = chart_rows(p);
  if (strict)
    for (auto& r : rows)
      if (r.rel == Rel::LE) r.rel = Rel::LT;
  auto x = lp_feasible(std::move(rows), p.d);
  if (!x) return std::nullopt;
  std::vector<Rational> c(p.d + 1, Rational(0));
  for (int i = 0; i < p.d; ++i) c[i + 1] = (*x)[i];
  return TorusPoint(std::move(c));
}

int affine_dimension(const HPolyhedron& p) {
  return lp_affine_dimension(chart_rows(p), p.d);
}

bool implies(const HPolyhedron& p, const LinConstraint& q) {
  LinRow r;
  r.a.assign(q.coef.begin() + 1, q.coef.end());
  r.rhs = q.rhs;
  r.rel = q.rel;
  return lp_implies(chart_rows(p), p.d, r);
}

std::vector<TorusPoint> vertices(const HPolyhedron& p) {
  if (p.d > 3) throw precondition_error("vertex enumeration supported up to d = 3");
  auto rows = chart_rows(p);
  int n = static_cast<int>(rows.size());
  std::vector<TorusPoint> out;
  std::set<std::vector<Rational>> seen;
  std::vector<int> pick(p.d);
  // Every vertex is the unique solution of d active constraints.
  auto try_subset = [&](const std::vector<int>& s) {
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
    for (int i : s) {
      a.push_back(rows[i].a);
      b.push_back(rows[i].rhs);
    }
    auto x = solve_square(std::move(a), std::move(b));
    if (!x) return;
    for (const auto& r : rows) {
      Rational lhs = 0;
      for (int j = 0; j < p.d; ++j) lhs += r.a[j] * (*x)[j];
      if (r.rel == Rel::EQ ? lhs != r.rhs : lhs > r.rhs) return;
    }
    if (!seen.insert(*x).second) return;
    std::vector<Rational> c(p.d + 1, Rational(0));
    for (int i = 0; i < p.d; ++i) c[i + 1] = (*x)[i];
    out.emplace_back(std::move(c));
  };
  std::vector<int> s(p.d);
  auto rec = [&](auto&& self, int depth, int from) -> void {
    if (depth == p.d) {
      try_subset(s);
      return;
    }
    for (int i = from; i < n; ++i) {
      s[depth] = i;
      self(self, depth + 1, i + 1);
    }
  };
  rec(rec, 0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Polytropes

Polytrope::Polytrope(int d) : closed_(true) {
  c_.assign(d + 1, std::vector<Bound>(d + 1, Bound::infinity()));
  for (int i = 0; i <= d; ++i) c_[i][i] = Bound::of(0);
}

void Polytrope::add(int i, int j, const Rational& v) {
  Bound b = Bound::of(v);
  if (b < c_[i][j]) {
    c_[i][j] = std::move(b);
    closed_ = false;
  }
}

void Polytrope::close() {
  if (closed_) return;
  int n = static_cast<int>(c_.size());
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      if (c_[i][k].inf) continue;
      for (int j = 0; j < n; ++j) {
        Bound via = c_[i][k] + c_[k][j];
        if (via < c_[i][j]) c_[i][j] = std::move(via);
      }
    }
  for (int i = 0; i < n; ++i)
    if (!c_[i][i].inf && c_[i][i].v < 0) empty_ = true;
  closed_ = true;
}

bool Polytrope::is_empty() const {
  if (!closed_) throw internal_error("query on unclosed polytrope");
  return empty_;
}

bool Polytrope::is_full_dim() const {
  if (is_empty()) return false;
  int n = static_cast<int>(c_.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      Bound sum = c_[i][j] + c_[j][i];
      if (!sum.inf && sum.v <= 0) return false;
    }
  return true;
}

bool Polytrope::contains(const TorusPoint& x) const {
  int n = static_cast<int>(c_.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!c_[i][j].inf && x[i] - x[j] > c_[i][j].v) return false;
  return true;
}

Bound Polytrope::upper(int i, int j) const {
  if (!closed_ || empty_) throw internal_error("interval query needs a closed nonempty polytrope");
  return c_[i][j];
}

Polytrope Polytrope::intersect(const Polytrope& a, const Polytrope& b) {
  Polytrope r = a;
  int n = static_cast<int>(r.c_.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (b.c_[i][j] < r.c_[i][j]) {
        r.c_[i][j] = b.c_[i][j];
        r.closed_ = false;
      }
  r.close();
  return r;
}

Polytrope Polytrope::cone_of_face(const TorusPoint& a, const FaceType& face) {
  int d = a.dim();
  Polytrope c(d);
  for (int p : face.plus)
    for (int k = 0; k <= d; ++k)
      if (k != p) c.add(k, p, a[k] - a[p]);
  for (int q : face.minus)
    for (int k = 0; k <= d; ++k)
      if (k != q) c.add(q, k, a[q] - a[k]);
  c.close();
  return c;
}

Polytrope Polytrope::cone_of_facet(const TorusPoint& a, const FaceType& facet) {
  if (!facet.is_facet()) throw precondition_error("cone_of_facet needs a facet");
  return cone_of_face(a, facet);
}

HPolyhedron Polytrope::to_hpoly() const {
  int n = static_cast<int>(c_.size());
  HPolyhedron h;
  h.d = n - 1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j || c_[i][j].inf) continue;
      LinConstraint r;
      r.coef.assign(n, Rational(0));
      r.coef[i] = 1;
      r.coef[j] = -1;
      r.rhs = c_[i][j].v;
      h.rows.push_back(std::move(r));
    }
  return h;
}

bool Polytrope::operator==(const Polytrope& o) const {
  if (!closed_ || !o.closed_) throw internal_error("comparison needs closed polytropes");
  return c_ == o.c_;
}

bool Polytrope::operator<(const Polytrope& o) const {
  if (!closed_ || !o.closed_) throw internal_error("comparison needs closed polytropes");
  return c_ < o.c_;
}

// ---------------------------------------------------------------------------
// Semipolytropes

void SemiPolytrope::cut(DiffRow row) {
  if (row.p == row.r && row.q == row.s)
    throw precondition_error("difference row with identical functionals");
  for (auto& e : extra)
    if (e.p == row.p && e.q == row.q && e.r == row.r && e.s == row.s) {
      if (row.rhs < e.rhs) e.rhs = row.rhs;
      return;
    }
  extra.push_back(std::move(row));
}

bool SemiPolytrope::contains(const TorusPoint& x) const {
  if (!base.contains(x)) return false;
  for (const auto& e : extra)
    if (x[e.p] - x[e.q] - x[e.r] + x[e.s] > e.rhs) return false;
  return true;
}

HPolyhedron SemiPolytrope::to_hpoly() const {
  HPolyhedron h = base.to_hpoly();
  for (const auto& e : extra) {
    LinConstraint r;
    r.coef.assign(h.d + 1, Rational(0));
    r.coef[e.p] += 1;
    r.coef[e.q] -= 1;
    r.coef[e.r] -= 1;
    r.coef[e.s] += 1;
    r.rhs = e.rhs;
    h.rows.push_back(std::move(r));
  }
  return h;
}

}  // namespace tropivor
