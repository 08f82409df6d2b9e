#include "tropivor/bisect.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <thread>

namespace tropivor {

namespace {

bool contains_idx(const std::vector<int>& v, int i) {
  return std::binary_search(v.begin(), v.end(), i);
}

Rational min_of(const std::vector<Rational>& v) {
  return *std::min_element(v.begin(), v.end());
}

Rational max_of(const std::vector<Rational>& v) {
  return *std::max_element(v.begin(), v.end());
}

}  // namespace

// ---------------------------------------------------------------------------
// Two-point cells

LabelingPartition labeling_partition(const FaceType& f, const FaceType& g) {
  if (f.d != g.d) throw precondition_error("face dimension mismatch");
  LabelingPartition l;
  for (int i = 0; i <= f.d; ++i) {
    bool fp = contains_idx(f.plus, i), fm = contains_idx(f.minus, i);
    bool gp = contains_idx(g.plus, i), gm = contains_idx(g.minus, i);
    if ((fm && gm) || (fp && gp))
      l.l0.push_back(i);
    else if (fp && gm)
      l.lp1.push_back(i);
    else if (fm && gp)
      l.lm1.push_back(i);
    else if (fp || gm)
      l.lp.push_back(i);
    else if (fm || gp)
      l.lm.push_back(i);
    else
      l.lstar.push_back(i);
  }
  return l;
}

bool cell_feasible_two(const FaceType& f, const FaceType& g,
                       const std::vector<Rational>& v) {
  Rational mn = min_of(v), mx = max_of(v);
  if (mn == mx) throw precondition_error("coincident sites");
  Rational mu = (mn + mx) / 2;
  LabelingPartition l = labeling_partition(f, g);

  // gamma is pinned to mx - delta by L_{+1} and to mn + delta by L_{-1};
  // every coordinate lies in [gamma - delta, gamma + delta], so these pins
  // force gamma <= mu resp. gamma >= mu.  The remaining classes bound gamma
  // by plain intervals, and delta is otherwise free upwards.
  bool has_lo = false, has_hi = false;
  Rational lo, hi;
  auto raise_lo = [&](const Rational& x) {
    if (!has_lo || x > lo) lo = x;
    has_lo = true;
  };
  auto drop_hi = [&](const Rational& x) {
    if (!has_hi || x < hi) hi = x;
    has_hi = true;
  };
  for (int i : l.lp1)
    if (v[i] != mx) return false;
  for (int i : l.lm1)
    if (v[i] != mn) return false;
  if (!l.lp1.empty()) drop_hi(mu);
  if (!l.lm1.empty()) raise_lo(mu);
  for (int i : l.lm) raise_lo(v[i]);
  for (int i : l.lp) drop_hi(v[i]);
  if (!l.l0.empty()) {
    Rational g0 = v[l.l0.front()];
    for (int i : l.l0)
      if (v[i] != g0) return false;
    raise_lo(g0);
    drop_hi(g0);
  }
  return !(has_lo && has_hi) || lo <= hi;
}

bool cell_feasible_two_lp(const FaceType& f, const FaceType& g,
                          const std::vector<Rational>& v) {
  LabelingPartition l = labeling_partition(f, g);
  std::vector<LinRow> rows;
  auto add = [&](Rational cg, Rational cd, Rational rhs, Rel rel) {
    rows.push_back(LinRow{{std::move(cg), std::move(cd)}, std::move(rhs), rel});
  };
  add(0, -1, 0, Rel::LE);  // delta >= 0
  for (int i : l.l0) add(1, 0, v[i], Rel::EQ);
  for (int i : l.lp) {
    add(1, 0, v[i], Rel::LE);        // gamma <= v_i
    add(-1, -1, -v[i], Rel::LE);     // v_i <= gamma + delta
  }
  for (int i : l.lm) {
    add(-1, 0, -v[i], Rel::LE);      // gamma >= v_i
    add(1, -1, v[i], Rel::LE);       // gamma - delta <= v_i
  }
  for (int i : l.lp1) add(1, 1, v[i], Rel::EQ);
  for (int i : l.lm1) add(1, -1, v[i], Rel::EQ);
  for (int i : l.lstar) {
    add(1, -1, v[i], Rel::LE);
    add(-1, -1, -v[i], Rel::LE);
  }
  return lp_feasible(std::move(rows), 2).has_value();
}

std::optional<TorusPoint> cell_witness_two(const TorusPoint& a, const TorusPoint& b,
                                           const FaceType& f, const FaceType& g) {
  std::vector<Rational> v = diff(a, b);
  LabelingPartition l = labeling_partition(f, g);
  std::vector<LinRow> rows;
  auto add = [&](Rational cg, Rational cd, Rational rhs, Rel rel) {
    rows.push_back(LinRow{{std::move(cg), std::move(cd)}, std::move(rhs), rel});
  };
  add(0, -1, 0, Rel::LE);
  for (int i : l.l0) add(1, 0, v[i], Rel::EQ);
  for (int i : l.lp) {
    add(1, 0, v[i], Rel::LE);
    add(-1, -1, -v[i], Rel::LE);
  }
  for (int i : l.lm) {
    add(-1, 0, -v[i], Rel::LE);
    add(1, -1, v[i], Rel::LE);
  }
  for (int i : l.lp1) add(1, 1, v[i], Rel::EQ);
  for (int i : l.lm1) add(1, -1, v[i], Rel::EQ);
  for (int i : l.lstar) {
    add(1, -1, v[i], Rel::LE);
    add(-1, -1, -v[i], Rel::LE);
  }
  auto gd = lp_feasible(std::move(rows), 2);
  if (!gd) return std::nullopt;
  const Rational& gamma = (*gd)[0];
  const Rational& delta = (*gd)[1];
  // Lift: a - x takes value 0 on F_+ and delta on F_-; on F_* the value of x
  // is pinned by G where possible, else clamped into both windows.
  int d = a.dim();
  std::vector<Rational> x(d + 1);
  for (int i = 0; i <= d; ++i) {
    if (contains_idx(f.plus, i))
      x[i] = a[i];
    else if (contains_idx(f.minus, i))
      x[i] = a[i] - delta;
    else if (contains_idx(g.minus, i))
      x[i] = b[i] - gamma - delta;
    else if (contains_idx(g.plus, i))
      x[i] = b[i] - gamma;
    else {
      Rational alt = b[i] - gamma;
      x[i] = alt < a[i] ? alt : a[i];
    }
  }
  return TorusPoint(std::move(x));
}

// ---------------------------------------------------------------------------
// Cells for k sites

HPolyhedron cell_polyhedron(const SiteSet& s, const std::vector<int>& subset,
                            const std::vector<FaceType>& faces) {
  if (subset.size() != faces.size() || subset.empty())
    throw precondition_error("one face per chosen site required");
  int d = s.dim();
  Polytrope q(d);
  for (size_t i = 0; i < subset.size(); ++i)
    q = Polytrope::intersect(q, Polytrope::cone_of_face(s[subset[i]], faces[i]));
  HPolyhedron h;
  h.d = d;
  if (q.is_empty()) {
    LinConstraint never;
    never.coef.assign(d + 1, Rational(0));
    never.rhs = -1;
    h.rows.push_back(std::move(never));
    return h;
  }
  h = q.to_hpoly();
  // lambda_{F_i}(x - a_i) = lambda_{F_1}(x - a_1) for every further site.
  int p1 = faces[0].top(), q1 = faces[0].bottom();
  const TorusPoint& a1 = s[subset[0]];
  for (size_t i = 1; i < subset.size(); ++i) {
    int pi = faces[i].top(), qi = faces[i].bottom();
    const TorusPoint& ai = s[subset[i]];
    LinConstraint e;
    e.coef.assign(d + 1, Rational(0));
    e.coef[pi] += 1;
    e.coef[qi] -= 1;
    e.coef[p1] -= 1;
    e.coef[q1] += 1;
    e.rhs = (ai[pi] - ai[qi]) - (a1[p1] - a1[q1]);
    e.rel = Rel::EQ;
    h.rows.push_back(std::move(e));
  }
  return h;
}

namespace {

/// Drops cells strictly contained in another; ties broken by keeping the
/// first representative of coinciding cells.
std::vector<BisectorCell> maximal_cells(std::vector<BisectorCell> cells) {
  std::stable_sort(cells.begin(), cells.end(),
                   [](const BisectorCell& x, const BisectorCell& y) {
                     return x.dim > y.dim;
                   });
  std::vector<BisectorCell> kept;
  for (auto& c : cells) {
    bool covered = false;
    for (const auto& k : kept) {
      if (k.dim < c.dim) break;
      // Quick reject: a cell inside another has its witness there too.
      bool witness_in = true;
      for (const auto& r : k.poly.rows) {
        Rational lhs = 0;
        for (int j = 0; j <= k.poly.d; ++j) lhs += r.coef[j] * c.witness[j];
        if (r.rel == Rel::EQ ? lhs != r.rhs : lhs > r.rhs) {
          witness_in = false;
          break;
        }
      }
      if (!witness_in) continue;
      bool inside = true;
      for (const auto& r : k.poly.rows)
        if (!implies(c.poly, r)) {
          inside = false;
          break;
        }
      if (inside) {
        covered = true;
        break;
      }
    }
    if (!covered) kept.push_back(std::move(c));
  }
  return kept;
}

/// Backtracks over facet tuples for the chosen sites, pruning via the
/// difference-bound closure of the partial cone intersection, and emits every
/// nonempty cell.
void enumerate_cells(const SiteSet& s, const std::vector<int>& subset,
                     const std::vector<FaceType>& facets, size_t level,
                     std::vector<FaceType>& chosen, const Polytrope& q,
                     std::vector<BisectorCell>& out) {
  if (level == subset.size()) {
    HPolyhedron h = cell_polyhedron(s, subset, chosen);
    auto w = feasible(h);
    if (!w) return;
    BisectorCell c;
    c.sites = subset;
    c.faces = chosen;
    c.dim = affine_dimension(h);
    c.poly = std::move(h);
    c.witness = std::move(*w);
    out.push_back(std::move(c));
    return;
  }
  for (const auto& f : facets) {
    Polytrope next =
        Polytrope::intersect(q, Polytrope::cone_of_facet(s[subset[level]], f));
    if (next.is_empty()) continue;
    // For two sites the interval system decides emptiness of Q cap H cheaply.
    if (subset.size() == 2 && level == 1 &&
        !cell_feasible_two(chosen[0], f, diff(s[subset[0]], s[subset[1]])))
      continue;
    chosen.push_back(f);
    enumerate_cells(s, subset, facets, level + 1, chosen, next, out);
    chosen.pop_back();
  }
}

std::vector<BisectorCell> bisector_cells(const SiteSet& s, std::vector<int> subset,
                                         const BisectorOptions& opt) {
  int d = s.dim();
  if (subset.empty()) {
    subset.resize(s.size());
    std::iota(subset.begin(), subset.end(), 0);
  }
  std::sort(subset.begin(), subset.end());
  if (subset.size() < 2) throw precondition_error("bisector needs two or more sites");
  if (!opt.override_guards && (subset.size() > 8 || d > 4))
    throw precondition_error("bisector enumeration guarded to k <= 8, d <= 4");
  auto facets = enumerate_faces(d, d - 1);
  std::vector<BisectorCell> cells;
  if (!opt.parallel) {
    std::vector<FaceType> chosen;
    enumerate_cells(s, subset, facets, 0, chosen, Polytrope(d), cells);
  } else {
    // Split the top-level facet choice across a small thread pool.
    unsigned n = std::min<unsigned>(std::thread::hardware_concurrency(),
                                    static_cast<unsigned>(facets.size()));
    if (n < 2) n = 2;
    std::vector<std::vector<BisectorCell>> parts(n);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n; ++t)
      pool.emplace_back([&, t] {
        for (size_t i = t; i < facets.size(); i += n) {
          Polytrope q = Polytrope::intersect(
              Polytrope(d), Polytrope::cone_of_facet(s[subset[0]], facets[i]));
          if (q.is_empty()) continue;
          std::vector<FaceType> chosen = {facets[i]};
          enumerate_cells(s, subset, facets, 1, chosen, q, parts[t]);
        }
      });
    for (auto& th : pool) th.join();
    for (auto& p : parts)
      for (auto& c : p) cells.push_back(std::move(c));
  }
  return maximal_cells(std::move(cells));
}

}  // namespace

std::vector<BisectorCell> bisector_two(const TorusPoint& a, const TorusPoint& b) {
  if (a == b) throw precondition_error("coincident sites");
  SiteSet s = SiteSet::make({a, b});
  return bisector_cells(s, {0, 1}, {});
}

std::vector<BisectorCell> bisector_k(const SiteSet& s, std::vector<int> subset,
                                     const BisectorOptions& opt) {
  return bisector_cells(s, std::move(subset), opt);
}

std::vector<TorusPoint> circumcenters(const SiteSet& s) {
  int d = s.dim();
  if (s.size() != d + 1)
    throw precondition_error("circumcenters need exactly d+1 sites");
  auto cells = bisector_cells(s, {}, {});
  std::vector<TorusPoint> pts;
  // Without weak general position the bisector can carry higher-dimensional
  // pieces; the circumcenters are its isolated points, i.e. the maximal cells
  // of dimension zero.
  for (const auto& c : cells)
    if (c.dim == 0) pts.push_back(c.witness);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

// ---------------------------------------------------------------------------
// Classification

BisectedOrderedPartition bop_class(const TorusPoint& a, const TorusPoint& b) {
  return bisected_ordered_partition(diff(a, b));
}

bool same_bisector_class(const TorusPoint& a, const TorusPoint& b,
                         const TorusPoint& a2, const TorusPoint& b2) {
  return bop_class(a, b) == bop_class(a2, b2);
}

// ---------------------------------------------------------------------------
// Halfspheres and sectors

std::vector<FaceType> halfsphere(const std::vector<Rational>& v) {
  int d = static_cast<int>(v.size()) - 1;
  std::vector<FaceType> out;
  for (const auto& f : enumerate_faces(d, d - 1))
    if (v[f.top()] - v[f.bottom()] > 0) out.push_back(f);
  return out;
}

std::vector<FaceType> sector(const SiteSet& s, int i) {
  int d = s.dim();
  std::vector<FaceType> out;
  for (const auto& f : enumerate_faces(d, d - 1)) {
    Rational vi = s[i][f.top()] - s[i][f.bottom()];
    bool strict_min = true;
    for (int j = 0; j < s.size(); ++j) {
      if (j == i) continue;
      if (!(vi < s[j][f.top()] - s[j][f.bottom()])) {
        strict_min = false;
        break;
      }
    }
    if (strict_min) out.push_back(f);
  }
  return out;
}

int sector_components(const std::vector<FaceType>& facets) {
  int n = static_cast<int>(facets.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      bool top = facets[i].top() == facets[j].top();
      bool bot = facets[i].bottom() == facets[j].bottom();
      if (top != bot) parent[find(i)] = find(j);  // facets sharing a ridge
    }
  std::set<int> roots;
  for (int i = 0; i < n; ++i) roots.insert(find(i));
  return static_cast<int>(roots.size());
}

int predicted_components_3pts(const SiteSet& s) {
  if (s.size() != 3) throw precondition_error("three sites required");
  if (weak_general_position(s))
    throw degeneracy_error("sites not in weak general position");
  int total = 0;
  for (int i = 0; i < 3; ++i) {
    auto sec = sector(s, i);
    if (sec.empty()) return 0;  // an empty sector forces an empty bisector
    total += sector_components(sec);
  }
  return total - 2;
}

// ---------------------------------------------------------------------------
// Hypersurface

std::vector<HypersurfaceTerm> hypersurface_terms(const TorusPoint& a,
                                                 const TorusPoint& b) {
  int d = a.dim();
  std::map<std::pair<int, int>, Rational> best;
  for (int i = 0; i <= d; ++i)
    for (int j = 0; j <= d; ++j) {
      if (i == j) continue;
      for (const Rational& c : {a[j] - a[i], b[j] - b[i]}) {
        auto it = best.find({i, j});
        if (it == best.end())
          best[{i, j}] = c;
        else if (c > it->second)
          it->second = c;
      }
    }
  std::vector<HypersurfaceTerm> out;
  for (auto& [key, c] : best) out.push_back({key.first, key.second, c});
  return out;
}

bool hypersurface_vanishes(const std::vector<HypersurfaceTerm>& terms,
                           const TorusPoint& x) {
  bool seen = false;
  Rational mx;
  int count = 0;
  for (const auto& t : terms) {
    Rational val = x[t.i] - x[t.j] + t.c;
    if (!seen || val > mx) {
      mx = val;
      count = 1;
      seen = true;
    } else if (val == mx) {
      ++count;
    }
  }
  return count >= 2;
}

// ---------------------------------------------------------------------------
// General position

namespace {

/// Checks the stability conditions for one subset over all facet tuples.
bool subset_general_position(const SiteSet& s, const std::vector<int>& subset,
                             const std::vector<FaceType>& facets,
                             std::vector<FaceType>& chosen, size_t level,
                             const Polytrope& q) {
  if (level == subset.size()) {
    HPolyhedron h = cell_polyhedron(s, subset, chosen);
    if (!feasible(h)) return true;  // empty cells are stable
    // Nonempty: H must meet the interior of Q ...
    if (!feasible(h, true)) return false;
    // ... and the functional differences must be independent.
    return facet_functionals_independent(chosen);
  }
  for (const auto& f : facets) {
    Polytrope next =
        Polytrope::intersect(q, Polytrope::cone_of_facet(s[subset[level]], f));
    if (next.is_empty()) continue;
    chosen.push_back(f);
    bool ok = subset_general_position(s, subset, facets, chosen, level + 1, next);
    chosen.pop_back();
    if (!ok) return false;
  }
  return true;
}

}  // namespace

bool set_general_position(const SiteSet& s, bool override_guards) {
  int d = s.dim(), n = s.size();
  if (!override_guards && (n > 12 || d > 4))
    throw precondition_error("general position check guarded to n <= 12, d <= 4");
  if (weak_general_position(s)) return false;
  auto facets = enumerate_faces(d, d - 1);
  int kmax = std::min(n, d + 2);
  std::vector<int> subset;
  auto rec = [&](auto&& self, int from, int k) -> bool {
    if (k == 0) {
      std::vector<FaceType> chosen;
      return subset_general_position(s, subset, facets, chosen, 0, Polytrope(d));
    }
    for (int i = from; i + k <= n; ++i) {
      subset.push_back(i);
      bool ok = self(self, i + 1, k - 1);
      subset.pop_back();
      if (!ok) return false;
    }
    return true;
  };
  for (int k = 2; k <= kmax; ++k)
    if (!rec(rec, 0, k)) return false;
  return true;
}

}  // namespace tropivor
