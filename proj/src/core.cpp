#include "tropivor/core.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tropivor {

// ---------------------------------------------------------------------------
// TorusPoint

TorusPoint::TorusPoint(std::vector<Rational> coords) : c_(std::move(coords)) {
  if (c_.size() < 2) throw precondition_error("torus point needs dimension >= 1");
  Rational base = c_[0];
  for (auto& x : c_) x -= base;
}

bool TorusPoint::is_zero() const {
  for (const auto& x : c_)
    if (x != 0) return false;
  return true;
}

std::vector<Rational> diff(const TorusPoint& a, const TorusPoint& b) {
  if (a.dim() != b.dim()) throw precondition_error("dimension mismatch");
  std::vector<Rational> v(a.coords().size());
  for (size_t i = 0; i < v.size(); ++i) v[i] = b[i] - a[i];
  return v;
}

SiteSet SiteSet::make(std::vector<TorusPoint> pts) {
  if (pts.empty()) throw precondition_error("empty site set");
  for (size_t i = 1; i < pts.size(); ++i)
    if (pts[i].dim() != pts[0].dim())
      throw precondition_error("sites with mixed dimensions");
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j)
      if (pts[i] == pts[j])
        throw precondition_error("duplicate site at indices " +
                                 std::to_string(i + 1) + ", " + std::to_string(j + 1));
  return SiteSet{std::move(pts)};
}

SiteSet SiteSet::make_or_empty(std::vector<TorusPoint> pts) {
  try {
    return make(std::move(pts));
  } catch (const Error&) {
    return SiteSet{};
  }
}

Rational trop_dist(const TorusPoint& a, const TorusPoint& b) {
  if (a.dim() != b.dim()) throw precondition_error("dimension mismatch");
  Rational mx = a[0] - b[0], mn = mx;
  for (int i = 1; i <= a.dim(); ++i) {
    Rational t = a[i] - b[i];
    if (t > mx) mx = t;
    if (t < mn) mn = t;
  }
  return mx - mn;
}

// ---------------------------------------------------------------------------
// Faces

FaceType make_facet(int d, int p, int q) {
  if (p == q || p < 0 || q < 0 || p > d || q > d)
    throw precondition_error("invalid facet index pair");
  FaceType f;
  f.d = d;
  f.plus = {p};
  f.minus = {q};
  for (int i = 0; i <= d; ++i)
    if (i != p && i != q) f.star.push_back(i);
  return f;
}

LinearFunctional facet_functional(const FaceType& f) {
  if (!f.is_facet()) throw precondition_error("facet_functional on a non-facet face");
  return LinearFunctional{f.top(), f.bottom()};
}

FaceType face_of_direction(const std::vector<Rational>& v) {
  Rational mx = v[0], mn = v[0];
  for (const auto& x : v) {
    if (x > mx) mx = x;
    if (x < mn) mn = x;
  }
  if (mx == mn) throw precondition_error("face_of_direction of the zero direction");
  FaceType f;
  f.d = static_cast<int>(v.size()) - 1;
  for (int i = 0; i < static_cast<int>(v.size()); ++i) {
    if (v[i] == mx)
      f.plus.push_back(i);
    else if (v[i] == mn)
      f.minus.push_back(i);
    else
      f.star.push_back(i);
  }
  return f;
}

FaceType face_of_direction(const TorusPoint& v) { return face_of_direction(v.coords()); }

std::vector<FaceType> enumerate_faces(int d, int k) {
  if (k < 0 || k > d - 1) throw precondition_error("face dimension out of range");
  std::vector<FaceType> out;
  int n = d + 1;
  std::vector<int> label(n);  // 0 = minus, 1 = star, 2 = plus
  auto rec = [&](auto&& self, int i, int stars) -> void {
    if (stars > k) return;
    if (i == n) {
      if (stars != k) return;
      FaceType f;
      f.d = d;
      for (int j = 0; j < n; ++j)
        (label[j] == 0 ? f.minus : label[j] == 1 ? f.star : f.plus).push_back(j);
      if (f.minus.empty() || f.plus.empty()) return;
      out.push_back(std::move(f));
      return;
    }
    for (int l = 0; l < 3; ++l) {
      label[i] = l;
      self(self, i + 1, stars + (l == 1));
    }
  };
  rec(rec, 0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Ordered partitions

OrderedPartition ordered_partition(const std::vector<Rational>& v) {
  if (v.empty()) throw precondition_error("ordered_partition of the empty vector");
  std::map<Rational, std::vector<int>> groups;
  for (int i = 0; i < static_cast<int>(v.size()); ++i) groups[v[i]].push_back(i);
  OrderedPartition p;
  for (auto& [val, idx] : groups) {
    p.values.push_back(val);
    p.parts.push_back(idx);
  }
  return p;
}

BisectedOrderedPartition bisected_ordered_partition(const std::vector<Rational>& v) {
  OrderedPartition p = ordered_partition(v);
  if (p.parts.size() < 2)
    throw precondition_error("bisected ordered partition of a constant vector");
  BisectedOrderedPartition b;
  b.midvalue = (p.values.front() + p.values.back()) / 2;
  b.partition = std::move(p);
  const auto& vals = b.partition.values;
  for (int k = 0; k < static_cast<int>(vals.size()); ++k) {
    if (vals[k] == b.midvalue) {
      b.on_part = true;
      b.index = k;
      return b;
    }
    if (vals[k] > b.midvalue) {
      b.on_part = false;
      b.index = k - 1;  // strictly between parts k-1 and k
      return b;
    }
  }
  throw internal_error("midvalue above maximum");  // unreachable
}

BisectedOrderedPartition bisected_ordered_partition(const TorusPoint& v) {
  if (v.is_zero()) throw precondition_error("zero direction has no bisected partition");
  return bisected_ordered_partition(v.coords());
}

TropicalSegment tropical_segment(const TorusPoint& a, const TorusPoint& b) {
  if (a == b) throw precondition_error("tropical segment of equal points");
  std::vector<Rational> v = diff(a, b);
  std::set<Rational> levels(v.begin(), v.end());
  Rational mu = (*levels.begin() + *levels.rbegin()) / 2;
  auto point_at = [&](const Rational& lam) {
    std::vector<Rational> p(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
      Rational shifted = a[i] + lam;
      p[i] = shifted > b[i] ? shifted : b[i];
    }
    return TorusPoint(p);
  };
  TropicalSegment s;
  for (auto it = levels.rbegin(); it != levels.rend(); ++it)
    s.breakpoints.push_back(point_at(*it));  // from a (lambda = max) to b (lambda = min)
  s.midpoint = point_at(mu);
  return s;
}

// ---------------------------------------------------------------------------
// General position

std::optional<WeakGPWitness> weak_general_position(const SiteSet& s) {
  int n = s.size(), d = s.dim();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      std::vector<Rational> v = diff(s[i], s[j]);
      for (int p = 0; p <= d; ++p)
        for (int q = p + 1; q <= d; ++q)
          if (v[p] == v[q]) return WeakGPWitness{i, j, p, q};
    }
  return std::nullopt;
}

bool pair_general_position(const TorusPoint& a, const TorusPoint& b) {
  if (a == b) throw precondition_error("pair_general_position of equal points");
  auto bop = bisected_ordered_partition(std::vector<Rational>(diff(a, b)));
  if (bop.on_part) return false;
  for (const auto& part : bop.partition.parts)
    if (part.size() > 1) return false;
  return true;
}

SiteDigraph site_digraph(const std::vector<FaceType>& facets) {
  SiteDigraph g;
  for (const auto& f : facets) {
    if (!f.is_facet()) throw precondition_error("site_digraph needs facets");
    g.nodes = f.d + 1;
    g.arcs.emplace_back(f.top(), f.bottom());
  }
  return g;
}

bool digraph_condition(const std::vector<FaceType>& facets) {
  SiteDigraph g = site_digraph(facets);
  int m = static_cast<int>(g.arcs.size());
  // Union-find over the undirected multigraph: count independent cycles.
  std::vector<int> parent(g.nodes);
  for (int i = 0; i < g.nodes; ++i) parent[i] = i;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int extra = 0;
  int extra_edge = -1;
  for (int e = 0; e < m; ++e) {
    int a = find(g.arcs[e].first), b = find(g.arcs[e].second);
    if (a == b) {
      ++extra;
      extra_edge = e;
    } else {
      parent[a] = b;
    }
  }
  if (extra == 0) return true;   // forest
  if (extra > 1) return false;   // more than one independent cycle
  // Unique cycle: the extra arc closes a tree path.  Walk the path from the
  // extra arc's head back to its tail through the spanning forest.
  std::vector<std::vector<std::pair<int, int>>> adj(g.nodes);  // (nbr, arc id)
  for (int e = 0; e < m; ++e) {
    if (e == extra_edge) continue;
    adj[g.arcs[e].first].push_back({g.arcs[e].second, e});
    adj[g.arcs[e].second].push_back({g.arcs[e].first, e});
  }
  int src = g.arcs[extra_edge].second, dst = g.arcs[extra_edge].first;
  std::vector<int> via_arc(g.nodes, -1), prev(g.nodes, -1);
  std::vector<int> stack = {src};
  std::vector<bool> seen(g.nodes, false);
  seen[src] = true;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (auto [w, e] : adj[u])
      if (!seen[w]) {
        seen[w] = true;
        prev[w] = u;
        via_arc[w] = e;
        stack.push_back(w);
      }
  }
  // Traverse the cycle dst -> ... -> src (tree path) then src -> dst (extra
  // arc); count arcs oriented along vs. against the traversal direction.
  int along = 0, against = 0;
  int u = dst;
  while (u != src) {
    int e = via_arc[u], p = prev[u];
    // Traversal step is p <- u reversed: we walk u -> p? We walk from dst to
    // src, i.e. step u -> prev[u].
    if (g.arcs[e].first == u && g.arcs[e].second == p)
      ++along;
    else
      ++against;
    u = p;
  }
  // Closing step src -> dst; the extra arc points dst -> src, i.e. against.
  ++against;
  return along != against;
}

bool facet_functionals_independent(const std::vector<FaceType>& facets) {
  if (facets.empty()) throw precondition_error("empty facet list");
  int d = facets[0].d, k = static_cast<int>(facets.size());
  if (k == 1) return true;
  // Rows: e_{p_i} - e_{q_i} - e_{p_1} + e_{q_1} for i = 2..k.
  std::vector<std::vector<Rational>> rows;
  for (int i = 1; i < k; ++i) {
    if (!facets[i].is_facet()) throw precondition_error("rank test needs facets");
    std::vector<Rational> r(d + 1, Rational(0));
    r[facets[i].top()] += 1;
    r[facets[i].bottom()] -= 1;
    r[facets[0].top()] -= 1;
    r[facets[0].bottom()] += 1;
    rows.push_back(std::move(r));
  }
  // Gaussian elimination rank.
  int rank = 0;
  for (int col = 0; col <= d && rank < static_cast<int>(rows.size()); ++col) {
    int piv = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
      if (rows[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[rank], rows[piv]);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      Rational f = rows[r][col] / rows[rank][col];
      for (int c = col; c <= d; ++c) rows[r][c] -= f * rows[rank][c];
    }
    ++rank;
  }
  return rank == k - 1;
}

}  // namespace tropivor
