#include "tropivor/voronoi.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <string>

namespace tropivor {

namespace {

std::vector<std::pair<int, int>> ordered_pairs(int d) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i <= d; ++i)
    for (int j = i + 1; j <= d; ++j) pairs.emplace_back(i, j);
  return pairs;
}

// Sorted distinct values of a_i - a_j over the sites, one list per pair.
std::vector<std::vector<Rational>> pair_value_lists(const SiteSet& s) {
  auto pairs = ordered_pairs(s.dim());
  std::vector<std::vector<Rational>> values(pairs.size());
  for (size_t pid = 0; pid < pairs.size(); ++pid) {
    auto [i, j] = pairs[pid];
    for (int a = 0; a < s.size(); ++a) values[pid].push_back(s[a][i] - s[a][j]);
    std::sort(values[pid].begin(), values[pid].end());
    values[pid].erase(std::unique(values[pid].begin(), values[pid].end()),
                      values[pid].end());
  }
  return values;
}

void check_partition_preconditions(const SiteSet& s, bool override_guards) {
  if (s.size() < 1) throw precondition_error("empty site set");
  const int d = s.dim();
  if (d < 2 || d > 3)
    throw precondition_error("polytrope partitions support d = 2 or 3, got d = " +
                             std::to_string(d));
  const int cap = d == 2 ? 50 : 12;
  if (!override_guards && s.size() > cap)
    throw precondition_error("site count " + std::to_string(s.size()) +
                             " exceeds the guard of " + std::to_string(cap) +
                             " for d = " + std::to_string(d));
}

}  // namespace

// ---------------------------------------------------------------------------
// Standard partition

std::vector<PartitionCell> standard_partition(const SiteSet& s,
                                              bool override_guards) {
  check_partition_preconditions(s, override_guards);
  const int d = s.dim();
  auto pairs = ordered_pairs(d);
  auto values = pair_value_lists(s);

  std::vector<PartitionCell> cells;
  std::vector<int> signature(pairs.size(), 0);
  // Depth-first over interval choices; dead branches are cut as soon as the
  // partial closure loses full dimension.
  auto rec = [&](auto&& self, size_t pid, const Polytrope& cur) -> void {
    if (pid == pairs.size()) {
      cells.push_back(PartitionCell{cur, signature, {}, {}});
      return;
    }
    auto [i, j] = pairs[pid];
    const auto& vals = values[pid];
    const int m = static_cast<int>(vals.size());
    for (int t = 0; t <= m; ++t) {
      Polytrope next = cur;
      if (t < m) next.add(i, j, vals[t]);
      if (t > 0) next.add(j, i, -vals[t - 1]);
      next.close();
      if (!next.is_full_dim()) continue;
      signature[pid] = t;
      self(self, pid + 1, next);
    }
  };
  rec(rec, 0, Polytrope(d));
  return cells;
}

std::vector<TorusPoint> arrangement_vertices(const SiteSet& s) {
  if (s.size() < 1) throw precondition_error("empty site set");
  const int d = s.dim();
  if (d < 2 || d > 3)
    throw precondition_error("arrangement vertices support d = 2 or 3");

  // Hyperplanes x_i - x_j = a_i - a_j in the chart x_0 = 0.
  struct Hyp {
    std::vector<Rational> a;
    Rational b;
  };
  std::vector<Hyp> hyps;
  for (auto [i, j] : ordered_pairs(d))
    for (int k = 0; k < s.size(); ++k) {
      Hyp h;
      h.a.assign(d, Rational(0));
      if (i > 0) h.a[i - 1] += 1;
      if (j > 0) h.a[j - 1] -= 1;
      h.b = s[k][i] - s[k][j];
      hyps.push_back(std::move(h));
    }

  std::set<std::vector<Rational>> points;
  const int m = static_cast<int>(hyps.size());
  std::vector<int> idx(d);
  auto rec = [&](auto&& self, int level, int start) -> void {
    if (level == d) {
      std::vector<std::vector<Rational>> mat(d);
      std::vector<Rational> rhs(d);
      for (int r = 0; r < d; ++r) mat[r] = hyps[idx[r]].a, rhs[r] = hyps[idx[r]].b;
      if (auto x = solve_square(mat, rhs)) {
        x->insert(x->begin(), Rational(0));
        points.insert(*x);
      }
      return;
    }
    for (int k = start; k < m; ++k) {
      idx[level] = k;
      self(self, level + 1, k + 1);
    }
  };
  rec(rec, 0, 0);

  std::vector<TorusPoint> out;
  for (const auto& p : points) out.emplace_back(p);
  return out;
}

// ---------------------------------------------------------------------------
// Labeling and region pieces

namespace {

// Candidate facet per site on a cell that lies in one maximal cone of every
// site's fan: read the coordinate order of x - a off an interior witness.
std::vector<std::pair<int, FaceType>> candidate_labels(const Polytrope& p,
                                                       const SiteSet& s) {
  auto x = feasible(p.to_hpoly(), true);
  if (!x) throw internal_error("labeling a cell without interior");
  std::vector<std::pair<int, FaceType>> cand;
  for (int a = 0; a < s.size(); ++a) {
    FaceType f = face_of_direction(diff(s[a], *x));
    if (!f.is_facet())
      throw degeneracy_error("cell witness direction from site " +
                             std::to_string(a + 1) + " misses every facet cone");
    cand.emplace_back(a, std::move(f));
  }
  return cand;
}

// Keeps, of the candidates, the sites whose linearized distance is minimal
// somewhere on the cell, and returns their region pieces.  Candidates sharing
// a facet functional differ by a constant, so the pointwise larger one is
// dominated outright; on equal offsets the functionals coincide and the two
// sites win or lose jointly (sites outside weak general position, where the
// pair's fat bisector piece crosses the cell).  Distinct functionals become
// difference-of-functional cuts.
std::vector<std::pair<int, SemiPolytrope>> envelope_over(
    const Polytrope& p, const SiteSet& s,
    const std::vector<std::pair<int, FaceType>>& cand) {
  // lambda_a(x - a) = x_top - x_bot - offset(a), larger offset = smaller value.
  auto offset = [&](int idx) -> Rational {
    const auto& [a, f] = cand[idx];
    return s[a][f.top()] - s[a][f.bottom()];
  };
  const int n = static_cast<int>(cand.size());
  std::vector<bool> dominated(n, false);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const auto& fi = cand[i].second;
      const auto& fj = cand[j].second;
      if (fi.top() != fj.top() || fi.bottom() != fj.bottom()) continue;
      if (offset(i) == offset(j)) continue;  // identical functionals
      dominated[offset(i) < offset(j) ? i : j] = true;
    }

  std::vector<std::pair<int, SemiPolytrope>> pieces;
  for (int i = 0; i < n; ++i) {
    if (dominated[i]) continue;
    const auto& [a, fa] = cand[i];
    SemiPolytrope sp{p, {}};
    for (int j = 0; j < n; ++j) {
      if (j == i || dominated[j]) continue;
      const auto& [b, fb] = cand[j];
      if (fa.top() == fb.top() && fa.bottom() == fb.bottom()) continue;
      // lambda_a(x - a) <= lambda_b(x - b)
      sp.cut(DiffRow{fa.top(), fa.bottom(), fb.top(), fb.bottom(),
                     offset(i) - offset(j)});
    }
    if (lp_feasible(chart_rows(sp.to_hpoly()), p.dim()))
      pieces.emplace_back(a, std::move(sp));
  }
  return pieces;
}

}  // namespace

std::vector<std::pair<int, FaceType>> cell_labeling(const Polytrope& p,
                                                    const SiteSet& s) {
  auto cand = candidate_labels(p, s);
  auto pieces = envelope_over(p, s, cand);
  std::vector<std::pair<int, FaceType>> labels;
  for (const auto& [a, sp] : pieces)
    for (const auto& [b, f] : cand)
      if (b == a) labels.emplace_back(a, f);
  return labels;
}

std::vector<std::pair<int, SemiPolytrope>> envelope_in_cell(
    const Polytrope& p, const SiteSet& s,
    const std::vector<std::pair<int, FaceType>>& labeling) {
  return envelope_over(p, s, labeling);
}

// ---------------------------------------------------------------------------
// Polytrope tree

PolytropeTree::PolytropeTree(const SiteSet& s) : sites_(s) {
  if (s.size() < 1) throw precondition_error("empty site set");
  Node root;
  root.cell = Polytrope(s.dim());
  root.cell.close();
  nodes_.push_back(std::move(root));
  inserted_.assign(s.size(), false);
}

namespace {

// Index of the unique closed maximal cone of b + F(B^d) containing the
// full-dimensional polytrope, or -1 if it straddles several.
int containing_cone(const Polytrope& p, const TorusPoint& b,
                    const std::vector<FaceType>& facets) {
  const int d = p.dim();
  for (size_t f = 0; f < facets.size(); ++f) {
    const int top = facets[f].top(), bot = facets[f].bottom();
    bool inside = true;
    for (int k = 0; k <= d && inside; ++k) {
      if (k != top && !(p.bound(k, top) <= Bound::of(b[k] - b[top])))
        inside = false;
      if (k != bot && !(p.bound(bot, k) <= Bound::of(b[bot] - b[k])))
        inside = false;
    }
    if (inside) return static_cast<int>(f);
  }
  return -1;
}

}  // namespace

void PolytropeTree::insert(int site_index) {
  if (site_index < 0 || site_index >= sites_.size())
    throw precondition_error("site index out of range");
  if (inserted_[site_index]) throw precondition_error("site inserted twice");
  inserted_[site_index] = true;
  const TorusPoint& b = sites_[site_index];
  const auto facets = enumerate_faces(sites_.dim(), sites_.dim() - 1);

  std::vector<int> stack{0};
  while (!stack.empty()) {
    const int q = stack.back();
    stack.pop_back();
    const int cone = containing_cone(nodes_[q].cell, b, facets);
    if (cone >= 0) {
      nodes_[q].fragments.emplace_back(site_index, facets[cone]);
      continue;
    }
    if (!nodes_[q].children.empty()) {
      for (int c : nodes_[q].children) stack.push_back(c);
      continue;
    }
    // Leaf straddling several cones: split into the full-dimensional cells
    // of the cone intersections.
    std::vector<int> children;
    for (const auto& f : facets) {
      Polytrope piece =
          Polytrope::intersect(nodes_[q].cell, Polytrope::cone_of_facet(b, f));
      if (!piece.is_full_dim()) continue;
      Node child;
      child.cell = std::move(piece);
      child.parent = q;
      child.depth = nodes_[q].depth + 1;
      child.fragments.emplace_back(site_index, f);
      children.push_back(static_cast<int>(nodes_.size()));
      nodes_.push_back(std::move(child));
    }
    if (children.size() < 2)
      throw internal_error("leaf split produced fewer than two cells");
    nodes_[q].split_site = site_index;
    nodes_[q].children = std::move(children);
  }
}

std::vector<int> PolytropeTree::leaves() const {
  std::vector<int> out;
  for (size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].children.empty()) out.push_back(static_cast<int>(i));
  return out;
}

int PolytropeTree::leaf_count() const {
  return static_cast<int>(leaves().size());
}

Rational PolytropeTree::mean_leaf_depth() const {
  auto ls = leaves();
  Rational total = 0;
  for (int l : ls) total += nodes_[l].depth;
  return total / static_cast<int>(ls.size());
}

std::vector<Polytrope> PolytropeTree::leaf_cells() const {
  std::vector<Polytrope> cells;
  for (int l : leaves()) cells.push_back(nodes_[l].cell);
  std::sort(cells.begin(), cells.end());
  return cells;
}

int PolytropeTree::locate(const TorusPoint& x) const {
  int q = 0;
  while (!nodes_[q].children.empty()) {
    int next = -1;
    for (int c : nodes_[q].children)
      if (nodes_[c].cell.contains(x)) {
        next = c;
        break;
      }
    if (next < 0) throw internal_error("tree leaves fail to cover a point");
    q = next;
  }
  return q;
}

void PolytropeTree::cascade_labels() {
  for (int i = 0; i < sites_.size(); ++i)
    if (!inserted_[i]) throw precondition_error("cascade before all insertions");

  std::vector<std::optional<FaceType>> assigned(sites_.size());
  auto rec = [&](auto&& self, int q) -> void {
    std::vector<std::pair<int, std::optional<FaceType>>> undo;
    for (const auto& [site, f] : nodes_[q].fragments) {
      undo.emplace_back(site, assigned[site]);
      assigned[site] = f;
    }
    if (nodes_[q].children.empty()) {
      std::vector<std::pair<int, FaceType>> cand;
      for (int a = 0; a < sites_.size(); ++a) {
        if (!assigned[a])
          throw internal_error("leaf missing a cone fragment for a site");
        cand.emplace_back(a, *assigned[a]);
      }
      auto pieces = envelope_over(nodes_[q].cell, sites_, cand);
      nodes_[q].labeling.clear();
      for (const auto& [a, sp] : pieces)
        nodes_[q].labeling.emplace_back(a, *assigned[a]);
    } else {
      for (int c : nodes_[q].children) self(self, c);
    }
    for (auto it = undo.rbegin(); it != undo.rend(); ++it)
      assigned[it->first] = it->second;
  };
  rec(rec, 0);
}

// ---------------------------------------------------------------------------
// Diagram assembly

namespace {

void attach_labels_and_regions(VoronoiDiagram& dia) {
  dia.regions.assign(dia.sites.size(), {});
  for (auto& cell : dia.cells)
    for (auto& [a, sp] : cell.subcells) dia.regions[a].push_back(sp);
}

}  // namespace

VoronoiDiagram voronoi_standard(const SiteSet& s, bool override_guards) {
  VoronoiDiagram dia;
  dia.sites = s;
  dia.cells = standard_partition(s, override_guards);
  for (auto& cell : dia.cells) {
    cell.labeling = cell_labeling(cell.geometry, s);
    cell.subcells = envelope_in_cell(cell.geometry, s, cell.labeling);
  }
  dia.locator = VoronoiDiagram::Locator::kSignature;
  dia.pair_values = pair_value_lists(s);
  for (size_t i = 0; i < dia.cells.size(); ++i)
    dia.cell_of_signature[dia.cells[i].signature] = static_cast<int>(i);
  attach_labels_and_regions(dia);
  return dia;
}

VoronoiDiagram voronoi_incremental(const SiteSet& s, unsigned long long seed,
                                   bool override_guards) {
  check_partition_preconditions(s, override_guards);

  std::vector<int> order(s.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 gen(seed);
  std::shuffle(order.begin(), order.end(), gen);

  auto tree = std::make_shared<PolytropeTree>(s);
  for (int i : order) tree->insert(i);
  tree->cascade_labels();

  VoronoiDiagram dia;
  dia.sites = s;
  dia.locator = VoronoiDiagram::Locator::kTree;
  for (int leaf : tree->leaves()) {
    const auto& node = tree->nodes()[leaf];
    PartitionCell cell;
    cell.geometry = node.cell;
    cell.labeling = node.labeling;
    cell.subcells = envelope_in_cell(node.cell, s, node.labeling);
    dia.cell_of_leaf[leaf] = static_cast<int>(dia.cells.size());
    dia.cells.push_back(std::move(cell));
  }
  dia.tree = std::move(tree);
  attach_labels_and_regions(dia);
  return dia;
}

namespace {

int locate_cell(const VoronoiDiagram& d, const TorusPoint& x) {
  if (d.locator == VoronoiDiagram::Locator::kSignature) {
    std::vector<int> sig;
    auto pairs = ordered_pairs(d.sites.dim());
    for (size_t pid = 0; pid < pairs.size(); ++pid) {
      auto [i, j] = pairs[pid];
      const auto& vals = d.pair_values[pid];
      Rational key = x[i] - x[j];
      sig.push_back(static_cast<int>(
          std::lower_bound(vals.begin(), vals.end(), key) - vals.begin()));
    }
    auto it = d.cell_of_signature.find(sig);
    if (it != d.cell_of_signature.end()) return it->second;
    // On a boundary the forced tie-break can name an empty interval vector;
    // fall through to the scan.
  } else if (d.locator == VoronoiDiagram::Locator::kTree) {
    return d.cell_of_leaf.at(d.tree->locate(x));
  }
  for (size_t i = 0; i < d.cells.size(); ++i)
    if (d.cells[i].geometry.contains(x)) return static_cast<int>(i);
  throw internal_error("diagram cells fail to cover a point");
}

}  // namespace

std::vector<int> owners(const VoronoiDiagram& d, const TorusPoint& x) {
  const auto& cell = d.cells[locate_cell(d, x)];
  std::vector<int> out;
  for (const auto& [a, sp] : cell.subcells)
    if (sp.contains(x)) out.push_back(a);
  return out;
}

}  // namespace tropivor
