#include "tropivor/sweep2d.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "tropivor/bisect.hpp"
#include "tropivor/polyhedra.hpp"

namespace tropivor {

namespace {

TorusPoint tp(Rational u, Rational v) {
  return TorusPoint({Rational(0), std::move(u), std::move(v)});
}

using Dir = std::pair<Rational, Rational>;

Dir neg(const Dir& d) { return {Rational(-d.first), Rational(-d.second)}; }

Rational cross2(const Dir& a, const Dir& b) {
  return Rational(a.first * b.second - a.second * b.first);
}

Dir delta(const TorusPoint& from, const TorusPoint& to) {
  return {Rational(to[1] - from[1]), Rational(to[2] - from[2])};
}

}  // namespace

// ---------------------------------------------------------------------------
// Parabolas and breakpoints

Rational parabola_top(const TorusPoint& site, const Rational& t) {
  return Rational(site[2] + t - site[1]);
}

Rational parabola_u(const TorusPoint& site, const Rational& t, const Rational& v) {
  Rational r = t - site[1];
  // r == 0 is allowed: the graph degenerates to the slope-1 line through the
  // site (the right edge of the site's tie wedge), for v <= site_v.
  if (sign(r) < 0)
    throw degeneracy_error("parabola needs the site left of the sweep line");
  Rational w = v - site[2];
  if (w > r) throw precondition_error("height above the top of the parabola");
  Rational m = w + r;
  Rational c = m / 2;
  if (c < m) m = c;
  c = r / 2;
  if (c < m) m = c;
  c = r - w;
  if (c < m) m = c;
  return Rational(site[1] + m);
}

std::optional<TorusPoint> beach_breakpoint(const TorusPoint& a, const TorusPoint& b,
                                           const Rational& t,
                                           const std::optional<Rational>& vmin) {
  Rational ra = t - a[1], rb = t - b[1];
  if (sign(ra) < 0 || sign(rb) < 0)
    throw degeneracy_error("breakpoint needs both sites left of the sweep line");
  Rational topa = parabola_top(a, t), topb = parabola_top(b, t);
  Rational vmax = topa < topb ? topa : topb;

  std::vector<Rational> ks;
  auto push = [&](Rational v) {
    if (v <= vmax) ks.push_back(std::move(v));
  };
  push(Rational(a[2] - ra));
  push(Rational(a[2]));
  push(Rational(a[2] + ra / 2));
  push(Rational(topa));
  push(Rational(b[2] - rb));
  push(Rational(b[2]));
  push(Rational(b[2] + rb / 2));
  push(Rational(topb));
  ks.push_back(vmax);
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());

  std::vector<Rational> fs;
  fs.reserve(ks.size());
  for (const auto& v : ks) fs.push_back(Rational(parabola_u(a, t, v) - parabola_u(b, t, v)));

  auto admissible = [&](const Rational& v) { return !vmin || v >= *vmin; };

  // Below the lowest kink both graphs are on their slope-1 pieces, so f is
  // the constant fs[0]; scan the kinks for the first admissible sign change
  // from + to -.
  std::optional<Rational> res;
  int prev_sign = 0;             // last nonzero sign
  size_t zrun = ks.size();       // start index of the current zero run
  for (size_t i = 0; i < ks.size() && !res; ++i) {
    int sg = sign(fs[i]);
    if (sg == 0) {
      if (zrun == ks.size()) zrun = i;
      continue;
    }
    if (sg < 0) {
      if (prev_sign > 0) {
        Rational v;
        if (zrun != ks.size()) {
          if (ks[i - 1] != ks[zrun] && admissible(ks[i - 1]))
            throw degeneracy_error("beach arcs tied along an interval");
          v = ks[zrun];
        } else {
          v = ks[i - 1] + (ks[i] - ks[i - 1]) * fs[i - 1] / (fs[i - 1] - fs[i]);
        }
        if (admissible(v)) res = v;
      }
      prev_sign = -1;
      zrun = ks.size();
    } else {
      prev_sign = 1;
      zrun = ks.size();
    }
  }
  if (!res && prev_sign > 0 && zrun != ks.size()) {
    // f ends at zero after being positive: the swap happens at the end of
    // the common domain.
    if (ks.back() != ks[zrun] && admissible(ks.back()))
      throw degeneracy_error("beach arcs tied along an interval");
    if (admissible(ks[zrun])) res = ks[zrun];
  }
  if (res) {
    Rational u = parabola_u(a, t, *res);
    if (u != parabola_u(b, t, *res))
      throw internal_error("breakpoint interpolation is off the envelope");
    return tp(std::move(u), std::move(*res));
  }

  // Horizontal jump: lower's graph ends first while still right of upper;
  // ownership passes along lower's top ray at the point where upper's graph
  // starts covering it.
  if (topa <= topb && sign(fs.back()) > 0 && admissible(topa))
    return tp(parabola_u(b, t, topa), Rational(topa));
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Bisector chains: the 1-dimensional cells of a two-point bisector ordered
// end to end, giving every point of the bisector a sortable parameter.

namespace {

struct Piece {
  // 0: segment a -> b; 1: opening ray a + l*dir (parameter decreases with l);
  // 2: closing ray a + l*dir (parameter increases); 3: full line through a;
  // 4/5: opening/closing two-dimensional cone with apex a (bisectors of
  // sites with tied coordinate differences end in such cones; the traced
  // breakpoint path runs along one of the cone's boundary rays).
  int kind = 0;
  TorusPoint a, b;
  Dir dir;
  HPolyhedron cone;  // kinds 4/5 only
};

struct Chain {
  std::vector<Piece> pieces;

  using Param = std::pair<int, Rational>;

  std::optional<Rational> along(const Piece& p, const TorusPoint& x) const {
    if (p.kind == 4 || p.kind == 5) {
      for (const auto& row : p.cone.rows) {
        Rational lhs = 0;
        for (size_t i = 0; i < row.coef.size(); ++i) lhs += row.coef[i] * x[static_cast<int>(i)];
        if (row.rel == Rel::EQ && lhs != row.rhs) return std::nullopt;
        if (row.rel == Rel::LE && lhs > row.rhs) return std::nullopt;
        if (row.rel == Rel::LT && lhs >= row.rhs) return std::nullopt;
      }
      return Rational(rational_abs(x[1] - p.a[1]) + rational_abs(x[2] - p.a[2]));
    }
    Dir d = p.kind == 0 ? delta(p.a, p.b) : p.dir;
    if (sign(cross2(d, delta(p.a, x))) != 0) return std::nullopt;
    const bool use_u = sign(d.first) != 0;
    Rational num = use_u ? Rational(x[1] - p.a[1]) : Rational(x[2] - p.a[2]);
    Rational den = use_u ? d.first : d.second;
    Rational l = num / den;
    // The off-axis coordinate must match too (d may have a zero component).
    if (use_u && x[2] - p.a[2] != l * d.second) return std::nullopt;
    if (!use_u && x[1] - p.a[1] != l * d.first) return std::nullopt;
    if (p.kind == 0 && (sign(l) < 0 || l > 1)) return std::nullopt;
    if ((p.kind == 1 || p.kind == 2) && sign(l) < 0) return std::nullopt;
    return l;
  }

  std::optional<Param> locate(const TorusPoint& x) const {
    for (size_t i = 0; i < pieces.size(); ++i) {
      auto l = along(pieces[i], x);
      if (!l) continue;
      const int k = pieces[i].kind;
      Rational s = (k == 1 || k == 4) ? Rational(-*l) : *l;
      return Param{static_cast<int>(i), std::move(s)};
    }
    return std::nullopt;
  }
};

bool param_less(const Chain::Param& a, const Chain::Param& b) {
  if (a.first != b.first) return a.first < b.first;
  return a.second < b.second;
}

// A direction of the affine hull of a one-dimensional cell that has no
// vertex (a full line): read it off an equality row of the description.
Dir line_direction(const HPolyhedron& poly) {
  for (const auto& row : poly.rows) {
    if (row.rel != Rel::EQ) continue;
    Dir n{row.coef[1], row.coef[2]};
    if (sign(n.first) != 0 || sign(n.second) != 0)
      return Dir{Rational(-n.second), Rational(n.first)};
  }
  throw internal_error("line cell without a usable equality row");
}

Chain build_chain(const TorusPoint& a, const TorusPoint& b) {
  struct Cell {
    std::vector<TorusPoint> verts;
    TorusPoint witness;
    bool cone = false;
    HPolyhedron poly;
  };
  std::vector<Cell> cells;
  std::optional<Dir> line_dir;
  for (auto& c : bisector_two(a, b)) {
    if (c.dim != 1 && c.dim != 2) continue;
    auto vs = vertices(c.poly);
    if (c.dim == 2) {
      if (vs.size() != 1)
        throw degeneracy_error("two-dimensional bisector cell is not a pointed cone");
      cells.push_back({std::move(vs), c.witness, true, c.poly});
      continue;
    }
    if (vs.empty()) line_dir = line_direction(c.poly);
    cells.push_back({std::move(vs), c.witness, false, {}});
  }
  if (cells.empty()) throw degeneracy_error("bisector has no one-dimensional cells");

  Chain chain;
  if (cells.size() == 1 && cells[0].verts.empty()) {
    Piece p;
    p.kind = 3;
    p.a = cells[0].witness;
    p.dir = *line_dir;
    chain.pieces.push_back(std::move(p));
    return chain;
  }
  for (const auto& c : cells)
    if (c.verts.empty()) throw degeneracy_error("bisector mixes lines with other cells");

  // Link cells sharing endpoints into a path.
  std::map<TorusPoint, std::vector<int>> at;
  for (size_t i = 0; i < cells.size(); ++i)
    for (const auto& v : cells[i].verts) at[v].push_back(static_cast<int>(i));
  for (const auto& [pt, inc] : at)
    if (inc.size() > 2) throw degeneracy_error("bisector branches at a point");

  // Chain ends: rays, or cells with an endpoint shared by no other cell.
  int start = -1;
  bool start_is_ray = false;
  std::optional<TorusPoint> entry;  // finite entry point of the current cell
  for (size_t i = 0; i < cells.size() && start < 0; ++i)
    if (cells[i].verts.size() == 1) {
      start = static_cast<int>(i);
      start_is_ray = true;
    }
  for (size_t i = 0; i < cells.size() && start < 0; ++i)
    for (const auto& v : cells[i].verts)
      if (at[v].size() == 1) {
        start = static_cast<int>(i);
        entry = v;
        break;
      }
  if (start < 0) throw degeneracy_error("bisector cells form a cycle");
  (void)start_is_ray;

  std::vector<bool> used(cells.size(), false);
  int cur = start;
  while (true) {
    used[cur] = true;
    const Cell& c = cells[cur];
    Piece p;
    TorusPoint exit;
    if (c.verts.size() == 1) {
      p.a = c.verts[0];
      p.dir = delta(p.a, c.witness);
      p.kind = c.cone ? (entry ? 5 : 4) : (entry ? 2 : 1);
      if (c.cone) p.cone = c.poly;
      exit = c.verts[0];
    } else {
      p.kind = 0;
      p.a = *entry;
      p.b = c.verts[0] == *entry ? c.verts[1] : c.verts[0];
      exit = p.b;
    }
    const bool closing = p.kind == 2 || p.kind == 5;
    chain.pieces.push_back(std::move(p));
    if (closing) break;
    int nxt = -1;
    for (int j : at[exit])
      if (!used[j]) nxt = j;
    if (nxt < 0) break;
    entry = exit;
    cur = nxt;
  }
  if (std::count(used.begin(), used.end(), true) != static_cast<long>(cells.size()))
    throw degeneracy_error("bisector cells do not form a single chain");
  return chain;
}

}  // namespace

// ---------------------------------------------------------------------------
// The sweep

namespace {

struct Arc {
  int site = -1;
  int prev = -1, next = -1;
  bool alive = false;
};

struct Event {
  Rational t;
  int kind = 0;  // 0 site, 1 circle
  int site = -1;
  int la = -1, ma = -1, ra = -1;
  TorusPoint center;
  Rational rho;
};

struct EventCmp {
  bool operator()(const Event& a, const Event& b) const {
    if (a.t != b.t) return a.t < b.t;
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.site != b.site) return a.site < b.site;
    if (a.la != b.la) return a.la < b.la;
    if (a.ma != b.ma) return a.ma < b.ma;
    if (a.ra != b.ra) return a.ra < b.ra;
    return a.center < b.center;
  }
};

struct Token {
  bool inf = false;
};

struct Breakpoint {
  int lo = -1, hi = -1;  // arc ids
  TorusPoint pt;
};

}  // namespace

SweepDiagram sweep_diagram(const SiteSet& s) {
  if (s.dim() != 2) throw precondition_error("the sweep construction is planar (d == 2)");
  const int n = s.size();
  if (n == 0) throw precondition_error("need at least one site");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (s[i][1] == s[j][1])
        throw degeneracy_error("sweep needs pairwise distinct first chart coordinates");

  SweepDiagram out;
  out.sites = s;
  out.face_edges.resize(n);
  if (n == 1) {
    out.face_count = 1;
    out.euler_ok = true;
    return out;
  }

  Rational maxabs = 0;
  for (int i = 0; i < n; ++i)
    for (int c = 0; c <= 2; ++c) {
      Rational a = rational_abs(s[i][c]);
      if (a > maxabs) maxabs = a;
    }
  const Rational far_coord = (maxabs + 1) * 1024;

  std::vector<Arc> arcs;
  int bottom = -1;
  auto new_arc = [&](int site) {
    arcs.push_back({site, -1, -1, true});
    return static_cast<int>(arcs.size()) - 1;
  };
  auto arc_ids = [&]() {
    std::vector<int> v;
    for (int a = bottom; a != -1; a = arcs[a].next) v.push_back(a);
    return v;
  };
  auto walk = [&](const Rational& t) {
    std::vector<Breakpoint> bps;
    std::optional<Rational> vmin;
    auto al = arc_ids();
    for (size_t i = 0; i + 1 < al.size(); ++i) {
      auto p = beach_breakpoint(s[arcs[al[i]].site], s[arcs[al[i + 1]].site], t, vmin);
      if (!p) throw internal_error("adjacent beach arcs never swap");
      vmin = (*p)[2];
      bps.push_back({al[i], al[i + 1], std::move(*p)});
    }
    return bps;
  };

  std::map<std::pair<int, int>, std::map<TorusPoint, Token>> tokens;
  std::map<TorusPoint, int> vertex_id;
  auto add_token = [&](int i, int j, const TorusPoint& p, bool inf) {
    auto key = std::minmax(i, j);
    tokens[{key.first, key.second}].insert({p, Token{inf}});
  };
  auto add_vertex = [&](const TorusPoint& p, int i, int j, int k) {
    if (!vertex_id.count(p)) {
      vertex_id[p] = static_cast<int>(out.vertices.size());
      out.vertices.push_back(p);
    }
    add_token(i, j, p, false);
    add_token(i, k, p, false);
    add_token(j, k, p, false);
  };

  std::set<Event, EventCmp> queue;
  auto push_circle = [&](int la, int ma, int ra, const Rational& now) {
    if (la < 0 || ma < 0 || ra < 0) return;
    int si = arcs[la].site, sj = arcs[ma].site, sk = arcs[ra].site;
    if (si == sj || sj == sk || si == sk) return;
    for (const auto& c : circumcenters(SiteSet::make({s[si], s[sj], s[sk]}))) {
      Rational rho = trop_dist(c, s[si]);
      Rational tstar = c[1] + rho;
      if (tstar >= now) queue.insert({std::move(tstar), 1, -1, la, ma, ra, c, std::move(rho)});
    }
  };

  {
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return s[i][1] < s[j][1]; });
    for (int i : order) queue.insert({Rational(s[i][1]), 0, i, -1, -1, -1, {}, {}});
  }

  while (!queue.empty()) {
    Event ev = *queue.begin();
    queue.erase(queue.begin());

    if (ev.kind == 0) {
      const int bs = ev.site;
      const Rational bu = s[bs][1], bv = s[bs][2];
      if (bottom == -1) {
        bottom = new_arc(bs);
        continue;
      }
      auto al = arc_ids();
      auto bps = walk(bu);
      const int m = static_cast<int>(al.size());

      // Topmost arc whose stretch reaches bv; breakpoints exactly at height
      // bv lie on the top edge of the new site's tie wedge and are vertices.
      int top_idx = m - 1;
      bool top_tk = false;
      for (int i = 0; i + 1 < m; ++i) {
        if (bv < bps[i].pt[2]) {
          top_idx = i;
          break;
        }
        if (bv == bps[i].pt[2]) {
          add_vertex(bps[i].pt, arcs[al[i]].site, arcs[al[i + 1]].site, bs);
          top_idx = i + 1;
          break;
        }
      }
      if (top_idx == m - 1 && bv > parabola_top(s[arcs[al[m - 1]].site], bu)) {
        // The new site claims the top ray; the old top arc's horizontal ray
        // is tied with it along an unbounded piece.
        top_tk = true;
        add_token(arcs[al[m - 1]].site, bs,
                  tp(Rational(-far_coord), parabola_top(s[arcs[al[m - 1]].site], bu)), true);
      }

      // Walk down through the tie wedge: breakpoints strictly inside become
      // vertices; stop at the first one at or outside the lower boundary.
      int lo = -1;  // first removed arc position, -1 until decided
      bool bot_tk = false;
      for (int i = (top_tk ? m - 2 : top_idx - 1); i >= 0; --i) {
        const TorusPoint& p = bps[i].pt;
        Rational h = p[1] - bu - (p[2] - bv);
        int ls = arcs[al[i]].site, us = arcs[al[i + 1]].site;
        if (sign(h) < 0) {
          add_vertex(p, ls, us, bs);
          continue;
        }
        if (sign(h) == 0) {
          add_vertex(p, ls, us, bs);
          lo = i + 1;
        } else {
          lo = i + 2;
        }
        break;
      }
      if (lo == -1) {
        if (bv < s[arcs[al[0]].site][2]) {
          // The new site claims the bottom ray; the old bottom arc is tied
          // with it along an unbounded piece of the old beach.
          bot_tk = true;
          lo = 0;
          Rational vv = -far_coord;
          Rational uu = bu + vv - s[arcs[al[0]].site][2];
          add_token(arcs[al[0]].site, bs, tp(std::move(uu), std::move(vv)), true);
        } else {
          lo = 1;
        }
      }
      const int hi = top_tk ? m - 1 : top_idx - 1;
      for (int k = lo; k <= hi; ++k) arcs[al[k]].alive = false;

      const int below = bot_tk ? -1 : al[lo - 1];
      const int above = top_tk ? -1 : al[top_idx];
      const bool split = !bot_tk && !top_tk && lo - 1 == top_idx;

      int nb = new_arc(bs);
      int upper = above;
      if (split) {
        upper = new_arc(arcs[above].site);
        arcs[upper].next = arcs[above].next;
        if (arcs[above].next != -1) arcs[arcs[above].next].prev = upper;
      }
      arcs[nb].prev = below;
      arcs[nb].next = upper;
      if (below != -1) arcs[below].next = nb;
      if (upper != -1) arcs[upper].prev = nb;
      if (below == -1) bottom = nb;

      if (below != -1) push_circle(arcs[below].prev, below, nb, ev.t);
      if (below != -1 && upper != -1) push_circle(below, nb, upper, ev.t);
      if (upper != -1) push_circle(nb, upper, arcs[upper].next, ev.t);
    } else {
      if (!arcs[ev.la].alive || !arcs[ev.ma].alive || !arcs[ev.ra].alive) continue;
      if (arcs[ev.ma].prev != ev.la || arcs[ev.ma].next != ev.ra) continue;

      bool ok_lo = false, ok_hi = false;
      for (const auto& bp : walk(ev.t)) {
        if (bp.lo == ev.la && bp.hi == ev.ma) ok_lo = bp.pt == ev.center;
        if (bp.lo == ev.ma && bp.hi == ev.ra) ok_hi = bp.pt == ev.center;
      }
      if (!ok_lo || !ok_hi) continue;
      bool closer = false;
      for (int i = 0; i < n && !closer; ++i)
        closer = trop_dist(ev.center, s[i]) < ev.rho;
      if (closer) continue;

      add_vertex(ev.center, arcs[ev.la].site, arcs[ev.ma].site, arcs[ev.ra].site);
      arcs[ev.ma].alive = false;
      arcs[ev.la].next = ev.ra;
      arcs[ev.ra].prev = ev.la;
      push_circle(arcs[ev.la].prev, ev.la, ev.ra, ev.t);
      push_circle(ev.la, ev.ra, arcs[ev.ra].next, ev.t);
    }
  }

  // Surviving adjacencies run to infinity; a breakpoint far past every event
  // lands deep on the corresponding unbounded bisector piece.
  for (const auto& bp : walk(far_coord))
    add_token(arcs[bp.lo].site, arcs[bp.hi].site, bp.pt, true);

  // Assemble edges pair by pair along the bisector chains.
  for (const auto& [pr, toks] : tokens) {
    Chain chain = build_chain(s[pr.first], s[pr.second]);
    struct Placed {
      Chain::Param param;
      TorusPoint pt;
      bool inf;
    };
    std::vector<Placed> placed;
    for (const auto& [pt, tok] : toks) {
      auto param = chain.locate(pt);
      if (!param)
        throw internal_error("edge endpoint off its bisector chain: pair (" +
                             std::to_string(pr.first) + "," + std::to_string(pr.second) +
                             ") at (" + to_string(pt[1]) + "," + to_string(pt[2]) + ")");
      placed.push_back({std::move(*param), pt, tok.inf});
    }
    std::sort(placed.begin(), placed.end(),
              [](const Placed& x, const Placed& y) { return param_less(x.param, y.param); });
    if (placed.size() % 2 != 0) throw internal_error("odd number of edge endpoints");

    for (size_t k = 0; k + 1 < placed.size(); k += 2) {
      const Placed& lo = placed[k];
      const Placed& hi = placed[k + 1];
      if (!lo.inf && !hi.inf && lo.pt == hi.pt) continue;  // pinched at a vertex
      SweepEdge e;
      e.site_a = pr.first;
      e.site_b = pr.second;
      const int ka = lo.param.first, kb = hi.param.first;
      if (ka == kb && chain.pieces[ka].kind >= 4) {
        const Piece& p = chain.pieces[ka];
        if (sign(cross2(delta(p.a, lo.pt), delta(p.a, hi.pt))) != 0)
          throw degeneracy_error("edge endpoints on different rays of a bisector cone");
      }
      if (lo.inf) {
        const Piece& p = chain.pieces[ka];
        if (p.kind == 0 || p.kind == 2 || p.kind == 5)
          throw internal_error("unbounded end on a bounded piece");
        e.ray0 = p.kind == 3 ? neg(p.dir) : p.kind == 4 ? delta(p.a, lo.pt) : p.dir;
      } else {
        e.v0 = vertex_id.at(lo.pt);
        e.polyline.push_back(lo.pt);
      }
      for (int k2 = ka; k2 < kb; ++k2) {
        const Piece& p = chain.pieces[k2];
        const TorusPoint& exit = p.kind == 0 ? p.b : p.a;
        if (e.polyline.empty() || e.polyline.back() != exit) e.polyline.push_back(exit);
      }
      if (hi.inf) {
        const Piece& p = chain.pieces[kb];
        if (p.kind == 0 || p.kind == 1 || p.kind == 4)
          throw internal_error("unbounded upper end on a lower piece");
        e.ray1 = p.kind == 5 ? delta(p.a, hi.pt) : p.dir;
        if (e.polyline.empty()) e.polyline.push_back(p.a);
      } else {
        if (e.polyline.empty() || e.polyline.back() != hi.pt) e.polyline.push_back(hi.pt);
        e.v1 = vertex_id.at(hi.pt);
      }
      if (e.polyline.empty()) e.polyline.push_back(chain.pieces[ka].a);
      out.face_edges[pr.first].push_back(static_cast<int>(out.edges.size()));
      out.face_edges[pr.second].push_back(static_cast<int>(out.edges.size()));
      out.edges.push_back(std::move(e));
    }
  }

  // Rotation system: sort edge ends circularly around every vertex (rays
  // about a single vertex at infinity, in reversed order) and count the
  // orbits of next = clockwise successor of the reversed half-edge.
  {
    const int ne = static_cast<int>(out.edges.size());
    const int vinf = static_cast<int>(out.vertices.size());
    auto org = [&](int h) {
      const SweepEdge& e = out.edges[h / 2];
      int v = h % 2 == 0 ? e.v0 : e.v1;
      return v < 0 ? vinf : v;
    };
    auto dir_at = [&](int h) -> Dir {
      const SweepEdge& e = out.edges[h / 2];
      if (h % 2 == 0) {
        if (e.v0 < 0) return *e.ray0;
        if (e.polyline.size() >= 2) return delta(e.polyline[0], e.polyline[1]);
        return *e.ray1;
      }
      if (e.v1 < 0) return *e.ray1;
      if (e.polyline.size() >= 2)
        return delta(e.polyline[e.polyline.size() - 1], e.polyline[e.polyline.size() - 2]);
      return *e.ray0;
    };
    auto half_plane = [](const Dir& d) {
      return (sign(d.second) > 0 || (sign(d.second) == 0 && sign(d.first) > 0)) ? 0 : 1;
    };
    auto ccw_less = [&](const Dir& x, const Dir& y) {
      int hx = half_plane(x), hy = half_plane(y);
      if (hx != hy) return hx < hy;
      return sign(cross2(x, y)) > 0;
    };
    // Rays with equal directions meet the circle at infinity in the order of
    // their transverse offsets cross(dir, base), which is constant along a ray.
    auto l1 = [](const Dir& d) { return Rational(rational_abs(d.first) + rational_abs(d.second)); };
    auto base_pt = [&](int h) -> const TorusPoint& {
      const SweepEdge& e = out.edges[h / 2];
      return h % 2 == 0 ? e.polyline.front() : e.polyline.back();
    };
    std::vector<std::vector<int>> around(vinf + 1);
    for (int h = 0; h < 2 * ne; ++h) around[org(h)].push_back(h);
    for (int v = 0; v <= vinf; ++v) {
      auto& lst = around[v];
      if (v == vinf) {
        std::sort(lst.begin(), lst.end(), [&](int x, int y) {
          Dir dx = dir_at(x), dy = dir_at(y);
          int hx = half_plane(dx), hy = half_plane(dy);
          if (hx != hy) return hx < hy;
          int c = sign(cross2(dx, dy));
          if (c != 0) return c > 0;
          const TorusPoint& px = base_pt(x);
          const TorusPoint& py = base_pt(y);
          return Rational(cross2(dx, Dir{px[1], px[2]}) * l1(dy)) <
                 Rational(cross2(dy, Dir{py[1], py[2]}) * l1(dx));
        });
        std::reverse(lst.begin(), lst.end());
      } else {
        std::sort(lst.begin(), lst.end(),
                  [&](int x, int y) { return ccw_less(dir_at(x), dir_at(y)); });
      }
    }
    std::vector<int> pos(2 * ne, -1);
    for (int v = 0; v <= vinf; ++v)
      for (size_t i = 0; i < around[v].size(); ++i) pos[around[v][i]] = static_cast<int>(i);
    auto next = [&](int h) {
      int tw = h ^ 1;
      const auto& lst = around[org(tw)];
      int p = pos[tw];
      return lst[(p + static_cast<int>(lst.size()) - 1) % lst.size()];
    };
    std::vector<bool> seen(2 * ne, false);
    int orbits = 0;
    for (int h = 0; h < 2 * ne; ++h) {
      if (seen[h]) continue;
      ++orbits;
      int c = h;
      int guard = 0;
      while (!seen[c] && guard++ <= 4 * ne) {
        seen[c] = true;
        c = next(c);
      }
    }
    out.face_count = orbits;
    const int v_cnt = vinf + 1;  // finite vertices plus the one at infinity
    out.euler_ok = (orbits == n) && (v_cnt - ne + orbits == 2);
  }

  return out;
}

// ---------------------------------------------------------------------------
// Region membership through the computed boundary

namespace {

struct BoundaryPiece {
  TorusPoint a, b;  // b meaningful for segments
  Dir dir;          // meaningful for rays
  bool ray = false;
  int rival = -1;
};

void face_pieces(const SweepDiagram& d, int site, std::vector<BoundaryPiece>& out) {
  out.clear();
  for (int eid : d.face_edges[site]) {
    const SweepEdge& e = d.edges[eid];
    const int rival = e.site_a == site ? e.site_b : e.site_a;
    for (size_t i = 0; i + 1 < e.polyline.size(); ++i)
      out.push_back({e.polyline[i], e.polyline[i + 1], {}, false, rival});
    if (e.ray0) out.push_back({e.polyline.front(), {}, *e.ray0, true, rival});
    if (e.ray1) out.push_back({e.polyline.back(), {}, *e.ray1, true, rival});
  }
}

// Largest lambda in [0,1] with base + lambda*dir on the piece, or nullopt.
std::optional<Rational> last_hit(const TorusPoint& base, const Dir& dir,
                                 const BoundaryPiece& p) {
  Dir f = p.ray ? p.dir : delta(p.a, p.b);
  Dir w = delta(base, p.a);
  Rational den = cross2(dir, f);
  if (sign(den) != 0) {
    Rational lam = cross2(w, f) / den;
    Rational mu = cross2(w, dir) / den;
    if (sign(lam) < 0 || lam > 1) return std::nullopt;
    if (sign(mu) < 0) return std::nullopt;
    if (!p.ray && mu > 1) return std::nullopt;
    return lam;
  }
  // Parallel: only collinear overlaps matter.
  if (sign(cross2(dir, w)) != 0) return std::nullopt;
  const bool use_u = sign(dir.first) != 0;
  auto coord = [&](const TorusPoint& q) { return use_u ? Rational(q[1]) : Rational(q[2]); };
  Rational d0 = use_u ? dir.first : dir.second;
  Rational la = (coord(p.a) - coord(base)) / d0;
  std::optional<Rational> lb;
  if (!p.ray) lb = (coord(p.b) - coord(base)) / d0;
  // Piece occupies [la, lb] (or a ray from la toward +/- infinity).
  Rational lo = la, hi = la;
  bool hi_inf = false, lo_inf = false;
  if (p.ray) {
    Rational fd = use_u ? p.dir.first : p.dir.second;
    if (sign(fd) * sign(d0) >= 0)
      hi_inf = true;
    else
      lo_inf = true;
  } else {
    lo = la < *lb ? la : *lb;
    hi = la < *lb ? *lb : la;
  }
  Rational top = hi_inf ? Rational(1) : (hi < 1 ? hi : Rational(1));
  Rational bot = lo_inf ? Rational(0) : (sign(lo) > 0 ? lo : Rational(0));
  if (bot > top) return std::nullopt;
  return top;
}

}  // namespace

bool face_contains(const SweepDiagram& d, int site, const TorusPoint& x) {
  const TorusPoint& st = d.sites[site];
  if (x == st) return true;
  Dir dir = delta(st, x);

  std::vector<BoundaryPiece> pieces;
  face_pieces(d, site, pieces);
  std::optional<Rational> last;
  std::vector<int> rivals;
  for (const auto& p : pieces) {
    auto lam = last_hit(st, dir, p);
    if (!lam) continue;
    if (!last || *lam > *last) {
      last = lam;
      rivals.assign(1, p.rival);
    } else if (*lam == *last) {
      rivals.push_back(p.rival);
    }
  }
  if (!last) return true;     // the segment never meets the boundary
  if (*last == 1) return true;  // x lies on the boundary itself

  // The region's trace on the segment is an interval from the site, so x is
  // inside iff the segment does not exit at the last boundary contact.  Probe
  // just past it, inside the first linear regime of the distance comparison.
  auto at = [&](const Rational& lam) {
    return tp(Rational(st[1] + lam * dir.first), Rational(st[2] + lam * dir.second));
  };
  for (int r : rivals) {
    Rational nxt = 1;
    for (const TorusPoint* y : {&d.sites[r], &st}) {
      for (int c1 = 0; c1 <= 2; ++c1)
        for (int c2 = c1 + 1; c2 <= 2; ++c2) {
          // (p(l) - y)_c1 == (p(l) - y)_c2, linear in l.
          Rational a0 = (st[c1] - (*y)[c1]) - (st[c2] - (*y)[c2]);
          Rational a1 = (c1 == 0 ? Rational(0) : (c1 == 1 ? dir.first : dir.second)) -
                        (c2 == 1 ? dir.first : dir.second);
          if (sign(a1) == 0) continue;
          Rational lc = -a0 / a1;
          if (lc > *last && lc < nxt) nxt = lc;
        }
    }
    Rational probe = (*last + nxt) / 2;
    TorusPoint q = at(probe);
    if (trop_dist(q, d.sites[r]) < trop_dist(q, st)) return false;
  }
  return true;
}

std::vector<int> owners(const SweepDiagram& d, const TorusPoint& x) {
  std::vector<int> res;
  for (int i = 0; i < d.sites.size(); ++i)
    if (face_contains(d, i, x)) res.push_back(i);
  return res;
}

}  // namespace tropivor
