#pragma once

/**
 * @file sweep2d.hpp
 * @brief Planar construction of tropical Voronoi diagrams by a beach-line
 *        sweep: a vertical line moves right through the chart (x_0 = 0) and
 *        the frontier between "closer to a visited site" and "closer to the
 *        line" is maintained as a sequence of arcs of tropical parabolas.
 *
 * The parabola of a site s against the line {u = t} is the locus of points
 * equidistant to both.  Its rightmost boundary is the concave piecewise
 * linear graph u = s_u + min(w + R, (w + R)/2, R/2, R - w) with w = v - s_v
 * and R = t - s_u, defined for w <= R, together with a horizontal ray going
 * left at the top height v = s_v + R.  The beach line is the upper envelope
 * in u of the visited sites' parabolas; its breakpoints trace the bisectors,
 * meeting at the Voronoi vertices.  All arithmetic is exact.
 *
 * Requires d == 2 and pairwise distinct first chart coordinates (guaranteed
 * under weak general position).  Combinatorially ambiguous configurations
 * (tied arcs over an interval, branching bisectors) raise degeneracy errors
 * rather than guessing.
 */

#include <optional>
#include <utility>
#include <vector>

#include "tropivor/core.hpp"

namespace tropivor {

/// Rightmost u of the locus equidistant to `site` and the line {u = t}, as a
/// function of v.  Requires site_u < t and v <= parabola_top(site, t).
Rational parabola_u(const TorusPoint& site, const Rational& t, const Rational& v);

/// Height of the upper end of the parabola graph: site_v + (t - site_u).
Rational parabola_top(const TorusPoint& site, const Rational& t);

/// The point where beach ownership passes from arc `lower` to arc `upper`
/// (in increasing v) at time t: the lowest sign change of
/// parabola_u(lower) - parabola_u(upper) from + to - at height >= vmin, or
/// the horizontal jump at lower's graph top when the envelope switches
/// there.  nullopt when the two graphs never swap in the admissible range.
std::optional<TorusPoint> beach_breakpoint(const TorusPoint& lower,
                                           const TorusPoint& upper,
                                           const Rational& t,
                                           const std::optional<Rational>& vmin = {});

struct SweepEdge {
  int site_a = -1, site_b = -1;  // increasing site indices
  int v0 = -1, v1 = -1;          // vertex ids; -1 marks an unbounded end
  /// Finite breakpoints of the edge from the v0 end to the v1 end; always
  /// nonempty (an anchor point even when both ends are unbounded).
  std::vector<TorusPoint> polyline;
  /// Outward chart directions (du, dv) of the unbounded ends.
  std::optional<std::pair<Rational, Rational>> ray0, ray1;
};

struct SweepDiagram {
  SiteSet sites;
  std::vector<TorusPoint> vertices;
  std::vector<SweepEdge> edges;
  std::vector<std::vector<int>> face_edges;  // edge ids bounding each site's face

  /// Self-check of the planar embedding: faces counted as orbits of the
  /// rotation system (edge ends sorted circularly at every vertex, rays
  /// meeting at a single vertex at infinity in reversed circular order).
  int face_count = 0;
  bool euler_ok = false;  // face_count == n and V - E + F == 2 on the sphere
};

/// Runs the sweep.  d == 2 only; throws degeneracy errors on inputs whose
/// beach combinatorics are ambiguous.
SweepDiagram sweep_diagram(const SiteSet& s);

/// Membership in the closed region of `site` through the computed boundary:
/// by star convexity the straight segment from the site to x stays in the
/// region exactly until it exits through a boundary edge, so x belongs to
/// the region iff no boundary crossing of [site, x] leaves it.
bool face_contains(const SweepDiagram& d, int site, const TorusPoint& x);

/// All sites whose closed region contains x.
std::vector<int> owners(const SweepDiagram& d, const TorusPoint& x);

}  // namespace tropivor
