#pragma once

/**
 * @file oracle.hpp
 * @brief Independent brute-force ground truth: nearest-site queries by direct
 *        distance evaluation, diagram verification by exact random sampling,
 *        circumcenters recomputed through square linear systems, and the
 *        exhaustive facet-pair feasibility table behind the classification
 *        invariant.
 *
 * Everything here deliberately avoids the construction code paths it checks:
 * nearest_sites evaluates the distance formula directly, brute_circumcenters
 * solves equality systems per facet tuple instead of enumerating bisector
 * cells, and pattern_table asks only the closed-form pair feasibility test.
 */

#include <vector>

#include "tropivor/core.hpp"
#include "tropivor/sweep2d.hpp"
#include "tropivor/voronoi.hpp"

namespace tropivor {

// ---------------------------------------------------------------------------
// Nearest sites

/// The exact minimal distance from x to the set and the full argmin set,
/// by direct evaluation over all sites.
std::pair<Rational, std::vector<int>> nearest_sites(const TorusPoint& x, const SiteSet& s);

// ---------------------------------------------------------------------------
// Sampling

/// Seeded exact sampling: coordinates are random rationals num/den with
/// den <= den_bound and |num/den| <= box_radius, so every check stays exact.
struct SampleConfig {
  unsigned long long seed = 0;
  int count = 1000;
  long box_radius = 20;
  long den_bound = 997;
  bool parallel = false;  // split the sample range across threads
};

std::vector<TorusPoint> sample_points(int d, const SampleConfig& cfg);

// ---------------------------------------------------------------------------
// Diagram verification

struct Violation {
  TorusPoint x;
  std::vector<int> claimed;  // owners according to the diagram
  std::vector<int> truth;    // argmin set according to nearest_sites
};

struct VerifyReport {
  int checked = 0;
  std::vector<Violation> violations;
  bool pass() const { return violations.empty(); }
};

/// Samples cfg.count points and demands, at every sample, that the diagram's
/// owner set equals the exact argmin set.  Ties are fine on both sides: a
/// point on a boundary belongs to every tied region and to every tied argmin
/// site, and the two sets must still agree.
VerifyReport verify_diagram(const VoronoiDiagram& d, const SampleConfig& cfg);
VerifyReport verify_diagram(const SweepDiagram& d, const SampleConfig& cfg);

// ---------------------------------------------------------------------------
// Circumcenters, recomputed independently

/// Centers of tropical balls touching all d+1 sites at isolated points, found
/// by solving, for every (d+1)-tuple of unit-ball facets, the square linear
/// system equating the facet functionals of the distances, and keeping the
/// unique solutions whose difference vectors lie in the chosen facet cones
/// (a comparison-only membership test).  Requires |S| = d+1.
std::vector<TorusPoint> brute_circumcenters(const SiteSet& s);

// ---------------------------------------------------------------------------
// Facet-pair feasibility table

/// For every ordered pair of unit-ball facets (F, G), whether the two-point
/// bisector cell bis_{(F,G)} is nonempty for direction v, as a flat bit
/// vector of size (d(d+1))^2 in enumerate_faces order.  The table is the same
/// for two directions iff their bisected ordered partitions agree.
std::vector<bool> pattern_table(const TorusPoint& v);
std::vector<bool> pattern_table(const std::vector<Rational>& v);

}  // namespace tropivor
