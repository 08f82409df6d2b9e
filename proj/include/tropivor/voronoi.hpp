#pragma once

/**
 * @file voronoi.hpp
 * @brief Tropical Voronoi diagrams from polytrope partitions.
 *
 * Two constructions of the same diagram.  The standard route enumerates the
 * full-dimensional cells of the hyperplane arrangement S + A_d (one interval
 * of {a_i - a_j : a in S} per ordered coordinate pair), labels each cell with
 * the sites whose linearized distance can be minimal there, and splits the
 * cell into semipolytrope region pieces.  The incremental route maintains the
 * coarser partition S + F(B^d) in a randomized search tree whose leaves tile
 * the torus; labels are cascaded lazily root-to-leaf once all sites are in.
 * On every cell of either partition each dist(., a) restricts to the linear
 * functional of a single unit-ball cone, so the region pieces are cut out by
 * halfspaces with normals e_i - e_j - e_k + e_l.
 */

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "tropivor/bisect.hpp"
#include "tropivor/core.hpp"
#include "tropivor/polyhedra.hpp"

namespace tropivor {

// ---------------------------------------------------------------------------
// The standard partition S + A_d

/// A full-dimensional cell of a polytrope partition, with its (partial
/// matching) labeling and the induced region pieces.
struct PartitionCell {
  Polytrope geometry;
  /// Interval index per ordered pair (i < j), in pair order; the cell sits in
  /// {V[t-1] <= x_i - x_j <= V[t]} of the sorted site values V of that pair.
  /// Empty for cells that do not come from the standard partition.
  std::vector<int> signature;
  /// Valid labels (site, facet): the sites that are nearest somewhere on the
  /// cell, with the unit-ball facet their direction pierces.  Each site and
  /// each facet appears at most once.
  std::vector<std::pair<int, FaceType>> labeling;
  /// Per labeled site, the piece of its Voronoi region inside this cell.
  std::vector<std::pair<int, SemiPolytrope>> subcells;
};

/// All full-dimensional cells of the arrangement S + A_d, geometry and
/// signature only.  Guarded to n <= 50 for d = 2 and n <= 12 for d = 3.
std::vector<PartitionCell> standard_partition(const SiteSet& s,
                                              bool override_guards = false);

/// The 0-dimensional intersections of the arrangement hyperplanes
/// x_i - x_j = a_i - a_j.  Supported for d <= 3; exact and deduplicated.
std::vector<TorusPoint> arrangement_vertices(const SiteSet& s);

/// The valid labeling of a cell that lies in one maximal cone of a + F(B^d)
/// per site a: the candidate facet per site is read off an interior witness,
/// and (a, F_a) is kept iff lambda_{F_a}(x - a) <= lambda_{F_b}(x - b) for
/// all b is feasible on the cell.
std::vector<std::pair<int, FaceType>> cell_labeling(const Polytrope& p,
                                                    const SiteSet& s);

/// The region pieces of a labeled cell: for each labeled site, the subset
/// where its functional is minimal among the labeled ones, as a semipolytrope
/// of type (top(F_a), bottom(F_a)).  Only nonempty pieces are returned; their
/// union is the cell.
std::vector<std::pair<int, SemiPolytrope>> envelope_in_cell(
    const Polytrope& p, const SiteSet& s,
    const std::vector<std::pair<int, FaceType>>& labeling);

// ---------------------------------------------------------------------------
// The polytrope tree over S + F(B^d)

/// Randomized incremental search structure for the partition S + F(B^d).
/// Leaves tile the torus; an internal node records the site whose fan split
/// it.  A node that fits inside a single maximal cone of a later site stores
/// that (site, facet) fragment for the final lazy labeling cascade.
class PolytropeTree {
 public:
  struct Node {
    Polytrope cell;
    int split_site = -1;  // internal nodes: the site whose fan split this node
    int parent = -1;
    int depth = 0;
    std::vector<int> children;  // empty = leaf
    /// Lazy fragments: sites whose fan leaves this node in one maximal cone.
    std::vector<std::pair<int, FaceType>> fragments;
    /// Leaves only, after cascade_labels(): the LP-filtered valid labeling.
    std::vector<std::pair<int, FaceType>> labeling;
  };

  explicit PolytropeTree(const SiteSet& s);

  /// Inserts site b by stack descent: nodes inside one maximal cone of
  /// b + F(B^d) record a fragment; internal nodes meeting several cones are
  /// re-explored; leaves meeting several cones split into the full-
  /// dimensional cone intersections.
  void insert(int site_index);

  const SiteSet& sites() const { return sites_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  std::vector<int> leaves() const;
  int leaf_count() const;
  Rational mean_leaf_depth() const;
  /// The leaf polytropes in canonical sorted order (order-free multiset).
  std::vector<Polytrope> leaf_cells() const;

  /// Node id of a leaf whose closed cell contains x.
  int locate(const TorusPoint& x) const;

  /// Accumulates fragments root-to-leaf and keeps, per leaf, the labels that
  /// survive the minimality LP.  Requires all sites inserted.
  void cascade_labels();

 private:
  SiteSet sites_;
  std::vector<Node> nodes_;
  std::vector<bool> inserted_;
};

// ---------------------------------------------------------------------------
// Diagrams

/// A tropical Voronoi diagram: per-site region pieces plus the labeled cells
/// of the underlying polytrope partition and a point-location structure.
struct VoronoiDiagram {
  enum class Locator { kScan, kSignature, kTree };

  SiteSet sites;
  std::vector<std::vector<SemiPolytrope>> regions;  // indexed by site
  std::vector<PartitionCell> cells;

  Locator locator = Locator::kScan;
  // kSignature: sorted values per ordered pair and the signature-to-cell map.
  std::vector<std::vector<Rational>> pair_values;
  std::map<std::vector<int>, int> cell_of_signature;
  // kTree: the built tree and the map from leaf node id to cell index.
  std::shared_ptr<const PolytropeTree> tree;
  std::map<int, int> cell_of_leaf;
};

/// Labels the standard partition and assembles the per-site region lists.
VoronoiDiagram voronoi_standard(const SiteSet& s, bool override_guards = false);

/// Builds the polytrope tree in the seeded shuffled order, cascades the lazy
/// labels, and assembles the same diagram up to cell subdivision.
VoronoiDiagram voronoi_incremental(const SiteSet& s, unsigned long long seed,
                                   bool override_guards = false);

/// The sites whose region contains x (the argmin set of the distance to S),
/// read off the diagram by point location in its partition.
std::vector<int> owners(const VoronoiDiagram& d, const TorusPoint& x);

}  // namespace tropivor
