#pragma once

/**
 * @file bisect.hpp
 * @brief Tropical bisectors: cells indexed by tuples of unit-ball faces, the
 *        combinatorial classification of two-point bisectors, halfspheres and
 *        sectors, multi-site bisectors, circumcenters, and the tropical
 *        hypersurface containing a two-point bisector.
 *
 * The bisector of sites a_1..a_k is the locus of points equidistant to all of
 * them.  It is a polyhedral complex whose cells are indexed by choices of a
 * face F_i of the unit ball per site: x lies in the cell iff a_i - x lies in
 * the cone over F_i for each i and the linear distances agree.  Each such
 * cell is Q cap H where Q intersects the face cones and H is the affine
 * subspace where the facet functionals agree.
 */

#include <optional>
#include <vector>

#include "tropivor/core.hpp"
#include "tropivor/polyhedra.hpp"

namespace tropivor {

// ---------------------------------------------------------------------------
// Two-point cells: closed-form feasibility

/// The six-way partition of the coordinates induced by a pair of faces,
/// according to which part of F and G each index belongs to.
struct LabelingPartition {
  std::vector<int> l0;     // (F- cap G-) cup (F+ cap G+)
  std::vector<int> lp;     // (F+ cap G*) cup (F* cap G-)
  std::vector<int> lm;     // (F- cap G*) cup (F* cap G+)
  std::vector<int> lp1;    // F+ cap G-
  std::vector<int> lm1;    // F- cap G+
  std::vector<int> lstar;  // F* cap G*
};

LabelingPartition labeling_partition(const FaceType& f, const FaceType& g);

/// Whether the cell bis_{(F,G)}(a,b) is nonempty, for v = b - a.  Closed form
/// in the values of v: the cell exists iff some gamma fits the interval
/// system of the labeling partition (with gamma capped at the midvalue when
/// the extreme classes L_{+1} / L_{-1} are populated).
bool cell_feasible_two(const FaceType& f, const FaceType& g,
                       const std::vector<Rational>& v);

/// Same predicate through a two-variable LP in (gamma, delta); an independent
/// route kept for cross-verification.
bool cell_feasible_two_lp(const FaceType& f, const FaceType& g,
                          const std::vector<Rational>& v);

/// A point of bis_{(F,G)}(a,b), lifted from a feasible (gamma, delta) pair;
/// nullopt if the cell is empty.
std::optional<TorusPoint> cell_witness_two(const TorusPoint& a, const TorusPoint& b,
                                           const FaceType& f, const FaceType& g);

// ---------------------------------------------------------------------------
// Bisector cells for k sites

struct BisectorCell {
  std::vector<int> sites;       // indices into the site set, increasing
  std::vector<FaceType> faces;  // chosen face per site
  HPolyhedron poly;             // Q cap H
  int dim = -1;                 // affine dimension, -1 for empty
  TorusPoint witness;           // a point of the cell (valid when dim >= 0)
};

/// The polyhedron Q cap H for the chosen faces at the chosen sites.
HPolyhedron cell_polyhedron(const SiteSet& s, const std::vector<int>& subset,
                            const std::vector<FaceType>& faces);

/// Maximal cells of bis(a, b), indexed by pairs of facets; cells strictly
/// contained in another are dropped.
std::vector<BisectorCell> bisector_two(const TorusPoint& a, const TorusPoint& b);

struct BisectorOptions {
  bool override_guards = false;
  bool parallel = false;  // split the facet-tuple range across threads
};

/// Maximal cells of the bisector of the given subset of sites (all sites if
/// the subset is empty), indexed by tuples of facets.  Guarded to k <= 8 and
/// d <= 4 unless overridden.
std::vector<BisectorCell> bisector_k(const SiteSet& s, std::vector<int> subset = {},
                                     const BisectorOptions& opt = {});

/// The isolated points of the bisector of d+1 sites: centers of balls
/// touching all sites at a zero-dimensional cell.  Requires n == d+1.
/// Higher-dimensional bisector pieces (possible outside weak general
/// position) are not reported here.
std::vector<TorusPoint> circumcenters(const SiteSet& s);

// ---------------------------------------------------------------------------
// Combinatorial classification of two-point bisectors

/// The complete invariant: bisectors of (a,b) and (a',b') are normally
/// equivalent iff the bisected ordered partitions of b-a and b'-a' agree.
BisectedOrderedPartition bop_class(const TorusPoint& a, const TorusPoint& b);

bool same_bisector_class(const TorusPoint& a, const TorusPoint& b,
                         const TorusPoint& a2, const TorusPoint& b2);

// ---------------------------------------------------------------------------
// Halfspheres and sectors

/// Facets visible from direction v: those whose functional is positive at v.
std::vector<FaceType> halfsphere(const std::vector<Rational>& v);

/// Facets of the unit ball on which site i's functional value is strictly
/// smaller than every other site's.  Assumes weak general position for the
/// covering property, but is well defined regardless.
std::vector<FaceType> sector(const SiteSet& s, int i);

/// Connected components of a set of facets, where two facets are adjacent iff
/// their closures share a ridge (they agree on the top or on the bottom
/// index, but not crosswise).
int sector_components(const std::vector<FaceType>& facets);

/// For three sites in weak general position with all sectors nonempty, the
/// number of connected components of their bisector equals the total number
/// of sector components minus two.
int predicted_components_3pts(const SiteSet& s);

// ---------------------------------------------------------------------------
// The hypersurface containing a two-point bisector

/// One term x_i - x_j + c of the max-tropical polynomial of degree d+1 whose
/// hypersurface contains bis(a,b): c = a_j - a_i over the terms of site a,
/// and c = b_j - b_i over those of b.
struct HypersurfaceTerm {
  int i, j;
  Rational c;
};

std::vector<HypersurfaceTerm> hypersurface_terms(const TorusPoint& a,
                                                 const TorusPoint& b);

/// Whether the maximum over the terms is attained at least twice at x.
bool hypersurface_vanishes(const std::vector<HypersurfaceTerm>& terms,
                           const TorusPoint& x);

// ---------------------------------------------------------------------------
// General position of a whole site set

/// Stability of every bisector cell under perturbation: weak general position
/// plus, for every subset of size 2..min(n, d+2) and every tuple of facets,
/// the cell is empty or (H meets the interior of Q and the functional
/// differences are linearly independent).  Guarded to n <= 12, d <= 4.
bool set_general_position(const SiteSet& s, bool override_guards = false);

}  // namespace tropivor
