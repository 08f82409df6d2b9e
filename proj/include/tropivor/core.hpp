#pragma once

/**
 * @file core.hpp
 * @brief Tropical metric core: canonical torus points, the tropical distance,
 *        the face lattice of the tropical unit ball, ordered/bisected ordered
 *        partitions, and general-position predicates for pairs and sets.
 *
 * Points of the tropical torus are classes of R^{d+1} modulo the all-ones
 * vector; the canonical representative pins coordinate 1 (index 0) to zero.
 * The unit ball B^d of the tropical distance is the zonotope with the d(d+1)
 * facets x_i - x_j <= 1; its faces are encoded by (minus, star, plus)
 * partitions of the coordinate indices.  All indices are 0-based internally
 * and 1-based in every external format.
 */

#include <optional>
#include <vector>

#include "tropivor/rational.hpp"

namespace tropivor {

// ---------------------------------------------------------------------------
// Torus points and sites

class TorusPoint {
 public:
  TorusPoint() = default;
  /// Canonicalizes by subtracting the first coordinate.  Needs >= 2 coords.
  explicit TorusPoint(std::vector<Rational> coords);

  int dim() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rational>& coords() const { return c_; }
  const Rational& operator[](int i) const { return c_[i]; }

  bool operator==(const TorusPoint& o) const { return c_ == o.c_; }
  bool operator!=(const TorusPoint& o) const { return !(*this == o); }
  bool operator<(const TorusPoint& o) const { return c_ < o.c_; }  // lexicographic

  bool is_zero() const;

 private:
  std::vector<Rational> c_;  // c_[0] == 0
};

/// Componentwise difference b - a as a plain vector (length d+1).
std::vector<Rational> diff(const TorusPoint& a, const TorusPoint& b);

struct SiteSet {
  std::vector<TorusPoint> sites;

  /// Validates equal dimensions and pairwise distinctness.
  static SiteSet make(std::vector<TorusPoint> pts);
  /// As make(), but yields an empty set instead of throwing on bad input.
  static SiteSet make_or_empty(std::vector<TorusPoint> pts);
  int dim() const { return sites.empty() ? -1 : sites[0].dim(); }
  int size() const { return static_cast<int>(sites.size()); }
  const TorusPoint& operator[](int i) const { return sites[i]; }
};

/// max_i(a_i - b_i) - min_j(a_j - b_j); the tropical distance.
Rational trop_dist(const TorusPoint& a, const TorusPoint& b);

// ---------------------------------------------------------------------------
// Faces of the tropical unit ball

/// A face of B^d of type (F_-, F_*, F_+); dimension |F_*|.
struct FaceType {
  int d = 0;
  std::vector<int> minus, star, plus;  // sorted, disjoint, cover {0..d}

  bool is_facet() const { return minus.size() == 1 && plus.size() == 1; }
  int face_dim() const { return static_cast<int>(star.size()); }
  /// For a facet: the functional index pair (p, q) with lambda = x_p - x_q.
  int top() const { return plus[0]; }
  int bottom() const { return minus[0]; }

  bool operator==(const FaceType& o) const {
    return minus == o.minus && star == o.star && plus == o.plus;
  }
  bool operator<(const FaceType& o) const {
    if (minus != o.minus) return minus < o.minus;
    return plus < o.plus;
  }
};

/// Facet with F_+ = {p}, F_- = {q}.
FaceType make_facet(int d, int p, int q);

/// lambda(x) = x_top - x_bottom, the valid inequality of a facet.
struct LinearFunctional {
  int top = 0, bottom = 0;
  Rational eval(const std::vector<Rational>& x) const { return x[top] - x[bottom]; }
  Rational eval(const TorusPoint& x) const { return x[top] - x[bottom]; }
};

/// Functional of a facet; throws on non-facet input.
LinearFunctional facet_functional(const FaceType& f);

/// The face of B^d whose relative interior is pierced by the ray through v:
/// F_+ = argmax v, F_- = argmin v.  Throws on v == 0 in the torus.
FaceType face_of_direction(const TorusPoint& v);
FaceType face_of_direction(const std::vector<Rational>& v);

/// All k-dimensional faces, ordered lexicographically on (minus, plus).
std::vector<FaceType> enumerate_faces(int d, int k);

// ---------------------------------------------------------------------------
// Ordered partitions and the bisection-fan invariant

struct OrderedPartition {
  std::vector<std::vector<int>> parts;  // by increasing value, indices sorted
  std::vector<Rational> values;         // strictly increasing, one per part

  bool same_parts(const OrderedPartition& o) const { return parts == o.parts; }
};

OrderedPartition ordered_partition(const std::vector<Rational>& v);

/// Ordered partition plus the placement of the midvalue mu = (max+min)/2:
/// either on an existing part's value or strictly inside a gap between two
/// consecutive parts.  The complete combinatorial invariant of two-point
/// bisectors.
struct BisectedOrderedPartition {
  OrderedPartition partition;
  Rational midvalue;
  bool on_part = false;  // else in a gap
  int index = 0;         // part index, or gap index k (between parts k, k+1)

  bool operator==(const BisectedOrderedPartition& o) const {
    return partition.same_parts(o.partition) && on_part == o.on_part &&
           index == o.index;
  }
};

BisectedOrderedPartition bisected_ordered_partition(const TorusPoint& v);
BisectedOrderedPartition bisected_ordered_partition(const std::vector<Rational>& v);

/// Tropical segment [a,b]: breakpoint polyline (including both endpoints,
/// at most d+1 points) and the tropical midpoint m = max(a + mu(b-a)*1, b).
struct TropicalSegment {
  std::vector<TorusPoint> breakpoints;
  TorusPoint midpoint;
};

TropicalSegment tropical_segment(const TorusPoint& a, const TorusPoint& b);

// ---------------------------------------------------------------------------
// General position

/// Failure witness: sites i, j whose difference has coordinates p == q.
struct WeakGPWitness {
  int site_i = -1, site_j = -1;
  int coord_p = -1, coord_q = -1;
};

/// True iff every pairwise difference has d+1 pairwise distinct coordinates.
std::optional<WeakGPWitness> weak_general_position(const SiteSet& s);

/// True iff b - a lies in a maximal cone of the bisection fan: all
/// coordinates distinct and the midvalue strictly inside a gap.
bool pair_general_position(const TorusPoint& a, const TorusPoint& b);

/// Multigraph on [d+1] with one arc top(F) -> bottom(F) per facet.
struct SiteDigraph {
  int nodes = 0;
  std::vector<std::pair<int, int>> arcs;
};

SiteDigraph site_digraph(const std::vector<FaceType>& facets);

/// Graph criterion: the underlying undirected multigraph has no cycle, or a
/// unique cycle that is unbalanced (traversing the cycle, the two arc
/// orientation counts differ).
bool digraph_condition(const std::vector<FaceType>& facets);

/// Ground truth for the digraph criterion: the k-1 functionals
/// lambda_{F_i} - lambda_{F_1} are linearly independent (exact rank).
bool facet_functionals_independent(const std::vector<FaceType>& facets);

}  // namespace tropivor
