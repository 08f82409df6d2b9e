#pragma once

/**
 * @file polyhedra.hpp
 * @brief Exact convex geometry in the tropical torus: H-polyhedra whose
 *        functionals are torus-invariant, weighted-digraph (DBM) polytropes
 *        with shortest-path closure, and polytropes cut by difference-of-facet
 *        halfspaces (semipolytropes).
 */

#include <optional>
#include <vector>

#include "tropivor/core.hpp"
#include "tropivor/lp.hpp"

namespace tropivor {

// ---------------------------------------------------------------------------
// H-polyhedra in the torus

/// sum_i coef[i] * x_i  rel  rhs, with sum_i coef[i] == 0 so the functional
/// descends to the torus.
struct LinConstraint {
  std::vector<Rational> coef;  // length d+1, entries sum to zero
  Rational rhs;
  Rel rel = Rel::LE;
};

struct HPolyhedron {
  int d = 0;
  std::vector<LinConstraint> rows;
};

/// The system in the chart x_0 = 0 (variables x_1..x_d), for the LP engine.
std::vector<LinRow> chart_rows(const HPolyhedron& p);

/// A point of the polyhedron, or nullopt.  With strict = true every
/// non-strict inequality is sharpened, i.e. relative-interior-of-full-dim.
std::optional<TorusPoint> feasible(const HPolyhedron& p, bool strict = false);

/// Dimension of the affine hull in the torus (so at most d); -1 if empty.
int affine_dimension(const HPolyhedron& p);

/// True iff p's constraints force q's row everywhere on p.
bool implies(const HPolyhedron& p, const LinConstraint& q);

/// All vertices (0-faces).  Supported for d <= 3.
std::vector<TorusPoint> vertices(const HPolyhedron& p);

// ---------------------------------------------------------------------------
// Polytropes as difference-bound matrices

/// Intersection of halfspaces x_i - x_j <= c(i,j); tropically and ordinarily
/// convex.  Kept closed under shortest paths, which makes the matrix the
/// canonical form: entries are exactly the maxima of x_i - x_j over the set.
class Polytrope {
 public:
  Polytrope() = default;
  /// The whole torus (all bounds infinite).
  explicit Polytrope(int d);

  int dim() const { return static_cast<int>(c_.size()) - 1; }
  const Bound& bound(int i, int j) const { return c_[i][j]; }

  /// Tightens x_i - x_j <= v; call close() before querying afterwards.
  void add(int i, int j, const Rational& v);
  /// Shortest-path closure; detects emptiness.  Idempotent.
  void close();
  bool closed() const { return closed_; }

  bool is_empty() const;
  /// Nonempty with interior, i.e. dimension d.
  bool is_full_dim() const;
  bool contains(const TorusPoint& x) const;
  /// Exact range [lo, hi] of x_i - x_j over the set (empty bound = +inf).
  Bound upper(int i, int j) const;  // max of x_i - x_j, +inf if unbounded
  Bound lower_neg(int i, int j) const { return upper(j, i); }  // -min, as a bound

  /// Entrywise min of the two bound matrices, then closure.
  static Polytrope intersect(const Polytrope& a, const Polytrope& b);

  /// The closed cone over face F of the unit ball translated to apex a:
  /// x lies there iff the minimum of a - x is attained on all of F_+ and the
  /// maximum on all of F_-, i.e. x_k - x_p <= a_k - a_p for p in F_+ and
  /// x_q - x_k <= a_q - a_k for q in F_-, for all k.
  static Polytrope cone_of_face(const TorusPoint& a, const FaceType& face);
  static Polytrope cone_of_facet(const TorusPoint& a, const FaceType& facet);

  HPolyhedron to_hpoly() const;

  /// Canonical comparison; both sides must be closed and nonempty.
  bool operator==(const Polytrope& o) const;
  bool operator<(const Polytrope& o) const;

 private:
  std::vector<std::vector<Bound>> c_;  // (d+1)x(d+1), diagonal zero
  bool closed_ = false;
  bool empty_ = false;
};

// ---------------------------------------------------------------------------
// Semipolytropes

/// (x_p - x_q) - (x_r - x_s) <= rhs: the comparison of two facet functionals.
struct DiffRow {
  int p, q, r, s;
  Rational rhs;
};

/// A polytrope cut by difference-of-functional halfspaces.  The extra rows
/// are deduplicated by normal, keeping the tightest bound.
struct SemiPolytrope {
  Polytrope base;
  std::vector<DiffRow> extra;

  void cut(DiffRow row);
  bool contains(const TorusPoint& x) const;
  HPolyhedron to_hpoly() const;
};

}  // namespace tropivor
