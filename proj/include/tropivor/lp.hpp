#pragma once

/**
 * @file lp.hpp
 * @brief Exact linear feasibility over the rationals by Fourier-Motzkin
 *        elimination, plus small dense Gaussian helpers (rank, square solve).
 *
 * The elimination keeps every intermediate coefficient exact and prunes
 * duplicate/parallel rows after each round; ambient dimensions in this
 * project never exceed 5, which keeps the quadratic row growth harmless.
 * Strict inequalities are first-class (relation LT), so "interior point"
 * queries need no epsilon anywhere.
 */

#include <optional>
#include <vector>

#include "tropivor/rational.hpp"

namespace tropivor {

enum class Rel { LE, LT, EQ };

struct LinRow {
  std::vector<Rational> a;  // coefficients, one per variable
  Rational rhs;
  Rel rel = Rel::LE;        // a . x  (<=, <, =)  rhs
};

/// Exact feasibility; returns a witness satisfying every row (strictly for
/// LT rows) or nullopt.  nvars is the common length of the coefficient rows.
std::optional<std::vector<Rational>> lp_feasible(std::vector<LinRow> rows, int nvars);

/// True iff `row` holds at every feasible point of `rows` (vacuously true on
/// an infeasible system).
bool lp_implies(const std::vector<LinRow>& rows, int nvars, const LinRow& row);

/// Dimension of the affine hull of the feasible set; -1 if infeasible.
int lp_affine_dimension(const std::vector<LinRow>& rows, int nvars);

/// Exact rank of a dense rational matrix.
int matrix_rank(std::vector<std::vector<Rational>> m);

/// Unique solution of A x = b when A is square nonsingular, else nullopt.
std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> a,
                                                  std::vector<Rational> b);

}  // namespace tropivor
