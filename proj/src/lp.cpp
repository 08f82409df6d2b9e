#include "tropivor/lp.hpp"

#include <algorithm>
#include <map>

namespace tropivor {

namespace {

// Scales (a, rhs) by a positive rational so a becomes a primitive integer
// vector; canonical for duplicate detection.
void normalize_row(LinRow& r) {
  Integer lcm = 1;
  for (const auto& x : r.a) lcm = boost::multiprecision::lcm(lcm, denominator(x));
  lcm = boost::multiprecision::lcm(lcm, denominator(r.rhs));
  Integer g = 0;
  for (const auto& x : r.a) g = boost::multiprecision::gcd(g, numerator(x) * (lcm / denominator(x)));
  if (g == 0) return;  // constant row, leave as is
  Rational scale(lcm, g);
  for (auto& x : r.a) x *= scale;
  r.rhs *= scale;
}

bool constant_row_ok(const LinRow& r) {
  switch (r.rel) {
    case Rel::LE: return r.rhs >= 0;
    case Rel::LT: return r.rhs > 0;
    case Rel::EQ: return r.rhs == 0;
  }
  return false;
}

bool is_zero_vec(const std::vector<Rational>& a) {
  for (const auto& x : a)
    if (x != 0) return false;
  return true;
}

// Keep one row per normal direction: the tightest rhs, LT beating LE on ties.
void dedupe(std::vector<LinRow>& rows) {
  std::map<std::vector<Rational>, size_t> best;
  std::vector<LinRow> out;
  for (auto& r : rows) {
    auto it = best.find(r.a);
    if (it == best.end()) {
      best[r.a] = out.size();
      out.push_back(std::move(r));
      continue;
    }
    LinRow& o = out[it->second];
    if (r.rhs < o.rhs || (r.rhs == o.rhs && r.rel == Rel::LT)) {
      o.rhs = r.rhs;
      o.rel = r.rel;
    }
  }
  rows = std::move(out);
}

struct EqSubst {
  int var;
  LinRow row;  // pivot row, row.a[var] != 0; var = (rhs - sum_{j!=var} a_j x_j)/a_var
};

struct FmStep {
  int var;
  std::vector<LinRow> uppers;  // a[var] > 0
  std::vector<LinRow> lowers;  // a[var] < 0
};

}  // namespace

std::optional<std::vector<Rational>> lp_feasible(std::vector<LinRow> rows, int nvars) {
  std::vector<EqSubst> substs;
  std::vector<bool> eliminated(nvars, false);

  // Phase 1: Gaussian elimination of the equality rows.
  for (;;) {
    int pick = -1, pvar = -1;
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
      if (rows[i].rel != Rel::EQ) continue;
      for (int v = 0; v < nvars; ++v)
        if (rows[i].a[v] != 0) {
          pick = i;
          pvar = v;
          break;
        }
      if (pick >= 0) break;
      if (rows[i].rhs != 0) return std::nullopt;  // 0 = nonzero
      rows.erase(rows.begin() + i);
      --i;
    }
    if (pick < 0) break;
    EqSubst s{pvar, rows[pick]};
    rows.erase(rows.begin() + pick);
    for (auto& r : rows) {
      if (r.a[pvar] == 0) continue;
      Rational f = r.a[pvar] / s.row.a[pvar];
      for (int v = 0; v < nvars; ++v) r.a[v] -= f * s.row.a[v];
      r.rhs -= f * s.row.rhs;
    }
    substs.push_back(std::move(s));
    eliminated[pvar] = true;
  }

  // Phase 2: Fourier-Motzkin on the remaining inequality system.
  for (auto& r : rows) normalize_row(r);
  dedupe(rows);
  std::vector<FmStep> steps;
  for (int v = 0; v < nvars; ++v) {
    if (eliminated[v]) continue;
    FmStep st{v, {}, {}};
    std::vector<LinRow> rest;
    for (auto& r : rows) {
      if (r.a[v] > 0)
        st.uppers.push_back(std::move(r));
      else if (r.a[v] < 0)
        st.lowers.push_back(std::move(r));
      else
        rest.push_back(std::move(r));
    }
    for (const auto& up : st.uppers)
      for (const auto& lo : st.lowers) {
        LinRow n;
        n.a.resize(nvars);
        Rational cu = -lo.a[v], cl = up.a[v];  // both positive
        for (int j = 0; j < nvars; ++j) n.a[j] = cu * up.a[j] + cl * lo.a[j];
        n.rhs = cu * up.rhs + cl * lo.rhs;
        n.rel = (up.rel == Rel::LT || lo.rel == Rel::LT) ? Rel::LT : Rel::LE;
        if (is_zero_vec(n.a)) {
          if (!constant_row_ok(n)) return std::nullopt;
          continue;
        }
        normalize_row(n);
        rest.push_back(std::move(n));
      }
    dedupe(rest);
    if (rest.size() > 100000)
      throw internal_error("Fourier-Motzkin row blow-up beyond supported scale");
    rows = std::move(rest);
    steps.push_back(std::move(st));
  }
  for (const auto& r : rows)
    if (!constant_row_ok(r)) return std::nullopt;

  // Back-substitution: FM variables in reverse elimination order, then the
  // equality pivots in reverse order.
  std::vector<Rational> x(nvars, Rational(0));
  auto residual = [&](const LinRow& r, int skip) {
    Rational s = r.rhs;
    for (int j = 0; j < nvars; ++j)
      if (j != skip) s -= r.a[j] * x[j];
    return s;
  };
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    bool has_lo = false, has_hi = false;
    Rational lo, hi;
    for (const auto& r : it->uppers) {
      Rational b = residual(r, it->var) / r.a[it->var];
      if (!has_hi || b < hi) hi = b;
      has_hi = true;
    }
    for (const auto& r : it->lowers) {
      Rational b = residual(r, it->var) / r.a[it->var];  // a[var] < 0 flips
      if (!has_lo || b > lo) lo = b;
      has_lo = true;
    }
    if (has_lo && has_hi)
      x[it->var] = lo == hi ? lo : (lo + hi) / 2;
    else if (has_lo)
      x[it->var] = lo + 1;
    else if (has_hi)
      x[it->var] = hi - 1;
  }
  for (auto it = substs.rbegin(); it != substs.rend(); ++it)
    x[it->var] = residual(it->row, it->var) / it->row.a[it->var];
  return x;
}

bool lp_implies(const std::vector<LinRow>& rows, int nvars, const LinRow& row) {
  auto violated = [&](LinRow neg) {
    auto sys = rows;
    sys.push_back(std::move(neg));
    return lp_feasible(std::move(sys), nvars).has_value();
  };
  // a.x <= rhs implied  iff  {rows, a.x > rhs} infeasible.
  LinRow gt;
  gt.a.resize(nvars);
  for (int j = 0; j < nvars; ++j) gt.a[j] = -row.a[j];
  gt.rhs = -row.rhs;
  gt.rel = Rel::LT;
  if (row.rel == Rel::LE || row.rel == Rel::EQ)
    if (violated(gt)) return false;
  if (row.rel == Rel::EQ) {
    LinRow lt = row;
    lt.rel = Rel::LT;
    if (violated(lt)) return false;
  }
  if (row.rel == Rel::LT)
    throw precondition_error("implication of strict rows is not supported");
  return true;
}

int lp_affine_dimension(const std::vector<LinRow>& rows, int nvars) {
  if (!lp_feasible(rows, nvars)) return -1;
  // The affine hull is cut out by the explicit equalities plus every
  // inequality that cannot be satisfied strictly alongside the rest.
  std::vector<std::vector<Rational>> normals;
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].rel == Rel::EQ) {
      normals.push_back(rows[i].a);
      continue;
    }
    auto sys = rows;
    sys[i].rel = Rel::LT;
    if (!lp_feasible(std::move(sys), nvars)) normals.push_back(rows[i].a);
  }
  return nvars - matrix_rank(std::move(normals));
}

int matrix_rank(std::vector<std::vector<Rational>> m) {
  if (m.empty()) return 0;
  int nr = static_cast<int>(m.size()), nc = static_cast<int>(m[0].size());
  int rank = 0;
  for (int col = 0; col < nc && rank < nr; ++col) {
    int piv = -1;
    for (int r = rank; r < nr; ++r)
      if (m[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[rank], m[piv]);
    for (int r = 0; r < nr; ++r) {
      if (r == rank || m[r][col] == 0) continue;
      Rational f = m[r][col] / m[rank][col];
      for (int c = col; c < nc; ++c) m[r][c] -= f * m[rank][c];
    }
    ++rank;
  }
  return rank;
}

std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> a,
                                                  std::vector<Rational> b) {
  int n = static_cast<int>(a.size());
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (a[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return std::nullopt;
    std::swap(a[col], a[piv]);
    std::swap(b[col], b[piv]);
    for (int r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rational f = a[r][col] / a[col][col];
      for (int c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<Rational> x(n);
  for (int i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

}  // namespace tropivor
