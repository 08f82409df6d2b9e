#include "tropivor/oracle.hpp"

#include <algorithm>
#include <random>
#include <thread>

#include "tropivor/bisect.hpp"

namespace tropivor {

// ---------------------------------------------------------------------------
// Nearest sites

std::pair<Rational, std::vector<int>> nearest_sites(const TorusPoint& x, const SiteSet& s) {
  if (s.size() == 0) throw precondition_error("nearest_sites of an empty site set");
  Rational best = trop_dist(x, s[0]);
  std::vector<int> arg{0};
  for (int i = 1; i < s.size(); ++i) {
    Rational d = trop_dist(x, s[i]);
    if (d < best) {
      best = d;
      arg.assign(1, i);
    } else if (d == best) {
      arg.push_back(i);
    }
  }
  return {std::move(best), std::move(arg)};
}

// ---------------------------------------------------------------------------
// Sampling

std::vector<TorusPoint> sample_points(int d, const SampleConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<long> den(1, cfg.den_bound);
  std::vector<TorusPoint> out;
  out.reserve(cfg.count);
  for (int k = 0; k < cfg.count; ++k) {
    std::vector<Rational> c(d + 1, Rational(0));
    for (int i = 1; i <= d; ++i) {
      long q = den(rng);
      std::uniform_int_distribution<long> num(-cfg.box_radius * q, cfg.box_radius * q);
      c[i] = Rational(num(rng)) / q;
    }
    out.emplace_back(std::move(c));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Diagram verification

namespace {

template <typename Diagram>
VerifyReport verify_by_owners(const Diagram& d, const SiteSet& s, const SampleConfig& cfg) {
  std::vector<TorusPoint> xs = sample_points(s.dim(), cfg);
  VerifyReport rep;
  rep.checked = static_cast<int>(xs.size());

  auto check_range = [&](size_t lo, size_t hi, std::vector<Violation>& sink) {
    for (size_t k = lo; k < hi; ++k) {
      std::vector<int> claimed = owners(d, xs[k]);
      std::sort(claimed.begin(), claimed.end());
      std::vector<int> truth = nearest_sites(xs[k], s).second;
      if (claimed != truth) sink.push_back({xs[k], std::move(claimed), std::move(truth)});
    }
  };

  if (!cfg.parallel || xs.size() < 2) {
    check_range(0, xs.size(), rep.violations);
    return rep;
  }
  const size_t nt = std::min<size_t>(std::thread::hardware_concurrency() > 0
                                         ? std::thread::hardware_concurrency()
                                         : 2,
                                     xs.size());
  std::vector<std::vector<Violation>> sinks(nt);
  std::vector<std::thread> threads;
  for (size_t t = 0; t < nt; ++t) {
    size_t lo = xs.size() * t / nt, hi = xs.size() * (t + 1) / nt;
    threads.emplace_back([&, lo, hi, t] { check_range(lo, hi, sinks[t]); });
  }
  for (auto& th : threads) th.join();
  for (auto& sink : sinks)
    for (auto& v : sink) rep.violations.push_back(std::move(v));
  return rep;
}

}  // namespace

VerifyReport verify_diagram(const VoronoiDiagram& d, const SampleConfig& cfg) {
  return verify_by_owners(d, d.sites, cfg);
}

VerifyReport verify_diagram(const SweepDiagram& d, const SampleConfig& cfg) {
  return verify_by_owners(d, d.sites, cfg);
}

// ---------------------------------------------------------------------------
// Circumcenters through square systems

namespace {

/// Unique solution of the dense d x d system, or nullopt if singular.
std::optional<std::vector<Rational>> solve_dense(std::vector<std::vector<Rational>> m,
                                                  std::vector<Rational> rhs) {
  const int d = static_cast<int>(rhs.size());
  for (int col = 0; col < d; ++col) {
    int piv = -1;
    for (int r = col; r < d && piv < 0; ++r)
      if (sign(m[r][col]) != 0) piv = r;
    if (piv < 0) return std::nullopt;
    std::swap(m[col], m[piv]);
    std::swap(rhs[col], rhs[piv]);
    for (int r = 0; r < d; ++r) {
      if (r == col || sign(m[r][col]) == 0) continue;
      Rational f = m[r][col] / m[col][col];
      for (int c = col; c < d; ++c) m[r][c] -= f * m[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<Rational> x(d);
  for (int i = 0; i < d; ++i) x[i] = rhs[i] / m[i][i];
  return x;
}

/// x (equidistant to all sites, x != a_i) is an isolated point of the
/// bisector iff no direction w (mod the all-ones line) keeps all distances
/// equal to first order.  The distances are piecewise linear: for small e,
/// dist(x + e*w, a_i) - dist(x, a_i) = e * (max_{p in argmax} w_p -
/// min_{q in argmin} w_q) exactly, where argmax/argmin are taken over
/// x - a_i.  The set of such w is a union of cones, one per choice of
/// attaining indices; x is isolated iff every one of them is trivial.
bool isolated_bisector_point(const SiteSet& s, const TorusPoint& x) {
  const int d = s.dim();
  const int k = s.size();
  std::vector<std::vector<int>> mx(k), mn(k);
  for (int i = 0; i < k; ++i) {
    std::vector<Rational> v = diff(s[i], x);  // x - a_i
    Rational hi = v[0], lo = v[0];
    for (int c = 1; c <= d; ++c) {
      if (v[c] > hi) hi = v[c];
      if (v[c] < lo) lo = v[c];
    }
    for (int c = 0; c <= d; ++c) {
      if (v[c] == hi) mx[i].push_back(c);
      if (v[c] == lo) mn[i].push_back(c);
    }
  }

  // Enumerate attaining-index selections (p_i, q_i); each yields the cone
  //   w_{p_i} >= w_r (r in argmax_i),  w_{q_i} <= w_r (r in argmin_i),
  //   (w_{p_i} - w_{q_i}) - (w_{p_1} - w_{q_1}) = 0.
  std::vector<int> px(k, 0), qx(k, 0);
  while (true) {
    HPolyhedron cone;
    cone.d = d;
    auto row = [&](int pos_c, int neg_c, Rel rel) {
      if (pos_c == neg_c) return;
      LinConstraint r;
      r.coef.assign(d + 1, Rational(0));
      r.coef[pos_c] += 1;
      r.coef[neg_c] -= 1;
      r.rhs = 0;
      r.rel = rel;
      cone.rows.push_back(std::move(r));
    };
    for (int i = 0; i < k; ++i) {
      const int p = mx[i][px[i]], q = mn[i][qx[i]];
      for (int r : mx[i]) row(r, p, Rel::LE);
      for (int r : mn[i]) row(q, r, Rel::LE);
      if (i > 0) {
        LinConstraint e;
        e.coef.assign(d + 1, Rational(0));
        e.coef[p] += 1;
        e.coef[q] -= 1;
        e.coef[mx[0][px[0]]] -= 1;
        e.coef[mn[0][qx[0]]] += 1;
        e.rhs = 0;
        e.rel = Rel::EQ;
        cone.rows.push_back(std::move(e));
      }
    }
    if (affine_dimension(cone) >= 1) return false;  // a nontrivial direction
    int pos = k - 1;
    while (pos >= 0) {
      if (++qx[pos] < static_cast<int>(mn[pos].size())) break;
      qx[pos] = 0;
      if (++px[pos] < static_cast<int>(mx[pos].size())) break;
      px[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return true;
}

}  // namespace

std::vector<TorusPoint> brute_circumcenters(const SiteSet& s) {
  const int d = s.dim();
  if (s.size() != d + 1)
    throw precondition_error("brute_circumcenters needs exactly d+1 sites");

  const std::vector<FaceType> facets = enumerate_faces(d, d - 1);
  std::vector<TorusPoint> out;

  // One facet choice per site; lambda_{F_1}(x - a_1) = lambda_{F_i}(x - a_i)
  // gives d equations in the d chart unknowns x_1..x_d (x_0 = 0).
  std::vector<int> choice(d + 1, 0);
  while (true) {
    std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d, Rational(0)));
    std::vector<Rational> rhs(d, Rational(0));
    const LinearFunctional l1 = facet_functional(facets[choice[0]]);
    for (int i = 1; i <= d; ++i) {
      const LinearFunctional li = facet_functional(facets[choice[i]]);
      // lambda_1(x) - lambda_i(x) = lambda_1(a_1) - lambda_i(a_i)
      auto add = [&](int coord, const Rational& w) {
        if (coord >= 1) m[i - 1][coord - 1] += w;
      };
      add(l1.top, 1);
      add(l1.bottom, -1);
      add(li.top, -1);
      add(li.bottom, 1);
      rhs[i - 1] = l1.eval(s[0]) - li.eval(s[i]);
    }
    if (auto sol = solve_dense(std::move(m), std::move(rhs))) {
      std::vector<Rational> c(d + 1, Rational(0));
      for (int i = 1; i <= d; ++i) c[i] = (*sol)[i - 1];
      TorusPoint x(std::move(c));
      // The system equates functional values; demand true equidistance, then
      // isolation (a zero-dimensional containing cell).
      bool ok = true;
      Rational r0 = trop_dist(x, s[0]);
      for (int i = 1; i <= d && ok; ++i) ok = trop_dist(x, s[i]) == r0;
      if (ok && sign(r0) > 0 && std::find(out.begin(), out.end(), x) == out.end() &&
          isolated_bisector_point(s, x))
        out.push_back(std::move(x));
    }
    int pos = d;
    while (pos >= 0 && ++choice[pos] == static_cast<int>(facets.size())) choice[pos--] = 0;
    if (pos < 0) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Facet-pair feasibility table

std::vector<bool> pattern_table(const std::vector<Rational>& v) {
  const int d = static_cast<int>(v.size()) - 1;
  bool all_zero = true;
  for (const auto& c : v)
    if (sign(c) != 0) all_zero = false;
  if (all_zero) throw precondition_error("pattern_table of the zero direction");
  const std::vector<FaceType> facets = enumerate_faces(d, d - 1);
  std::vector<bool> out;
  out.reserve(facets.size() * facets.size());
  for (const auto& f : facets)
    for (const auto& g : facets) out.push_back(cell_feasible_two(f, g, v));
  return out;
}

std::vector<bool> pattern_table(const TorusPoint& v) { return pattern_table(v.coords()); }

}  // namespace tropivor
