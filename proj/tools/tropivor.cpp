/**
 * @file tropivor.cpp
 * @brief Command-line front end: tropical bisectors, Voronoi diagrams by
 *        three constructions, combinatorial classification, circumcenters,
 *        general-position checks, sample-based verification, benchmarks, and
 *        isometric SVG rendering of planar diagrams.
 *
 * Exit codes: 0 success, 2 parse error, 3 precondition or degeneracy
 * violation, 4 verification failure or internal error.
 */

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tropivor/json_io.hpp"

namespace t = tropivor;
using t::Rational;
using t::TorusPoint;
using tropivor::io::Json;

namespace {

// ---------------------------------------------------------------------------
// SVG rendering (d = 2 only)
//
// The isometric view sends the torus basis to v1 = (-sin 2pi/3, cos 2pi/3),
// v2 = (sin 2pi/3, cos 2pi/3), v3 = (0, 1); a point maps to
// x0*v1 + x1*v2 + x2*v3.  SVG's y axis points down, so the y coordinate is
// negated at the end.  Doubles are fine here: rendering is presentation only,
// every decision upstream is exact.

struct Vec2 {
  double x = 0, y = 0;
};

Vec2 iso(const TorusPoint& p) {
  const double s = std::sqrt(3.0) / 2.0;
  double x1 = static_cast<double>(p[1]), x2 = static_cast<double>(p[2]);
  return {s * x1, -(-0.5 * x1 + x2)};
}

Vec2 iso_chart(double u, double v) {
  const double s = std::sqrt(3.0) / 2.0;
  return {s * u, -(-0.5 * u + v)};
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v == 0 ? 0.0 : v);  // avoid "-0.0000"
  return buf;
}

const char* kPalette[] = {"#a6cee3", "#b2df8a", "#fdbf6f", "#cab2d6", "#fb9a99",
                          "#ffff99", "#80b1d3", "#fccde5", "#ccebc5", "#ffed6f"};

struct ChartBox {
  double lo_u, hi_u, lo_v, hi_v;
};

ChartBox site_box(const t::SiteSet& s) {
  double lo_u = 0, hi_u = 0, lo_v = 0, hi_v = 0;
  for (int i = 0; i < s.size(); ++i) {
    double u = static_cast<double>(s[i][1]), v = static_cast<double>(s[i][2]);
    lo_u = std::min(lo_u, u), hi_u = std::max(hi_u, u);
    lo_v = std::min(lo_v, v), hi_v = std::max(hi_v, v);
  }
  double m = std::max(4.0, 0.35 * std::max(hi_u - lo_u, hi_v - lo_v) + 2.0);
  return {lo_u - m, hi_u + m, lo_v - m, hi_v + m};
}

/// Clips an H-polyhedron to the chart box and returns its vertex cycle in the
/// chart, counterclockwise around the centroid.  Empty when the clipped cell
/// has fewer than three corners.
std::vector<Vec2> clipped_polygon(t::HPolyhedron p, const ChartBox& b) {
  auto add = [&](int i, int j, double rhs) {
    t::LinConstraint row;
    row.coef.assign(3, Rational(0));
    row.coef[i] = 1, row.coef[j] = -1;
    // The box corners are small integers scaled by 1/8, exact in Rational.
    row.rhs = Rational(static_cast<long long>(std::ceil(rhs * 8))) / 8;
    p.rows.push_back(std::move(row));
  };
  add(1, 0, b.hi_u), add(0, 1, -b.lo_u), add(2, 0, b.hi_v), add(0, 2, -b.lo_v);
  std::vector<Vec2> pts;
  for (const auto& v : t::vertices(p))
    pts.push_back({static_cast<double>(v[1]), static_cast<double>(v[2])});
  if (pts.size() < 3) return {};
  double cu = 0, cv = 0;
  for (const auto& q : pts) cu += q.x, cv += q.y;
  cu /= pts.size(), cv /= pts.size();
  std::sort(pts.begin(), pts.end(), [&](const Vec2& a, const Vec2& c) {
    return std::atan2(a.y - cv, a.x - cu) < std::atan2(c.y - cv, c.x - cu);
  });
  return pts;
}

std::string render_svg(const t::SiteSet& s, const t::VoronoiDiagram* vd,
                       const t::SweepDiagram* sd) {
  ChartBox box = site_box(s);
  Vec2 corners[4] = {iso_chart(box.lo_u, box.lo_v), iso_chart(box.lo_u, box.hi_v),
                     iso_chart(box.hi_u, box.lo_v), iso_chart(box.hi_u, box.hi_v)};
  double x0 = corners[0].x, x1 = corners[0].x, y0 = corners[0].y, y1 = corners[0].y;
  for (const auto& c : corners) {
    x0 = std::min(x0, c.x), x1 = std::max(x1, c.x);
    y0 = std::min(y0, c.y), y1 = std::max(y1, c.y);
  }
  double scale = 640.0 / std::max(x1 - x0, y1 - y0);
  auto pt = [&](Vec2 q) -> Vec2 {
    return {(q.x - x0) * scale, (q.y - y0) * scale};
  };
  double w = (x1 - x0) * scale, h = (y1 - y0) * scale;

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
      << "viewBox=\"0 0 " << num(w) << " " << num(h) << "\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << num(w) << "\" height=\"" << num(h)
      << "\" fill=\"#ffffff\"/>\n";

  if (vd) {
    for (int i = 0; i < static_cast<int>(vd->regions.size()); ++i) {
      for (const auto& sp : vd->regions[i]) {
        auto poly = clipped_polygon(sp.to_hpoly(), box);
        if (poly.empty()) continue;
        svg << "<polygon points=\"";
        for (size_t k = 0; k < poly.size(); ++k) {
          Vec2 q = pt(iso_chart(poly[k].x, poly[k].y));
          svg << (k ? " " : "") << num(q.x) << "," << num(q.y);
        }
        svg << "\" fill=\"" << kPalette[i % 10]
            << "\" stroke=\"#888888\" stroke-width=\"0.6\"/>\n";
      }
    }
  }

  if (sd) {
    double reach = 3.0 * std::max(box.hi_u - box.lo_u, box.hi_v - box.lo_v);
    for (const auto& e : sd->edges) {
      std::vector<Vec2> chain;
      auto extend = [&](const TorusPoint& base,
                        const std::pair<Rational, Rational>& dir) {
        double du = static_cast<double>(dir.first), dv = static_cast<double>(dir.second);
        double n = std::hypot(du, dv);
        return Vec2{static_cast<double>(base[1]) + reach * du / n,
                    static_cast<double>(base[2]) + reach * dv / n};
      };
      if (e.ray0) chain.push_back(extend(e.polyline.front(), *e.ray0));
      for (const auto& p : e.polyline)
        chain.push_back({static_cast<double>(p[1]), static_cast<double>(p[2])});
      if (e.ray1) chain.push_back(extend(e.polyline.back(), *e.ray1));
      svg << "<polyline points=\"";
      for (size_t k = 0; k < chain.size(); ++k) {
        Vec2 q = pt(iso_chart(chain[k].x, chain[k].y));
        svg << (k ? " " : "") << num(q.x) << "," << num(q.y);
      }
      svg << "\" fill=\"none\" stroke=\"#222222\" stroke-width=\"2.4\" "
          << "stroke-linejoin=\"round\"/>\n";
    }
  }

  double r = 0.012 * std::max(w, h);
  for (int i = 0; i < s.size(); ++i) {
    Vec2 q = pt(iso(s[i]));
    svg << "<circle cx=\"" << num(q.x) << "\" cy=\"" << num(q.y) << "\" r=\""
        << num(r) << "\" fill=\"#1f3864\" stroke=\"#ffffff\" stroke-width=\"1\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw t::parse_error("cannot open output file: " + path);
  out << data;
}

// ---------------------------------------------------------------------------
// Subcommands

void emit(const Json& j) { std::cout << tropivor::io::dump(j); }

t::VoronoiDiagram build_partition_diagram(const t::SiteSet& s,
                                          const std::string& algorithm,
                                          unsigned long long seed) {
  if (algorithm == "standard") return t::voronoi_standard(s);
  if (algorithm == "incremental") return t::voronoi_incremental(s, seed);
  throw t::parse_error("unknown algorithm: " + algorithm);
}

int cmd_bisector(const tropivor::io::InputDocument& doc, std::vector<int> subset1,
                 bool parallel) {
  std::vector<int> subset;
  for (int i : subset1) {
    if (i < 1 || i > doc.sites.size())
      throw t::parse_error("--sites index out of range: " + std::to_string(i));
    subset.push_back(i - 1);
  }
  if (subset.empty())
    for (int i = 0; i < doc.sites.size(); ++i) subset.push_back(i);
  std::sort(subset.begin(), subset.end());
  if (std::adjacent_find(subset.begin(), subset.end()) != subset.end())
    throw t::parse_error("--sites indices must be distinct");
  if (static_cast<int>(subset.size()) < 2)
    throw t::precondition_error("a bisector needs at least two sites");
  t::BisectorOptions opt;
  opt.parallel = parallel;
  auto cells = t::bisector_k(doc.sites, subset, opt);
  emit(tropivor::io::bisector_json(doc.sites, subset, cells));
  return 0;
}

int cmd_classify(const tropivor::io::InputDocument* doc, const std::string& vec_arg) {
  t::BisectedOrderedPartition b;
  if (!vec_arg.empty()) {
    std::vector<Rational> v;
    std::stringstream ss(vec_arg);
    std::string item;
    while (std::getline(ss, item, ',')) v.push_back(t::parse_rational(item));
    if (v.size() < 2) throw t::parse_error("--vector needs at least two entries");
    b = t::bisected_ordered_partition(v);
  } else if (doc) {
    if (doc->sites.size() != 2)
      throw t::precondition_error("classify needs exactly two sites");
    b = t::bop_class(doc->sites[0], doc->sites[1]);
  } else {
    throw t::parse_error("classify needs --input or --vector");
  }
  emit(tropivor::io::bop_json(b));
  return 0;
}

int cmd_circumcenters(const tropivor::io::InputDocument& doc) {
  auto fast = t::circumcenters(doc.sites);
  auto brute = t::brute_circumcenters(doc.sites);
  std::sort(fast.begin(), fast.end());
  std::sort(brute.begin(), brute.end());
  if (fast != brute)
    throw t::internal_error("circumcenter cross-check failed: the cell route and "
                            "the equation route disagree");
  Json j;
  j["schema"] = tropivor::io::kSchema;
  j["kind"] = "circumcenters";
  j["count"] = static_cast<int>(fast.size());
  Json centers = Json::array();
  for (const auto& c : fast) {
    Json cj;
    cj["point"] = tropivor::io::point_json(c);
    cj["radius"] = t::to_string(t::trop_dist(doc.sites[0], c));
    centers.push_back(std::move(cj));
  }
  j["centers"] = std::move(centers);
  j["cross_checked"] = true;
  emit(j);
  return 0;
}

int cmd_genpos(const tropivor::io::InputDocument& doc) {
  auto witness = t::weak_general_position(doc.sites);
  Json j;
  j["schema"] = tropivor::io::kSchema;
  j["kind"] = "general_position";
  j["weak"] = !witness.has_value();
  if (witness) {
    Json w;
    w["sites"] = Json::array({witness->site_i + 1, witness->site_j + 1});
    w["coords"] = Json::array({witness->coord_p + 1, witness->coord_q + 1});
    j["witness"] = std::move(w);
  } else {
    j["witness"] = nullptr;
  }
  try {
    j["set"] = t::set_general_position(doc.sites);
  } catch (const t::Error&) {
    j["set"] = nullptr;  // outside the guarded size range
  }
  emit(j);
  return 0;
}

int cmd_voronoi(const tropivor::io::InputDocument& doc, const std::string& algorithm,
                unsigned long long seed, const std::string& svg_path) {
  Json j;
  t::SiteSet s = doc.sites;
  if (algorithm == "sweep") {
    if (s.dim() != 2)
      throw t::precondition_error("the sweep construction supports dimension 2 only");
    auto d = t::sweep_diagram(s);
    j = tropivor::io::sweep_json(d);
    if (!svg_path.empty()) write_file(svg_path, render_svg(s, nullptr, &d));
  } else {
    auto d = build_partition_diagram(s, algorithm, seed);
    j = tropivor::io::voronoi_json(d, algorithm);
    if (!svg_path.empty()) {
      if (s.dim() != 2)
        throw t::precondition_error("SVG rendering supports dimension 2 only");
      write_file(svg_path, render_svg(s, &d, nullptr));
    }
  }
  emit(j);
  return 0;
}

int cmd_verify(const tropivor::io::InputDocument& doc, const std::string& algorithm,
               int samples, unsigned long long seed, bool parallel) {
  t::SampleConfig cfg;
  cfg.seed = seed;
  cfg.count = samples;
  cfg.parallel = parallel;
  t::VerifyReport report;
  if (algorithm == "sweep") {
    if (doc.sites.dim() != 2)
      throw t::precondition_error("the sweep construction supports dimension 2 only");
    report = t::verify_diagram(t::sweep_diagram(doc.sites), cfg);
  } else {
    report = t::verify_diagram(build_partition_diagram(doc.sites, algorithm, seed), cfg);
  }
  emit(tropivor::io::verify_json(report, algorithm, samples, seed));
  return report.pass() ? 0 : 4;
}

int cmd_render(const tropivor::io::InputDocument& doc, const std::string& svg_path) {
  if (doc.sites.dim() != 2)
    throw t::precondition_error("rendering supports dimension 2 only");
  auto vd = t::voronoi_standard(doc.sites);
  const t::SweepDiagram* sweep = nullptr;
  t::SweepDiagram sd;
  try {
    sd = t::sweep_diagram(doc.sites);
    sweep = &sd;
  } catch (const t::Error&) {
    // Degenerate for the sweep: the filled cells still render, the
    // one-skeleton overlay is skipped.
  }
  write_file(svg_path, render_svg(doc.sites, &vd, sweep));
  Json j;
  j["schema"] = tropivor::io::kSchema;
  j["kind"] = "render";
  j["output"] = svg_path;
  j["edges_drawn"] = sweep != nullptr;
  emit(j);
  return 0;
}

t::SiteSet random_sites(int n, unsigned long long seed) {
  for (unsigned long long tries = 0;; ++tries) {
    t::SampleConfig cfg;
    cfg.seed = seed + 7919 * tries;
    cfg.count = n;
    cfg.box_radius = 4 * n;
    cfg.den_bound = 7;
    auto pts = t::sample_points(2, cfg);
    auto s = t::SiteSet::make_or_empty(std::move(pts));
    if (s.size() == n && !t::weak_general_position(s)) return s;
  }
}

int cmd_bench(int max_n, unsigned long long seed, int orders) {
  using clock = std::chrono::steady_clock;
  auto ms = [](clock::time_point a, clock::time_point b) {
    return std::chrono::duration<double, std::milli>(b - a).count();
  };
  Json j;
  j["schema"] = tropivor::io::kSchema;
  j["kind"] = "bench";
  j["dimension"] = 2;
  j["seed"] = seed;
  Json runs = Json::array();
  for (int n = 5; n <= max_n; n += 5) {
    auto s = random_sites(n, seed + n);
    auto t0 = clock::now();
    auto vd = t::voronoi_standard(s);
    auto t1 = clock::now();
    auto vi = t::voronoi_incremental(s, seed);
    auto t2 = clock::now();
    Json run;
    run["n"] = n;
    run["standard_ms"] = ms(t0, t1);
    run["incremental_ms"] = ms(t1, t2);
    run["cells_standard"] = static_cast<int>(vd.cells.size());
    run["cells_incremental"] = static_cast<int>(vi.cells.size());
    runs.push_back(std::move(run));
  }
  j["runs"] = std::move(runs);

  // Depth statistics across insertion orders, against the d(d+1)*H_n bound.
  int n = std::min(max_n, 30);
  auto s = random_sites(n, seed + 1);
  double hn = 0;
  for (int k = 1; k <= n; ++k) hn += 1.0 / k;
  std::vector<t::Polytrope> first_leaves;
  double sum = 0, worst = 0;
  bool identical = true;
  for (int o = 0; o < orders; ++o) {
    t::PolytropeTree tree(s);
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::mt19937_64 rng(seed + 1000 + o);
    std::shuffle(order.begin(), order.end(), rng);
    for (int i : order) tree.insert(i);
    double depth = static_cast<double>(tree.mean_leaf_depth());
    sum += depth, worst = std::max(worst, depth);
    auto leaves = tree.leaf_cells();
    if (o == 0)
      first_leaves = leaves;
    else if (leaves != first_leaves)
      identical = false;
  }
  Json d;
  d["n"] = n;
  d["orders"] = orders;
  d["mean_leaf_depth"] = sum / orders;
  d["max_mean_leaf_depth"] = worst;
  d["bound"] = 6.0 * hn;
  d["within_bound"] = worst <= 6.0 * hn;
  d["identical_leaf_multiset"] = identical;
  j["depth"] = std::move(d);
  emit(j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tropivor: exact tropical bisectors and Voronoi diagrams"};
  app.require_subcommand(1);

  std::string input_path, svg_path, algorithm = "standard", vec_arg;
  std::vector<int> subset1;
  unsigned long long seed = 0;
  bool seed_given = false, parallel = false;
  int samples = 10000, max_n = 20, orders = 10;

  auto add_input = [&](CLI::App* sub, bool required) {
    auto* o = sub->add_option("--input", input_path, "input JSON file");
    if (required) o->required();
    return o;
  };
  auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "seed (overrides the input document)")
        ->each([&](const std::string&) { seed_given = true; });
  };

  auto* c_bis = app.add_subcommand("bisector", "maximal cells of a bisector");
  add_input(c_bis, true);
  c_bis->add_option("--sites", subset1, "1-based site indices (default: all)")
      ->delimiter(',');
  c_bis->add_flag("--parallel", parallel, "parallel cell enumeration");

  auto* c_vor = app.add_subcommand("voronoi", "build a Voronoi diagram");
  add_input(c_vor, true);
  c_vor->add_option("--algorithm", algorithm, "standard | incremental | sweep");
  add_seed(c_vor);
  c_vor->add_option("--svg", svg_path, "also render an SVG (d = 2)");

  auto* c_cls = app.add_subcommand("classify", "bisected ordered partition");
  add_input(c_cls, false);
  c_cls->add_option("--vector", vec_arg, "comma-separated rational direction");

  auto* c_cc = app.add_subcommand("circumcenters", "isolated equidistant points");
  add_input(c_cc, true);

  auto* c_gp = app.add_subcommand("genpos", "general-position checks");
  add_input(c_gp, true);

  auto* c_ver = app.add_subcommand("verify", "sample-based diagram verification");
  add_input(c_ver, true);
  c_ver->add_option("--algorithm", algorithm, "standard | incremental | sweep");
  c_ver->add_option("--samples", samples, "number of exact samples");
  add_seed(c_ver);
  c_ver->add_flag("--parallel", parallel, "parallel verification");

  auto* c_ben = app.add_subcommand("bench", "wall-clock and tree-depth statistics");
  c_ben->add_option("--max-n", max_n, "largest instance size");
  c_ben->add_option("--orders", orders, "insertion orders for depth statistics");
  add_seed(c_ben);

  auto* c_ren = app.add_subcommand("render", "SVG of a planar diagram");
  add_input(c_ren, true);
  c_ren->add_option("--svg", svg_path, "output SVG file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    std::optional<tropivor::io::InputDocument> doc;
    if (!input_path.empty()) doc = tropivor::io::load_input(input_path);
    unsigned long long eff_seed =
        seed_given ? seed : (doc && doc->seed ? *doc->seed : 0);

    if (c_bis->parsed()) return cmd_bisector(*doc, subset1, parallel);
    if (c_vor->parsed()) return cmd_voronoi(*doc, algorithm, eff_seed, svg_path);
    if (c_cls->parsed()) return cmd_classify(doc ? &*doc : nullptr, vec_arg);
    if (c_cc->parsed()) return cmd_circumcenters(*doc);
    if (c_gp->parsed()) return cmd_genpos(*doc);
    if (c_ver->parsed()) return cmd_verify(*doc, algorithm, samples, eff_seed, parallel);
    if (c_ben->parsed()) return cmd_bench(max_n, eff_seed, orders);
    if (c_ren->parsed()) return cmd_render(*doc, svg_path);
    return 2;
  } catch (const t::Error& e) {
    Json j;
    j["schema"] = tropivor::io::kSchema;
    j["kind"] = "error";
    j["error"] = Json{{"kind", e.kind()}, {"message", e.what()}};
    std::cout << tropivor::io::dump(j);
    std::cerr << "error (" << e.kind() << "): " << e.what() << "\n";
    if (e.kind() == "parse") return 2;
    if (e.kind() == "precondition" || e.kind() == "degeneracy") return 3;
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error (internal): " << e.what() << "\n";
    return 4;
  }
}
