#include "tropivor/json_io.hpp"

#include <fstream>
#include <sstream>

namespace tropivor::io {

namespace {

Rational rational_of(const Json& j, const char* where) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw parse_error(std::string(where) + ": expected a rational string");
}

std::vector<int> one_based(const std::vector<int>& v) {
  std::vector<int> out;
  out.reserve(v.size());
  for (int i : v) out.push_back(i + 1);
  return out;
}

}  // namespace

InputDocument parse_input(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw parse_error("input document must be a JSON object");
  if (!j.contains("schema") || !j["schema"].is_string() ||
      j["schema"].get<std::string>() != kSchema)
    throw parse_error(std::string("input document must declare \"schema\": \"") +
                      kSchema + "\"");
  if (!j.contains("dimension") || !j["dimension"].is_number_integer())
    throw parse_error("\"dimension\" must be an integer");
  InputDocument doc;
  doc.dimension = j["dimension"].get<int>();
  if (doc.dimension < 1) throw parse_error("\"dimension\" must be >= 1");
  if (!j.contains("sites") || !j["sites"].is_array())
    throw parse_error("\"sites\" must be an array of coordinate lists");
  std::vector<TorusPoint> pts;
  for (const auto& row : j["sites"]) {
    if (!row.is_array() || static_cast<int>(row.size()) != doc.dimension + 1)
      throw parse_error("every site needs exactly dimension+1 coordinates");
    std::vector<Rational> c;
    c.reserve(row.size());
    for (const auto& entry : row) c.push_back(rational_of(entry, "site coordinate"));
    pts.emplace_back(std::move(c));
  }
  if (pts.empty()) throw parse_error("\"sites\" must be nonempty");
  doc.sites = SiteSet::make(std::move(pts));
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
      throw parse_error("\"seed\" must be a nonnegative integer");
    long long s = j["seed"].get<long long>();
    if (s < 0) throw parse_error("\"seed\" must be a nonnegative integer");
    doc.seed = static_cast<unsigned long long>(s);
  }
  return doc;
}

InputDocument load_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open input file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_input(buf.str());
}

Json input_json(const InputDocument& doc) {
  Json j;
  j["schema"] = kSchema;
  j["dimension"] = doc.dimension;
  Json sites = Json::array();
  for (const auto& p : doc.sites.sites) sites.push_back(point_json(p));
  j["sites"] = std::move(sites);
  if (doc.seed) j["seed"] = *doc.seed;
  return j;
}

Json rational_json(const Rational& r) { return to_string(r); }

Json point_json(const TorusPoint& x) { return vector_json(x.coords()); }

Json vector_json(const std::vector<Rational>& v) {
  Json j = Json::array();
  for (const auto& r : v) j.push_back(to_string(r));
  return j;
}

Json face_json(const FaceType& f) {
  Json j;
  j["minus"] = one_based(f.minus);
  j["star"] = one_based(f.star);
  j["plus"] = one_based(f.plus);
  return j;
}

Json hpoly_json(const HPolyhedron& p) {
  Json rows = Json::array();
  for (const auto& r : p.rows) {
    Json row;
    row["coef"] = vector_json(r.coef);
    row["rel"] = r.rel == Rel::LE ? "<=" : r.rel == Rel::LT ? "<" : "=";
    row["rhs"] = to_string(r.rhs);
    rows.push_back(std::move(row));
  }
  Json j;
  j["dimension"] = p.d;
  j["rows"] = std::move(rows);
  return j;
}

Json bisector_json(const SiteSet& s, const std::vector<int>& subset,
                   const std::vector<BisectorCell>& cells) {
  Json j;
  j["schema"] = kSchema;
  j["kind"] = "bisector";
  j["dimension"] = s.dim();
  j["sites"] = one_based(subset);
  j["empty"] = cells.empty();
  Json arr = Json::array();
  for (const auto& c : cells) {
    Json cj;
    cj["sites"] = one_based(c.sites);
    Json faces = Json::array();
    for (const auto& f : c.faces) faces.push_back(face_json(f));
    cj["faces"] = std::move(faces);
    cj["dim"] = c.dim;
    cj["witness"] = point_json(c.witness);
    cj["hrep"] = hpoly_json(c.poly);
    if (s.dim() <= 3) {
      Json vs = Json::array();
      for (const auto& v : vertices(c.poly)) vs.push_back(point_json(v));
      cj["vertices"] = std::move(vs);
    }
    arr.push_back(std::move(cj));
  }
  j["cells"] = std::move(arr);
  return j;
}

Json bop_json(const BisectedOrderedPartition& b) {
  Json j;
  j["schema"] = kSchema;
  j["kind"] = "classification";
  Json parts = Json::array();
  for (const auto& part : b.partition.parts) parts.push_back(one_based(part));
  j["parts"] = std::move(parts);
  j["values"] = vector_json(b.partition.values);
  j["midvalue"] = to_string(b.midvalue);
  j["on_part"] = b.on_part;
  j["index"] = b.index + 1;
  return j;
}

Json voronoi_json(const VoronoiDiagram& d, const std::string& algorithm) {
  Json j;
  j["schema"] = kSchema;
  j["kind"] = "voronoi";
  j["algorithm"] = algorithm;
  j["dimension"] = d.sites.dim();
  Json sites = Json::array();
  for (const auto& p : d.sites.sites) sites.push_back(point_json(p));
  j["sites"] = std::move(sites);
  j["cell_count"] = static_cast<int>(d.cells.size());
  Json regions = Json::array();
  for (const auto& pieces : d.regions) {
    Json rj = Json::array();
    for (const auto& sp : pieces) rj.push_back(hpoly_json(sp.to_hpoly()));
    regions.push_back(std::move(rj));
  }
  j["regions"] = std::move(regions);
  return j;
}

Json sweep_json(const SweepDiagram& d) {
  Json j;
  j["schema"] = kSchema;
  j["kind"] = "voronoi";
  j["algorithm"] = "sweep";
  j["dimension"] = d.sites.dim();
  Json sites = Json::array();
  for (const auto& p : d.sites.sites) sites.push_back(point_json(p));
  j["sites"] = std::move(sites);
  Json vs = Json::array();
  for (const auto& v : d.vertices) vs.push_back(point_json(v));
  j["vertices"] = std::move(vs);
  Json es = Json::array();
  for (const auto& e : d.edges) {
    Json ej;
    ej["sites"] = Json::array({e.site_a + 1, e.site_b + 1});
    // Vertex ids are 1-based; 0 marks an unbounded end.
    ej["v0"] = e.v0 + 1;
    ej["v1"] = e.v1 + 1;
    Json poly = Json::array();
    for (const auto& p : e.polyline) poly.push_back(point_json(p));
    ej["polyline"] = std::move(poly);
    ej["ray0"] = e.ray0 ? Json::array({to_string(e.ray0->first), to_string(e.ray0->second)})
                        : Json(nullptr);
    ej["ray1"] = e.ray1 ? Json::array({to_string(e.ray1->first), to_string(e.ray1->second)})
                        : Json(nullptr);
    es.push_back(std::move(ej));
  }
  j["edges"] = std::move(es);
  Json faces = Json::array();
  for (const auto& ids : d.face_edges) faces.push_back(one_based(ids));
  j["face_edges"] = std::move(faces);
  j["face_count"] = d.face_count;
  j["euler_ok"] = d.euler_ok;
  return j;
}

Json verify_json(const VerifyReport& r, const std::string& algorithm, int samples,
                 unsigned long long seed) {
  Json j;
  j["schema"] = kSchema;
  j["kind"] = "verification";
  j["algorithm"] = algorithm;
  j["samples"] = samples;
  j["seed"] = seed;
  j["checked"] = r.checked;
  j["pass"] = r.pass();
  Json vs = Json::array();
  for (const auto& v : r.violations) {
    Json vj;
    vj["point"] = point_json(v.x);
    vj["claimed"] = one_based(v.claimed);
    vj["truth"] = one_based(v.truth);
    vs.push_back(std::move(vj));
  }
  j["violations"] = std::move(vs);
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace tropivor::io
