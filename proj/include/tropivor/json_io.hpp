#pragma once

/**
 * @file json_io.hpp
 * @brief JSON input/output for the command-line driver: input documents with
 *        exact rational coordinates, and serializers for every structured
 *        result (bisector cells, diagrams, classifications, verification
 *        reports).
 *
 * Rationals travel as strings ("p" or "p/q") so no exactness is lost; every
 * document carries the schema tag "tropivor/1".  Site and coordinate indices
 * are 1-based in every external document and 0-based in memory.  Output uses
 * insertion-ordered objects, so identical data serializes byte-identically.
 */

#include <optional>
#include <string>

#include "json.hpp"
#include "tropivor/bisect.hpp"
#include "tropivor/core.hpp"
#include "tropivor/oracle.hpp"
#include "tropivor/polyhedra.hpp"
#include "tropivor/sweep2d.hpp"
#include "tropivor/voronoi.hpp"

namespace tropivor::io {

using Json = nlohmann::ordered_json;

/// The schema tag stamped on every input and output document.
inline constexpr const char* kSchema = "tropivor/1";

struct InputDocument {
  int dimension = 0;
  SiteSet sites;
  std::optional<unsigned long long> seed;
};

/// Parses an input document; every malformation raises a parse error, while
/// site-set violations (duplicates, too few sites) keep their own kinds.
InputDocument parse_input(const std::string& text);
/// Reads and parses a file; missing/unreadable files raise parse errors.
InputDocument load_input(const std::string& path);
/// Inverse of parse_input: parse(dump(input_json(doc))) == doc.
Json input_json(const InputDocument& doc);

// --- serializers (all exact; rationals as strings, indices 1-based) ---

Json rational_json(const Rational& r);
Json point_json(const TorusPoint& x);
Json vector_json(const std::vector<Rational>& v);
Json face_json(const FaceType& f);
Json hpoly_json(const HPolyhedron& p);
Json bisector_json(const SiteSet& s, const std::vector<int>& subset,
                   const std::vector<BisectorCell>& cells);
Json bop_json(const BisectedOrderedPartition& b);
Json voronoi_json(const VoronoiDiagram& d, const std::string& algorithm);
Json sweep_json(const SweepDiagram& d);
Json verify_json(const VerifyReport& r, const std::string& algorithm, int samples,
                 unsigned long long seed);

/// Canonical textual form: two-space indent plus a trailing newline.
std::string dump(const Json& j);

}  // namespace tropivor::io
