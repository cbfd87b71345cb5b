#pragma once

// File formats and JSON reports of the command-line tool.

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rb/certify.hpp"
#include "rb/geometry.hpp"
#include "rb/spectral.hpp"

namespace rbio {

using Json = nlohmann::ordered_json;

// Malformed input, with a 1-based position when one is known.
struct InputError : std::runtime_error {
  InputError(const std::string& file, int line, int column, const std::string& what);
  int line, column;
};

std::string read_file(const std::string& path);

// Graph files: graph lines (`vertices: [[0,0],[1,-1]]`, `#` comments) or JSON,
// either {"vertices": [...]}, {"graphs": [...]} or a list of either form.
// Vertices are integer vectors (colored by mass, 0 first, connected) or
// element strings "[a]t" taken as given.
std::vector<rb::ColoredGraph> parse_graphs(std::string_view text, const std::string& name = "<input>");
std::vector<rb::ColoredGraph> load_graphs(const std::string& path);

// Sites file: a JSON list of integer vectors of equal length.
rb::TangentialSites parse_sites(std::string_view text, const std::string& name = "<input>");
rb::TangentialSites load_sites(const std::string& path);

Json vertices_json(const rb::ColoredGraph& g);
Json graph_json(const rb::ColoredGraph& g);  // {vertices, edges, rank, class, allowable, witness}
Json matrix_json(const rb::BlockMatrix& mat);  // {order, entries}
Json certificate_json(const rb::Certificate& c);
Json verdict_json(const rb::RealizationVerdict& v);
Json elliptic_json(const rb::EllipticReport& r);

}  // namespace rbio
