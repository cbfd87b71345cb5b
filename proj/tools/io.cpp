#include "io.hpp"

#include <fstream>
#include <regex>
#include <sstream>

namespace rbio {

using namespace rb;

namespace {

std::string position(const std::string& file, int line, int column) {
  std::string s = file;
  if (line > 0) s += ":" + std::to_string(line);
  if (column > 0) s += ":" + std::to_string(column);
  return s;
}

// Line and column of a byte offset.
std::pair<int, int> locate(std::string_view text, size_t offset) {
  int line = 1, column = 1;
  for (size_t k = 0; k < offset && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

Json parse_json(std::string_view text, const std::string& name) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // e.byte points one past the offending character.
    const auto [line, column] = locate(text, e.byte > 0 ? e.byte - 1 : 0);
    throw InputError(name, line, column, "malformed JSON");
  }
}

ColoredGraph graph_from_vertices(const Json& list) {
  if (!list.is_array() || list.empty()) throw std::invalid_argument("expected a nonempty list of vertices");
  if (list[0].is_string()) {
    std::vector<GroupElement> vs;
    for (const auto& v : list) {
      if (!v.is_string()) throw std::invalid_argument("mixed vertex forms");
      vs.push_back(parse_element(v.get<std::string>()));
    }
    // Explicit elements may form a disconnected set, such as a lone pair
    // given to the realization solver.
    const int m = vs[0].dim();
    return ColoredGraph(m, std::move(vs));
  }
  std::vector<IntVec> vs;
  for (const auto& v : list) {
    if (!v.is_array()) throw std::invalid_argument("vertex is not a list of integers");
    IntVec a;
    for (const auto& c : v) {
      if (!c.is_number_integer()) throw std::invalid_argument("vertex is not a list of integers");
      a.push_back(c.get<int64_t>());
    }
    vs.push_back(std::move(a));
  }
  return complete_closure(vs);
}

void collect(const Json& j, std::vector<ColoredGraph>& out) {
  if (j.is_object()) {
    if (j.contains("graphs")) {
      collect(j["graphs"], out);
    } else if (j.contains("vertices")) {
      out.push_back(graph_from_vertices(j["vertices"]));
    } else {
      throw std::invalid_argument("object without 'vertices' or 'graphs'");
    }
    return;
  }
  if (!j.is_array()) throw std::invalid_argument("expected an object or a list");
  // A bare vertex list is one graph; otherwise each item is a graph.
  if (!j.empty() && j[0].is_array() && (j[0].empty() || j[0][0].is_number())) {
    out.push_back(graph_from_vertices(j));
    return;
  }
  if (!j.empty() && j[0].is_string()) {
    out.push_back(graph_from_vertices(j));
    return;
  }
  for (const auto& item : j) {
    if (item.is_array())
      out.push_back(graph_from_vertices(item));
    else
      collect(item, out);
  }
}

}  // namespace

InputError::InputError(const std::string& file, int l, int c, const std::string& what)
    : std::runtime_error(position(file, l, c) + ": " + what), line(l), column(c) {}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(path + ": cannot open");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<ColoredGraph> parse_graphs(std::string_view text, const std::string& name) {
  const size_t first = text.find_first_not_of(" \t\r\n");
  std::vector<ColoredGraph> out;
  // JSON when it parses as a whole (or starts with '{'); otherwise one graph
  // line per line, which also accepts bare vertex lists.
  const bool json = first != std::string_view::npos &&
                    (text[first] == '{' || (text[first] == '[' && Json::accept(text)));
  if (json) {
    const Json j = parse_json(text, name);
    try {
      collect(j, out);
    } catch (const std::exception& e) {
      throw InputError(name, 0, 0, e.what());
    }
    return out;
  }
  // Graph lines.
  std::istringstream in{std::string(text)};
  std::string line;
  static const std::regex column_re("column ([0-9]+)");
  for (int number = 1; std::getline(in, line); ++number) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const size_t p = line.find_first_not_of(" \t");
    if (p == std::string::npos || line[p] == '#') continue;
    try {
      out.push_back(parse_graph_line(line));
    } catch (const std::exception& e) {
      std::smatch m;
      const std::string what = e.what();
      const int column = std::regex_search(what, m, column_re) ? std::stoi(m[1]) : 0;
      throw InputError(name, number, column, what);
    }
  }
  return out;
}

std::vector<ColoredGraph> load_graphs(const std::string& path) { return parse_graphs(read_file(path), path); }

TangentialSites parse_sites(std::string_view text, const std::string& name) {
  const Json j = parse_json(text, name);
  if (!j.is_array() || j.empty()) throw InputError(name, 0, 0, "expected a nonempty list of integer vectors");
  std::vector<IntVec> vs;
  for (size_t k = 0; k < j.size(); ++k) {
    IntVec v;
    if (!j[k].is_array()) throw InputError(name, 0, 0, "site " + std::to_string(k + 1) + " is not a list");
    for (const auto& c : j[k]) {
      if (!c.is_number_integer()) throw InputError(name, 0, 0, "site " + std::to_string(k + 1) + " has a non-integer entry");
      v.push_back(c.get<int64_t>());
    }
    vs.push_back(std::move(v));
  }
  const int n = static_cast<int>(vs[0].size());
  try {
    return TangentialSites(n, std::move(vs));
  } catch (const std::exception& e) {
    throw InputError(name, 0, 0, e.what());
  }
}

TangentialSites load_sites(const std::string& path) { return parse_sites(read_file(path), path); }

Json vertices_json(const ColoredGraph& g) {
  Json out = Json::array();
  for (const auto& v : g.vertices()) out.push_back(format_element(v));
  return out;
}

Json graph_json(const ColoredGraph& g) {
  Json out;
  out["vertices"] = vertices_json(g);
  Json edges = Json::array();
  for (const auto& e : g.edges())
    edges.push_back({{"u", e.u},
                     {"v", e.v},
                     {"color", e.label.color == EdgeColor::Black ? "black" : "red"},
                     {"marking", {e.label.i + 1, e.label.j + 1}}});
  out["edges"] = edges;
  const RankInfo r = rank_and_degeneracy(g);
  out["rank"] = r.rank;
  out["class"] = to_string(is_resonant(g));
  const auto w = allowability_witness(g);
  out["allowable"] = !w.has_value();
  if (w)
    out["witness"] = {{"black", format_element(g.vertex(w->black))},
                      {"red", format_element(g.vertex(w->red))},
                      {"sum", format_vector(w->sum)}};
  else
    out["witness"] = nullptr;
  return out;
}

Json matrix_json(const BlockMatrix& mat) {
  Json order = Json::array();
  for (const auto& v : mat.order) order.push_back(format_element(v));
  Json rows = Json::array();
  for (int r = 0; r < mat.size(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < mat.size(); ++c) row.push_back(mat.entries.at(r, c).str());
    rows.push_back(row);
  }
  return {{"order", order}, {"entries", rows}};
}

Json certificate_json(const Certificate& c) {
  Json out;
  out["verdict"] = to_string(c.verdict);
  Json primes = Json::array(), patterns = Json::array();
  for (const auto& p : c.patterns) {
    primes.push_back(p.prime);
    patterns.push_back(p.degrees);
  }
  out["primes"] = primes;
  out["degree_patterns"] = patterns;
  Json point = Json::array();
  for (const auto& z : c.specialization) point.push_back(z.str());
  out["specialization"] = point;
  if (c.verdict == Verdict::Reducible) {
    Json f = Json::array();
    for (const auto& p : c.factors) f.push_back(p.str());
    out["factors"] = f;
  }
  return out;
}

Json verdict_json(const RealizationVerdict& v) {
  Json out;
  out["verdict"] = to_string(v.cls);
  out["dimension"] = v.dimension;
  if (v.exact_point) {
    Json p = Json::array();
    for (const auto& q : *v.exact_point) p.push_back(q.get_str());
    out["exact_point"] = p;
  } else {
    out["exact_point"] = nullptr;
  }
  out["point"] = v.point;
  out["radius_squared"] = v.radius_squared.get_str();
  out["residual"] = v.residual;
  return out;
}

Json elliptic_json(const EllipticReport& r) {
  return {{"found", r.found},       {"point", r.point},   {"margin", r.margin},
          {"margins", r.graph_margins}, {"n_samples", r.n_samples}, {"n_good", r.n_good}};
}

}  // namespace rbio
