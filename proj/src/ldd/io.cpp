#include "ldd/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace ldd {

namespace {

using Json = nlohmann::ordered_json;

template <class T>
T parse_int(std::string_view tok, std::size_t line, const char* what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError("line " + std::to_string(line) + ": bad " + what + " '" + std::string(tok) + "'");
  return value;
}

std::vector<std::string_view> tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    const std::size_t j = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
    if (i > j) out.push_back(s.substr(j, i - j));
  }
  return out;
}

std::vector<EdgeId> edge_array(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) throw ParseError(std::string("missing array '") + key + "'");
  std::vector<EdgeId> out;
  for (const auto& x : j[key]) {
    if (!x.is_number_unsigned()) throw ParseError(std::string("non-integer edge id in '") + key + "'");
    out.push_back(x.get<EdgeId>());
  }
  return out;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

DirectedGraph read_edge_list(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string_view> tok;
  auto next = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      tok = tokens(line);
      if (!tok.empty()) return true;
    }
    return false;
  };
  if (!next()) throw ParseError("empty edge list");
  if (tok.size() != 2) throw ParseError("line 1: expected 'n m'");
  const auto n = parse_int<NodeId>(tok[0], line_no, "node count");
  const auto m = parse_int<std::uint64_t>(tok[1], line_no, "edge count");
  if (n == 0) throw ParseError("line 1: node count must be >= 1");
  if (m >= kNoNode) throw ParseError("line 1: edge count too large");
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::uint64_t i = 0; i < m; ++i) {
    if (!next()) throw ParseError("expected " + std::to_string(m) + " edges, found " + std::to_string(i));
    if (tok.size() != 3) throw ParseError("line " + std::to_string(line_no) + ": expected 'src dst len'");
    Edge e{parse_int<NodeId>(tok[0], line_no, "source"), parse_int<NodeId>(tok[1], line_no, "target"),
           parse_int<Length>(tok[2], line_no, "length")};
    if (e.src >= n || e.dst >= n) throw ParseError("line " + std::to_string(line_no) + ": node id out of range");
    if (e.len < 1) throw ParseError("line " + std::to_string(line_no) + ": length must be >= 1");
    if (e.src == e.dst) throw ParseError("line " + std::to_string(line_no) + ": self-loop");
    edges.push_back(e);
  }
  if (next()) throw ParseError("line " + std::to_string(line_no) + ": trailing data after the edge list");
  return DirectedGraph(n, std::move(edges));
}

DirectedGraph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const DirectedGraph& g) { out << edge_list_string(g); }

std::string edge_list_string(const DirectedGraph& g) {
  std::string s = std::to_string(g.node_count()) + " " + std::to_string(g.edge_count()) + "\n";
  for (const Edge& e : g.edges()) {
    s += std::to_string(e.src);
    s += ' ';
    s += std::to_string(e.dst);
    s += ' ';
    s += std::to_string(e.len);
    s += '\n';
  }
  return s;
}

void write_edge_list_file(const std::string& path, const DirectedGraph& g) { write_file(path, edge_list_string(g)); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("write failed: " + path);
}

std::string support_json(const LddSupport& support, Length d, EdgeId edge_count) {
  Json j;
  j["format"] = "ldd-support";
  j["d"] = d;
  j["edge_count"] = edge_count;
  j["rounds"] = support.rounds();
  j["trivial"] = support.params.trivial;
  j["psi"] = support.params.psi.str();
  j["psi_doublings"] = support.stats.psi_doublings;
  j["force_cut"] = support.force_cut;
  Json cuts = Json::array();
  for (const CutSet& s : support.cuts) cuts.push_back(std::vector<EdgeId>(s.begin(), s.end()));
  j["cuts"] = std::move(cuts);
  return j.dump(1) + "\n";
}

SupportFile parse_support_json(const std::string& text) {
  const Json j = parse_json(text);
  if (j.value("format", "") != "ldd-support") throw ParseError("not a support file");
  SupportFile f;
  try {
    f.d = j.at("d").get<Length>();
    f.edge_count = j.at("edge_count").get<EdgeId>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("support file: ") + e.what());
  }
  f.force_cut = edge_array(j, "force_cut");
  if (!j.contains("cuts") || !j["cuts"].is_array()) throw ParseError("missing array 'cuts'");
  for (const auto& c : j["cuts"]) {
    Json wrap;
    wrap["x"] = c;
    try {
      f.cuts.emplace_back(edge_array(wrap, "x"), f.edge_count);
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what());
    }
  }
  if (j.contains("rounds") && j["rounds"].get<std::size_t>() != f.cuts.size())
    throw ParseError("support file: rounds does not match the number of cuts");
  return f;
}

std::string cut_json(const CutFile& cut) {
  Json j;
  j["format"] = "ldd-cut";
  j["d"] = cut.d;
  j["seed"] = cut.seed;
  j["edge_count"] = cut.edge_count;
  j["restarts"] = cut.restarts;
  j["max_depth"] = cut.max_depth;
  if (cut.wall_time_ms) j["wall_time_ms"] = *cut.wall_time_ms;
  j["edges"] = cut.edges;
  return j.dump(1) + "\n";
}

CutFile parse_cut_json(const std::string& text) {
  const Json j = parse_json(text);
  if (j.value("format", "") != "ldd-cut") throw ParseError("not a cut file");
  CutFile c;
  try {
    c.d = j.at("d").get<Length>();
    c.seed = j.value("seed", std::uint64_t{0});
    c.edge_count = j.at("edge_count").get<EdgeId>();
    c.restarts = j.value("restarts", std::uint64_t{0});
    c.max_depth = j.value("max_depth", std::uint32_t{0});
    if (j.contains("wall_time_ms")) c.wall_time_ms = j["wall_time_ms"].get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("cut file: ") + e.what());
  }
  c.edges = edge_array(j, "edges");
  for (EdgeId e : c.edges)
    if (e >= c.edge_count) throw ParseError("cut file: edge id out of range");
  std::sort(c.edges.begin(), c.edges.end());
  return c;
}

}  // namespace ldd
