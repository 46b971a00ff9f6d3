#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ldd/det.hpp"
#include "ldd/graph.hpp"

namespace ldd {

// Edge-list text: "n m" then m lines "src dst len".
DirectedGraph read_edge_list(std::istream& in);
DirectedGraph read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const DirectedGraph& g);
void write_edge_list_file(const std::string& path, const DirectedGraph& g);
std::string edge_list_string(const DirectedGraph& g);

struct SupportFile {
  Length d = 0;
  EdgeId edge_count = 0;
  std::vector<EdgeId> force_cut;
  std::vector<CutSet> cuts;
};

std::string support_json(const LddSupport& support, Length d, EdgeId edge_count);
SupportFile parse_support_json(const std::string& text);

struct CutFile {
  Length d = 0;
  std::uint64_t seed = 0;
  EdgeId edge_count = 0;
  std::vector<EdgeId> edges;  // sorted
  std::uint64_t restarts = 0;
  std::uint32_t max_depth = 0;
  std::optional<double> wall_time_ms;
};

std::string cut_json(const CutFile& cut);
CutFile parse_cut_json(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace ldd
