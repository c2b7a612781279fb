#pragma once

#include <string>

#include "pathquery/generate.hpp"
#include "pathquery/graph.hpp"

namespace pathquery {

/// Graph file format shared by every tool:
///   {"n": int, "root": int|null, "edges": [[u, v], ...]}
/// Edge order is irrelevant on input; output is sorted. Files violating the
/// graph invariants are rejected with std::invalid_argument.
std::string graph_to_json(const DirectedGraph& g);
DirectedGraph graph_from_json(const std::string& text);

void save_graph(const DirectedGraph& g, const std::string& path);
DirectedGraph load_graph(const std::string& path);

/// Sidecar metadata written next to generated instances:
///   {"family", "seed", "n", "vertices", "d", "h", "k", "extra_edge", ...}
std::string meta_to_json(const InstanceMeta& meta);
InstanceMeta meta_from_json(const std::string& text);

void save_meta(const InstanceMeta& meta, const std::string& path);
InstanceMeta load_meta(const std::string& path);

/// Conventional sidecar path: `<path>.meta.json`.
std::string meta_path_for(const std::string& graph_path);

} // namespace pathquery
