#include "pathquery/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace pathquery {

namespace {

using nlohmann::json;

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw std::invalid_argument("malformed JSON");
    return j;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out)
        throw std::invalid_argument("cannot write " + path);
    out << text;
}

} // namespace

std::string graph_to_json(const DirectedGraph& g) {
    json j;
    j["n"] = g.vertex_count();
    if (g.root())
        j["root"] = *g.root();
    else
        j["root"] = nullptr;
    json edges = json::array();
    for (const Edge& e : g.edges())
        edges.push_back({e.first, e.second});
    j["edges"] = std::move(edges);
    return j.dump(2) + "\n";
}

DirectedGraph graph_from_json(const std::string& text) {
    const json j = parse(text);
    if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
        throw std::invalid_argument("graph JSON needs \"n\" and \"edges\"");
    const int n = j.at("n").get<int>();
    std::optional<Vertex> root;
    if (j.contains("root") && !j.at("root").is_null())
        root = j.at("root").get<Vertex>();
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2)
            throw std::invalid_argument("each edge must be a [u, v] pair");
        edges.emplace_back(e[0].get<Vertex>(), e[1].get<Vertex>());
    }
    return DirectedGraph(n, std::move(edges), root);
}

void save_graph(const DirectedGraph& g, const std::string& path) {
    write_file(path, graph_to_json(g));
}

DirectedGraph load_graph(const std::string& path) { return graph_from_json(read_file(path)); }

std::string meta_to_json(const InstanceMeta& meta) {
    json j;
    j["family"] = meta.family;
    j["seed"] = meta.seed;
    j["n"] = meta.n;
    j["vertices"] = meta.vertices;
    j["d"] = meta.d ? json(*meta.d) : json(nullptr);
    j["h"] = meta.h ? json(*meta.h) : json(nullptr);
    j["k"] = meta.k ? json(*meta.k) : json(nullptr);
    j["extra_edge"] =
        meta.extra_edge ? json({meta.extra_edge->first, meta.extra_edge->second}) : json(nullptr);
    if (meta.spine_length)
        j["spine_length"] = *meta.spine_length;
    if (meta.branch_nodes)
        j["branch_nodes"] = *meta.branch_nodes;
    return j.dump(2) + "\n";
}

InstanceMeta meta_from_json(const std::string& text) {
    const json j = parse(text);
    InstanceMeta meta;
    meta.family = j.at("family").get<std::string>();
    meta.seed = j.at("seed").get<std::uint64_t>();
    meta.n = j.at("n").get<int>();
    meta.vertices = j.value("vertices", 0);
    auto opt_int = [&](const char* key) -> std::optional<int> {
        if (!j.contains(key) || j.at(key).is_null())
            return std::nullopt;
        return j.at(key).get<int>();
    };
    meta.d = opt_int("d");
    meta.h = opt_int("h");
    meta.k = opt_int("k");
    meta.spine_length = opt_int("spine_length");
    meta.branch_nodes = opt_int("branch_nodes");
    if (j.contains("extra_edge") && !j.at("extra_edge").is_null())
        meta.extra_edge = Edge{j.at("extra_edge")[0].get<Vertex>(),
                               j.at("extra_edge")[1].get<Vertex>()};
    return meta;
}

void save_meta(const InstanceMeta& meta, const std::string& path) {
    write_file(path, meta_to_json(meta));
}

InstanceMeta load_meta(const std::string& path) { return meta_from_json(read_file(path)); }

std::string meta_path_for(const std::string& graph_path) { return graph_path + ".meta.json"; }

} // namespace pathquery
