#include "classix/model_io.hpp"

#include <fstream>

#include "classix/error.hpp"

namespace classix {

namespace {

nlohmann::json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(0, path.string() + ": " + e.what());
    }
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j, int indent) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << j.dump(indent) << '\n';
    if (!out) throw IoError("write failed: " + path.string());
}

template <class T>
T get_or(const nlohmann::json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(0, std::string("field '") + key + "': " + e.what());
    }
}

}  // namespace

nlohmann::json params_to_json(const ClusterParams& p) {
    return {{"metric", std::string(to_string(p.metric))},
            {"radius", p.radius},
            {"scale", p.scale},
            {"min_pts", p.min_pts},
            {"orthant_shift", p.orthant_shift},
            {"prune", p.prune},
            {"threads", p.threads}};
}

ClusterParams params_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError(0, "parameters must be a JSON object");
    ClusterParams p;
    p.metric = parse_distance_kind(get_or<std::string>(j, "metric", std::string(to_string(p.metric))));
    p.radius = get_or(j, "radius", p.radius);
    p.scale = get_or(j, "scale", p.scale);
    p.min_pts = get_or(j, "min_pts", p.min_pts);
    p.orthant_shift = get_or(j, "orthant_shift", p.orthant_shift);
    p.prune = get_or(j, "prune", p.prune);
    p.threads = get_or(j, "threads", p.threads);
    return p;
}

nlohmann::json model_to_json(const ClusterModel& model) {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : model.explain.edges()) {
        edges.push_back({e.u, e.v, std::string(to_string(e.kind)), e.distance});
    }
    return {{"params", params_to_json(model.params)},
            {"labels", model.labels},
            {"group_of_point", model.group_of_point},
            {"starting_points", model.starting_points},
            {"edges", edges}};
}

SavedModel model_from_json(const nlohmann::json& j) {
    try {
        SavedModel m;
        m.params = params_from_json(j.at("params"));
        m.labels = j.at("labels").get<std::vector<std::int64_t>>();
        auto group_of_point = j.at("group_of_point").get<std::vector<std::size_t>>();
        auto starting_points = j.at("starting_points").get<std::vector<std::size_t>>();
        if (group_of_point.size() != m.labels.size()) {
            throw ParseError(0, "model: labels and group_of_point differ in length");
        }
        for (auto g : group_of_point) {
            if (g >= starting_points.size()) throw ParseError(0, "model: group id out of range");
        }
        std::vector<ExplainEdge> edges;
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 4) throw ParseError(0, "model: malformed edge");
            edges.push_back({e[0].get<std::size_t>(), e[1].get<std::size_t>(),
                             parse_edge_kind(e[2].get<std::string>()), e[3].get<double>()});
        }
        m.graph = ExplainGraph(std::move(group_of_point), std::move(starting_points), std::move(edges));
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(0, std::string("model: ") + e.what());
    }
}

void save_model(const std::filesystem::path& path, const ClusterModel& model) {
    write_json(path, model_to_json(model), -1);
}

SavedModel load_model(const std::filesystem::path& path) { return model_from_json(read_json(path)); }

nlohmann::json to_json(const RunManifest& m) {
    return {{"command", m.command},
            {"params", m.params},
            {"inputs", m.inputs},
            {"checksums", m.checksums},
            {"timings_s", m.timings},
            {"n", m.n},
            {"groups", m.groups},
            {"clusters", m.clusters},
            {"distance_evals", m.distance_evals},
            {"extra", m.extra}};
}

RunManifest manifest_from_json(const nlohmann::json& j) {
    try {
        RunManifest m;
        m.command = j.at("command").get<std::string>();
        m.params = j.value("params", nlohmann::json::object());
        m.inputs = j.value("inputs", std::map<std::string, std::string>{});
        m.checksums = j.value("checksums", std::map<std::string, std::string>{});
        m.timings = j.value("timings_s", std::map<std::string, double>{});
        m.n = j.value("n", std::size_t{0});
        m.groups = j.value("groups", std::size_t{0});
        m.clusters = j.value("clusters", std::size_t{0});
        m.distance_evals = j.value("distance_evals", std::uint64_t{0});
        m.extra = j.value("extra", nlohmann::json::object());
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(0, std::string("manifest: ") + e.what());
    }
}

void save_manifest(const std::filesystem::path& path, const RunManifest& m) {
    write_json(path, to_json(m), 2);
}

RunManifest load_manifest(const std::filesystem::path& path) {
    return manifest_from_json(read_json(path));
}

}  // namespace classix
