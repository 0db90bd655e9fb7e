#pragma once
// JSON persistence for clustering results: the saved model feeds `explain`,
// the run manifest records how a result was produced.

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "classix/explain.hpp"
#include "classix/pipeline.hpp"

namespace classix {

nlohmann::json params_to_json(const ClusterParams& params);
// Missing keys keep their defaults; wrong types throw ParseError.
ClusterParams params_from_json(const nlohmann::json& j);

// What `explain` needs: labels, the provenance graph, and the parameters.
struct SavedModel {
    ClusterParams params;
    std::vector<std::int64_t> labels;
    ExplainGraph graph;
};

nlohmann::json model_to_json(const ClusterModel& model);
SavedModel model_from_json(const nlohmann::json& j);
void save_model(const std::filesystem::path& path, const ClusterModel& model);
SavedModel load_model(const std::filesystem::path& path);

struct RunManifest {
    std::string command;
    nlohmann::json params = nlohmann::json::object();
    std::map<std::string, std::string> inputs;  // role -> path
    std::map<std::string, std::string> checksums;  // role -> FNV-1a of the file
    std::map<std::string, double> timings;  // phase -> seconds
    std::size_t n = 0;
    std::size_t groups = 0;
    std::size_t clusters = 0;
    std::uint64_t distance_evals = 0;
    nlohmann::json extra = nlohmann::json::object();
};

nlohmann::json to_json(const RunManifest& m);
RunManifest manifest_from_json(const nlohmann::json& j);
void save_manifest(const std::filesystem::path& path, const RunManifest& m);
RunManifest load_manifest(const std::filesystem::path& path);

}  // namespace classix
