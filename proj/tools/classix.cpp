// classix: command-line front end.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 internal invariant
// violation.

#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "classix/efficiency.hpp"
#include "classix/error.hpp"
#include "classix/evaluation.hpp"
#include "classix/io.hpp"
#include "classix/model_io.hpp"
#include "classix/pipeline.hpp"
#include "classix/synthgen.hpp"

namespace {

using namespace classix;
using Clock = std::chrono::steady_clock;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double seconds_since(Clock::time_point t) {
    return std::chrono::duration<double>(Clock::now() - t).count();
}

std::string fmt(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

// Writes to `path`, or stdout when path is empty or "-".
class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty() && path != "-") {
            file_.open(path);
            if (!file_) throw IoError("cannot write " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

// ---------------------------------------------------------------- generate

struct GenerateArgs {
    SynthSpec spec;
    std::string flip = "scaled";
    std::string seeds = "random";
    std::string out;
    std::string labels;
    std::string manifest;
};

void setup_generate(CLI::App& app, GenerateArgs& a) {
    auto* cmd = app.add_subcommand("generate", "Generate synthetic fingerprint clusters");
    cmd->add_option("--clusters", a.spec.num_clusters, "Number of seed vectors")->capture_default_str();
    cmd->add_option("--k", a.spec.k, "Noisy samples per seed")->capture_default_str();
    cmd->add_option("--d", a.spec.d, "Dimension")->capture_default_str();
    cmd->add_option("--flip", a.flip, "Flip probability: scaled (0.1*score/d) or fixed")
        ->check(CLI::IsMember({"scaled", "fixed"}))
        ->capture_default_str();
    cmd->add_option("--p", a.spec.fixed_p, "Flip probability for --flip fixed");
    cmd->add_option("--seeds", a.seeds, "Seed scores: random (fair coin) or arithmetic")
        ->check(CLI::IsMember({"random", "arithmetic"}))
        ->capture_default_str();
    cmd->add_option("--alpha-min", a.spec.alpha_min, "Score of seed 0 (arithmetic seeds)");
    cmd->add_option("--beta", a.spec.beta, "Score step between seeds (arithmetic seeds)");
    cmd->add_option("--seed", a.spec.rng_seed, "RNG seed")->capture_default_str();
    cmd->add_option("-o,--out", a.out, "Fingerprint output file")->required();
    cmd->add_option("--labels", a.labels, "Ground-truth labels CSV")->required();
    cmd->add_option("--manifest", a.manifest, "Run manifest (JSON)");
}

int run_generate(GenerateArgs& a) {
    a.spec.flip_mode = a.flip == "fixed" ? FlipMode::Fixed : FlipMode::Scaled;
    a.spec.seed_scores = a.seeds == "arithmetic" ? SeedScores::Arithmetic : SeedScores::Random;
    try {
        validate(a.spec);
    } catch (const InvalidInput& e) {
        throw UsageError(e.what());
    }
    const auto t0 = Clock::now();
    const auto gen = generate(a.spec);
    const double gen_s = seconds_since(t0);
    save_fingerprints(a.out, gen.data);
    save_labels(a.labels, gen.labels);
    if (!a.manifest.empty()) {
        RunManifest m;
        m.command = "generate";
        m.params = {{"num_clusters", a.spec.num_clusters}, {"k", a.spec.k},
                    {"d", a.spec.d},                       {"flip", a.flip},
                    {"p", a.spec.fixed_p},                 {"seeds", a.seeds},
                    {"alpha_min", a.spec.alpha_min},       {"beta", a.spec.beta},
                    {"rng_seed", a.spec.rng_seed},         {"spec", describe(a.spec)}};
        m.timings["generate"] = gen_s;
        m.n = gen.data.size();
        m.clusters = a.spec.num_clusters;
        m.checksums["fingerprints"] = file_checksum(a.out);
        m.checksums["labels"] = file_checksum(a.labels);
        m.extra["outputs"] = {{"fingerprints", a.out}, {"labels", a.labels}};
        m.extra["seed_scores"] = gen.seed_scores;
        save_manifest(a.manifest, m);
    }
    std::cerr << "generated " << gen.data.size() << " fingerprints (" << describe(a.spec) << ")\n";
    return 0;
}

// ----------------------------------------------------------------- cluster

struct ClusterArgs {
    std::string input;
    std::string metric = "tanimoto";
    std::string format;
    ClusterParams params;
    bool no_shift = false;
    bool no_prune = false;
    bool header = false;
    std::optional<std::size_t> dims;
    std::string labels;
    std::string manifest;
    std::string model;
    std::string from_manifest;
    std::string truth;
    std::vector<double> grid_radii;
    std::vector<std::size_t> grid_min_pts;
    std::string grid_out;
};

void setup_cluster(CLI::App& app, ClusterArgs& a) {
    auto* cmd = app.add_subcommand("cluster", "Cluster a dataset");
    cmd->add_option("-i,--input", a.input, "Input file (fingerprints or dense CSV)");
    cmd->add_option("--metric", a.metric, "tanimoto or manhattan")
        ->check(CLI::IsMember({"tanimoto", "manhattan"}))
        ->capture_default_str();
    cmd->add_option("--format", a.format,
                    "fingerprint or dense (default: fingerprint for tanimoto, dense for manhattan)")
        ->check(CLI::IsMember({"fingerprint", "dense"}));
    cmd->add_option("--radius", a.params.radius, "Aggregation radius")->capture_default_str();
    cmd->add_option("--min-pts", a.params.min_pts, "Minimum cluster size")->capture_default_str();
    cmd->add_option("--scale", a.params.scale, "Merge threshold is scale*radius")
        ->capture_default_str();
    cmd->add_flag("--no-shift", a.no_shift, "Manhattan: skip the orthant shift");
    cmd->add_flag("--no-prune", a.no_prune, "Scan every later point instead of the score window");
    cmd->add_flag("--header", a.header, "Dense CSV: skip the first line");
    cmd->add_option("--dims", a.dims, "Fingerprint dimension (required for hex input)");
    cmd->add_option("--threads", a.params.threads, "Worker threads for distance batches")
        ->capture_default_str();
    cmd->add_option("-o,--labels", a.labels, "Output labels CSV");
    cmd->add_option("--manifest", a.manifest, "Output run manifest (JSON)");
    cmd->add_option("--model", a.model, "Output model with explain graph (JSON), for `explain`");
    cmd->add_option("--from-manifest", a.from_manifest,
                    "Re-run with the input and parameters recorded in a manifest");
    cmd->add_option("--truth", a.truth, "Ground-truth labels; prints the ARI");
    cmd->add_option("--grid-radii", a.grid_radii, "Grid search: radii to try (needs --truth)")
        ->delimiter(',');
    cmd->add_option("--grid-min-pts", a.grid_min_pts, "Grid search: minPts values to try")
        ->delimiter(',');
    cmd->add_option("--grid-out", a.grid_out, "Grid search CSV (default stdout)");
}

struct LoadedData {
    std::optional<FingerprintSet> fps;
    std::optional<DenseDataset> dense;
    std::size_t size() const { return fps ? fps->size() : dense->size(); }
};

LoadedData load_input(const ClusterArgs& a) {
    LoadedData d;
    if (a.format == "fingerprint") {
        d.fps = load_fingerprints(a.input, a.dims);
    } else {
        d.dense = load_dense_csv(a.input, {a.header});
    }
    return d;
}

ClusterModel run_cluster(const LoadedData& data, const ClusterParams& params) {
    if (data.fps) return cluster(*data.fps, params);
    return cluster(*data.dense, params);
}

void apply_manifest(ClusterArgs& a) {
    const auto m = load_manifest(a.from_manifest);
    if (m.command != "cluster") throw UsageError("manifest was not written by `cluster`");
    const unsigned threads = a.params.threads;
    a.params = params_from_json(m.params);
    a.params.threads = threads;  // output does not depend on it
    a.metric = std::string(to_string(a.params.metric));
    const auto& extra = m.params;
    a.format = extra.value("format", a.format);
    a.header = extra.value("header", false);
    if (extra.contains("dims") && !extra["dims"].is_null()) {
        a.dims = extra["dims"].get<std::size_t>();
    }
    if (a.input.empty()) {
        auto it = m.inputs.find("data");
        if (it == m.inputs.end()) throw UsageError("manifest lists no input");
        a.input = it->second;
    }
    auto sum = m.checksums.find("data");
    if (sum != m.checksums.end() && file_checksum(a.input) != sum->second) {
        throw InvalidInput("input " + a.input + " does not match the manifest checksum");
    }
}

int run_grid(const ClusterArgs& a, const LoadedData& data) {
    if (a.truth.empty()) throw UsageError("grid search needs --truth");
    const auto truth = load_labels(a.truth);
    if (truth.size() != data.size()) throw InvalidInput("--truth length does not match the input");
    auto radii = a.grid_radii.empty() ? std::vector<double>{a.params.radius} : a.grid_radii;
    auto min_pts = a.grid_min_pts.empty() ? std::vector<std::size_t>{a.params.min_pts}
                                          : a.grid_min_pts;
    Output out(a.grid_out);
    out.stream() << "radius,min_pts,groups,clusters,ari\n";
    double best = -2.0;
    std::string best_row;
    for (double r : radii) {
        for (std::size_t mp : min_pts) {
            ClusterParams p = a.params;
            p.radius = r;
            p.min_pts = mp;
            try {
                validate(p);
            } catch (const InvalidInput& e) {
                throw UsageError(e.what());
            }
            const auto model = run_cluster(data, p);
            const double ari = adjusted_rand_index(truth, model.labels);
            std::ostringstream row;
            row << fmt(r) << ',' << mp << ',' << model.num_groups() << ','
                << model.num_clusters() << ',' << fmt(ari);
            out.stream() << row.str() << '\n';
            if (ari > best) {
                best = ari;
                best_row = row.str();
            }
        }
    }
    std::cerr << "best: " << best_row << '\n';
    return 0;
}

int run_cluster_cmd(ClusterArgs& a) {
    if (!a.from_manifest.empty()) apply_manifest(a);
    if (a.input.empty()) throw UsageError("--input is required");
    a.params.metric = parse_distance_kind(a.metric);
    if (a.format.empty()) a.format = a.metric == "tanimoto" ? "fingerprint" : "dense";
    if ((a.format == "fingerprint") != (a.params.metric == DistanceKind::Tanimoto)) {
        throw UsageError("tanimoto needs fingerprint input and manhattan needs dense input");
    }
    if (a.from_manifest.empty()) {
        a.params.orthant_shift = !a.no_shift;
        a.params.prune = !a.no_prune;
    }
    try {
        validate(a.params);
    } catch (const InvalidInput& e) {
        throw UsageError(e.what());
    }

    auto t0 = Clock::now();
    const auto data = load_input(a);
    const double read_s = seconds_since(t0);

    if (!a.grid_radii.empty() || !a.grid_min_pts.empty()) return run_grid(a, data);

    const auto model = run_cluster(data, a.params);

    t0 = Clock::now();
    if (!a.labels.empty()) save_labels(a.labels, model.labels);
    if (!a.model.empty()) save_model(a.model, model);
    const double write_s = seconds_since(t0);

    const std::uint64_t evals = model.aggregation_stats.distance_evals +
                                model.merge_distance_evals + model.min_pts_distance_evals;
    if (!a.manifest.empty()) {
        RunManifest m;
        m.command = "cluster";
        m.params = params_to_json(a.params);
        m.params["format"] = a.format;
        m.params["header"] = a.header;
        m.params["dims"] = a.dims ? nlohmann::json(*a.dims) : nlohmann::json(nullptr);
        m.inputs["data"] = a.input;
        m.checksums["data"] = file_checksum(a.input);
        m.timings = {{"sort", model.timings.sort_s},
                     {"aggregate", model.timings.aggregate_s},
                     {"merge", model.timings.merge_s},
                     {"min_pts", model.timings.min_pts_s}};
        m.n = model.labels.size();
        m.groups = model.num_groups();
        m.clusters = model.num_clusters();
        m.distance_evals = evals;
        m.extra = {{"io_s", {{"read", read_s}, {"write", write_s}}},
                   {"distance_evals",
                    {{"aggregate", model.aggregation_stats.distance_evals},
                     {"merge", model.merge_distance_evals},
                     {"min_pts", model.min_pts_distance_evals}}},
                   {"candidates_scanned", model.aggregation_stats.candidates_scanned},
                   {"reassigned_groups", model.reassignment_log.size()},
                   {"min_pts_fallback", model.min_pts_fallback}};
        if (!a.labels.empty()) m.extra["outputs"]["labels"] = a.labels;
        if (!a.model.empty()) m.extra["outputs"]["model"] = a.model;
        if (!a.from_manifest.empty()) m.extra["from_manifest"] = a.from_manifest;
        save_manifest(a.manifest, m);
    }

    std::cerr << "n=" << model.labels.size() << " groups=" << model.num_groups()
              << " clusters=" << model.num_clusters() << " distance_evals=" << evals << '\n';
    if (model.min_pts_fallback) {
        std::cerr << "note: no cluster reached minPts; labels left as merged\n";
    }
    if (!a.truth.empty()) {
        const auto truth = load_labels(a.truth);
        std::printf("%.12f\n", adjusted_rand_index(truth, model.labels));
    }
    return 0;
}

// ----------------------------------------------------------------- explain

struct ExplainArgs {
    std::string model;
    std::size_t i = 0;
    std::size_t j = 0;
    bool jsonl = false;
};

void setup_explain(CLI::App& app, ExplainArgs& a) {
    auto* cmd = app.add_subcommand("explain", "Explain why two points share a cluster (or not)");
    cmd->add_option("-m,--model", a.model, "Model JSON written by `cluster --model`")->required();
    cmd->add_option("--i", a.i, "First point (0-based)")->required();
    cmd->add_option("--j", a.j, "Second point (0-based)")->required();
    cmd->add_flag("--jsonl", a.jsonl, "Machine-readable JSON Lines output");
}

int run_explain(const ExplainArgs& a) {
    const auto saved = load_model(a.model);
    if (a.i >= saved.labels.size() || a.j >= saved.labels.size()) {
        throw UsageError("point index out of range (n = " + std::to_string(saved.labels.size()) +
                         ")");
    }
    const auto e = explain_pair(saved.graph, saved.labels, a.i, a.j);
    std::cout << (a.jsonl ? format_explanation_jsonl(e) : format_explanation(e));
    return 0;
}

// -------------------------------------------------------------- efficiency

struct EfficiencyArgs {
    EfficiencyGrid grid;
    std::string mode = "exact";
    std::string out;
};

void setup_efficiency(CLI::App& app, EfficiencyArgs& a) {
    auto* cmd = app.add_subcommand("efficiency", "Exact and simulated search-termination efficiency");
    a.grid.alpha_i = {100, 300, 500};
    a.grid.p = {0.01, 0.05, 0.1};
    a.grid.s = {0.5, 0.7, 0.9};
    cmd->add_option("--alpha", a.grid.alpha_i, "Seed scores")->delimiter(',')->capture_default_str();
    cmd->add_option("--p", a.grid.p, "Flip probabilities")->delimiter(',')->capture_default_str();
    cmd->add_option("--s", a.grid.s, "Similarity thresholds (1 - radius)")
        ->delimiter(',')
        ->capture_default_str();
    cmd->add_option("--d", a.grid.d, "Dimension")->capture_default_str();
    cmd->add_option("--mode", a.mode, "exact, simulate or both")
        ->check(CLI::IsMember({"exact", "simulate", "both"}))
        ->capture_default_str();
    cmd->add_option("--samples", a.grid.n_samples, "Samples per simulated query")
        ->capture_default_str();
    cmd->add_option("--seed", a.grid.rng_seed, "RNG seed")->capture_default_str();
    cmd->add_option("--threads", a.grid.threads, "Worker threads")->capture_default_str();
    cmd->add_option("-o,--out", a.out, "CSV output (default stdout)");
}

int run_efficiency(EfficiencyArgs& a) {
    a.grid.mode = a.mode == "simulate" ? EfficiencyMode::Simulate
                  : a.mode == "both"   ? EfficiencyMode::Both
                                       : EfficiencyMode::Exact;
    if (a.grid.n_samples == 0) throw UsageError("--samples must be at least 1");
    std::vector<EfficiencyPoint> points;
    try {
        points = evaluate_grid(a.grid);
    } catch (const InvalidInput& e) {
        throw UsageError(e.what());
    }
    const bool exact = a.grid.mode != EfficiencyMode::Simulate;
    Output out(a.out);
    auto& os = out.stream();
    os << "alpha_i,d,p,s,p1,p2,efficiency,simulated,std_error\n";
    for (const auto& pt : points) {
        os << pt.query.alpha_i << ',' << pt.query.d << ',' << fmt(pt.query.p) << ','
           << fmt(pt.query.s) << ',';
        if (exact) {
            os << fmt(pt.p1) << ',' << fmt(pt.p2) << ',';
            if (pt.efficiency) os << fmt(*pt.efficiency);
        } else {
            os << ",,";
        }
        os << ',';
        if (pt.simulated && pt.simulated->estimate) {
            os << fmt(*pt.simulated->estimate) << ',' << fmt(pt.simulated->std_error);
        } else {
            os << ',';
        }
        os << '\n';
    }
    return 0;
}

// ---------------------------------------------------------------- evaluate

struct EvaluateArgs {
    std::string truth;
    std::string pred;
};

void setup_evaluate(CLI::App& app, EvaluateArgs& a) {
    auto* cmd = app.add_subcommand("evaluate", "Adjusted Rand Index between two label files");
    cmd->add_option("--truth", a.truth, "Reference labels CSV")->required();
    cmd->add_option("--pred", a.pred, "Predicted labels CSV")->required();
}

int run_evaluate(const EvaluateArgs& a) {
    const auto truth = load_labels(a.truth);
    const auto pred = load_labels(a.pred);
    std::printf("%.12f\n", adjusted_rand_index(truth, pred));
    return 0;
}

// ------------------------------------------------------------------- bench

struct BenchArgs {
    std::string sweep = "n";
    std::vector<std::size_t> values;
    std::optional<std::size_t> d;
    std::size_t n = 10000;
    std::size_t k = 100;
    std::size_t clusters = 10;
    std::size_t alpha_min = 50;
    std::optional<double> radius;
    std::size_t min_pts = 5;
    std::uint64_t seed = 42;
    unsigned threads = 1;
    unsigned repeats = 1;
    std::string out;
};

void setup_bench(CLI::App& app, BenchArgs& a) {
    auto* cmd = app.add_subcommand("bench", "Synthetic scaling sweeps (CSV)");
    cmd->add_option("--sweep", a.sweep, "n, d or beta")
        ->check(CLI::IsMember({"n", "d", "beta"}))
        ->capture_default_str();
    cmd->add_option("--values", a.values,
                    "Sweep values (defaults: n 2000,4000,8000; d 250,500,1000,2000; beta 0..9)")
        ->delimiter(',');
    cmd->add_option("--d", a.d, "Dimension for the n sweep (default 1000) or beta sweep (2000)");
    cmd->add_option("--n", a.n, "Points for the d sweep")->capture_default_str();
    cmd->add_option("--k", a.k, "Samples per seed for the beta sweep")->capture_default_str();
    cmd->add_option("--clusters", a.clusters, "Number of clusters")->capture_default_str();
    cmd->add_option("--alpha-min", a.alpha_min, "Beta sweep: score of the first seed")
        ->capture_default_str();
    cmd->add_option("--radius", a.radius, "Radius (default 0.4; 0.35 for the beta sweep)");
    cmd->add_option("--min-pts", a.min_pts, "minPts")->capture_default_str();
    cmd->add_option("--seed", a.seed, "RNG seed")->capture_default_str();
    cmd->add_option("--threads", a.threads, "Worker threads")->capture_default_str();
    cmd->add_option("--repeats", a.repeats, "Runs per point; the fastest is reported")
        ->capture_default_str();
    cmd->add_option("-o,--out", a.out, "CSV output (default stdout)");
}

std::size_t per_cluster(std::size_t n, std::size_t clusters) {
    if (n < clusters) throw UsageError("n must be at least the number of clusters");
    return n / clusters - 1;
}

int run_bench(BenchArgs& a) {
    if (a.values.empty()) {
        if (a.sweep == "n") a.values = {2000, 4000, 8000};
        if (a.sweep == "d") a.values = {250, 500, 1000, 2000};
        if (a.sweep == "beta") a.values = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    }
    if (a.repeats == 0) throw UsageError("--repeats must be at least 1");
    ClusterParams params;
    params.metric = DistanceKind::Tanimoto;
    params.radius = a.radius.value_or(a.sweep == "beta" ? 0.35 : 0.4);
    params.min_pts = a.min_pts;
    params.threads = a.threads;
    try {
        validate(params);
    } catch (const InvalidInput& e) {
        throw UsageError(e.what());
    }

    Output out(a.out);
    auto& os = out.stream();
    os << "sweep,value,n,d,runtime_s,distance_evals,groups,clusters,ari\n";
    for (std::size_t v : a.values) {
        SynthSpec spec;
        spec.num_clusters = a.clusters;
        spec.rng_seed = a.seed;
        if (a.sweep == "n") {
            spec.d = a.d.value_or(1000);
            spec.k = per_cluster(v, a.clusters);
        } else if (a.sweep == "d") {
            spec.d = v;
            spec.k = per_cluster(a.n, a.clusters);
        } else {
            spec.d = a.d.value_or(2000);
            spec.k = a.k;
            spec.seed_scores = SeedScores::Arithmetic;
            spec.alpha_min = a.alpha_min;
            spec.beta = v;
        }
        try {
            validate(spec);
        } catch (const InvalidInput& e) {
            throw UsageError(e.what());
        }
        const auto gen = generate(spec);
        double best = 0.0;
        ClusterModel model;
        for (unsigned r = 0; r < a.repeats; ++r) {
            const auto t0 = Clock::now();
            model = cluster(gen.data, params);
            const double s = seconds_since(t0);
            if (r == 0 || s < best) best = s;
        }
        const std::uint64_t evals = model.aggregation_stats.distance_evals +
                                    model.merge_distance_evals + model.min_pts_distance_evals;
        os << a.sweep << ',' << v << ',' << gen.data.size() << ',' << spec.d << ',' << fmt(best)
           << ',' << evals << ',' << model.num_groups() << ',' << model.num_clusters() << ','
           << fmt(adjusted_rand_index(gen.labels, model.labels)) << '\n';
        os.flush();
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"CLASSIX-style clustering for Manhattan and Tanimoto distances"};
    app.require_subcommand(1);
    GenerateArgs gen;
    ClusterArgs clu;
    ExplainArgs exp;
    EfficiencyArgs eff;
    EvaluateArgs eva;
    BenchArgs ben;
    setup_generate(app, gen);
    setup_cluster(app, clu);
    setup_explain(app, exp);
    setup_efficiency(app, eff);
    setup_evaluate(app, eva);
    setup_bench(app, ben);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        const auto* sub = app.get_subcommands().front();
        const std::string name = sub->get_name();
        if (name == "generate") return run_generate(gen);
        if (name == "cluster") return run_cluster_cmd(clu);
        if (name == "explain") return run_explain(exp);
        if (name == "efficiency") return run_efficiency(eff);
        if (name == "evaluate") return run_evaluate(eva);
        if (name == "bench") return run_bench(ben);
        return 1;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const InvariantViolation& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    }
}
