#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qisurf/serialize.hpp"

namespace qisurf {

struct RunConfig {
    // generation
    int girth = 5;
    int size_hint = 0;  // 0: auto from the girth target
    std::uint64_t seed = 1;
    int max_restarts = 64;

    MeshParams mesh;

    // candidate nets
    std::vector<double> separations{1.0, 1.5, 2.0, 3.0, 4.0};
    std::uint64_t net_seed = 1;

    // claim and ladder
    double M = 1.0;
    double A = 1.0;
    double K = 1.0;
    double ladder_R = 1.0;
    bool paper_mode = false;

    SamplingPlan plan;

    std::vector<std::string> stages;  // empty: all
    std::string out_dir = "out";

    void validate() const;
    json to_json() const;
    static RunConfig from_json(const json& j);
    static RunConfig defaults();
    std::string config_hash() const;
    int effective_size_hint() const;
};

extern const std::vector<std::string> kPipelineStages;

struct PipelineResult {
    std::optional<ObstructionCertificate> certificate;
    std::vector<QiReport> reports;  // one per net candidate
    std::string status;             // pass | violation | out-of-range
};

// Runs the selected stages in order, reading any missing inputs from the
// output directory and writing every artifact back to it.
PipelineResult run_pipeline(const RunConfig& config);

struct SweepRow {
    int g = 0;
    std::uint64_t seed = 0;
    double separation = 0;
    QiReport report;
    std::string certificate_kind;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::vector<std::pair<int, double>> best_per_g;  // (g, best A_min)
    std::string csv;
    std::string svg;
};

// Sweeps girth targets with fixed seeds; per g the best A_min over the
// configured net candidates. Parallel over cells up to QISURF_WORKERS.
SweepResult sweep(const RunConfig& base, const std::vector<int>& g_grid);

// Static SVG: best A_min against girth.
std::string sweep_svg(const std::vector<std::pair<int, double>>& best_per_g);

// Human-readable summary of the artifacts in an output directory.
std::string report_directory(const std::string& out_dir);

}  // namespace qisurf
