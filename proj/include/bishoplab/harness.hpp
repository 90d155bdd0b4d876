#ifndef BISHOPLAB_HARNESS_HPP
#define BISHOPLAB_HARNESS_HPP

#include <cstdint>
#include <string>

namespace bishoplab {

// One experiment: identical configs produce byte-identical report JSON.
// Wall-times go to a sidecar file outside the determinism contract.
struct ExperimentConfig {
    std::string alpha_key = "golden";
    int depth = 40;
    long prec_bits = 192;
    int log2G = 10;
    long trunc_N = 500;
    long mc_samples = 20000;
    uint64_t seed = 1;
    double p = 2.0;
    long n_max = 128;
    double eps = 0.05;
    int blocks = 3;
    std::string out_path = "report.json";
    std::string cache_dir;  // empty: use BISHOPLAB_CACHE_DIR if set

    static ExperimentConfig from_json_file(const std::string& path);
    static ExperimentConfig from_json(const std::string& text);
    std::string to_json() const;
};

struct ReportBundle {
    std::string json;          // the deterministic report
    std::string timings_json;  // sidecar telemetry
    bool ok = true;
};

// Orchestrates convergents -> classify -> sets -> profiles -> verdicts.
// Module refusals are recorded in the bundle, never fatal.  The report is
// written atomically to cfg.out_path; timings to out_path + ".timings.json".
ReportBundle run(const ExperimentConfig& cfg);

// JSON serialization of the exactreal types (big integers as decimal
// strings), used by the cf subcommand.
std::string partial_quotients_json(const std::string& alpha_key, size_t depth);

}  // namespace bishoplab

#endif
