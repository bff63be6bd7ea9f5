#pragma once

#include <optional>
#include <string>
#include <vector>

#include "affwalk/group.hpp"
#include "affwalk/measure.hpp"

namespace affwalk {

struct GeneratorSpec {
    std::vector<i64> v;              // translation part, reduced mod p on use
    std::vector<std::vector<i64>> m; // linear part rows, det must be 1 mod p
};

struct ExperimentConfig {
    u32 schema_version = 1;
    std::vector<u32> p_list; // single entry for all commands except scan
    u32 d = 2;
    std::vector<GeneratorSpec> generators;
    bool symmetrize = true;
    bool uniform_on_group = false;
    u64 seed = 0;
    u64 l_cap = 400;
    u32 k_max = 6;
    double K = 2.5;
    u64 l1 = 1;
    u64 samples = 1;
    u32 generator_count = 3;
    std::vector<i64> v0; // decay starting point; empty means the origin
};

ExperimentConfig load_config(const std::string& path);

struct RunOptions {
    std::string out_dir = ".";
    u32 threads = 1;
    bool materialize = false;
};

// Exit codes: 0 success, 2 hypothesis failure, 3 numeric non-convergence.
// Config and internal errors surface as exceptions for the caller to map.
int run_gap(const ExperimentConfig& cfg, const RunOptions& opt);
int run_scan(const ExperimentConfig& cfg, const RunOptions& opt);
int run_decay(const ExperimentConfig& cfg, const RunOptions& opt);
int run_growth(const ExperimentConfig& cfg, const RunOptions& opt);
int run_flatten(const ExperimentConfig& cfg, const RunOptions& opt);
int run_mixing(const ExperimentConfig& cfg, const RunOptions& opt);
int run_multiplicity(const ExperimentConfig& cfg, const RunOptions& opt);

// 17-significant-digit representation used by every CSV and data file.
std::string format_real(double x);

// The configured measure and generating set over the (single) configured
// prime. Entries are reduced mod p; a non-unimodular matrix is a hard error.
struct ConfiguredMeasure {
    GroupContextPtr ctx;
    ElementSet set;
    GroupMeasure mu;
};

ConfiguredMeasure build_configured_measure(const ExperimentConfig& cfg, u32 p);

} // namespace affwalk
