#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "stablewave/csv.hpp"
#include "stablewave/estimator.hpp"
#include "stablewave/kernel.hpp"
#include "stablewave/lfsm.hpp"
#include "stablewave/rng.hpp"
#include "stablewave/wavelet.hpp"

namespace stablewave {

inline constexpr const char* kToolVersion = "stablewave 0.1.0";

// Flat configuration: key=value file plus command-line overrides, later wins.
struct ExperimentConfig {
    std::string mode = "estimate"; // simulate | analyze | estimate | theory | mc
    SimConfig sim;
    std::string wavelet = "trig2";
    int j_min = 4;
    int j_max = 10;
    double delta = 0.25;
    long replicates = 100;
    std::string out_path = "out.csv";
    int threads = 1;

    static ExperimentConfig from_file(const std::string& path);
    void apply_override(const std::string& key, const std::string& value);
    void validate() const;
    int oversample() const; // log2(n_grid) - j_max
    std::vector<std::string> provenance() const;
};

// Parse `stablewave <mode> --config <file> [--key value ...]`.
ExperimentConfig parse_cli(std::span<const std::string> args);

// Replicate substream: avalanche-mixed (master, replicate), injective in the
// replicate index and reproducible across processes.
RngStream derive_seed(std::uint64_t master, std::uint64_t replicate);

struct McReport {
    std::vector<McRow> rows;
    std::vector<std::string> provenance;
    long replicates = 0;
};

SamplePath run_simulate(const ExperimentConfig& cfg);
WaveletPyramid run_analyze(const ExperimentConfig& cfg);
EstimateTrace run_estimate(const ExperimentConfig& cfg);
std::vector<TheoryRow> run_theory(const ExperimentConfig& cfg);
McReport run_mc(const ExperimentConfig& cfg);

// Dispatch on cfg.mode and write the corresponding CSV to cfg.out_path.
// Returns the process exit code (0 on success).
int run(const ExperimentConfig& cfg);

} // namespace stablewave
