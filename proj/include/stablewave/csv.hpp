#pragma once

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "stablewave/estimator.hpp"
#include "stablewave/kernel.hpp"
#include "stablewave/lfsm.hpp"
#include "stablewave/wavelet.hpp"

namespace stablewave {

// Shortest round-trip decimal representation (std::to_chars), so re-running
// a configuration reproduces numeric columns byte for byte.
std::string format_double(double v);

void write_path_csv(std::ostream& os, const SamplePath& path);                   // t,x
void write_pyramid_csv(std::ostream& os, const WaveletPyramid& pyramid);         // j,k,d
void write_trace_csv(std::ostream& os, const EstimateTrace& trace);              // j,D_j,alpha_hat,flag

struct TheoryRow {
    std::string quantity;
    int j = 0;
    double delta = 0;
    double value = 0;
    bool has_bound = false;
    double bound = 0;
};
void write_theory_csv(std::ostream& os, std::span<const TheoryRow> rows);        // quantity,j,delta,value,bound

struct McRow {
    int j = 0;
    double alpha_hat_median = 0;
    double alpha_hat_iqr = 0;
    long n_flagged = 0;
};
void write_mc_csv(std::ostream& os, std::span<const McRow> rows,
                  std::span<const std::string> provenance);                      // j,alpha_hat_median,...

} // namespace stablewave
