#pragma once

#include <span>
#include <string>
#include <vector>

#include "stablewave/lfsm.hpp"
#include "stablewave/wavelet.hpp"

namespace stablewave {

struct TraceRow {
    int j = 0;
    double D_j = 0;
    double alpha_hat = 0; // raw value; meaningful only when !flagged
    bool flagged = false; // log-scale denominator was not positive
};

struct EstimateTrace {
    std::vector<TraceRow> rows;
    double H_used = 0;
    std::string wavelet;
    std::string provenance;
};

// D_j = max_k |d_{j,k}| at one level.
double max_abs(const WaveletPyramid& pyramid, int j);

// 1/alpha_hat = H + log(D_j) / (j log 2).  No clamping: out-of-range values
// are returned as computed.  D_j <= 0 is a hard error (the theory excludes
// it, so a zero means the pipeline broke); a non-positive denominator
// raises SignError, which trace assembly converts into a row flag.
double alpha_hat(double D_j, int j, double H);

// One row per level; flagged rows are kept but carry flagged = true so
// summaries can exclude them.
EstimateTrace estimate_trace(const WaveletPyramid& pyramid, double H);

// Least-squares slope of log2 of the maximal increment at dyadic lags 2^-m
// against -m; estimates the path's critical Hölder exponent H - 1/alpha.
double holder_diagnostic(const SamplePath& path, std::span<const int> dyadic_lags);

} // namespace stablewave
