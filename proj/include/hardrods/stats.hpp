#pragma once
#include <cstddef>
#include <vector>

namespace hardrods {

// Summary of a scalar time series with autocorrelation-corrected error.
struct AutocorrReport {
    double mean = 0.0;
    double var = 0.0;         // lag-0 autocovariance (1/N normalization)
    double tau_int = 0.5;     // integrated autocorrelation time, 0.5 for iid
    std::size_t window = 0;   // self-consistent summation window
    double stderr_mean = 0.0; // sqrt(2 tau var / N)
    std::size_t n = 0;
};

// Integrated autocorrelation time with the self-consistent window: the
// smallest W with W >= c * tau(W), tau(W) = 1/2 + sum_{t<=W} rho(t).
// A constant series reports tau = 1/2 and zero error.
AutocorrReport autocorrelation(const std::vector<double>& series, double c = 6.0);

// Mean and error of several independent estimates (replica reduction).
AutocorrReport combine_replicas(const std::vector<AutocorrReport>& reps);

} // namespace hardrods
