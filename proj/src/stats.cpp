#include "hardrods/stats.hpp"

#include <cmath>

namespace hardrods {

AutocorrReport autocorrelation(const std::vector<double>& series, double c) {
    AutocorrReport r;
    r.n = series.size();
    if (r.n == 0) return r;
    double sum = 0;
    for (double x : series) sum += x;
    r.mean = sum / double(r.n);
    double c0 = 0;
    for (double x : series) c0 += (x - r.mean) * (x - r.mean);
    c0 /= double(r.n);
    r.var = c0;
    if (c0 <= 0 || r.n < 2) { // constant series: no fluctuations to correlate
        r.tau_int = 0.5;
        r.stderr_mean = 0;
        return r;
    }
    double tau = 0.5;
    std::size_t w = 0;
    // lagged covariances keep the 1/(N-t) normalization so short series stay unbiased
    for (std::size_t t = 1; t < r.n; ++t) {
        double ct = 0;
        for (std::size_t i = 0; i + t < r.n; ++i)
            ct += (series[i] - r.mean) * (series[i + t] - r.mean);
        ct /= double(r.n - t);
        tau += ct / c0;
        w = t;
        if (double(t) >= c * tau) break;
    }
    if (tau < 0.5) tau = 0.5; // anticorrelation cannot beat the iid floor for the error bar
    r.tau_int = tau;
    r.window = w;
    r.stderr_mean = std::sqrt(2.0 * tau * c0 / double(r.n));
    return r;
}

AutocorrReport combine_replicas(const std::vector<AutocorrReport>& reps) {
    AutocorrReport out;
    if (reps.empty()) return out;
    double mean = 0, err2 = 0, tau = 0, var = 0;
    std::size_t n = 0, w = 0;
    for (const auto& r : reps) {
        mean += r.mean;
        err2 += r.stderr_mean * r.stderr_mean;
        tau = std::max(tau, r.tau_int);
        var = std::max(var, r.var);
        n += r.n;
        w = std::max(w, r.window);
    }
    double m = double(reps.size());
    out.mean = mean / m;
    out.stderr_mean = std::sqrt(err2) / m;
    out.tau_int = tau;
    out.var = var;
    out.n = n;
    out.window = w;
    return out;
}

} // namespace hardrods
