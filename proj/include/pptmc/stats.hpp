// stats.hpp — Empirical distribution machinery: summaries with bootstrap CIs,
// ECDF/histograms, 3-parameter Gamma/Lognormal maximum-likelihood fits, and
// the scaling-law regressions.

#pragma once

#include "pptmc/scenarios.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace pptmc::stats {

struct SummaryStats {
    double mean{0.0};
    double median{0.0};
    double min{0.0};
    double stdev{0.0};  // sample convention (n−1)
    int n{0};
    int censored_count{0};
};

// Censored samples are excluded with a recorded count; throws if none remain.
SummaryStats summarize(const scenarios::PpttSampleSet& set);
SummaryStats summarize_values(std::vector<double> values, int censored_count = 0);

std::vector<double> uncensored_values(const scenarios::PpttSampleSet& set);

enum class Statistic { Mean, Median, Min, Stdev };
double evaluate_statistic(Statistic stat, std::vector<double> values);

// Nonparametric percentile bootstrap (B resamples, linear-interpolation quantiles).
std::pair<double, double> bootstrap_ci(const std::vector<double>& values, Statistic stat,
                                       int n_resamples, double level,
                                       std::uint64_t seed = 0x9d5eed);

// Right-continuous empirical CDF.
class Ecdf {
public:
    explicit Ecdf(std::vector<double> values);
    double operator()(double x) const;
    const std::vector<double>& sorted() const { return sorted_; }

private:
    std::vector<double> sorted_;
};

struct HistogramBin {
    double lo{0.0};
    double hi{0.0};
    long count{0};
    double density{0.0};  // normalized so Σ density·width = 1
};
std::vector<HistogramBin> histogram(const std::vector<double>& values, int bins);

// f(x) = (x−μ)^{β−1} e^{−(x−μ)/σ} / (σ^β Γ(β)) for x > μ.
struct FitParams3PGamma {
    double shape{0.0};      // β
    double scale{0.0};      // σ
    double threshold{0.0};  // μ
    double loglik{0.0};
    double implied_mean() const { return threshold + shape * scale; }
    double implied_stdev() const;
};

// f(x) = exp(−(ln(x−μ) − ν)²/(2σ²)) / ((x−μ) σ √(2π)) for x > μ.
struct FitParams3PLognormal {
    double location{0.0};   // ν
    double scale{0.0};      // σ
    double threshold{0.0};  // μ
    double loglik{0.0};
    double implied_mean() const;
    double implied_stdev() const;
};

// Maximum likelihood with the threshold profiled on a 200-point grid capped at
// min(sample) − 1e-4; remaining parameters solved in closed form / 1-D Newton
// at each grid point. Requires ≥ 50 values.
FitParams3PGamma fit_gamma3(const std::vector<double>& values);
FitParams3PLognormal fit_lognormal3(const std::vector<double>& values);

// Least squares for value_D ≈ log₂(θ·D):  θ = 2^{mean(value_D − log₂D)}.
double fit_log_scaling(const std::vector<std::pair<int, double>>& points);
// Least squares for value_D ≈ θ/D:  θ = Σ(value_D/D) / Σ(1/D²).
double fit_inverse_scaling(const std::vector<std::pair<int, double>>& points);

// sup_x |F_a(x) − F_b(x)|
double ks_distance(const Ecdf& a, const Ecdf& b);

double digamma(double x);
double trigamma(double x);

}  // namespace pptmc::stats
