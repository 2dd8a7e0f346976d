// stats.cpp — Summary statistics, bootstrap, MLE fits, scaling regressions.

#include "pptmc/stats.hpp"

#include "pptmc/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pptmc::stats {

namespace {

double quantile_sorted(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) {
        throw std::invalid_argument("quantile: empty sample");
    }
    if (q <= 0.0) {
        return sorted.front();
    }
    if (q >= 1.0) {
        return sorted.back();
    }
    const double pos = q * (static_cast<double>(sorted.size()) - 1.0);
    const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    const double frac = pos - static_cast<double>(lo);
    if (lo + 1 >= sorted.size()) {
        return sorted.back();
    }
    return sorted[lo] * (1.0 - frac) + sorted[lo + 1] * frac;
}

double median_sorted(const std::vector<double>& sorted) {
    const std::size_t n = sorted.size();
    if (n % 2 == 1) {
        return sorted[n / 2];
    }
    return 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

}  // namespace

std::vector<double> uncensored_values(const scenarios::PpttSampleSet& set) {
    std::vector<double> values;
    values.reserve(set.samples.size());
    for (const auto& sample : set.samples) {
        if (!sample.censored) {
            values.push_back(sample.x_ppt);
        }
    }
    return values;
}

SummaryStats summarize_values(std::vector<double> values, int censored_count) {
    if (values.empty()) {
        throw std::invalid_argument("summarize: no uncensored samples");
    }
    std::sort(values.begin(), values.end());
    SummaryStats out;
    out.n = static_cast<int>(values.size());
    out.censored_count = censored_count;
    out.min = values.front();
    out.median = median_sorted(values);
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    out.mean = sum / out.n;
    if (out.n > 1) {
        double ss = 0.0;
        for (double v : values) {
            ss += (v - out.mean) * (v - out.mean);
        }
        out.stdev = std::sqrt(ss / (out.n - 1));
    }
    return out;
}

SummaryStats summarize(const scenarios::PpttSampleSet& set) {
    auto values = uncensored_values(set);
    const int censored = static_cast<int>(set.samples.size() - values.size());
    return summarize_values(std::move(values), censored);
}

double evaluate_statistic(Statistic stat, std::vector<double> values) {
    if (values.empty()) {
        throw std::invalid_argument("evaluate_statistic: empty sample");
    }
    const SummaryStats s = summarize_values(std::move(values));
    switch (stat) {
        case Statistic::Mean:
            return s.mean;
        case Statistic::Median:
            return s.median;
        case Statistic::Min:
            return s.min;
        case Statistic::Stdev:
            return s.stdev;
    }
    throw std::logic_error("evaluate_statistic: unreachable");
}

std::pair<double, double> bootstrap_ci(const std::vector<double>& values, Statistic stat,
                                       int n_resamples, double level, std::uint64_t seed) {
    if (values.empty()) {
        throw std::invalid_argument("bootstrap_ci: empty sample");
    }
    if (n_resamples < 100) {
        throw std::invalid_argument("bootstrap_ci: need at least 100 resamples");
    }
    if (!(level > 0.0 && level < 1.0)) {
        throw std::invalid_argument("bootstrap_ci: level must be in (0, 1)");
    }
    ensembles::RngStream rng(seed, 0);
    const std::size_t n = values.size();
    std::vector<double> resample(n);
    std::vector<double> estimates;
    estimates.reserve(n_resamples);
    for (int b = 0; b < n_resamples; ++b) {
        for (std::size_t i = 0; i < n; ++i) {
            resample[i] = values[rng.next_u64() % n];
        }
        estimates.push_back(evaluate_statistic(stat, resample));
    }
    std::sort(estimates.begin(), estimates.end());
    const double alpha = 1.0 - level;
    return {quantile_sorted(estimates, 0.5 * alpha), quantile_sorted(estimates, 1.0 - 0.5 * alpha)};
}

Ecdf::Ecdf(std::vector<double> values) : sorted_(std::move(values)) {
    if (sorted_.empty()) {
        throw std::invalid_argument("Ecdf: empty sample");
    }
    std::sort(sorted_.begin(), sorted_.end());
}

double Ecdf::operator()(double x) const {
    const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
    return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

std::vector<HistogramBin> histogram(const std::vector<double>& values, int bins) {
    if (values.empty()) {
        throw std::invalid_argument("histogram: empty sample");
    }
    if (bins < 1) {
        throw std::invalid_argument("histogram: need at least one bin");
    }
    const auto [min_it, max_it] = std::minmax_element(values.begin(), values.end());
    double lo = *min_it;
    double hi = *max_it;
    if (hi - lo < 1e-300) {
        hi = lo + 1.0;  // all-equal data: one unit-width bin
    }
    const double width = (hi - lo) / bins;
    std::vector<HistogramBin> out(bins);
    for (int b = 0; b < bins; ++b) {
        out[b].lo = lo + b * width;
        out[b].hi = lo + (b + 1) * width;
    }
    for (double v : values) {
        int b = static_cast<int>((v - lo) / width);
        b = std::clamp(b, 0, bins - 1);
        ++out[b].count;
    }
    const double total = static_cast<double>(values.size());
    for (auto& bin : out) {
        bin.density = static_cast<double>(bin.count) / (total * width);
    }
    return out;
}

double digamma(double x) {
    double result = 0.0;
    while (x < 12.0) {
        result -= 1.0 / x;
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    result += std::log(x) - 0.5 * inv -
              inv2 * (1.0 / 12.0 -
                      inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 - inv2 / 240.0)));
    return result;
}

double trigamma(double x) {
    double result = 0.0;
    while (x < 12.0) {
        result += 1.0 / (x * x);
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    result += inv * (1.0 + 0.5 * inv +
                     inv2 * (1.0 / 6.0 -
                             inv2 * (1.0 / 30.0 - inv2 * (1.0 / 42.0 - inv2 / 30.0))));
    return result;
}

double FitParams3PGamma::implied_stdev() const {
    return scale * std::sqrt(shape);
}

double FitParams3PLognormal::implied_mean() const {
    return threshold + std::exp(location + 0.5 * scale * scale);
}

double FitParams3PLognormal::implied_stdev() const {
    const double m = std::exp(location + 0.5 * scale * scale);
    return m * std::sqrt(std::exp(scale * scale) - 1.0);
}

namespace {

constexpr int kThresholdGridPoints = 200;
constexpr double kThresholdGap = 1e-4;

struct ThresholdGrid {
    double lo;
    double hi;
};

ThresholdGrid threshold_grid(const std::vector<double>& values) {
    const auto [min_it, max_it] = std::minmax_element(values.begin(), values.end());
    const double min = *min_it;
    const double range = *max_it - min;
    if (range < 1e-12) {
        throw std::invalid_argument("fit: degenerate sample (all values equal)");
    }
    ThresholdGrid grid;
    grid.hi = min - kThresholdGap;
    grid.lo = std::max(0.0, min - range);
    if (grid.hi <= grid.lo) {
        grid.lo = std::max(0.0, grid.hi - range);
    }
    if (grid.hi <= grid.lo) {
        throw std::invalid_argument("fit: threshold grid collapsed");
    }
    return grid;
}

// Gamma shape MLE at fixed threshold: solve ln β − ψ(β) = s by Newton.
double solve_gamma_shape(double s) {
    double beta = (3.0 - s + std::sqrt((s - 3.0) * (s - 3.0) + 24.0 * s)) / (12.0 * s);
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        beta = 0.5;
    }
    for (int iter = 0; iter < 50; ++iter) {
        const double f = std::log(beta) - digamma(beta) - s;
        const double fprime = 1.0 / beta - trigamma(beta);
        const double step = f / fprime;
        double next = beta - step;
        if (!(next > 0.0)) {
            next = beta / 2.0;
        }
        if (std::abs(next - beta) < 1e-12 * beta) {
            return next;
        }
        beta = next;
    }
    return beta;
}

}  // namespace

FitParams3PGamma fit_gamma3(const std::vector<double>& values) {
    if (values.size() < 50) {
        throw std::invalid_argument("fit_gamma3: need at least 50 uncensored values");
    }
    const ThresholdGrid grid = threshold_grid(values);
    const double n = static_cast<double>(values.size());

    FitParams3PGamma best;
    best.loglik = -std::numeric_limits<double>::infinity();
    for (int g = 0; g < kThresholdGridPoints; ++g) {
        const double mu =
            grid.lo + (grid.hi - grid.lo) * static_cast<double>(g) / (kThresholdGridPoints - 1);
        double sum = 0.0;
        double sum_log = 0.0;
        for (double v : values) {
            const double y = v - mu;
            sum += y;
            sum_log += std::log(y);
        }
        const double mean_y = sum / n;
        const double s = std::log(mean_y) - sum_log / n;
        if (!(s > 0.0) || !std::isfinite(s)) {
            continue;
        }
        const double beta = solve_gamma_shape(s);
        const double sigma = mean_y / beta;
        const double loglik = (beta - 1.0) * sum_log - n * beta - n * beta * std::log(sigma) -
                              n * std::lgamma(beta);
        if (loglik > best.loglik) {
            best.shape = beta;
            best.scale = sigma;
            best.threshold = mu;
            best.loglik = loglik;
        }
    }
    if (!std::isfinite(best.loglik)) {
        throw std::runtime_error("fit_gamma3: likelihood maximization failed");
    }
    return best;
}

FitParams3PLognormal fit_lognormal3(const std::vector<double>& values) {
    if (values.size() < 50) {
        throw std::invalid_argument("fit_lognormal3: need at least 50 uncensored values");
    }
    const ThresholdGrid grid = threshold_grid(values);
    const double n = static_cast<double>(values.size());

    FitParams3PLognormal best;
    best.loglik = -std::numeric_limits<double>::infinity();
    for (int g = 0; g < kThresholdGridPoints; ++g) {
        const double mu =
            grid.lo + (grid.hi - grid.lo) * static_cast<double>(g) / (kThresholdGridPoints - 1);
        double sum_z = 0.0;
        double sum_z2 = 0.0;
        for (double v : values) {
            const double z = std::log(v - mu);
            sum_z += z;
            sum_z2 += z * z;
        }
        const double nu = sum_z / n;
        const double var = sum_z2 / n - nu * nu;
        if (!(var > 0.0)) {
            continue;
        }
        const double sigma = std::sqrt(var);
        const double loglik = -sum_z - n * std::log(sigma) -
                              0.5 * n * std::log(2.0 * std::numbers::pi) - 0.5 * n;
        if (loglik > best.loglik) {
            best.location = nu;
            best.scale = sigma;
            best.threshold = mu;
            best.loglik = loglik;
        }
    }
    if (!std::isfinite(best.loglik)) {
        throw std::runtime_error("fit_lognormal3: likelihood maximization failed");
    }
    return best;
}

double fit_log_scaling(const std::vector<std::pair<int, double>>& points) {
    if (points.empty()) {
        throw std::invalid_argument("fit_log_scaling: no points");
    }
    double acc = 0.0;
    for (const auto& [dim, value] : points) {
        if (!(value > 0.0)) {
            throw std::invalid_argument("fit_log_scaling: values must be positive");
        }
        acc += value - std::log2(static_cast<double>(dim));
    }
    return std::exp2(acc / static_cast<double>(points.size()));
}

double fit_inverse_scaling(const std::vector<std::pair<int, double>>& points) {
    if (points.empty()) {
        throw std::invalid_argument("fit_inverse_scaling: no points");
    }
    double num = 0.0;
    double den = 0.0;
    for (const auto& [dim, value] : points) {
        const double inv = 1.0 / static_cast<double>(dim);
        num += value * inv;
        den += inv * inv;
    }
    return num / den;
}

double ks_distance(const Ecdf& a, const Ecdf& b) {
    double sup = 0.0;
    for (double x : a.sorted()) {
        sup = std::max(sup, std::abs(a(x) - b(x)));
    }
    for (double x : b.sorted()) {
        sup = std::max(sup, std::abs(a(x) - b(x)));
    }
    return sup;
}

}  // namespace pptmc::stats
