#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace fpp {

struct Summary {
    double mean = 0.0;
    double sd = 0.0;     // sample standard deviation (n - 1)
    double std_error = 0.0; // sd / sqrt(n)
    int count = 0;

    double ci_low() const { return mean - 1.96 * std_error; }
    double ci_high() const { return mean + 1.96 * std_error; }
};

/// Summation in index order, so the result is independent of scheduling.
inline Summary summarize(std::span<const double> xs)
{
    Summary s;
    s.count = static_cast<int>(xs.size());
    if (xs.empty()) return s;
    double sum = 0.0;
    for (double x : xs) sum += x;
    s.mean = sum / static_cast<double>(xs.size());
    if (xs.size() < 2) return s;
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    s.std_error = s.sd / std::sqrt(static_cast<double>(xs.size()));
    return s;
}

inline bool intervals_overlap(const Summary& a, const Summary& b)
{
    return a.ci_low() <= b.ci_high() && b.ci_low() <= a.ci_high();
}

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    int points = 0;
};

/// Ordinary least squares y = intercept + slope * x.
inline LinearFit linear_fit(std::span<const double> xs, std::span<const double> ys)
{
    LinearFit f;
    f.points = static_cast<int>(xs.size());
    if (xs.size() < 2) return f;
    const double n = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (sxx == 0.0) return f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    return f;
}

/// Fit of log(frequency) against the parameter, over the strictly positive frequencies.
inline LinearFit log_linear_fit(std::span<const double> params, std::span<const double> freqs)
{
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (freqs[i] > 0.0) {
            xs.push_back(params[i]);
            ys.push_back(std::log(freqs[i]));
        }
    }
    return linear_fit(xs, ys);
}

} // namespace fpp
