#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "lppl/significance.hpp"
#include "lppl/timeseries.hpp"

namespace lppl::testing {

inline std::vector<Date> daily_dates(Date start, int n) {
    std::vector<Date> dates;
    dates.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) dates.push_back(start + i);
    return dates;
}

// Bubble fixture: 2 years of daily data ending ~0.1y before tc, parameters
// in the middle of the default qualification bounds.
inline SimpleLpplParams bubble_truth() {
    SimpleLpplParams p;
    p.tc = 2.1;  // relative to the first date of the 2-year window
    p.m = 0.5;
    p.omega = 7.0;
    p.phi = 1.0;
    p.A = 5.0;
    p.B = -1.0;
    p.C = 0.05;
    return p;
}

inline PriceSeries bubble_series(double sigma, std::uint64_t seed, int n_days = 731,
                                 Date start = Date(2006, 6, 1)) {
    NoiseSpec noise;
    noise.kind = NoiseKind::iid_normal;
    noise.sigma = sigma;
    return synth_generate(ModelParams{bubble_truth()}, daily_dates(start, n_days), noise,
                          seed, "synthetic bubble");
}

// Geometric random walk control with a mild drift.
inline PriceSeries random_walk_series(double sigma, std::uint64_t seed, int n_days = 731,
                                      Date start = Date(2006, 6, 1)) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, sigma);
    std::vector<PricePoint> points;
    double log_price = std::log(60.0);
    for (int i = 0; i < n_days; ++i) {
        points.push_back({start + i, std::exp(log_price)});
        log_price += 0.0003 + gauss(rng);
    }
    return PriceSeries(std::move(points), "grw control");
}

}  // namespace lppl::testing
