#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <vector>

#include "lppl/calibrate.hpp"
#include "lppl/timeseries.hpp"

namespace lppl {

struct BootstrapConfig {
    std::size_t block_len = 21;   // observations, roughly one trading month
    std::size_t n_replicas = 200;
    std::uint64_t seed = 0;
    unsigned workers = 1;         // replica i always draws from seed + i
};

// Circular block bootstrap: blocks of block_len drawn with replacement from
// random start offsets (wrapping), concatenated and truncated to the
// original length.
Eigen::VectorXd block_resample_residuals(const Eigen::VectorXd& residuals,
                                         const BootstrapConfig& config);

struct TcDistribution {
    std::vector<double> tc;       // calendar decimal years, qualified replicas only
    std::size_t n_unqualified = 0;
    double q05 = 0.0, q50 = 0.0, q95 = 0.0;
};

// Surrogate series = fitted model + block-resampled residuals, refit per
// replica with the standard fit machinery.
TcDistribution bootstrap_tc_distribution(const FitResult& fit, const LogPriceSeries& data,
                                         const BootstrapConfig& config,
                                         const FitConfig& fitcfg);

struct FrequencyGrid {
    double omega_min = 2.0;
    double omega_max = 20.0;
    double step = 0.05;

    std::vector<double> values() const;
};

struct LombSpectrum {
    std::vector<double> freqs;
    std::vector<double> power;  // normalized by total variance
    double peak_omega = 0.0;
    double peak_power = 0.0;
    bool degenerate = false;    // zero-variance input, all-zero spectrum
};

// Normalized periodogram for unevenly sampled (x, y).
LombSpectrum lomb_periodogram(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                              const FrequencyGrid& grid);

// False-alarm probability of a peak of the given power under the
// independent-frequencies approximation with m frequencies.
double lomb_false_alarm(double peak_power, std::size_t m);

enum class TestStatus { passed, failed, undefined };

struct LogPeriodicityResult {
    TestStatus status = TestStatus::undefined;
    double peak_omega = 0.0;
    double p_value = 1.0;
    double power_law_tc = 0.0;  // tc of the pure power-law refit, fit axis
    double power_law_m = 0.0;
};

// Refits a pure power law A + B tau^m on the window with tc pinned to the
// full fit's value, runs the Lomb periodogram of its residuals against
// x = ln(tc - t), and tests the peak against the fitted omega. Passes when
// p < 0.01 and |peak - omega| <= 2.
LogPeriodicityResult logperiodicity_test(const FitResult& fit, const LogPriceSeries& data,
                                         const FrequencyGrid& grid, const FitConfig& fitcfg);

enum class NoiseKind { iid_normal, ar1 };

struct NoiseSpec {
    NoiseKind kind = NoiseKind::iid_normal;
    double sigma = 0.0;
    double rho = 0.0;  // AR(1) lag-1 coefficient; sigma is the marginal std
};

// price(t) = exp(model(t) + noise); deterministic for a fixed seed.
PriceSeries synth_generate(const ModelParams& params, const std::vector<Date>& dates,
                           const NoiseSpec& noise, std::uint64_t seed,
                           const std::string& label = "synthetic");

}  // namespace lppl
