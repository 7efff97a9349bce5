#include "lppl/significance.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>

#include "lppl/errors.hpp"
#include "lppl/optim.hpp"

namespace lppl {

Eigen::VectorXd block_resample_residuals(const Eigen::VectorXd& residuals,
                                         const BootstrapConfig& config) {
    const auto n = static_cast<std::size_t>(residuals.size());
    if (config.block_len < 1 || n < config.block_len) {
        throw InputError("block_resample_residuals: need length >= block_len >= 1");
    }
    std::mt19937_64 rng(config.seed);
    std::uniform_int_distribution<std::size_t> start_dist(0, n - 1);
    Eigen::VectorXd out(residuals.size());
    std::size_t filled = 0;
    while (filled < n) {
        const std::size_t start = start_dist(rng);
        for (std::size_t k = 0; k < config.block_len && filled < n; ++k, ++filled) {
            out[static_cast<Eigen::Index>(filled)] =
                residuals[static_cast<Eigen::Index>((start + k) % n)];
        }
    }
    return out;
}

namespace {

double quantile_sorted(const std::vector<double>& sorted, double q) {
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

}  // namespace

TcDistribution bootstrap_tc_distribution(const FitResult& fit, const LogPriceSeries& data,
                                         const BootstrapConfig& config,
                                         const FitConfig& fitcfg) {
    if (!fit.converged) {
        throw InputError("bootstrap_tc_distribution requires a converged fit");
    }
    Eigen::VectorXd model_curve(data.t.size());
    for (Eigen::Index i = 0; i < data.t.size(); ++i) {
        model_curve[i] = eval_model(fit.params, data.t[i]);
    }
    const Eigen::VectorXd base_residuals = data.y - model_curve;

    std::vector<std::optional<double>> replica_tc(config.n_replicas);
    auto run_replica = [&](std::size_t i) {
        BootstrapConfig replica_cfg = config;
        replica_cfg.seed = config.seed + i;
        LogPriceSeries surrogate;
        surrogate.t = data.t;
        surrogate.origin = data.origin;
        surrogate.y = model_curve + block_resample_residuals(base_residuals, replica_cfg);
        try {
            const FitResult r =
                fit_log_series(surrogate, fitcfg, kind_of(fit.params), fit.window);
            if (r.qualified) replica_tc[i] = r.tc_calendar();
        } catch (const NoCandidateError&) {
            // counted as unqualified
        }
    };

    const unsigned workers = std::max(1u, config.workers);
    if (workers == 1) {
        for (std::size_t i = 0; i < config.n_replicas; ++i) run_replica(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < config.n_replicas;
                     i = next.fetch_add(1)) {
                    run_replica(i);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    TcDistribution out;
    for (const auto& tc : replica_tc) {
        if (tc) {
            out.tc.push_back(*tc);
        } else {
            ++out.n_unqualified;
        }
    }
    if (out.tc.empty()) {
        throw SignificanceUndefinedError("all bootstrap replicas were unqualified");
    }
    std::sort(out.tc.begin(), out.tc.end());
    out.q05 = quantile_sorted(out.tc, 0.05);
    out.q50 = quantile_sorted(out.tc, 0.50);
    out.q95 = quantile_sorted(out.tc, 0.95);
    return out;
}

std::vector<double> FrequencyGrid::values() const {
    std::vector<double> v;
    for (double w = omega_min; w <= omega_max + 1e-12; w += step) v.push_back(w);
    return v;
}

LombSpectrum lomb_periodogram(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                              const FrequencyGrid& grid) {
    if (x.size() < 4) {
        throw InputError("lomb_periodogram: need at least 4 samples");
    }
    for (Eigen::Index i = 1; i < x.size(); ++i) {
        for (Eigen::Index j = 0; j < i; ++j) {
            if (x[i] == x[j]) throw InputError("lomb_periodogram: duplicate x values");
        }
    }
    LombSpectrum spec;
    spec.freqs = grid.values();
    spec.power.assign(spec.freqs.size(), 0.0);

    const auto n = static_cast<double>(y.size());
    const double mean = y.mean();
    const Eigen::VectorXd yc = y.array() - mean;
    const double variance = yc.squaredNorm() / (n - 1.0);
    if (variance < 1e-30) {
        spec.degenerate = true;
        spec.peak_omega = spec.freqs.front();
        spec.peak_power = 0.0;
        return spec;
    }

    for (std::size_t k = 0; k < spec.freqs.size(); ++k) {
        const double w = spec.freqs[k];
        double s2 = 0.0, c2 = 0.0;
        for (Eigen::Index i = 0; i < x.size(); ++i) {
            s2 += std::sin(2.0 * w * x[i]);
            c2 += std::cos(2.0 * w * x[i]);
        }
        const double tau = std::atan2(s2, c2) / (2.0 * w);
        double sc = 0.0, ss = 0.0, cc = 0.0, ssq = 0.0;
        for (Eigen::Index i = 0; i < x.size(); ++i) {
            const double arg = w * (x[i] - tau);
            const double cosv = std::cos(arg);
            const double sinv = std::sin(arg);
            sc += yc[i] * cosv;
            ss += yc[i] * sinv;
            cc += cosv * cosv;
            ssq += sinv * sinv;
        }
        spec.power[k] = (sc * sc / cc + ss * ss / ssq) / (2.0 * variance);
    }
    const auto peak =
        static_cast<std::size_t>(std::max_element(spec.power.begin(), spec.power.end()) -
                                 spec.power.begin());
    spec.peak_omega = spec.freqs[peak];
    spec.peak_power = spec.power[peak];
    return spec;
}

double lomb_false_alarm(double peak_power, std::size_t m) {
    // classical independent-frequencies approximation
    const double prob_single = std::exp(-peak_power);
    const double md = static_cast<double>(m);
    if (prob_single * md < 1e-4) {
        return prob_single * md;  // avoid cancellation for strong peaks
    }
    return 1.0 - std::pow(1.0 - prob_single, md);
}

namespace {

// Exact linear solve of A + B tau^m at fixed (tc, m).
struct PowerLawFit {
    double tc = 0.0, m = 0.0, A = 0.0, B = 0.0;
    double rmse = 0.0;
};

PowerLawFit slave_power_law(double tc, double m, const LogPriceSeries& data) {
    Eigen::MatrixXd X(data.t.size(), 2);
    for (Eigen::Index i = 0; i < data.t.size(); ++i) {
        X(i, 0) = 1.0;
        X(i, 1) = std::pow(tc - data.t[i], m);
    }
    const Eigen::Vector2d beta =
        X.colPivHouseholderQr().solve(data.y);
    PowerLawFit fit{tc, m, beta[0], beta[1], 0.0};
    fit.rmse = std::sqrt((data.y - X * beta).squaredNorm() /
                         static_cast<double>(data.y.size()));
    return fit;
}

// Pure power-law refit at the tc of the full fit, so the ln(tc - t) axis of
// the periodogram matches the fitted frequency.
PowerLawFit fit_power_law(const LogPriceSeries& data, const FitConfig& cfg, double tc) {
    PowerLawFit best;
    best.rmse = std::numeric_limits<double>::infinity();
    for (int j = 0; j < cfg.grid_m; ++j) {
        const double m =
            cfg.m_bounds.lo +
            (cfg.m_bounds.hi - cfg.m_bounds.lo) * j / std::max(1, cfg.grid_m - 1);
        const PowerLawFit fit = slave_power_law(tc, m, data);
        if (fit.rmse < best.rmse) best = fit;
    }
    BoxBounds box;
    box.lo.resize(1);
    box.hi.resize(1);
    box.lo << cfg.m_bounds.lo;
    box.hi << cfg.m_bounds.hi;
    Eigen::VectorXd x0(1);
    x0 << best.m;
    const SimplexResult opt = nelder_mead(
        [&](const Eigen::VectorXd& x) { return slave_power_law(tc, x[0], data).rmse; },
        x0, box, cfg.max_iter, cfg.tol);
    return slave_power_law(tc, opt.x[0], data);
}

}  // namespace

LogPeriodicityResult logperiodicity_test(const FitResult& fit, const LogPriceSeries& data,
                                         const FrequencyGrid& grid,
                                         const FitConfig& fitcfg) {
    if (!fit.converged) {
        throw InputError("logperiodicity_test requires a converged fit");
    }
    const PowerLawFit pl = fit_power_law(data, fitcfg, critical_time(fit.params));
    LogPeriodicityResult out;
    out.power_law_tc = pl.tc;
    out.power_law_m = pl.m;
    if (std::abs(pl.B) < 1e-12) {
        out.status = TestStatus::undefined;
        return out;
    }
    // Detrended residual: remove the power law, divide by its envelope
    // B tau^m so a genuine log-periodic component becomes a clean cosine in
    // x = ln(tau), then first-difference. Differencing keeps the cosine
    // frequency but whitens integrated (random-walk-like) noise, which is
    // what makes the exponential false-alarm calibration honest: without it
    // any smooth control series produces an arbitrarily significant peak.
    const Eigen::Index n = data.t.size();
    Eigen::VectorXd x(n), r(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double tau = pl.tc - data.t[i];
        const double envelope = pl.B * std::pow(tau, pl.m);
        x[i] = std::log(tau);
        r[i] = (data.y[i] - (pl.A + envelope)) / envelope;
    }
    Eigen::VectorXd xd(n - 1), rd(n - 1);
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        xd[i] = 0.5 * (x[i] + x[i + 1]);
        rd[i] = r[i + 1] - r[i];
    }
    const LombSpectrum spec = lomb_periodogram(xd, rd, grid);
    if (spec.degenerate) {
        out.status = TestStatus::undefined;
        return out;
    }
    out.peak_omega = spec.peak_omega;
    out.p_value = lomb_false_alarm(spec.peak_power, spec.freqs.size());
    const double fitted_omega =
        std::visit([](const auto& p) { return p.omega; }, fit.params);
    out.status = (out.p_value < 0.01 && std::abs(out.peak_omega - fitted_omega) <= 2.0)
                     ? TestStatus::passed
                     : TestStatus::failed;
    return out;
}

PriceSeries synth_generate(const ModelParams& params, const std::vector<Date>& dates,
                           const NoiseSpec& noise, std::uint64_t seed,
                           const std::string& label) {
    if (dates.empty()) {
        throw InputError("synth_generate: need at least one date");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<PricePoint> points;
    points.reserve(dates.size());
    double prev_eps = 0.0;
    for (std::size_t i = 0; i < dates.size(); ++i) {
        const double t = static_cast<double>(dates[i] - dates.front()) / 365.25;
        const double y = eval_model(params, t);  // throws at t >= tc
        double eps = 0.0;
        if (noise.sigma > 0.0) {
            if (noise.kind == NoiseKind::iid_normal) {
                eps = noise.sigma * gauss(rng);
            } else {
                // stationary AR(1) with marginal std sigma
                eps = i == 0 ? noise.sigma * gauss(rng)
                             : noise.rho * prev_eps +
                                   noise.sigma * std::sqrt(1.0 - noise.rho * noise.rho) *
                                       gauss(rng);
                prev_eps = eps;
            }
        }
        points.push_back({dates[i], std::exp(y + eps)});
    }
    return PriceSeries(std::move(points), label);
}

}  // namespace lppl
