#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "lppl/models.hpp"
#include "lppl/timeseries.hpp"

namespace lppl {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

struct FitConfig {
    Interval m_bounds{0.1, 0.9};
    Interval omega_bounds{4.0, 15.0};
    double tc_horizon = 1.0;  // tc searched in (t_last, t_last + horizon], decimal years
    Interval delta_t_bounds{0.05, 10.0};   // Landau crossover timescale, years
    Interval delta_omega_bounds{-10.0, 10.0};
    int grid_tc = 20;
    int grid_m = 8;
    int grid_omega = 12;
    int grid_delta_t = 5;      // log-spaced
    int grid_delta_omega = 5;
    int harmonics = 3;         // Weierstrass truncation N
    int top_k = 10;
    int max_iter = 2000;       // local-refine objective evaluations
    double tol = 1e-9;         // objective improvement tolerance
    std::size_t min_points = 30;
};

// The 3 (simple/Weierstrass) or 5 (Landau) parameters searched nonlinearly;
// everything else is slaved by exact linear least squares.
struct NonlinearParams {
    ModelKind kind = ModelKind::simple;
    double tc = 0.0;
    double m = 0.5;
    double omega = 7.0;
    double delta_t = 1.0;
    double delta_omega = 0.0;
    int harmonics = 1;  // Weierstrass only
};

struct SlaveResult {
    ModelParams params;      // full parameter set with linear part filled in
    double rmse = 0.0;
    Eigen::VectorXd linear;  // raw (A, B, D1, D2, ...) least-squares solution
};

struct FitResult {
    ModelParams params;
    double rmse = 0.0;
    std::size_t n_points = 0;
    bool converged = false;
    bool qualified = false;
    std::vector<std::string> reasons;  // failed qualification checks
    bool b_negative = false;           // sign of B, recorded but not required
    TimeWindow window;
    Date origin;  // date of t = 0 on the fit axis

    // Fitted critical time on the calendar axis.
    double tc_calendar() const;
};

// Exact least-squares solution of the linear subproblem at fixed nonlinear
// parameters, using the expansion
//   C cos(w ln tau + phi) = D1 cos(w ln tau) + D2 sin(w ln tau).
// Back-map convention: C = hypot(D1, D2)/|B|, phi recovered so that
// B C cos phi = D1 and B C sin phi = -D2 with C >= 0.
SlaveResult slave_linear_params(const NonlinearParams& nl, const LogPriceSeries& data);

double objective_rmse(const ModelParams& params, const LogPriceSeries& data);

struct GridCandidate {
    NonlinearParams seed;
    double rmse = 0.0;
};

// Full-grid slaved evaluation; top-K candidates ascending by rmse,
// ties broken by grid iteration order.
std::vector<GridCandidate> grid_multistart(const LogPriceSeries& data,
                                           const FitConfig& config, ModelKind variant);

// Nelder-Mead descent on the nonlinear parameters, re-slaving the linear
// ones at every evaluation; iterate within bounds.
FitResult local_refine(const NonlinearParams& seed, const LogPriceSeries& data,
                       const FitConfig& config);

FitResult fit_window(const PriceSeries& data, const TimeWindow& window,
                     const FitConfig& config, ModelKind variant);

// Same pipeline on an already log-transformed window (bootstrap replicas).
FitResult fit_log_series(const LogPriceSeries& data, const FitConfig& config,
                         ModelKind variant, const TimeWindow& window);

// Bounds/shape checks on a converged fit; fills qualified + reasons in place.
void qualify_fit(FitResult& result, const FitConfig& config, double t_last_rel);

nlohmann::json fit_result_to_json(const FitResult& result);

}  // namespace lppl
