#include "lppl/calibrate.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "lppl/errors.hpp"
#include "lppl/optim.hpp"

namespace lppl {

namespace {

constexpr double kCondLimit = 1e12;
constexpr double kTcFloor = 1e-4;  // years between t_last and the closest allowed tc

int nonlinear_dim(ModelKind kind) {
    return kind == ModelKind::landau ? 5 : 3;
}

// Design matrix of the linear subproblem: [1, f, f cos(theta_n), f sin(theta_n)...]
Eigen::MatrixXd design_matrix(const NonlinearParams& nl, const Eigen::VectorXd& t) {
    const Eigen::Index n = t.size();
    const int n_osc = nl.kind == ModelKind::weierstrass ? nl.harmonics : 1;
    Eigen::MatrixXd X(n, 2 + 2 * n_osc);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!(t[i] < nl.tc)) {
            throw std::domain_error("slave_linear_params: data point at t >= tc");
        }
        const double tau = nl.tc - t[i];
        const double log_tau = std::log(tau);
        double f = std::pow(tau, nl.m);
        double theta0 = nl.omega * log_tau;
        if (nl.kind == ModelKind::landau) {
            const double ratio_pow = std::pow(tau / nl.delta_t, 2.0 * nl.m);
            f /= std::sqrt(1.0 + ratio_pow);
            theta0 += (nl.delta_omega / (2.0 * nl.m)) * std::log1p(ratio_pow);
        }
        X(i, 0) = 1.0;
        X(i, 1) = f;
        for (int h = 0; h < n_osc; ++h) {
            const double theta = nl.kind == ModelKind::weierstrass
                                     ? static_cast<double>(h + 1) * nl.omega * log_tau
                                     : theta0;
            X(i, 2 + 2 * h) = f * std::cos(theta);
            X(i, 3 + 2 * h) = f * std::sin(theta);
        }
    }
    return X;
}

// (D1, D2) -> amplitude/phase with D1 = a cos(phi), D2 = -a sin(phi), a >= 0.
std::pair<double, double> amp_phase(double d1, double d2) {
    const double a = std::hypot(d1, d2);
    if (a < 1e-300) return {0.0, 0.0};
    return {a, std::atan2(-d2, d1)};
}

ModelParams assemble_params(const NonlinearParams& nl, const Eigen::VectorXd& beta) {
    const double A = beta[0];
    const double B = beta[1];
    switch (nl.kind) {
        case ModelKind::weierstrass: {
            WeierstrassParams p;
            p.tc = nl.tc;
            p.m = nl.m;
            p.omega = nl.omega;
            p.A = A;
            p.B = B;
            for (int h = 0; h < nl.harmonics; ++h) {
                p.harmonics.push_back(amp_phase(beta[2 + 2 * h], beta[3 + 2 * h]));
            }
            return p;
        }
        case ModelKind::simple:
        case ModelKind::landau: {
            const auto [amp, raw_phi] = amp_phase(beta[2], beta[3]);
            double C = 0.0, phi = 0.0;
            if (std::abs(B) > 1e-300 && amp > 0.0) {
                // model carries B*C, so fold the sign of B into the phase
                C = amp / std::abs(B);
                const double s = B >= 0.0 ? 1.0 : -1.0;
                phi = std::atan2(-s * beta[3], s * beta[2]);
            }
            if (nl.kind == ModelKind::simple) {
                return SimpleLpplParams{nl.tc, nl.m, nl.omega, phi, A, B, C};
            }
            LandauParams p;
            p.tc = nl.tc;
            p.m = nl.m;
            p.omega = nl.omega;
            p.phi = phi;
            p.A = A;
            p.B = B;
            p.C = C;
            p.delta_t = nl.delta_t;
            p.delta_omega = nl.delta_omega;
            return p;
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace

SlaveResult slave_linear_params(const NonlinearParams& nl, const LogPriceSeries& data) {
    const Eigen::MatrixXd X = design_matrix(nl, data.t);
    if (X.rows() < X.cols()) {
        throw DegenerateDesignError("underdetermined: " + std::to_string(X.rows()) +
                                    " points for " + std::to_string(X.cols()) +
                                    " linear parameters");
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(X, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    if (sv[sv.size() - 1] <= 0.0 || sv[0] / sv[sv.size() - 1] > kCondLimit) {
        throw DegenerateDesignError("ill-conditioned design (cond > 1e12)");
    }
    SlaveResult out;
    out.linear = svd.solve(data.y);
    out.rmse = std::sqrt((data.y - X * out.linear).squaredNorm() /
                         static_cast<double>(data.y.size()));
    out.params = assemble_params(nl, out.linear);
    return out;
}

double objective_rmse(const ModelParams& params, const LogPriceSeries& data) {
    const Eigen::VectorXd r = residuals(params, data.t, data.y);
    return std::sqrt(r.squaredNorm() / static_cast<double>(r.size()));
}

namespace {

BoxBounds nonlinear_box(const FitConfig& config, ModelKind kind, double t_last_rel) {
    const int d = nonlinear_dim(kind);
    BoxBounds box;
    box.lo.resize(d);
    box.hi.resize(d);
    box.lo[0] = t_last_rel + kTcFloor;
    box.hi[0] = t_last_rel + config.tc_horizon;
    box.lo[1] = config.m_bounds.lo;
    box.hi[1] = config.m_bounds.hi;
    box.lo[2] = config.omega_bounds.lo;
    box.hi[2] = config.omega_bounds.hi;
    if (kind == ModelKind::landau) {
        box.lo[3] = config.delta_t_bounds.lo;
        box.hi[3] = config.delta_t_bounds.hi;
        box.lo[4] = config.delta_omega_bounds.lo;
        box.hi[4] = config.delta_omega_bounds.hi;
    }
    return box;
}

NonlinearParams vec_to_params(ModelKind kind, const Eigen::VectorXd& x,
                              const FitConfig& config) {
    NonlinearParams nl;
    nl.kind = kind;
    nl.tc = x[0];
    nl.m = x[1];
    nl.omega = x[2];
    nl.harmonics = kind == ModelKind::weierstrass ? config.harmonics : 1;
    if (kind == ModelKind::landau) {
        nl.delta_t = x[3];
        nl.delta_omega = x[4];
    }
    return nl;
}

Eigen::VectorXd params_to_vec(const NonlinearParams& nl) {
    Eigen::VectorXd x(nonlinear_dim(nl.kind));
    x[0] = nl.tc;
    x[1] = nl.m;
    x[2] = nl.omega;
    if (nl.kind == ModelKind::landau) {
        x[3] = nl.delta_t;
        x[4] = nl.delta_omega;
    }
    return x;
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    if (n == 1) {
        v[0] = 0.5 * (lo + hi);
        return v;
    }
    for (int i = 0; i < n; ++i) {
        v[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    }
    return v;
}

}  // namespace

std::vector<GridCandidate> grid_multistart(const LogPriceSeries& data,
                                           const FitConfig& config, ModelKind variant) {
    if (static_cast<std::size_t>(data.t.size()) < config.min_points) {
        throw InsufficientDataError("grid_multistart: window below min_points");
    }
    const double t_last_rel = data.t[data.t.size() - 1];
    // tc grid stays off the t_last edge where tau -> 0
    const auto tc_grid = linspace(t_last_rel + config.tc_horizon / config.grid_tc,
                                  t_last_rel + config.tc_horizon, config.grid_tc);
    const auto m_grid = linspace(config.m_bounds.lo, config.m_bounds.hi, config.grid_m);
    const auto omega_grid =
        linspace(config.omega_bounds.lo, config.omega_bounds.hi, config.grid_omega);
    std::vector<double> dt_grid{1.0}, dw_grid{0.0};
    if (variant == ModelKind::landau) {
        const auto log_dt = linspace(std::log(config.delta_t_bounds.lo),
                                     std::log(config.delta_t_bounds.hi), config.grid_delta_t);
        dt_grid.clear();
        for (double v : log_dt) dt_grid.push_back(std::exp(v));
        dw_grid = linspace(config.delta_omega_bounds.lo, config.delta_omega_bounds.hi,
                           config.grid_delta_omega);
    }

    std::vector<GridCandidate> cells;
    for (double tc : tc_grid) {
        for (double m : m_grid) {
            for (double omega : omega_grid) {
                for (double dt : dt_grid) {
                    for (double dw : dw_grid) {
                        NonlinearParams nl;
                        nl.kind = variant;
                        nl.tc = tc;
                        nl.m = m;
                        nl.omega = omega;
                        nl.delta_t = dt;
                        nl.delta_omega = dw;
                        nl.harmonics =
                            variant == ModelKind::weierstrass ? config.harmonics : 1;
                        try {
                            cells.push_back({nl, slave_linear_params(nl, data).rmse});
                        } catch (const DegenerateDesignError&) {
                            // skip degenerate cell
                        }
                    }
                }
            }
        }
    }
    if (cells.empty()) {
        throw NoCandidateError("every grid cell produced a degenerate linear system");
    }
    // stable sort keeps grid iteration order on rmse ties
    std::stable_sort(cells.begin(), cells.end(),
                     [](const GridCandidate& a, const GridCandidate& b) {
                         return a.rmse < b.rmse;
                     });
    const auto k = std::min<std::size_t>(cells.size(), static_cast<std::size_t>(config.top_k));
    cells.resize(k);
    return cells;
}

FitResult local_refine(const NonlinearParams& seed, const LogPriceSeries& data,
                       const FitConfig& config) {
    const double t_last_rel = data.t[data.t.size() - 1];
    const BoxBounds box = nonlinear_box(config, seed.kind, t_last_rel);

    auto objective = [&](const Eigen::VectorXd& x) -> double {
        try {
            return slave_linear_params(vec_to_params(seed.kind, x, config), data).rmse;
        } catch (const DegenerateDesignError&) {
            return std::numeric_limits<double>::infinity();
        }
    };

    const SimplexResult opt =
        nelder_mead(objective, params_to_vec(seed), box, config.max_iter, config.tol);

    const NonlinearParams nl = vec_to_params(seed.kind, opt.x, config);
    const SlaveResult slaved = slave_linear_params(nl, data);
    FitResult result;
    result.params = slaved.params;
    result.rmse = slaved.rmse;
    result.n_points = static_cast<std::size_t>(data.t.size());
    result.converged = opt.converged;
    result.origin = data.origin;
    return result;
}

namespace {

struct Shape {
    double tc, m, omega, B;
    double c_rel;  // oscillation amplitude relative to |B|
};

Shape shape_of(const ModelParams& params) {
    Shape s{};
    std::visit(
        [&s](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            s.tc = p.tc;
            s.m = p.m;
            s.omega = p.omega;
            s.B = p.B;
            if constexpr (std::is_same_v<T, WeierstrassParams>) {
                double cmax = 0.0;
                for (const auto& [c, phi] : p.harmonics) cmax = std::max(cmax, c);
                s.c_rel = std::abs(p.B) > 1e-300
                              ? cmax / std::abs(p.B)
                              : (cmax > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
            } else {
                s.c_rel = std::abs(p.C);
            }
        },
        params);
    return s;
}

}  // namespace

void qualify_fit(FitResult& result, const FitConfig& config, double t_last_rel) {
    result.reasons.clear();
    result.qualified = false;
    const Shape s = shape_of(result.params);
    result.b_negative = s.B < 0.0;
    if (!result.converged) {
        result.reasons.push_back("not converged");
    }
    // A parameter pinned at its search clamp means the optimum lies outside
    // the admissible region; treated as out of bounds.
    const double m_edge = 1e-6 * (config.m_bounds.hi - config.m_bounds.lo);
    if (s.m < config.m_bounds.lo + m_edge || s.m > config.m_bounds.hi - m_edge) {
        result.reasons.push_back("m out of bounds");
    }
    const double w_edge = 1e-6 * (config.omega_bounds.hi - config.omega_bounds.lo);
    if (s.omega < config.omega_bounds.lo + w_edge ||
        s.omega > config.omega_bounds.hi - w_edge) {
        result.reasons.push_back("omega out of bounds");
    }
    if (!(s.tc > t_last_rel)) {
        result.reasons.push_back("tc not after window end");
    } else if (s.tc > t_last_rel + config.tc_horizon) {
        result.reasons.push_back("tc too far");
    } else if (s.tc > t_last_rel + config.tc_horizon * (1.0 - 1e-6)) {
        result.reasons.push_back("tc at search bound");
    }
    if (std::abs(s.B) < 1e-8) {
        result.reasons.push_back("B negligible");
    }
    if (!(s.c_rel < 1.0)) {
        result.reasons.push_back("C out of bounds");
    }
    result.qualified = result.reasons.empty();
}

FitResult fit_log_series(const LogPriceSeries& data, const FitConfig& config,
                         ModelKind variant, const TimeWindow& window) {
    const double t_last_rel = data.t[data.t.size() - 1];
    const auto candidates = grid_multistart(data, config, variant);
    std::optional<FitResult> best_any;
    std::optional<FitResult> best_qualified;
    for (const auto& cand : candidates) {
        FitResult r = local_refine(cand.seed, data, config);
        r.window = window;
        qualify_fit(r, config, t_last_rel);
        if (!best_any || r.rmse < best_any->rmse) best_any = r;
        if (r.qualified && (!best_qualified || r.rmse < best_qualified->rmse)) {
            best_qualified = r;
        }
    }
    return best_qualified ? *best_qualified : *best_any;
}

FitResult fit_window(const PriceSeries& data, const TimeWindow& window,
                     const FitConfig& config, ModelKind variant) {
    const PriceSeries sliced = slice_window(data, window, config.min_points);
    const LogPriceSeries log_data = to_log_price(sliced);
    return fit_log_series(log_data, config, variant, window);
}

double FitResult::tc_calendar() const {
    return origin.decimal_year() + critical_time(params);
}

nlohmann::json fit_result_to_json(const FitResult& result) {
    nlohmann::json j;
    j["params"] = params_to_json(result.params);
    j["rmse"] = result.rmse;
    j["n_points"] = result.n_points;
    j["converged"] = result.converged;
    j["qualified"] = result.qualified;
    j["reasons"] = result.reasons;
    j["b_negative"] = result.b_negative;
    j["window"] = {{"t_start", result.window.t_start.iso()},
                   {"t_last", result.window.t_last.iso()}};
    j["origin"] = result.origin.iso();
    j["tc_calendar"] = result.tc_calendar();
    return j;
}

}  // namespace lppl
