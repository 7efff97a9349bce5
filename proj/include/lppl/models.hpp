#pragma once

#include <Eigen/Core>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace lppl {

// Log price near a critical time tc:
//   y(t) = A + B tau^m [1 + C cos(omega ln tau + phi)],  tau = tc - t.
struct SimpleLpplParams {
    double tc = 0.0;
    double m = 0.5;
    double omega = 7.0;
    double phi = 0.0;
    double A = 0.0;
    double B = 0.0;
    double C = 0.0;
};

// Power law plus harmonics of the fundamental log-frequency:
//   y(t) = A + B tau^m + tau^m sum_n C_n cos(n omega ln tau + phi_n).
struct WeierstrassParams {
    double tc = 0.0;
    double m = 0.5;
    double omega = 7.0;
    double A = 0.0;
    double B = 0.0;
    std::vector<std::pair<double, double>> harmonics;  // (C_n, phi_n), n = 1..N
};

// Crossover extension with timescale delta_t and frequency shift delta_omega:
//   y(t) = A + B tau^m / sqrt(1 + (tau/dt)^{2m})
//            * [1 + C cos(omega ln tau + (dw/2m) ln(1 + (tau/dt)^{2m}) + phi)].
struct LandauParams {
    double tc = 0.0;
    double m = 0.5;
    double omega = 7.0;
    double phi = 0.0;
    double A = 0.0;
    double B = 0.0;
    double C = 0.0;
    double delta_t = 1.0;
    double delta_omega = 0.0;
};

using ModelParams = std::variant<SimpleLpplParams, WeierstrassParams, LandauParams>;

enum class ModelKind { simple, weierstrass, landau };

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& name);
ModelKind kind_of(const ModelParams& params);
double critical_time(const ModelParams& params);

double eval_simple(const SimpleLpplParams& p, double t);
double eval_weierstrass(const WeierstrassParams& p, double t);
double eval_landau(const LandauParams& p, double t);
double eval_model(const ModelParams& params, double t);

// r_i = y_i - model(t_i)
Eigen::VectorXd residuals(const ModelParams& params, const Eigen::VectorXd& t,
                          const Eigen::VectorXd& y);

nlohmann::json params_to_json(const ModelParams& params);
ModelParams params_from_json(const nlohmann::json& j);

}  // namespace lppl
