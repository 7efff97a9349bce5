#include "lppl/models.hpp"

#include <cmath>
#include <stdexcept>

#include "lppl/errors.hpp"

namespace lppl {

namespace {

double tau_of(double tc, double t) {
    if (!(t < tc)) {
        throw std::domain_error("model evaluated at t >= tc (t=" + std::to_string(t) +
                                ", tc=" + std::to_string(tc) + ")");
    }
    return tc - t;
}

}  // namespace

std::string to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::simple: return "simple";
        case ModelKind::weierstrass: return "weierstrass";
        case ModelKind::landau: return "landau";
    }
    return "?";
}

ModelKind model_kind_from_string(const std::string& name) {
    if (name == "simple") return ModelKind::simple;
    if (name == "weierstrass") return ModelKind::weierstrass;
    if (name == "landau") return ModelKind::landau;
    throw InputError("unknown model kind: " + name);
}

ModelKind kind_of(const ModelParams& params) {
    return static_cast<ModelKind>(params.index());
}

double critical_time(const ModelParams& params) {
    return std::visit([](const auto& p) { return p.tc; }, params);
}

double eval_simple(const SimpleLpplParams& p, double t) {
    const double tau = tau_of(p.tc, t);
    const double pow_term = std::pow(tau, p.m);
    return p.A + p.B * pow_term * (1.0 + p.C * std::cos(p.omega * std::log(tau) + p.phi));
}

double eval_weierstrass(const WeierstrassParams& p, double t) {
    const double tau = tau_of(p.tc, t);
    const double pow_term = std::pow(tau, p.m);
    const double log_tau = std::log(tau);
    double osc = 0.0;
    for (std::size_t n = 0; n < p.harmonics.size(); ++n) {
        const auto& [cn, phin] = p.harmonics[n];
        osc += cn * std::cos(static_cast<double>(n + 1) * p.omega * log_tau + phin);
    }
    return p.A + p.B * pow_term + pow_term * osc;
}

double eval_landau(const LandauParams& p, double t) {
    const double tau = tau_of(p.tc, t);
    const double ratio_pow = std::pow(tau / p.delta_t, 2.0 * p.m);
    const double envelope = p.B * std::pow(tau, p.m) / std::sqrt(1.0 + ratio_pow);
    const double phase = p.omega * std::log(tau) +
                         (p.delta_omega / (2.0 * p.m)) * std::log1p(ratio_pow) + p.phi;
    return p.A + envelope * (1.0 + p.C * std::cos(phase));
}

double eval_model(const ModelParams& params, double t) {
    switch (kind_of(params)) {
        case ModelKind::simple: return eval_simple(std::get<SimpleLpplParams>(params), t);
        case ModelKind::weierstrass:
            return eval_weierstrass(std::get<WeierstrassParams>(params), t);
        case ModelKind::landau: return eval_landau(std::get<LandauParams>(params), t);
    }
    throw std::logic_error("unreachable");
}

Eigen::VectorXd residuals(const ModelParams& params, const Eigen::VectorXd& t,
                          const Eigen::VectorXd& y) {
    Eigen::VectorXd r(t.size());
    for (Eigen::Index i = 0; i < t.size(); ++i) {
        r[i] = y[i] - eval_model(params, t[i]);
    }
    return r;
}

nlohmann::json params_to_json(const ModelParams& params) {
    nlohmann::json j;
    j["model"] = to_string(kind_of(params));
    std::visit(
        [&j](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            j["tc"] = p.tc;
            j["m"] = p.m;
            j["omega"] = p.omega;
            j["A"] = p.A;
            j["B"] = p.B;
            if constexpr (std::is_same_v<T, SimpleLpplParams>) {
                j["phi"] = p.phi;
                j["C"] = p.C;
            } else if constexpr (std::is_same_v<T, WeierstrassParams>) {
                auto arr = nlohmann::json::array();
                for (const auto& [c, phi] : p.harmonics) {
                    arr.push_back({{"C", c}, {"phi", phi}});
                }
                j["harmonics"] = arr;
            } else {
                j["phi"] = p.phi;
                j["C"] = p.C;
                j["delta_t"] = p.delta_t;
                j["delta_omega"] = p.delta_omega;
            }
        },
        params);
    return j;
}

ModelParams params_from_json(const nlohmann::json& j) {
    const auto kind = model_kind_from_string(j.at("model").get<std::string>());
    switch (kind) {
        case ModelKind::simple: {
            SimpleLpplParams p;
            p.tc = j.at("tc");
            p.m = j.at("m");
            p.omega = j.at("omega");
            p.phi = j.at("phi");
            p.A = j.at("A");
            p.B = j.at("B");
            p.C = j.at("C");
            return p;
        }
        case ModelKind::weierstrass: {
            WeierstrassParams p;
            p.tc = j.at("tc");
            p.m = j.at("m");
            p.omega = j.at("omega");
            p.A = j.at("A");
            p.B = j.at("B");
            for (const auto& h : j.at("harmonics")) {
                p.harmonics.emplace_back(h.at("C").get<double>(), h.at("phi").get<double>());
            }
            return p;
        }
        case ModelKind::landau: {
            LandauParams p;
            p.tc = j.at("tc");
            p.m = j.at("m");
            p.omega = j.at("omega");
            p.phi = j.at("phi");
            p.A = j.at("A");
            p.B = j.at("B");
            p.C = j.at("C");
            p.delta_t = j.at("delta_t");
            p.delta_omega = j.at("delta_omega");
            return p;
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace lppl
