#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "lppl/models.hpp"

using namespace lppl;

TEST_CASE("eval_simple degenerate cases") {
    SimpleLpplParams p{2.0, 0.5, 7.0, 0.3, 1.5, 0.0, 0.4};
    CHECK(eval_simple(p, 0.0) == doctest::Approx(1.5));  // B = 0 -> y = A

    p = {2.0, 0.5, 7.0, 0.0, 1.0, -1.0, 0.0};
    CHECK(eval_simple(p, 1.0) == doctest::Approx(0.0));  // tau = 1, tau^m = 1

    p = {1.0, 0.5, 11.0, 0.0, 0.0, 1.0, 0.5};
    CHECK(eval_simple(p, 0.0) == doctest::Approx(1.5));  // cos(0) = 1
}

TEST_CASE("evaluation at t >= tc is a domain error") {
    SimpleLpplParams p{1.0, 0.5, 7.0, 0.0, 0.0, 1.0, 0.1};
    CHECK_THROWS_AS(eval_simple(p, 1.0), std::domain_error);
    CHECK_THROWS_AS(eval_simple(p, 1.5), std::domain_error);
}

TEST_CASE("eval_weierstrass reduces to a pure power law without harmonics") {
    WeierstrassParams p;
    p.tc = 2.0;
    p.m = 0.4;
    p.omega = 6.0;
    p.A = 1.0;
    p.B = -0.8;
    p.harmonics = {{0.0, 0.0}, {0.0, 0.0}};
    for (double t : {0.0, 0.5, 1.5}) {
        const double tau = p.tc - t;
        CHECK(eval_weierstrass(p, t) == doctest::Approx(p.A + p.B * std::pow(tau, p.m)));
    }
}

TEST_CASE("eval_weierstrass N=1 equals eval_simple after reparametrization") {
    // C' = C_1/B, phi' = phi_1 on the shared functional form
    SimpleLpplParams simple{2.5, 0.35, 8.0, 0.7, 0.3, -1.2, 0.0};
    WeierstrassParams w;
    w.tc = simple.tc;
    w.m = simple.m;
    w.omega = simple.omega;
    w.A = simple.A;
    w.B = simple.B;
    const double c1 = 0.15;
    w.harmonics = {{c1, 0.7}};
    simple.C = c1 / simple.B;
    simple.phi = 0.7;
    for (double t = 0.0; t < 2.4; t += 0.1) {
        CHECK(eval_weierstrass(w, t) == doctest::Approx(eval_simple(simple, t)).epsilon(1e-12));
    }
}

TEST_CASE("eval_weierstrass at tau = 1 with zero phases sums amplitudes") {
    WeierstrassParams p;
    p.tc = 1.0;
    p.m = 0.5;
    p.omega = 9.0;
    p.A = 2.0;
    p.B = -1.0;
    p.harmonics = {{0.1, 0.0}, {0.2, 0.0}, {0.3, 0.0}};
    CHECK(eval_weierstrass(p, 0.0) == doctest::Approx(2.0 - 1.0 + 0.6));
}

TEST_CASE("eval_landau approaches eval_simple when the crossover is inactive") {
    LandauParams p;
    p.tc = 1.0 + 1e-6;
    p.m = 0.5;
    p.omega = 7.0;
    p.phi = 0.4;
    p.A = 1.0;
    p.B = -0.7;
    p.C = 0.1;
    p.delta_t = 1.0;  // tau/delta_t = 1e-6 at t = 1
    p.delta_omega = 3.0;
    SimpleLpplParams s{p.tc, p.m, p.omega, p.phi, p.A, p.B, p.C};
    const double yl = eval_landau(p, 1.0);
    const double ys = eval_simple(s, 1.0);
    CHECK(std::abs(yl - ys) / std::abs(ys) < 1e-6);
}

TEST_CASE("eval_landau with large delta_t and C=0 is a pure power law") {
    LandauParams p;
    p.tc = 2.0;
    p.m = 0.5;
    p.omega = 6.0;
    p.phi = 0.0;
    p.A = 5.0;
    p.B = -1.0;
    p.C = 0.0;
    p.delta_t = 1e6 * 2.0;
    p.delta_omega = 0.0;
    for (double t = 0.0; t < 1.9; t += 0.1) {
        const double tau = p.tc - t;
        const double pure = p.A + p.B * std::pow(tau, p.m);
        CHECK(std::abs(eval_landau(p, t) - pure) <= 1e-6 * std::abs(pure));
    }
}

TEST_CASE("eval_landau with B=0 returns A") {
    LandauParams p;
    p.tc = 2.0;
    p.A = 3.3;
    p.B = 0.0;
    p.C = 0.5;
    p.delta_t = 0.5;
    CHECK(eval_landau(p, 1.0) == doctest::Approx(3.3));
}

TEST_CASE("residuals of exact model data vanish") {
    SimpleLpplParams p{2.0, 0.5, 7.0, 0.3, 4.5, -1.0, 0.05};
    const int n = 50;
    Eigen::VectorXd t(n), y(n);
    for (int i = 0; i < n; ++i) {
        t[i] = 1.8 * i / (n - 1);
        y[i] = eval_simple(p, t[i]);
    }
    const Eigen::VectorXd r = residuals(ModelParams{p}, t, y);
    CHECK(r.cwiseAbs().maxCoeff() < 1e-12);

    // constant offset shows up unchanged
    const Eigen::VectorXd r2 = residuals(ModelParams{p}, t, y.array() + 0.37);
    for (int i = 0; i < n; ++i) CHECK(r2[i] == doctest::Approx(0.37));
}

TEST_CASE("residual spread tracks the injected noise level") {
    SimpleLpplParams p{2.0, 0.5, 7.0, 0.3, 4.5, -1.0, 0.05};
    const int n = 2000;
    Eigen::VectorXd t(n), y(n);
    std::mt19937_64 rng(1234);
    std::normal_distribution<double> gauss(0.0, 0.01);
    for (int i = 0; i < n; ++i) {
        t[i] = 1.8 * i / (n - 1);
        y[i] = eval_simple(p, t[i]) + gauss(rng);
    }
    const Eigen::VectorXd r = residuals(ModelParams{p}, t, y);
    const double std_dev = std::sqrt((r.array() - r.mean()).square().sum() / (n - 1));
    CHECK(std_dev == doctest::Approx(0.01).epsilon(0.2));
}

TEST_CASE("parameter JSON round trip") {
    LandauParams p;
    p.tc = 2.1;
    p.m = 0.33;
    p.omega = 9.9;
    p.phi = -0.4;
    p.A = 4.2;
    p.B = -1.1;
    p.C = 0.07;
    p.delta_t = 0.8;
    p.delta_omega = -2.5;
    const auto j = params_to_json(ModelParams{p});
    CHECK(j["model"] == "landau");
    CHECK(j.contains("delta_t"));
    const auto back = std::get<LandauParams>(params_from_json(j));
    CHECK(back.tc == doctest::Approx(p.tc));
    CHECK(back.delta_omega == doctest::Approx(p.delta_omega));

    WeierstrassParams w;
    w.tc = 1.5;
    w.harmonics = {{0.1, 0.2}, {0.05, -0.3}};
    const auto jw = params_to_json(ModelParams{w});
    const auto backw = std::get<WeierstrassParams>(params_from_json(jw));
    REQUIRE(backw.harmonics.size() == 2);
    CHECK(backw.harmonics[1].first == doctest::Approx(0.05));
}
