#include "lppl/optim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace lppl {

Eigen::VectorXd clamp_to_box(const BoxBounds& box, Eigen::VectorXd x) {
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        x[i] = std::clamp(x[i], box.lo[i], box.hi[i]);
    }
    return x;
}

SimplexResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& objective,
                          const Eigen::VectorXd& x0, const BoxBounds& box, int max_evals,
                          double tol) {
    const int d = static_cast<int>(x0.size());
    int evals = 0;
    auto eval = [&](const Eigen::VectorXd& x) {
        ++evals;
        return objective(x);
    };

    const Eigen::VectorXd start = clamp_to_box(box, x0);
    if (max_evals <= 0) {
        return {start, objective(start), false, 0};
    }

    std::vector<Eigen::VectorXd> simplex{start};
    std::vector<double> f{eval(start)};
    for (int i = 0; i < d; ++i) {
        Eigen::VectorXd xi = start;
        double step = 0.05 * (box.hi[i] - box.lo[i]);
        if (xi[i] + step > box.hi[i]) step = -step;
        xi[i] += step;
        simplex.push_back(clamp_to_box(box, xi));
        f.push_back(eval(simplex.back()));
    }

    const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;
    bool converged = false;
    const auto nv = static_cast<std::size_t>(d);
    while (evals < max_evals) {
        std::vector<std::size_t> order(nv + 1);
        std::iota(order.begin(), order.end(), 0u);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return f[a] < f[b]; });
        std::vector<Eigen::VectorXd> s2;
        std::vector<double> f2;
        for (std::size_t idx : order) {
            s2.push_back(simplex[idx]);
            f2.push_back(f[idx]);
        }
        simplex.swap(s2);
        f.swap(f2);

        if (std::abs(f[nv] - f[0]) <= tol) {
            converged = true;
            break;
        }

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(d);
        for (std::size_t i = 0; i < nv; ++i) centroid += simplex[i];
        centroid /= static_cast<double>(d);

        const Eigen::VectorXd xr = clamp_to_box(box, centroid + alpha * (centroid - simplex[nv]));
        const double fr = eval(xr);
        if (fr < f[0]) {
            const Eigen::VectorXd xe = clamp_to_box(box, centroid + gamma * (xr - centroid));
            const double fe = eval(xe);
            if (fe < fr) {
                simplex[nv] = xe;
                f[nv] = fe;
            } else {
                simplex[nv] = xr;
                f[nv] = fr;
            }
        } else if (fr < f[nv - 1]) {
            simplex[nv] = xr;
            f[nv] = fr;
        } else {
            const bool outside = fr < f[nv];
            const Eigen::VectorXd xc =
                clamp_to_box(box, outside ? centroid + rho * (xr - centroid)
                                          : centroid + rho * (simplex[nv] - centroid));
            const double fc = eval(xc);
            if (fc < (outside ? fr : f[nv])) {
                simplex[nv] = xc;
                f[nv] = fc;
            } else {
                for (std::size_t i = 1; i <= nv; ++i) {
                    simplex[i] = clamp_to_box(box, simplex[0] + sigma * (simplex[i] - simplex[0]));
                    f[i] = eval(simplex[i]);
                }
            }
        }
    }

    const auto best = static_cast<std::size_t>(std::min_element(f.begin(), f.end()) - f.begin());
    return {simplex[best], f[best], converged, evals};
}

}  // namespace lppl
