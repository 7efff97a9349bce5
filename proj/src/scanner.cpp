#include "lppl/scanner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "lppl/errors.hpp"

namespace lppl {

namespace {

struct ScanStats {
    double tc = 0.0, m = 0.0, omega = 0.0;
};

ScanStats stats_of(const ModelParams& params) {
    return std::visit(
        [](const auto& p) {
            return ScanStats{p.tc, p.m, p.omega};
        },
        params);
}

double quantile_sorted(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) return std::nan("");
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

}  // namespace

ScanResult scan(const PriceSeries& data, const ScanConfig& config) {
    if (!(config.t_start_min <= config.t_start_max) ||
        !(config.t_start_max < config.t_last)) {
        throw InputError("scan config requires t_start_min <= t_start_max < t_last");
    }
    if (config.step_days < 1) {
        throw InputError("scan step must be >= 1 day");
    }

    std::vector<std::pair<ModelKind, Date>> tasks;
    for (ModelKind variant : config.variants) {
        for (Date start = config.t_start_min; start <= config.t_start_max;
             start = start + config.step_days) {
            tasks.emplace_back(variant, start);
        }
    }

    std::vector<ScanRow> rows(tasks.size());
    auto run_task = [&](std::size_t i) {
        ScanRow row;
        row.t_start = tasks[i].second;
        row.variant = tasks[i].first;
        const TimeWindow window{tasks[i].second, config.t_last};
        try {
            row.fit = fit_window(data, window, config.fit, row.variant);
        } catch (const InsufficientDataError& e) {
            row.skip_reason = e.what();
        } catch (const NoCandidateError& e) {
            row.skip_reason = e.what();
        }
        rows[i] = std::move(row);
    };

    const unsigned workers = std::max(1u, config.workers);
    if (workers == 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) run_task(i);
    } else {
        // rows are indexed by task, so the merge is order-insensitive
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < tasks.size();
                     i = next.fetch_add(1)) {
                    run_task(i);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    ScanResult result;
    result.rows = std::move(rows);
    std::stable_sort(result.rows.begin(), result.rows.end(),
                     [](const ScanRow& a, const ScanRow& b) {
                         if (a.variant != b.variant) return a.variant < b.variant;
                         return a.t_start < b.t_start;
                     });
    if (std::none_of(result.rows.begin(), result.rows.end(),
                     [](const ScanRow& r) { return r.fit.has_value(); })) {
        throw ScanFailedError("no window produced a fit");
    }
    result.summary = tc_summary(result);
    return result;
}

std::map<ModelKind, VariantSummary> tc_summary(const ScanResult& result) {
    std::map<ModelKind, std::vector<double>> qualified_tc;
    std::map<ModelKind, VariantSummary> summary;
    for (const auto& row : result.rows) {
        if (!row.fit) continue;
        auto& s = summary[row.variant];
        ++s.n_fits;
        if (row.fit->qualified) {
            ++s.n_qualified;
            qualified_tc[row.variant].push_back(row.fit->tc_calendar());
        }
    }
    for (auto& [variant, s] : summary) {
        if (s.n_fits > 0) {
            s.fraction_qualified =
                static_cast<double>(s.n_qualified) / static_cast<double>(s.n_fits);
        }
        auto& tc = qualified_tc[variant];
        if (!tc.empty()) {
            std::sort(tc.begin(), tc.end());
            s.median_tc = quantile_sorted(tc, 0.5);
            s.iqr_tc = quantile_sorted(tc, 0.75) - quantile_sorted(tc, 0.25);
        }
    }
    return summary;
}

std::string scan_to_csv(const ScanResult& result) {
    std::ostringstream os;
    os.precision(12);
    os << "t_start,variant,tc,m,omega,rmse,qualified\n";
    for (const auto& row : result.rows) {
        os << row.t_start.iso() << ',' << to_string(row.variant) << ',';
        if (row.fit) {
            const ScanStats s = stats_of(row.fit->params);
            os << row.fit->tc_calendar() << ',' << s.m << ',' << s.omega << ','
               << row.fit->rmse << ',' << (row.fit->qualified ? 1 : 0) << '\n';
        } else {
            os << ",,,,skipped\n";
        }
    }
    return os.str();
}

nlohmann::json scan_to_json(const ScanResult& result) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : result.rows) {
        nlohmann::json r;
        r["t_start"] = row.t_start.iso();
        r["variant"] = to_string(row.variant);
        if (row.fit) {
            r["fit"] = fit_result_to_json(*row.fit);
        } else {
            r["skip_reason"] = row.skip_reason;
        }
        rows.push_back(std::move(r));
    }
    nlohmann::json summary;
    for (const auto& [variant, s] : result.summary) {
        nlohmann::json sj;
        if (s.median_tc) sj["median_tc"] = *s.median_tc;
        sj["iqr_tc"] = s.iqr_tc;
        sj["fraction_qualified"] = s.fraction_qualified;
        sj["n_fits"] = s.n_fits;
        sj["n_qualified"] = s.n_qualified;
        summary[to_string(variant)] = std::move(sj);
    }
    return {{"rows", rows}, {"summary", summary}};
}

}  // namespace lppl
