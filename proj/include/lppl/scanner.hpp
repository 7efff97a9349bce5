#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lppl/calibrate.hpp"

namespace lppl {

struct ScanConfig {
    Date t_start_min;
    Date t_start_max;
    long step_days = 5;
    Date t_last;
    std::vector<ModelKind> variants{ModelKind::simple};
    FitConfig fit;
    unsigned workers = 1;  // must not affect results
};

struct ScanRow {
    Date t_start;
    ModelKind variant = ModelKind::simple;
    std::optional<FitResult> fit;   // absent when the window was skipped
    std::string skip_reason;
};

struct VariantSummary {
    std::optional<double> median_tc;  // calendar decimal years, qualified fits only
    double iqr_tc = 0.0;
    double fraction_qualified = 0.0;
    std::size_t n_fits = 0;
    std::size_t n_qualified = 0;
};

struct ScanResult {
    std::vector<ScanRow> rows;  // sorted by (variant, t_start)
    std::map<ModelKind, VariantSummary> summary;
};

ScanResult scan(const PriceSeries& data, const ScanConfig& config);

std::map<ModelKind, VariantSummary> tc_summary(const ScanResult& result);

// One row per fit: t_start, variant, tc, m, omega, rmse, qualified
std::string scan_to_csv(const ScanResult& result);
nlohmann::json scan_to_json(const ScanResult& result);

}  // namespace lppl
