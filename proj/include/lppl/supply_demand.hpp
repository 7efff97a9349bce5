#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace lppl {

struct Quarter {
    int year = 0;
    int q = 1;  // 1..4

    auto operator<=>(const Quarter&) const = default;
    std::string to_string() const;
};

struct QuarterlyFlow {
    Quarter quarter;
    std::string agency;  // EIA, IEA, ...
    double demand_mbd = 0.0;
    double supply_mbd = 0.0;
};

// CSV columns: year, quarter, agency, demand_mbd, supply_mbd
std::vector<QuarterlyFlow> load_flows_csv(const std::string& path);

struct QuarterGap {
    Quarter quarter;
    double gap_mbd = 0.0;  // demand - supply; positive = demand exceeds supply
};

std::vector<QuarterGap> gap_series(const std::vector<QuarterlyFlow>& flows,
                                   const std::string& agency);

struct QuarterDiscrepancy {
    Quarter quarter;
    double supply_diff_mbd = 0.0;  // supply_a - supply_b
    double demand_diff_mbd = 0.0;  // demand_a - demand_b
};

std::vector<QuarterDiscrepancy> agency_discrepancy(const std::vector<QuarterlyFlow>& flows,
                                                   const std::string& agency_a,
                                                   const std::string& agency_b);

struct RegimeFractions {
    double pre = 0.0;   // fraction of pre-cutoff quarters with supply > demand
    double post = 0.0;  // same, for quarters at/after the cutoff
};

RegimeFractions regime_flag(const std::vector<QuarterlyFlow>& flows,
                            const std::string& agency, const Quarter& cutoff);

nlohmann::json gaps_to_json(const std::vector<QuarterGap>& gaps);
nlohmann::json discrepancy_to_json(const std::vector<QuarterDiscrepancy>& rows);

}  // namespace lppl
