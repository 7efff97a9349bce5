#include "lppl/supply_demand.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "lppl/errors.hpp"

namespace lppl {

std::string Quarter::to_string() const {
    return std::to_string(year) + "Q" + std::to_string(q);
}

std::vector<QuarterlyFlow> load_flows_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open file: " + path);
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw InputError("empty file: " + path);
    }
    std::vector<QuarterlyFlow> flows;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line == "\r") continue;
        std::stringstream ss(line);
        std::string year_s, q_s, agency, demand_s, supply_s;
        if (!std::getline(ss, year_s, ',') || !std::getline(ss, q_s, ',') ||
            !std::getline(ss, agency, ',') || !std::getline(ss, demand_s, ',') ||
            !std::getline(ss, supply_s, ',')) {
            throw InputError("row " + std::to_string(row) + " of " + path + " malformed");
        }
        QuarterlyFlow f;
        try {
            f.quarter = {std::stoi(year_s), std::stoi(q_s)};
            f.agency = agency;
            f.demand_mbd = std::stod(demand_s);
            f.supply_mbd = std::stod(supply_s);
        } catch (const std::exception&) {
            throw InputError("row " + std::to_string(row) + " of " + path + " unparseable");
        }
        if (f.quarter.q < 1 || f.quarter.q > 4) {
            throw InputError("row " + std::to_string(row) + ": quarter must be 1..4");
        }
        if (f.demand_mbd < 0.0 || f.supply_mbd < 0.0 || !std::isfinite(f.demand_mbd) ||
            !std::isfinite(f.supply_mbd)) {
            throw InputError("row " + std::to_string(row) + ": flows must be >= 0 and finite");
        }
        flows.push_back(std::move(f));
    }
    if (flows.empty()) {
        throw InputError("no data rows in " + path);
    }
    return flows;
}

std::vector<QuarterGap> gap_series(const std::vector<QuarterlyFlow>& flows,
                                   const std::string& agency) {
    std::vector<QuarterGap> gaps;
    for (const auto& f : flows) {
        if (f.agency == agency) {
            gaps.push_back({f.quarter, f.demand_mbd - f.supply_mbd});
        }
    }
    if (gaps.empty()) {
        throw InputError("no rows for agency " + agency);
    }
    std::sort(gaps.begin(), gaps.end(),
              [](const QuarterGap& a, const QuarterGap& b) { return a.quarter < b.quarter; });
    return gaps;
}

std::vector<QuarterDiscrepancy> agency_discrepancy(const std::vector<QuarterlyFlow>& flows,
                                                   const std::string& agency_a,
                                                   const std::string& agency_b) {
    std::map<Quarter, const QuarterlyFlow*> by_quarter_a, by_quarter_b;
    for (const auto& f : flows) {
        if (f.agency == agency_a) by_quarter_a[f.quarter] = &f;
        if (f.agency == agency_b) by_quarter_b[f.quarter] = &f;
    }
    std::vector<QuarterDiscrepancy> out;
    for (const auto& [quarter, fa] : by_quarter_a) {
        const auto it = by_quarter_b.find(quarter);
        if (it == by_quarter_b.end()) continue;
        out.push_back({quarter, fa->supply_mbd - it->second->supply_mbd,
                       fa->demand_mbd - it->second->demand_mbd});
    }
    if (out.empty()) {
        throw InputError("agencies " + agency_a + " and " + agency_b +
                         " share no quarters");
    }
    return out;
}

RegimeFractions regime_flag(const std::vector<QuarterlyFlow>& flows,
                            const std::string& agency, const Quarter& cutoff) {
    std::size_t pre_n = 0, pre_excess = 0, post_n = 0, post_excess = 0;
    for (const auto& f : flows) {
        if (f.agency != agency) continue;
        const bool excess = f.supply_mbd > f.demand_mbd;
        if (f.quarter < cutoff) {
            ++pre_n;
            pre_excess += excess ? 1 : 0;
        } else {
            ++post_n;
            post_excess += excess ? 1 : 0;
        }
    }
    if (pre_n == 0 || post_n == 0) {
        throw InputError("flows for " + agency + " do not span the cutoff " +
                         cutoff.to_string());
    }
    return {static_cast<double>(pre_excess) / static_cast<double>(pre_n),
            static_cast<double>(post_excess) / static_cast<double>(post_n)};
}

nlohmann::json gaps_to_json(const std::vector<QuarterGap>& gaps) {
    auto arr = nlohmann::json::array();
    for (const auto& g : gaps) {
        arr.push_back({{"quarter", g.quarter.to_string()}, {"gap_mbd", g.gap_mbd}});
    }
    return arr;
}

nlohmann::json discrepancy_to_json(const std::vector<QuarterDiscrepancy>& rows) {
    auto arr = nlohmann::json::array();
    for (const auto& r : rows) {
        arr.push_back({{"quarter", r.quarter.to_string()},
                       {"supply_diff_mbd", r.supply_diff_mbd},
                       {"demand_diff_mbd", r.demand_diff_mbd}});
    }
    return arr;
}

}  // namespace lppl
