#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <filesystem>

#include "doctest.h"
#include "lppl/errors.hpp"
#include "lppl/supply_demand.hpp"

using namespace lppl;

namespace {

std::vector<QuarterlyFlow> fixture() {
    const auto path =
        std::filesystem::path(__FILE__).parent_path().parent_path() / "data" /
        "supply_demand_fixture.csv";
    return load_flows_csv(path.string());
}

}  // namespace

TEST_CASE("gap_series arithmetic and ordering") {
    std::vector<QuarterlyFlow> flows{
        {{2007, 2}, "EIA", 86.0, 85.0},
        {{2007, 1}, "EIA", 85.0, 85.0},
    };
    const auto gaps = gap_series(flows, "EIA");
    REQUIRE(gaps.size() == 2);
    CHECK(gaps[0].quarter == Quarter{2007, 1});
    CHECK(gaps[0].gap_mbd == doctest::Approx(0.0));
    CHECK(gaps[1].gap_mbd == doctest::Approx(1.0));
}

TEST_CASE("gap_series for an unknown agency is an error") {
    std::vector<QuarterlyFlow> flows{{{2007, 1}, "EIA", 85.0, 85.0}};
    CHECK_THROWS_AS(gap_series(flows, "IEA"), InputError);
}

TEST_CASE("fixture shows demand exceeding EIA supply in the last five quarters") {
    const auto gaps = gap_series(fixture(), "EIA");
    REQUIRE(gaps.size() >= 5);
    for (std::size_t i = gaps.size() - 5; i < gaps.size(); ++i) {
        CHECK(gaps[i].gap_mbd > 0.0);
    }
}

TEST_CASE("agency_discrepancy on identical flows is zero") {
    std::vector<QuarterlyFlow> flows{
        {{2006, 1}, "A", 85.0, 86.0},
        {{2006, 1}, "B", 85.0, 86.0},
    };
    const auto d = agency_discrepancy(flows, "A", "B");
    REQUIRE(d.size() == 1);
    CHECK(d[0].supply_diff_mbd == doctest::Approx(0.0));
    CHECK(d[0].demand_diff_mbd == doctest::Approx(0.0));
}

TEST_CASE("fixture reproduces the one-Mb/d supply discrepancy since 2006") {
    const auto d = agency_discrepancy(fixture(), "IEA", "EIA");
    bool saw_2006_plus = false;
    for (const auto& row : d) {
        if (row.quarter >= Quarter{2006, 1}) {
            saw_2006_plus = true;
            CHECK(row.supply_diff_mbd == doctest::Approx(1.0).epsilon(0.05));
            CHECK(std::abs(row.demand_diff_mbd) <= 0.3);
        } else {
            CHECK(std::abs(row.supply_diff_mbd) <= 0.3);
        }
    }
    CHECK(saw_2006_plus);
}

TEST_CASE("agency_discrepancy is antisymmetric") {
    const auto flows = fixture();
    const auto ab = agency_discrepancy(flows, "IEA", "EIA");
    const auto ba = agency_discrepancy(flows, "EIA", "IEA");
    REQUIRE(ab.size() == ba.size());
    for (std::size_t i = 0; i < ab.size(); ++i) {
        CHECK(ab[i].supply_diff_mbd == doctest::Approx(-ba[i].supply_diff_mbd));
        CHECK(ab[i].demand_diff_mbd == doctest::Approx(-ba[i].demand_diff_mbd));
    }
}

TEST_CASE("agency_discrepancy with no common quarters is an error") {
    std::vector<QuarterlyFlow> flows{
        {{2006, 1}, "A", 85.0, 86.0},
        {{2006, 2}, "B", 85.0, 86.0},
    };
    CHECK_THROWS_AS(agency_discrepancy(flows, "A", "B"), InputError);
}

TEST_CASE("outputs are invariant under input row order") {
    auto flows = fixture();
    auto shuffled = flows;
    std::reverse(shuffled.begin(), shuffled.end());
    const auto a = gap_series(flows, "EIA");
    const auto b = gap_series(shuffled, "EIA");
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].quarter == b[i].quarter);
        CHECK(a[i].gap_mbd == b[i].gap_mbd);
    }
}

TEST_CASE("scaling all inputs scales all outputs") {
    auto flows = fixture();
    auto scaled = flows;
    for (auto& f : scaled) {
        f.demand_mbd *= 2.0;
        f.supply_mbd *= 2.0;
    }
    const auto a = gap_series(flows, "IEA");
    const auto b = gap_series(scaled, "IEA");
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(b[i].gap_mbd == doctest::Approx(2.0 * a[i].gap_mbd));
    }
}

TEST_CASE("regime_flag pre-2006 supply systematically exceeds demand") {
    const auto flows = fixture();
    const auto regime = regime_flag(flows, "EIA", Quarter{2006, 1});
    CHECK(regime.pre == doctest::Approx(1.0));
    CHECK(regime.post < 1.0);
}

TEST_CASE("regime_flag all-deficit flows give zero fractions") {
    std::vector<QuarterlyFlow> flows{
        {{2005, 1}, "X", 86.0, 85.0},
        {{2006, 1}, "X", 87.0, 85.5},
    };
    const auto regime = regime_flag(flows, "X", Quarter{2006, 1});
    CHECK(regime.pre == 0.0);
    CHECK(regime.post == 0.0);
}

TEST_CASE("regime_flag post fraction matches a hand count") {
    // mixed post-2006: supply exceeds demand in 2 of 4 quarters
    std::vector<QuarterlyFlow> flows{
        {{2005, 3}, "X", 84.0, 84.5},
        {{2005, 4}, "X", 84.2, 84.6},
        {{2006, 1}, "X", 85.0, 85.4},
        {{2006, 2}, "X", 85.5, 85.1},
        {{2006, 3}, "X", 85.2, 85.6},
        {{2006, 4}, "X", 86.0, 85.2},
    };
    const auto regime = regime_flag(flows, "X", Quarter{2006, 1});
    CHECK(regime.pre == doctest::Approx(1.0));
    CHECK(regime.post == doctest::Approx(0.5));
}

TEST_CASE("regime_flag requires quarters on both sides of the cutoff") {
    std::vector<QuarterlyFlow> flows{{{2007, 1}, "X", 85.0, 86.0}};
    CHECK_THROWS_AS(regime_flag(flows, "X", Quarter{2006, 1}), InputError);
}

TEST_CASE("load_flows_csv validates rows") {
    namespace fs = std::filesystem;
    const auto path = fs::temp_directory_path() / "bad_flows.csv";
    {
        std::ofstream out(path);
        out << "year,quarter,agency,demand_mbd,supply_mbd\n2006,7,EIA,85,86\n";
    }
    CHECK_THROWS_AS(load_flows_csv(path.string()), InputError);
    fs::remove(path);
}
