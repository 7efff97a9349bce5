#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "lppl/dates.hpp"

namespace lppl {

struct PricePoint {
    Date date;
    double value = 0.0;  // > 0, price or FX rate
};

// Date-indexed positive observations, strictly increasing dates.
class PriceSeries {
public:
    PriceSeries() = default;
    PriceSeries(std::vector<PricePoint> points, std::string label);

    const std::vector<PricePoint>& points() const { return points_; }
    const std::string& label() const { return label_; }
    std::size_t size() const { return points_.size(); }
    const PricePoint& front() const { return points_.front(); }
    const PricePoint& back() const { return points_.back(); }

private:
    std::vector<PricePoint> points_;
    std::string label_;
};

struct TimeWindow {
    Date t_start;
    Date t_last;
};

// ln(price) against a decimal-year time axis, t = 0 at the first point.
struct LogPriceSeries {
    Eigen::VectorXd t;  // (days since first date) / 365.25, strictly increasing
    Eigen::VectorXd y;  // ln value
    Date origin;        // date of t = 0
};

struct CsvSchema {
    std::string date_col = "date";
    std::string value_col = "value";
    std::string date_format = "%Y-%m-%d";
};

struct CsvLoadResult {
    PriceSeries series;
    std::size_t skipped_rows = 0;  // rows with an empty value cell
};

CsvLoadResult load_csv(const std::string& path, const CsvSchema& schema,
                       const std::string& label = "");

// Prices in X divided by an X-per-Y rate, on the common dates.
PriceSeries convert_currency(const PriceSeries& prices, const PriceSeries& fx,
                             const std::string& target_label);

PriceSeries slice_window(const PriceSeries& series, const TimeWindow& window,
                         std::size_t min_points = 30);

LogPriceSeries to_log_price(const PriceSeries& series);

}  // namespace lppl
