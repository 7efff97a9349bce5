#include "lppl/timeseries.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "lppl/errors.hpp"

namespace lppl {

PriceSeries::PriceSeries(std::vector<PricePoint> points, std::string label)
    : points_(std::move(points)), label_(std::move(label)) {
    if (points_.empty()) {
        throw InputError("PriceSeries requires at least one point");
    }
    std::stable_sort(points_.begin(), points_.end(),
                     [](const PricePoint& a, const PricePoint& b) { return a.date < b.date; });
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!(points_[i].value > 0.0) || !std::isfinite(points_[i].value)) {
            throw InputError("non-positive value " + std::to_string(points_[i].value) +
                             " at date " + points_[i].date.iso());
        }
        if (i > 0 && points_[i].date == points_[i - 1].date) {
            throw InputError("duplicate date " + points_[i].date.iso());
        }
    }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        // trim surrounding whitespace and CR
        const auto b = cell.find_first_not_of(" \t\r");
        const auto e = cell.find_last_not_of(" \t\r");
        cells.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

}  // namespace

CsvLoadResult load_csv(const std::string& path, const CsvSchema& schema,
                       const std::string& label) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open file: " + path);
    }
    std::string line;
    std::size_t row = 0;
    // leading '#' lines (e.g. the manifest reference on emitted files) are skipped
    do {
        if (!std::getline(in, line)) {
            throw InputError("empty file: " + path);
        }
        ++row;
    } while (!line.empty() && line[0] == '#');
    const auto header = split_csv_line(line);
    long date_idx = -1, value_idx = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == schema.date_col) date_idx = static_cast<long>(i);
        if (header[i] == schema.value_col) value_idx = static_cast<long>(i);
    }
    if (date_idx < 0 || value_idx < 0) {
        throw InputError("header of " + path + " lacks column '" +
                         (date_idx < 0 ? schema.date_col : schema.value_col) + "'");
    }

    std::vector<PricePoint> points;
    std::size_t skipped = 0;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line == "\r" || line[0] == '#') continue;
        const auto cells = split_csv_line(line);
        if (static_cast<std::size_t>(std::max(date_idx, value_idx)) >= cells.size()) {
            throw InputError("row " + std::to_string(row) + " of " + path +
                             " has too few columns");
        }
        if (cells[value_idx].empty()) {
            ++skipped;
            continue;
        }
        PricePoint p;
        try {
            p.date = Date::parse(cells[date_idx], schema.date_format);
        } catch (const InputError& e) {
            throw InputError("row " + std::to_string(row) + " of " + path + ": " + e.what());
        }
        std::size_t pos = 0;
        try {
            p.value = std::stod(cells[value_idx], &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != cells[value_idx].size()) {
            throw InputError("row " + std::to_string(row) + " of " + path +
                             ": unparseable value '" + cells[value_idx] + "'");
        }
        if (!(p.value > 0.0)) {
            throw InputError("row " + std::to_string(row) + " of " + path +
                             ": value must be positive, got " + cells[value_idx]);
        }
        points.push_back(p);
    }
    if (points.empty()) {
        throw InputError("no parseable rows in " + path);
    }
    return {PriceSeries(std::move(points), label.empty() ? path : label), skipped};
}

PriceSeries convert_currency(const PriceSeries& prices, const PriceSeries& fx,
                             const std::string& target_label) {
    std::unordered_map<long, double> rate_by_day;
    rate_by_day.reserve(fx.size());
    for (const auto& p : fx.points()) {
        rate_by_day.emplace(p.date.sys_days().time_since_epoch().count(), p.value);
    }
    std::vector<PricePoint> out;
    for (const auto& p : prices.points()) {
        const auto it = rate_by_day.find(p.date.sys_days().time_since_epoch().count());
        if (it != rate_by_day.end()) {
            out.push_back({p.date, p.value / it->second});
        }
    }
    if (out.empty()) {
        throw InputError("price and FX series share no dates");
    }
    return PriceSeries(std::move(out), target_label);
}

PriceSeries slice_window(const PriceSeries& series, const TimeWindow& window,
                         std::size_t min_points) {
    if (!(window.t_start < window.t_last)) {
        throw InputError("invalid window: t_start must precede t_last");
    }
    std::vector<PricePoint> out;
    for (const auto& p : series.points()) {
        if (p.date >= window.t_start && p.date <= window.t_last) out.push_back(p);
    }
    if (out.size() < min_points) {
        throw InsufficientDataError("window " + window.t_start.iso() + ".." +
                                    window.t_last.iso() + " holds " +
                                    std::to_string(out.size()) + " points, need " +
                                    std::to_string(min_points));
    }
    return PriceSeries(std::move(out), series.label());
}

LogPriceSeries to_log_price(const PriceSeries& series) {
    const auto n = static_cast<Eigen::Index>(series.size());
    LogPriceSeries out;
    out.t.resize(n);
    out.y.resize(n);
    out.origin = series.front().date;
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& p = series.points()[static_cast<std::size_t>(i)];
        out.t[i] = static_cast<double>(p.date - out.origin) / 365.25;
        out.y[i] = std::log(p.value);
    }
    return out;
}

}  // namespace lppl
