#include "lppl/dates.hpp"

#include <ctime>
#include <iomanip>
#include <sstream>

#include "lppl/errors.hpp"

namespace lppl {

Date::Date(int year, unsigned month, unsigned day) {
    const std::chrono::year_month_day ymd{std::chrono::year{year},
                                          std::chrono::month{month},
                                          std::chrono::day{day}};
    if (!ymd.ok()) {
        throw InputError("invalid calendar date: " + std::to_string(year) + "-" +
                         std::to_string(month) + "-" + std::to_string(day));
    }
    days_ = std::chrono::sys_days{ymd};
}

Date Date::parse(const std::string& text, const std::string& format) {
    std::tm tm{};
    std::istringstream is(text);
    is >> std::get_time(&tm, format.c_str());
    if (is.fail()) {
        throw InputError("unparseable date '" + text + "' with format '" + format + "'");
    }
    return Date(tm.tm_year + 1900, static_cast<unsigned>(tm.tm_mon + 1),
                static_cast<unsigned>(tm.tm_mday));
}

std::string Date::iso() const {
    const std::chrono::year_month_day ymd{days_};
    std::ostringstream os;
    os << std::setfill('0') << std::setw(4) << int(ymd.year()) << '-' << std::setw(2)
       << unsigned(ymd.month()) << '-' << std::setw(2) << unsigned(ymd.day());
    return os.str();
}

double Date::decimal_year() const {
    const std::chrono::year_month_day ymd{days_};
    const int y = int(ymd.year());
    const Date jan1(y, 1, 1);
    const Date next_jan1(y + 1, 1, 1);
    const double span = static_cast<double>(next_jan1 - jan1);
    return y + static_cast<double>(*this - jan1) / span;
}

}  // namespace lppl
