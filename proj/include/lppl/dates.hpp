#pragma once

#include <chrono>
#include <compare>
#include <string>

namespace lppl {

// Calendar date backed by a day count since the civil epoch.
class Date {
public:
    Date() = default;
    explicit Date(std::chrono::sys_days d) : days_(d) {}
    Date(int year, unsigned month, unsigned day);

    static Date parse(const std::string& text, const std::string& format = "%Y-%m-%d");

    std::chrono::sys_days sys_days() const { return days_; }
    std::string iso() const;

    // Calendar year plus elapsed fraction, e.g. 2008-07-02 -> 2008.5.
    double decimal_year() const;

    friend long operator-(Date a, Date b) {
        return (a.days_ - b.days_).count();
    }
    Date operator+(long n) const { return Date(days_ + std::chrono::days(n)); }
    auto operator<=>(const Date&) const = default;

private:
    std::chrono::sys_days days_{};
};

}  // namespace lppl
