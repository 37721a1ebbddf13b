#pragma once

#include <string>

namespace stripgain {

/// The vertical line Re(s) = -rate.
class Line {
public:
    explicit Line(double rate);

    [[nodiscard]] double rate() const noexcept { return rate_; }
    /// Real part of the points on the line.
    [[nodiscard]] double abscissa() const noexcept { return -rate_; }

private:
    double rate_;
};

/// The open strip {s : Re(s) in (-hi, -lo)} for rates 0 <= lo < hi < inf.
class Strip {
public:
    Strip(double lo, double hi);

    [[nodiscard]] double lo() const noexcept { return lo_; }
    [[nodiscard]] double hi() const noexcept { return hi_; }
    [[nodiscard]] Line lo_line() const { return Line(lo_); }
    [[nodiscard]] Line hi_line() const { return Line(hi_); }
    /// Real part of the right boundary (-lo) and of the left boundary (-hi).
    [[nodiscard]] double re_right() const noexcept { return -lo_; }
    [[nodiscard]] double re_left() const noexcept { return -hi_; }

private:
    double lo_;
    double hi_;
};

[[nodiscard]] std::string describe(const Line& line);
[[nodiscard]] std::string describe(const Strip& strip);

}  // namespace stripgain
