#include "stripgain/region.hpp"

#include <cmath>
#include <sstream>

#include "stripgain/error.hpp"

namespace stripgain {

Line::Line(double rate) : rate_(rate) {
    if (!std::isfinite(rate) || rate < 0.0) {
        fail(ErrorKind::InvalidInput, "line rate must be finite and nonnegative");
    }
}

Strip::Strip(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || lo < 0.0 || !(lo < hi)) {
        fail(ErrorKind::InvalidInput, "strip rates must satisfy 0 <= lo < hi < inf");
    }
}

std::string describe(const Line& line) {
    std::ostringstream os;
    os << "Re(s) = " << line.abscissa();
    return os.str();
}

std::string describe(const Strip& strip) {
    std::ostringstream os;
    os << "Re(s) in (" << strip.re_left() << ", " << strip.re_right() << ")";
    return os.str();
}

}  // namespace stripgain
