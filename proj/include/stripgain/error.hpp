#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace stripgain {

enum class ErrorKind {
    InvalidInput,
    Unsupported,
    NumericalFailure,
    PoleProximity,
    PoleInStrip,
    PoleOnLine,
    SingularSylvester,
    ImproperTransferFunction,
    EigenvalueInStrip,
    WindowTooShort,
    DivergentIntegral,
    NotPDominant,
    NotPDominantAtSlope,
    MarginalRate,
    IllPosed,
    NoCommonROC,
    PoleInROC,
};

[[nodiscard]] std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above so the
/// CLI can map it onto an exit code without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what, std::optional<double> detail = std::nullopt)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), detail_(detail) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }
    /// Offending value: the pole real part, the actual mode count, the slope...
    [[nodiscard]] std::optional<double> detail() const noexcept { return detail_; }

private:
    ErrorKind kind_;
    std::optional<double> detail_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what,
                              std::optional<double> detail = std::nullopt) {
    throw Error(kind, what, detail);
}

}  // namespace stripgain
