#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "stripgain/rational.hpp"
#include "stripgain/statespace.hpp"

namespace stripgain::cli {

/// A parsed model file: either a transfer function or a realization.
struct Model {
    std::variant<RationalFunction, StateSpace> value;

    [[nodiscard]] bool is_tf() const noexcept { return std::holds_alternative<RationalFunction>(value); }
    /// Transfer function; realizations are converted (SISO only).
    [[nodiscard]] RationalFunction tf() const;
    /// Realization; transfer functions are realized in controllable form.
    [[nodiscard]] StateSpace ss() const;
};

/// Malformed input: reported with exit code 3.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

[[nodiscard]] Model parse_model(const nlohmann::json& doc, const std::string& origin);
[[nodiscard]] Model load_model(const std::string& path, std::string* raw = nullptr);

}  // namespace stripgain::cli
