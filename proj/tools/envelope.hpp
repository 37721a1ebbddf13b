#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "stripgain/matrix.hpp"
#include "stripgain/rational.hpp"

namespace stripgain::cli {

using Json = nlohmann::ordered_json;

/// 64-bit FNV-1a, hex encoded.
class Digest {
public:
    void add(std::string_view bytes);
    [[nodiscard]] std::string hex() const;

private:
    std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

struct Envelope {
    std::string command;
    Digest digest;
    Json results = Json::object();
    Json certificates = Json::object();
    std::vector<std::string> warnings;
    Json error;  // null unless the command failed

    [[nodiscard]] Json to_json() const;
};

/// Pretty-prints with every float at 17 significant digits; non-finite floats
/// become the strings "inf", "-inf", "nan".
void write_json(std::ostream& os, const Json& j);
[[nodiscard]] std::string format_double(double x);

[[nodiscard]] Json to_json(const Matrix& m);
[[nodiscard]] Json to_json(Complex z);
[[nodiscard]] Json to_json(const Polynomial& p);
[[nodiscard]] Json to_json(const RationalFunction& g);

}  // namespace stripgain::cli
