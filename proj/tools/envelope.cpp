#include "envelope.hpp"

#include <cmath>
#include <cstdio>

namespace stripgain::cli {

void Digest::add(std::string_view bytes) {
    for (unsigned char c : bytes) {
        h_ ^= c;
        h_ *= 0x100000001b3ULL;
    }
    // separator so ("ab","c") and ("a","bc") differ
    h_ ^= 0xff;
    h_ *= 0x100000001b3ULL;
}

std::string Digest::hex() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h_));
    return buf;
}

Json Envelope::to_json() const {
    Json j;
    j["command"] = command;
    j["inputs_digest"] = digest.hex();
    j["results"] = results;
    j["certificates"] = certificates;
    j["warnings"] = warnings;
    if (!error.is_null()) j["error"] = error;
    return j;
}

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0.0) return "0";  // folds -0
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

void indent(std::ostream& os, int depth) {
    for (int k = 0; k < depth; ++k) os << "  ";
}

bool is_flat_number_array(const Json& j) {
    if (!j.is_array() || j.empty()) return false;
    for (const auto& v : j) {
        if (!v.is_number()) return false;
    }
    return true;
}

void write(std::ostream& os, const Json& j, int depth) {
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                os << "{}";
                return;
            }
            os << "{\n";
            bool first = true;
            for (const auto& [key, value] : j.items()) {
                if (!first) os << ",\n";
                first = false;
                indent(os, depth + 1);
                os << Json(key).dump() << ": ";
                write(os, value, depth + 1);
            }
            os << "\n";
            indent(os, depth);
            os << "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                os << "[]";
                return;
            }
            // numeric vectors stay on one line, matrices get one row per line
            if (is_flat_number_array(j)) {
                os << "[";
                for (std::size_t k = 0; k < j.size(); ++k) {
                    if (k) os << ", ";
                    write(os, j[k], depth + 1);
                }
                os << "]";
                return;
            }
            os << "[\n";
            for (std::size_t k = 0; k < j.size(); ++k) {
                if (k) os << ",\n";
                indent(os, depth + 1);
                write(os, j[k], depth + 1);
            }
            os << "\n";
            indent(os, depth);
            os << "]";
            return;
        }
        case Json::value_t::number_float: {
            const double x = j.get<double>();
            if (std::isfinite(x)) {
                os << format_double(x);
            } else {
                os << '"' << format_double(x) << '"';
            }
            return;
        }
        default:
            os << j.dump();
    }
}

}  // namespace

void write_json(std::ostream& os, const Json& j) {
    write(os, j, 0);
    os << "\n";
}

Json to_json(const Matrix& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
        rows.push_back(row);
    }
    return rows;
}

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const Polynomial& p) { return Json(p.coeffs()); }

Json to_json(const RationalFunction& g) {
    Json j;
    j["num"] = to_json(g.num());
    j["den"] = to_json(g.den());
    return j;
}

}  // namespace stripgain::cli
