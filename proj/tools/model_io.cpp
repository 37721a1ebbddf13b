#include "model_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "stripgain/error.hpp"

namespace stripgain::cli {

namespace {

using nlohmann::json;

std::vector<double> number_list(const json& doc, const std::string& field, const std::string& origin) {
    if (!doc.contains(field)) throw InputError(origin + ": missing field '" + field + "'");
    const json& arr = doc.at(field);
    if (!arr.is_array() || arr.empty()) throw InputError(origin + ": field '" + field + "' must be a nonempty array");
    std::vector<double> out;
    for (std::size_t k = 0; k < arr.size(); ++k) {
        if (!arr[k].is_number()) {
            throw InputError(origin + ": field '" + field + "[" + std::to_string(k) + "]' is not a number");
        }
        out.push_back(arr[k].get<double>());
    }
    return out;
}

Matrix matrix_field(const json& doc, const std::string& field, const std::string& origin) {
    if (!doc.contains(field)) throw InputError(origin + ": missing field '" + field + "'");
    const json& rows = doc.at(field);
    if (!rows.is_array()) throw InputError(origin + ": field '" + field + "' must be an array of rows");
    if (rows.empty()) return Matrix(0, 0);
    const std::size_t cols = rows[0].is_array() ? rows[0].size() : 0;
    Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::string where = field + "[" + std::to_string(i) + "]";
        if (!rows[i].is_array() || rows[i].size() != cols) {
            throw InputError(origin + ": row '" + where + "' must be an array of " + std::to_string(cols) + " numbers");
        }
        for (std::size_t j = 0; j < cols; ++j) {
            if (!rows[i][j].is_number()) {
                throw InputError(origin + ": entry '" + where + "[" + std::to_string(j) + "]' is not a number");
            }
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j].get<double>();
        }
    }
    return m;
}

}  // namespace

RationalFunction Model::tf() const {
    if (const auto* g = std::get_if<RationalFunction>(&value)) return *g;
    return tf_of(std::get<StateSpace>(value));
}

StateSpace Model::ss() const {
    if (const auto* s = std::get_if<StateSpace>(&value)) return *s;
    return realize(std::get<RationalFunction>(value));
}

Model parse_model(const json& doc, const std::string& origin) {
    if (!doc.is_object()) throw InputError(origin + ": model must be a JSON object");
    if (!doc.contains("kind") || !doc.at("kind").is_string()) {
        throw InputError(origin + ": missing string field 'kind' (\"tf\" or \"ss\")");
    }
    const std::string kind = doc.at("kind").get<std::string>();
    try {
        if (kind == "tf") {
            const auto num = number_list(doc, "num", origin);
            const auto den = number_list(doc, "den", origin);
            return {RationalFunction(Polynomial(num), Polynomial(den))};
        }
        if (kind == "ss") {
            Matrix a = matrix_field(doc, "A", origin);
            Matrix b = matrix_field(doc, "B", origin);
            Matrix c = matrix_field(doc, "C", origin);
            const Matrix d = matrix_field(doc, "D", origin);
            // Empty A/B/C with a D block describes a static gain.
            if (a.size() == 0) {
                a = Matrix(0, 0);
                b = Matrix(0, d.cols());
                c = Matrix(d.rows(), 0);
            }
            return {StateSpace(a, b, c, d)};
        }
    } catch (const Error& e) {
        throw InputError(origin + ": " + e.what());
    }
    throw InputError(origin + ": field 'kind' must be \"tf\" or \"ss\", got \"" + kind + "\"");
}

Model load_model(const std::string& path, std::string* raw) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open model file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    if (raw) *raw = text;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
    return parse_model(doc, path);
}

}  // namespace stripgain::cli
