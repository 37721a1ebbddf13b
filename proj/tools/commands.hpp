#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "envelope.hpp"
#include "model_io.hpp"
#include "stripgain/laplace.hpp"
#include "stripgain/region.hpp"
#include "stripgain/strip_analysis.hpp"

namespace stripgain::cli {

/// "LO,HI" -> (LO, HI); accepts inf/-inf. Throws InputError.
[[nodiscard]] std::pair<double, double> parse_pair(const std::string& text, const std::string& flag);

/// Either a strip or a line. A strip with LO == HI collapses to its line.
struct Region {
    std::optional<Strip> strip;
    std::optional<Line> line;
};

[[nodiscard]] Region make_region(const std::string& strip_text, std::optional<double> line,
                                 std::vector<std::string>& warnings);
[[nodiscard]] Json to_json(const Region& r);

void cmd_norm(const Model& model, const Region& region, NormMethod method, double tol, Envelope& env);
void cmd_dominance(const Model& model, int p, double rate, Envelope& env);
void cmd_gain(const Model& model, int p, const Region& region, double tol, bool certificate, Envelope& env);
void cmd_smallgain(const Model& first, int p1, const Model& second, int p2, const Strip& strip, double tol,
                   Envelope& env);

struct Sweep {
    double rate = 0.0;
    double omega_min = 1e-3;
    double omega_max = 1e3;
    int points = 200;
    double uncertainty = 0.0;
    bool log_spacing = true;
};

[[nodiscard]] std::vector<double> sweep_grid(const Sweep& sweep);

struct BodeRow {
    double omega;
    double mag_db;
    double phase_deg;
};

[[nodiscard]] std::vector<BodeRow> bode_rows(const std::vector<FrequencyRow>& rows);

void write_nyquist_csv(std::ostream& os, const std::vector<FrequencyRow>& rows);
void write_bode_csv(std::ostream& os, const std::vector<BodeRow>& rows);

/// min over rows of |1 + L| - R|L|; positive means every disk clears -1.
[[nodiscard]] double disk_clearance(const std::vector<FrequencyRow>& rows);

[[nodiscard]] Json summarize_nyquist(const std::vector<FrequencyRow>& rows, const Sweep& sweep);
[[nodiscard]] Json summarize_bode(const std::vector<BodeRow>& rows, const Sweep& sweep);

[[nodiscard]] laplace::SignalSpec parse_signal(const nlohmann::json& doc);
[[nodiscard]] Json to_json(const laplace::SignalSpec& spec);
[[nodiscard]] Json to_json(const laplace::Roc& roc);

void cmd_laplace_forward(const laplace::SignalSpec& spec, Envelope& env);
void cmd_laplace_invert(const Model& model, const laplace::Roc& roc, Envelope& env);
void cmd_laplace_options(const Model& model, Envelope& env);

struct Sec5Options {
    double tau = 0.1;
    double d = 5.0;
    double ki = -1.0;
    double lo = 1.0;
    double hi = 2.0;
    int points = 200;
    double tol = 1e-9;
};

/// Fills the envelope; writes the nyquist data to `csv` when given.
/// Returns the verdict line.
std::string cmd_example_sec5(const Sec5Options& opt, Envelope& env, std::ostream* csv);

[[nodiscard]] Json to_json(const NormResult& r);

/// True when g agrees with num/den (ascending) at a few probe points.
[[nodiscard]] bool same_tf(const RationalFunction& g, const std::vector<double>& num, const std::vector<double>& den);

}  // namespace stripgain::cli
