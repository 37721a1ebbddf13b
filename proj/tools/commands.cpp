#include "commands.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include "stripgain/dominance.hpp"
#include "stripgain/error.hpp"

namespace stripgain::cli {

namespace {

double parse_double(std::string_view text, const std::string& flag) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        throw InputError(flag + ": '" + std::string(text) + "' is not a number");
    }
    return value;
}

Json inertia_json(const Inertia& in) {
    Json j;
    j["negative"] = in.negative;
    j["zero"] = in.zero;
    j["positive"] = in.positive;
    return j;
}

Json dominance_json(const DominanceCertificate& c) {
    Json j;
    j["p"] = c.p;
    j["rate"] = c.rate;
    j["P"] = to_json(c.p_matrix);
    j["epsilon"] = c.epsilon;
    j["inertia"] = inertia_json(c.p_inertia);
    j["lmi_residual"] = c.lmi_residual;
    return j;
}

Json gain_json(const GainCertificate& c) {
    Json j;
    j["rate"] = c.rate;
    j["p"] = c.p;
    j["gamma"] = c.gamma;
    j["norm"] = to_json(c.norm);
    return j;
}

Json gain_certificate_json(const GainCertificate& c) {
    Json j;
    j["rate"] = c.rate;
    j["certified_gamma"] = c.certified_gamma;
    j["epsilon"] = c.epsilon;
    if (c.p_matrix) j["P"] = to_json(*c.p_matrix);
    if (c.lmi_residual) j["lmi_residual"] = *c.lmi_residual;
    return j;
}

Json strip_gain_json(const StripGainReport& r) {
    Json j;
    j["gamma"] = r.gamma;
    j["attained_at"] = std::string(to_string(r.attained_at));
    j["endpoint_gains"] = Json::array({r.lo.gamma, r.hi.gamma});
    j["lo"] = gain_json(r.lo);
    j["hi"] = gain_json(r.hi);
    Json interior = Json::array();
    for (const auto& [rate, g] : r.interior) interior.push_back(Json::array({rate, g}));
    j["interior_samples"] = interior;
    return j;
}

}  // namespace

std::pair<double, double> parse_pair(const std::string& text, const std::string& flag) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw InputError(flag + ": expected LO,HI, got '" + text + "'");
    const std::string_view view(text);
    return {parse_double(view.substr(0, comma), flag), parse_double(view.substr(comma + 1), flag)};
}

Region make_region(const std::string& strip_text, std::optional<double> line, std::vector<std::string>& warnings) {
    Region r;
    if (!strip_text.empty() && line) throw InputError("--strip and --line are mutually exclusive");
    if (line) {
        r.line = Line(*line);
        return r;
    }
    if (strip_text.empty()) throw InputError("one of --strip LO,HI or --line L is required");
    const auto [lo, hi] = parse_pair(strip_text, "--strip");
    if (lo == hi) {
        r.line = Line(lo);
        warnings.push_back("degenerate strip " + strip_text + " treated as the line at rate " + format_double(lo));
        return r;
    }
    r.strip = Strip(lo, hi);
    return r;
}

Json to_json(const Region& r) {
    Json j;
    if (r.strip) {
        j["kind"] = "strip";
        j["lo"] = r.strip->lo();
        j["hi"] = r.strip->hi();
    } else {
        j["kind"] = "line";
        j["rate"] = r.line->rate();
    }
    return j;
}

Json to_json(const NormResult& r) {
    Json j;
    j["value"] = r.value;
    j["method"] = std::string(to_string(r.method));
    j["engine"] = std::string(to_string(r.engine));
    j["tolerance"] = r.tolerance;
    j["peak_frequency"] = r.peak_frequency;
    if (r.attained_at) j["attained_at"] = std::string(to_string(*r.attained_at));
    if (r.boundary_values) j["boundary_values"] = Json::array({(*r.boundary_values)[0], (*r.boundary_values)[1]});
    if (r.bracket) j["bracket"] = Json::array({(*r.bracket)[0], (*r.bracket)[1]});
    return j;
}

bool same_tf(const RationalFunction& g, const std::vector<double>& num, const std::vector<double>& den) {
    const RationalFunction ref{Polynomial(num), Polynomial(den)};
    if (ref.order() != g.order()) return false;
    for (const Complex s : {Complex(0.37, 0.71), Complex(1.3, -2.1), Complex(-0.6, 3.3)}) {
        const Complex a = g(s);
        const Complex b = ref(s);
        if (std::abs(a - b) > 1e-9 * (1.0 + std::abs(b))) return false;
    }
    return true;
}

// Reference figures for the saturated-integral-control example. They are
// reported next to the computed values and never asserted.
namespace {

bool is_unit_two_strip(const Region& r) { return r.strip && r.strip->lo() == 1.0 && r.strip->hi() == 2.0; }

}  // namespace

void cmd_norm(const Model& model, const Region& region, NormMethod method, double tol, Envelope& env) {
    const RationalFunction g = model.tf();
    NormResult r;
    if (region.line) {
        r = method == NormMethod::grid ? line_norm_grid(g, *region.line)
                                       : line_norm_bisection(model.ss(), *region.line, tol);
    } else {
        r = strip_norm(g, *region.strip, method, tol);
    }
    env.results["region"] = to_json(region);
    env.results["norm"] = to_json(r);
    if (is_unit_two_strip(region) && same_tf(g, {0.0, -0.1}, {1.0, 0.1})) {
        Json ref;
        ref["value"] = 1.1111;
        ref["boundary_values"] = Json::array({1.1111, 1.0526});
        env.results["reference"] = ref;
        env.warnings.push_back("reference strip norm 1.1111 (boundary values 1.1111, 1.0526) differs from computed " +
                               format_double(r.value) + "; grid and bisection agree and are authoritative");
    }
}

void cmd_dominance(const Model& model, int p, double rate, Envelope& env) {
    const auto cert = dominance_check(model.ss(), p, rate);
    env.results["certified"] = true;
    env.results["p"] = p;
    env.results["rate"] = rate;
    env.results["attractors"] = classify_attractors(p);
    env.certificates["dominance"] = dominance_json(cert);
}

void cmd_gain(const Model& model, int p, const Region& region, double tol, bool certificate, Envelope& env) {
    const StateSpace ss = model.ss();
    env.results["region"] = to_json(region);
    env.results["p"] = p;
    if (region.line) {
        const auto c = l2p_gain(ss, p, *region.line, tol, certificate);
        env.results["gamma"] = c.gamma;
        env.results["line"] = gain_json(c);
        if (certificate) env.certificates["gain"] = gain_certificate_json(c);
    } else {
        const auto r = strip_gain(ss, p, *region.strip, tol, certificate);
        env.results["gamma"] = r.gamma;
        env.results["strip"] = strip_gain_json(r);
        if (certificate) {
            env.certificates["gain_lo"] = gain_certificate_json(r.lo);
            env.certificates["gain_hi"] = gain_certificate_json(r.hi);
        }
        if (is_unit_two_strip(region) && same_tf(model.tf(), {1.0}, {-1.0, 0.0, 5.0, 1.0})) {
            Json ref;
            ref["gamma"] = 0.3528;
            ref["endpoint_gains"] = Json::array({0.3528, 0.1414});
            env.results["reference"] = ref;
            env.warnings.push_back("reference endpoint gains 0.3528, 0.1414 differ from computed " +
                                   format_double(r.lo.gamma) + ", " + format_double(r.hi.gamma) +
                                   "; direct evaluation at s = -lambda gives 1/3 and 1/11");
        }
    }
    if (p >= 0) env.results["attractors"] = classify_attractors(p);
}

void cmd_smallgain(const Model& first, int p1, const Model& second, int p2, const Strip& strip, double tol,
                   Envelope& env) {
    const auto r = small_gain_check(first.ss(), p1, second.ss(), p2, strip, tol);
    env.results["strip"] = Json::array({strip.lo(), strip.hi()});
    env.results["verdict"] = r.verdict == SmallGainVerdict::confirmed ? "confirmed" : "inconclusive";
    env.results["gamma1"] = r.first.gamma;
    env.results["gamma2"] = r.second.gamma;
    env.results["product"] = r.product;
    env.results["first"] = strip_gain_json(r.first);
    env.results["second"] = strip_gain_json(r.second);
    if (r.verdict == SmallGainVerdict::confirmed) {
        env.results["closed_loop_p"] = p1 + p2;
        env.results["attractors"] = classify_attractors(p1 + p2);
        Json cl;
        cl["A"] = to_json(r.closed_loop->a);
        cl["B"] = to_json(r.closed_loop->b);
        cl["C"] = to_json(r.closed_loop->c);
        cl["D"] = to_json(r.closed_loop->d);
        env.results["closed_loop"] = cl;
        env.certificates["closed_loop_lo"] = dominance_json(*r.lo);
        env.certificates["closed_loop_hi"] = dominance_json(*r.hi);
    } else {
        env.warnings.push_back("gain product " + format_double(r.product) +
                               " >= 1: small-gain test inconclusive");
    }
}

std::vector<double> sweep_grid(const Sweep& s) {
    if (s.points < 1) throw InputError("--points must be positive");
    if (!(s.omega_min <= s.omega_max) || s.omega_min < 0.0 || !std::isfinite(s.omega_max)) {
        throw InputError("frequency range must satisfy 0 <= omega-min <= omega-max < inf");
    }
    if (s.log_spacing && s.omega_min <= 0.0) throw InputError("log spacing needs omega-min > 0; use --spacing lin");
    std::vector<double> w(static_cast<std::size_t>(s.points));
    if (s.points == 1) {
        w[0] = s.omega_min;
        return w;
    }
    const double n = s.points - 1;
    for (int k = 0; k < s.points; ++k) {
        if (s.log_spacing) {
            const double a = std::log10(s.omega_min);
            const double b = std::log10(s.omega_max);
            w[k] = std::pow(10.0, a + (b - a) * k / n);
        } else {
            w[k] = s.omega_min + (s.omega_max - s.omega_min) * k / n;
        }
    }
    w.front() = s.omega_min;
    w.back() = s.omega_max;
    return w;
}

std::vector<BodeRow> bode_rows(const std::vector<FrequencyRow>& rows) {
    std::vector<BodeRow> out;
    out.reserve(rows.size());
    double prev = 0.0;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        double phase = std::atan2(rows[k].im, rows[k].re) * 180.0 / std::numbers::pi;
        if (k > 0) phase -= 360.0 * std::round((phase - prev) / 360.0);
        prev = phase;
        out.push_back({rows[k].omega, 20.0 * std::log10(rows[k].mag), phase});
    }
    return out;
}

void write_nyquist_csv(std::ostream& os, const std::vector<FrequencyRow>& rows) {
    os << "omega,re,im,mag,disk_radius\n";
    for (const auto& r : rows) {
        os << format_double(r.omega) << ',' << format_double(r.re) << ',' << format_double(r.im) << ','
           << format_double(r.mag) << ',' << format_double(r.disk_radius) << '\n';
    }
}

void write_bode_csv(std::ostream& os, const std::vector<BodeRow>& rows) {
    os << "omega,mag_db,phase_deg\n";
    for (const auto& r : rows) {
        os << format_double(r.omega) << ',' << format_double(r.mag_db) << ',' << format_double(r.phase_deg) << '\n';
    }
}

double disk_clearance(const std::vector<FrequencyRow>& rows) {
    double out = std::numeric_limits<double>::infinity();
    for (const auto& r : rows) out = std::min(out, std::hypot(1.0 + r.re, r.im) - r.disk_radius);
    return out;
}

Json summarize_nyquist(const std::vector<FrequencyRow>& rows, const Sweep& sweep) {
    Json j;
    j["rate"] = sweep.rate;
    j["points"] = rows.size();
    j["uncertainty"] = sweep.uncertainty;
    std::size_t peak = 0;
    for (std::size_t k = 1; k < rows.size(); ++k) {
        if (rows[k].mag > rows[peak].mag) peak = k;
    }
    j["peak_mag"] = rows.empty() ? 0.0 : rows[peak].mag;
    j["peak_omega"] = rows.empty() ? 0.0 : rows[peak].omega;
    const double clearance = disk_clearance(rows);
    j["disk_clearance"] = clearance;
    j["outside_disk"] = clearance > 0.0;
    return j;
}

Json summarize_bode(const std::vector<BodeRow>& rows, const Sweep& sweep) {
    Json j;
    j["rate"] = sweep.rate;
    j["points"] = rows.size();
    std::size_t peak = 0;
    for (std::size_t k = 1; k < rows.size(); ++k) {
        if (rows[k].mag_db > rows[peak].mag_db) peak = k;
    }
    j["peak_mag_db"] = rows.empty() ? 0.0 : rows[peak].mag_db;
    j["peak_omega"] = rows.empty() ? 0.0 : rows[peak].omega;
    return j;
}

namespace {

Complex complex_field(const nlohmann::json& term, const char* key, Complex fallback) {
    if (!term.contains(key)) return fallback;
    const auto& v = term.at(key);
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        return {v[0].get<double>(), v[1].get<double>()};
    }
    throw InputError(std::string("signal term field '") + key + "' must be a number or [re, im]");
}

}  // namespace

laplace::SignalSpec parse_signal(const nlohmann::json& doc) {
    const nlohmann::json* terms = &doc;
    if (doc.is_object()) {
        if (!doc.contains("terms")) throw InputError("signal: missing field 'terms'");
        terms = &doc.at("terms");
    }
    if (!terms->is_array()) throw InputError("signal: 'terms' must be an array");
    laplace::SignalSpec spec;
    for (std::size_t k = 0; k < terms->size(); ++k) {
        const auto& t = (*terms)[k];
        if (!t.is_object()) throw InputError("signal: terms[" + std::to_string(k) + "] must be an object");
        laplace::SignalTerm term;
        term.coefficient = complex_field(t, "coefficient", {1.0, 0.0});
        term.exponent = complex_field(t, "exponent", {0.0, 0.0});
        if (t.contains("power")) {
            if (!t.at("power").is_number_integer()) {
                throw InputError("signal: terms[" + std::to_string(k) + "].power must be an integer");
            }
            term.power = t.at("power").get<int>();
        }
        const std::string dir = t.value("direction", std::string("causal"));
        if (dir == "causal") {
            term.direction = laplace::Direction::causal;
        } else if (dir == "anticausal") {
            term.direction = laplace::Direction::anticausal;
        } else {
            throw InputError("signal: terms[" + std::to_string(k) + "].direction must be causal or anticausal");
        }
        spec.terms.push_back(term);
    }
    return spec;
}

Json to_json(const laplace::SignalSpec& spec) {
    Json out = Json::array();
    for (const auto& t : spec.terms) {
        Json j;
        j["coefficient"] = to_json(t.coefficient);
        j["power"] = t.power;
        j["exponent"] = to_json(t.exponent);
        j["direction"] = t.direction == laplace::Direction::causal ? "causal" : "anticausal";
        out.push_back(j);
    }
    return out;
}

Json to_json(const laplace::Roc& roc) {
    Json j;
    j["re_min"] = roc.re_min;
    j["re_max"] = roc.re_max;
    return j;
}

void cmd_laplace_forward(const laplace::SignalSpec& spec, Envelope& env) {
    const auto pair = laplace::forward(spec);
    env.results["signal"] = to_json(spec);
    env.results["transform"] = to_json(pair.transform);
    env.results["roc"] = to_json(pair.roc);
}

void cmd_laplace_invert(const Model& model, const laplace::Roc& roc, Envelope& env) {
    const RationalFunction f = model.tf();
    env.results["transform"] = to_json(f);
    env.results["roc"] = to_json(roc);
    env.results["signal"] = to_json(laplace::inverse(f, roc));
}

void cmd_laplace_options(const Model& model, Envelope& env) {
    const RationalFunction f = model.tf();
    env.results["transform"] = to_json(f);
    Json options = Json::array();
    for (const auto& roc : laplace::roc_options(f)) options.push_back(to_json(roc));
    env.results["roc_options"] = options;
}

}  // namespace stripgain::cli
