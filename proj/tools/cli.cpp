#include "cli.hpp"

#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "stripgain/error.hpp"

namespace stripgain::cli {

namespace {

struct Inputs {
    std::string model;
    std::string model2;
    std::string strip;
    double line = 0.0;
    std::string method = "bisection";
    double tol = 1e-9;
    double gain_tol = 1e-6;
    int p = 0;
    int p2 = 0;
    double rate = 0.0;
    bool certificate = false;
    Sweep sweep;
    std::string spacing = "log";
    std::string out_path;
    std::string roc;
    std::string signal;
    Sec5Options sec5;
};

Model load(const std::string& path, Envelope& env) {
    std::string raw;
    Model m = load_model(path, &raw);
    env.digest.add(raw);
    return m;
}

nlohmann::json load_signal(const std::string& text, Envelope& env) {
    std::string raw = text;
    const auto first = text.find_first_not_of(" \t\n");
    const bool inline_json = first != std::string::npos && (text[first] == '[' || text[first] == '{');
    if (!inline_json) {
        std::ifstream in(text);
        if (!in) throw InputError("cannot open signal file '" + text + "'");
        std::stringstream buffer;
        buffer << in.rdbuf();
        raw = buffer.str();
    }
    env.digest.add(raw);
    try {
        return nlohmann::json::parse(raw);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("--signal: ") + e.what());
    }
}

laplace::Roc parse_roc(const std::string& text) {
    const auto [lo, hi] = parse_pair(text, "--roc");
    if (!(lo < hi)) throw InputError("--roc: need LO < HI");
    return {lo, hi};
}

void open_out(const std::string& path, std::ofstream& file) {
    file.open(path);
    if (!file) throw InputError("cannot write '" + path + "'");
}

void add_region(CLI::App* cmd, Inputs& in, CLI::Option*& line_opt) {
    cmd->add_option("--strip", in.strip, "strip of rates LO,HI (Re s in (-HI, -LO))");
    line_opt = cmd->add_option("--line", in.line, "single rate L (Re s = -L)");
}

void add_sweep(CLI::App* cmd, Inputs& in) {
    cmd->add_option("model", in.model, "model file")->required();
    cmd->add_option("--lambda", in.sweep.rate, "rate of the shifted axis");
    cmd->add_option("--omega-min", in.sweep.omega_min, "lowest frequency");
    cmd->add_option("--omega-max", in.sweep.omega_max, "highest frequency");
    cmd->add_option("--points", in.sweep.points, "number of rows");
    cmd->add_option("--uncertainty", in.sweep.uncertainty, "disk radius factor R");
    cmd->add_option("--spacing", in.spacing, "log or lin")->check(CLI::IsMember({"log", "lin"}));
    cmd->add_option("--out", in.out_path, "CSV file; stdout when omitted");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Strip norms, dominance and gain certificates for LTI systems", "stripgain"};
    app.require_subcommand(1);
    Inputs in;

    auto* norm = app.add_subcommand("norm", "peak gain on a line or over a strip");
    CLI::Option* norm_line = nullptr;
    norm->add_option("model", in.model, "model file")->required();
    add_region(norm, in, norm_line);
    norm->add_option("--method", in.method, "grid or bisection")->check(CLI::IsMember({"grid", "bisection"}));
    norm->add_option("--tol", in.tol, "bisection tolerance");

    auto* dom = app.add_subcommand("dominance", "p-dominance certificate at one rate");
    dom->add_option("model", in.model, "model file")->required();
    dom->add_option("--p", in.p, "dominance degree")->required();
    dom->add_option("--lambda", in.rate, "rate")->required();

    auto* gain = app.add_subcommand("gain", "differential gain with p poles right of the region");
    CLI::Option* gain_line = nullptr;
    gain->add_option("model", in.model, "model file")->required();
    gain->add_option("--p", in.p, "dominance degree")->required();
    add_region(gain, in, gain_line);
    gain->add_option("--tol", in.gain_tol, "bisection tolerance");
    gain->add_flag("--certificate", in.certificate, "attach a Riccati certificate");

    auto* sg = app.add_subcommand("smallgain", "small-gain test for a feedback pair over a strip");
    sg->add_option("model1", in.model, "first model")->required();
    sg->add_option("model2", in.model2, "second model")->required();
    sg->add_option("--p1", in.p, "degree of the first model")->required();
    sg->add_option("--p2", in.p2, "degree of the second model")->required();
    sg->add_option("--strip", in.strip, "strip LO,HI")->required();
    sg->add_option("--tol", in.gain_tol, "bisection tolerance");

    auto* nyq = app.add_subcommand("nyquist", "shifted-axis frequency response as CSV");
    add_sweep(nyq, in);
    auto* bode = app.add_subcommand("bode", "shifted-axis magnitude and phase as CSV");
    add_sweep(bode, in);

    auto* lap = app.add_subcommand("laplace", "bilateral Laplace transforms");
    lap->require_subcommand(1);
    auto* fwd = lap->add_subcommand("forward", "signal terms to transform and ROC");
    fwd->add_option("--signal", in.signal, "JSON terms, inline or a file path")->required();
    auto* inv = lap->add_subcommand("invert", "transform and ROC to signal terms");
    inv->add_option("model", in.model, "model file")->required();
    inv->add_option("--roc", in.roc, "ROC as Re(s) bounds LO,HI (inf allowed)")->required();
    auto* opts = lap->add_subcommand("options", "every admissible ROC");
    opts->add_option("model", in.model, "model file")->required();

    auto* sec5 = app.add_subcommand("example-sec5", "robustness of saturated integral control to actuator lag");
    sec5->add_option("--tau", in.sec5.tau, "actuator time constant");
    sec5->add_option("--d", in.sec5.d, "plant pole");
    sec5->add_option("--ki", in.sec5.ki, "integral gain");
    sec5->add_option("--strip", in.strip, "strip LO,HI (default 1,2)");
    sec5->add_option("--points", in.sec5.points, "nyquist rows");
    sec5->add_option("--tol", in.sec5.tol, "bisection tolerance");
    sec5->add_option("--out", in.out_path, "nyquist CSV file");

    std::vector<const char*> argv{"stripgain"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_input;
    }

    Envelope env;
    for (const auto& a : args) env.digest.add(a);
    auto emit = [&] { write_json(out, env.to_json()); };

    try {
        if (norm->parsed()) {
            env.command = "norm";
            const Model m = load(in.model, env);
            const auto region = make_region(
                in.strip, norm_line->count() ? std::optional<double>(in.line) : std::nullopt, env.warnings);
            cmd_norm(m, region, in.method == "grid" ? NormMethod::grid : NormMethod::bisection, in.tol, env);
            emit();
        } else if (dom->parsed()) {
            env.command = "dominance";
            cmd_dominance(load(in.model, env), in.p, in.rate, env);
            emit();
        } else if (gain->parsed()) {
            env.command = "gain";
            const Model m = load(in.model, env);
            const auto region = make_region(
                in.strip, gain_line->count() ? std::optional<double>(in.line) : std::nullopt, env.warnings);
            cmd_gain(m, in.p, region, in.gain_tol, in.certificate, env);
            emit();
        } else if (sg->parsed()) {
            env.command = "smallgain";
            const Model a = load(in.model, env);
            const Model b = load(in.model2, env);
            const auto [lo, hi] = parse_pair(in.strip, "--strip");
            cmd_smallgain(a, in.p, b, in.p2, Strip(lo, hi), in.gain_tol, env);
            emit();
        } else if (nyq->parsed() || bode->parsed()) {
            env.command = nyq->parsed() ? "nyquist" : "bode";
            const Model m = load(in.model, env);
            in.sweep.log_spacing = in.spacing == "log";
            const auto rows =
                frequency_response_data(m.tf(), Line(in.sweep.rate), sweep_grid(in.sweep), in.sweep.uncertainty);
            std::ofstream file;
            if (!in.out_path.empty()) open_out(in.out_path, file);
            std::ostream& csv = in.out_path.empty() ? out : file;
            if (nyq->parsed()) {
                write_nyquist_csv(csv, rows);
                env.results = summarize_nyquist(rows, in.sweep);
            } else {
                const auto b = bode_rows(rows);
                write_bode_csv(csv, b);
                env.results = summarize_bode(b, in.sweep);
            }
            if (!in.out_path.empty()) {
                env.results["csv"] = in.out_path;
                emit();
            }
        } else if (lap->parsed()) {
            if (fwd->parsed()) {
                env.command = "laplace forward";
                cmd_laplace_forward(parse_signal(load_signal(in.signal, env)), env);
            } else if (inv->parsed()) {
                env.command = "laplace invert";
                const Model m = load(in.model, env);
                cmd_laplace_invert(m, parse_roc(in.roc), env);
            } else {
                env.command = "laplace options";
                cmd_laplace_options(load(in.model, env), env);
            }
            emit();
        } else if (sec5->parsed()) {
            env.command = "example-sec5";
            if (!in.strip.empty()) {
                const auto [lo, hi] = parse_pair(in.strip, "--strip");
                in.sec5.lo = lo;
                in.sec5.hi = hi;
            }
            std::ofstream file;
            if (!in.out_path.empty()) open_out(in.out_path, file);
            const std::string verdict = cmd_example_sec5(in.sec5, env, in.out_path.empty() ? nullptr : &file);
            if (!in.out_path.empty()) env.results["csv"] = in.out_path;
            emit();
            err << verdict << "\n";
        }
        return exit_ok;
    } catch (const InputError& e) {
        env.results = Json::object();
        env.error = Json{{"kind", "InputError"}, {"message", e.what()}};
        emit();
        err << "error: " << e.what() << "\n";
        return exit_input;
    } catch (const Error& e) {
        env.results = Json::object();
        Json ej;
        ej["kind"] = std::string(to_string(e.kind()));
        ej["message"] = e.what();
        if (e.detail()) ej["detail"] = *e.detail();
        env.error = ej;
        emit();
        err << "error: " << e.what() << "\n";
        return e.kind() == ErrorKind::InvalidInput ? exit_input : exit_analysis;
    } catch (const std::exception& e) {
        env.results = Json::object();
        env.error = Json{{"kind", "Failure"}, {"message", e.what()}};
        emit();
        err << "error: " << e.what() << "\n";
        return exit_analysis;
    }
}

}  // namespace stripgain::cli
