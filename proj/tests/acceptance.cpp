// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include <json.hpp>

#include "cli.hpp"
#include "oracles.hpp"
#include "stripgain/dominance.hpp"
#include "stripgain/error.hpp"
#include "stripgain/laplace.hpp"
#include "stripgain/statespace.hpp"
#include "stripgain/strip_analysis.hpp"

using namespace stripgain;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            if (pass) detail = what;
            pass = false;
        }
    }
};

int failures = 0;

void criterion(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail = std::string("threw: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (budget_s > 0 && secs > budget_s) {
        o.require(false, "runtime " + std::to_string(secs) + " s over budget " + std::to_string(budget_s) + " s");
    }
    failures += !o.pass;
    std::printf("%s %2d %-40s %8.3f s  %s\n", o.pass ? "PASS" : "FAIL", id, name, secs, o.detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

RationalFunction tf(const oracle::coeffs& num, const oracle::coeffs& den) { return {Polynomial(num), Polynomial(den)}; }

/// Random proper SISO transfer function with poles at least `gap` from Re = -rate.
std::pair<oracle::coeffs, oracle::coeffs> random_system(oracle::PoleSampler& rng, double rate, double gap,
                                                        bool strictly_proper) {
    const int n = rng.integer(1, 6);
    std::vector<double> real_roots;
    std::vector<oracle::cplx> pairs;
    while (static_cast<int>(real_roots.size() + 2 * pairs.size()) < n) {
        const int left = n - static_cast<int>(real_roots.size() + 2 * pairs.size());
        if (left >= 2 && rng.uniform(0, 1) < 0.5) {
            pairs.emplace_back(rng.real_part(-rate, gap, 3.0), rng.uniform(0.1, 3.0));
        } else {
            real_roots.push_back(rng.real_part(-rate, gap, 3.0));
        }
    }
    const int num_len = strictly_proper ? rng.integer(1, n) : rng.integer(1, n + 1);
    oracle::coeffs num(static_cast<std::size_t>(num_len));
    for (double& c : num) c = rng.uniform(-2, 2);
    if (std::abs(num.back()) < 0.2) num.back() = 0.8;
    return {num, oracle::poly_from(real_roots, pairs)};
}

/// Same, with no pole within `gap` of the closed strip band.
std::pair<oracle::coeffs, oracle::coeffs> random_strip_system(oracle::PoleSampler& rng, const Strip& s, double gap) {
    const int n = rng.integer(1, 6);
    std::vector<double> real_roots;
    std::vector<oracle::cplx> pairs;
    while (static_cast<int>(real_roots.size() + 2 * pairs.size()) < n) {
        const int left = n - static_cast<int>(real_roots.size() + 2 * pairs.size());
        const double re = rng.real_part_outside(s.re_left(), s.re_right(), gap, 3.0);
        if (left >= 2 && rng.uniform(0, 1) < 0.5) {
            pairs.emplace_back(re, rng.uniform(0.1, 3.0));
        } else {
            real_roots.push_back(re);
        }
    }
    oracle::coeffs num(static_cast<std::size_t>(rng.integer(1, n + 1)));
    for (double& c : num) c = rng.uniform(-2, 2);
    if (std::abs(num.back()) < 0.2) num.back() = 0.8;
    return {num, oracle::poly_from(real_roots, pairs)};
}

/// Characteristic polynomial by Faddeev-LeVerrier, then Durand-Kerner roots.
int right_of(const Matrix& a, double rate) {
    const auto n = a.rows();
    std::vector<double> c(static_cast<std::size_t>(n + 1), 0.0);
    c[n] = 1.0;
    Matrix m = Matrix::Zero(n, n);
    for (Eigen::Index k = 1; k <= n; ++k) {
        m = a * m + c[n - k + 1] * Matrix::Identity(n, n);
        c[n - k] = -(a * m).trace() / static_cast<double>(k);
    }
    int count = 0;
    for (const auto& r : oracle::roots(c)) count += r.real() > -rate;
    return count;
}

Outcome classical_norms() {
    Outcome o;
    for (const auto& [num, den, want, tol] :
         {std::tuple{oracle::coeffs{1}, oracle::coeffs{1, 1}, 1.0, 1e-6},
          std::tuple{oracle::coeffs{1}, oracle::coeffs{1, 0.2, 1}, 1.0 / (2 * 0.1 * std::sqrt(1 - 0.01)), 1e-4}}) {
        const auto t0 = std::chrono::steady_clock::now();
        const double got = line_norm_bisection(realize(tf(num, den)), Line(0.0), 1e-9).value;
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        o.require(std::abs(got - want) <= tol, fmt("norm %.9g, expected %.9g", got, want));
        o.require(secs < 1.0, "single norm took over 1 s");
        if (o.pass) o.detail = fmt("peak %.7f (closed form %.7f)", got, want);
    }
    return o;
}

Outcome bisection_vs_grid() {
    Outcome o;
    oracle::PoleSampler rng(2024);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
        const double rate = rng.uniform(0.0, 2.0);
        const auto [num, den] = random_system(rng, rate, 0.05, false);
        const auto g = tf(num, den);
        const double bis = line_norm_bisection(realize(g), Line(rate), 1e-9).value;
        const double grid = line_norm_grid(g, Line(rate)).value;
        const double diff = std::abs(bis - grid);
        worst = std::max(worst, diff / std::max(1e-6, 1e-3 * bis));
        o.require(diff <= std::max(1e-6, 1e-3 * bis), fmt("case %g: bisection %.9g vs grid %.9g", k, bis, grid));
    }
    if (o.pass) o.detail = fmt("20 systems, worst |diff| / allowance = %.2e", worst);
    return o;
}

Outcome singular_value_spot_checks() {
    Outcome o;
    oracle::PoleSampler rng(77);
    int agree = 0;
    int peaks = 0;
    for (int k = 0; k < 50; ++k) {
        const double rate = rng.uniform(0.0, 1.5);
        const auto [num, den] = random_system(rng, rate, 0.1, true);
        const auto g = tf(num, den);
        const auto ss = realize(g);
        const double w0 = rng.uniform(0.0, 5.0);
        const double gamma = std::abs(oracle::ratio(num, den, {-rate, w0}));
        bool ok = singular_value_test(ss, gamma, w0, Line(rate));
        const auto peak = line_norm_bisection(ss, Line(rate), 1e-9);
        if (std::isfinite(peak.peak_frequency)) {
            ++peaks;
            ok = ok && !singular_value_test(ss, 1.01 * peak.value, peak.peak_frequency, Line(rate));
        }
        agree += ok;
        o.require(ok, fmt("pair %g disagrees (gamma %.6g, w0 %.4g)", k, gamma, w0));
    }
    if (o.pass) o.detail = fmt("%g/50 agree, %g peak checks", agree, peaks);
    return o;
}

Outcome strip_reduction() {
    Outcome o;
    oracle::PoleSampler rng(31);
    double worst = -1e300;
    for (int k = 0; k < 20; ++k) {
        const double lo = rng.uniform(0.0, 1.5);
        const Strip strip(lo, lo + rng.uniform(0.3, 1.5));
        const auto [num, den] = random_strip_system(rng, strip, 0.05);
        const auto g = tf(num, den);
        const double top = strip_norm(g, strip, NormMethod::bisection, 1e-9).value;
        for (int i = 1; i <= 5; ++i) {
            const double rate = strip.lo() + (strip.hi() - strip.lo()) * i / 6.0;
            for (int j = 0; j < 5; ++j) {
                const double w = j == 0 ? 0.0 : std::pow(4.0, j - 2);  // 0, 1/4 .. 16
                const double v = std::abs(oracle::ratio(num, den, {-rate, w}));
                worst = std::max(worst, v - top);
                o.require(v <= top + 1e-9 + 1e-6 * top, fmt("case %g: interior %.9g above %.9g", k, v, top));
            }
        }
    }
    if (o.pass) o.detail = fmt("500 samples, max(interior - boundary) = %.3e", worst);
    return o;
}

Outcome dominance_certificates() {
    Outcome o;
    oracle::PoleSampler rng(404);
    std::normal_distribution<double> n01(0, 1);
    int produced = 0;
    double worst = -1e300;
    for (int k = 0; k < 20; ++k) {
        const int n = rng.integer(1, 6);
        const double rate = rng.uniform(0.0, 2.0);
        // block diagonal spectrum placed away from the line, then a random similarity
        Matrix j = Matrix::Zero(n, n);
        int p = 0;
        for (int i = 0; i < n;) {
            const double re = rng.real_part(-rate, 0.1, 3.0);
            p += re > -rate;
            if (i + 1 < n && rng.uniform(0, 1) < 0.4) {
                const double im = rng.uniform(0.2, 2.0);
                j(i, i) = re;
                j(i + 1, i + 1) = re;
                j(i, i + 1) = im;
                j(i + 1, i) = -im;
                p += re > -rate;
                i += 2;
            } else {
                j(i, i) = re;
                ++i;
            }
        }
        Matrix t = Matrix::Identity(n, n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) t(a, b) += 0.3 * n01(rng.rng);
        const Matrix a = t * j * t.inverse();
        o.require(right_of(a, rate) == p, fmt("case %g: eigenvalue count mismatch", k));
        Matrix b(n, 1);
        Matrix c(1, n);
        for (int i = 0; i < n; ++i) {
            b(i, 0) = n01(rng.rng);
            c(0, i) = n01(rng.rng);
        }
        Matrix d(1, 1);
        d(0, 0) = k % 4 == 0 ? 0.2 : 0.0;
        const StateSpace ss(a, b, c, d);
        const auto cert = dominance_check(ss, p, rate);
        o.require(cert.p_inertia == Inertia{p, 0, n - p}, fmt("case %g: wrong inertia", k));
        o.require(cert.lmi_residual <= 0.0, fmt("case %g: residual %.3e", k, cert.lmi_residual));
        worst = std::max(worst, cert.lmi_residual);

        const auto gain = l2p_gain(ss, p, Line(rate), 1e-7, true);
        if (gain.p_matrix) {
            ++produced;
            const auto check = verify_gain_lmi(ss, *gain.p_matrix, gain.certified_gamma, rate, gain.epsilon);
            o.require(check.valid && check.max_eigenvalue <= 0.0,
                      fmt("case %g: gain LMI max eigenvalue %.3e", k, check.max_eigenvalue));
        }
    }
    if (o.pass) o.detail = fmt("20 cases, worst residual %.3e, %g/20 gain certificates verified", worst, produced);
    return o;
}

Outcome small_gain_pair() {
    Outcome o;
    const Strip strip(0.5, 1.5);
    const auto r = small_gain_check(realize(tf({0.5}, {-1, 1})), 1, StateSpace::gain(1.0), 0, strip);
    o.require(std::abs(r.first.gamma - 1.0 / 3.0) <= 1e-6, fmt("gamma1 %.9g", r.first.gamma));
    o.require(r.product < 1.0, "product not below one");
    o.require(r.closed_loop.has_value(), "no closed loop");
    if (!r.closed_loop) return o;
    for (double rate : {strip.lo(), strip.hi()}) {
        o.require(right_of(r.closed_loop->a, rate) == 1, fmt("count at rate %g is not 1", rate));
    }
    const auto ev = eig(r.closed_loop->a);
    o.require(ev.size() == 1 && std::abs(ev[0] - Complex(0.5, 0.0)) <= 1e-9, "closed-loop eigenvalue is not 0.5");
    if (o.pass) o.detail = fmt("gamma1 %.9f, product %.9f, eigenvalue %.6f", r.first.gamma, r.product, ev[0].real());
    return o;
}

Outcome saturated_integral_control() {
    Outcome o;
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run_cli({"example-sec5"}, out, err);
    o.require(code == 0, "exit code " + std::to_string(code));
    const auto doc = nlohmann::json::parse(out.str());
    const auto& res = doc["results"];
    o.require(res["verdict"] == "robust 2-dominance: CONFIRMED", "verdict " + res["verdict"].dump());

    auto roots = oracle::roots({-10, 0, 50, 15, 1});
    std::sort(roots.begin(), roots.end(), [](auto a, auto b) { return a.real() > b.real(); });
    const auto& ev = res["perturbed_closed_loop"]["eigenvalues"];
    o.require(ev.size() == 4, "expected four closed-loop eigenvalues");
    for (std::size_t k = 0; k < std::min<std::size_t>(4, ev.size()); ++k) {
        const Complex z(ev[k][0].get<double>(), ev[k][1].get<double>());
        o.require(std::abs(z - roots[k]) <= 1e-3, fmt("eigenvalue %.6g vs quartic root %.6g", z.real(), roots[k].real()));
    }
    for (const auto& c : res["perturbed_closed_loop"]["right_of_line"]) {
        o.require(c[1] == 2, fmt("count at rate %g is not 2", c[0].get<double>()));
    }
    const auto& g = res["slope_one_gain"]["endpoint_gains"];
    const double g1 = g[0].get<double>();
    const double g2 = g[1].get<double>();
    o.require(std::abs(g1 - 1.0 / 3.0) <= 1e-5 && std::abs(g2 - 1.0 / 11.0) <= 1e-5,
              fmt("endpoint gains %.9g, %.9g", g1, g2));
    o.require(res["small_gain"]["product"].get<double>() < 1.0, "product not below one");
    const auto& ref = res["reference"];
    o.require(ref.contains("delta_norm") && ref.contains("endpoint_gains") && ref.contains("margin"),
              "reference annotations missing");
    if (o.pass) {
        std::ostringstream d;
        d << "eigenvalues";
        for (const auto& z : ev) d << ' ' << fmt("%.4f", z[0].get<double>());
        d << fmt("; gains %.6f/%.6f; margin %.4f", g1, g2, res["margin"].get<double>());
        d << fmt(" (reference %.4f/%.4f, margin %.4f; not asserted)", ref["endpoint_gains"][0].get<double>(),
                 ref["endpoint_gains"][1].get<double>(), ref["margin"].get<double>());
        d << fmt("; |Delta| %.6f (reference %.4f)", res["delta"]["norm"]["value"].get<double>(),
                 ref["delta_norm"].get<double>());
        o.detail = d.str();
    }
    return o;
}

SampledSignal padded(double t_start, double t_end, double pad, double h, const std::function<double(double)>& f) {
    SampledSignal s{t_start - pad, h, {}};
    const auto n = static_cast<std::size_t>(std::lround((t_end - t_start + 2 * pad) / h));
    for (std::size_t k = 0; k <= n; ++k) {
        const double t = s.time(k);
        s.samples.push_back(t >= t_start && t <= t_end ? f(t) : 0.0);
    }
    return s;
}

Outcome convolution_gain() {
    Outcome o;
    const oracle::coeffs num{1};
    const oracle::coeffs den = oracle::poly_from({1, -3});
    const auto g = tf(num, den);
    const auto ss = realize(g);
    const Strip strip(0, 2);
    const auto norm = strip_norm(g, strip, NormMethod::bisection, 1e-9);
    const double gamma = norm.value;
    const double h = 0.01;
    const double pad = 30.0;

    oracle::PoleSampler rng(8);
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
        // piecewise linear through random knots on [a, a + span]
        const double a = rng.uniform(-3, 1);
        const double span = rng.uniform(1, 6);
        std::vector<double> knots(static_cast<std::size_t>(rng.integer(3, 12)));
        for (double& v : knots) v = rng.uniform(-1, 1);
        knots.front() = 0.0;
        knots.back() = 0.0;
        const auto u = padded(a, a + span, pad, h, [&](double t) {
            const double x = (t - a) / span * static_cast<double>(knots.size() - 1);
            const auto i = std::min(static_cast<std::size_t>(x), knots.size() - 2);
            return knots[i] + (x - static_cast<double>(i)) * (knots[i + 1] - knots[i]);
        });
        const auto y = convolve(ss, strip, u);
        const double ratio = weighted_l2_norm(y, strip) / weighted_l2_norm(u, strip);
        worst = std::max(worst, ratio / gamma);
        o.require(ratio <= 1.02 * gamma, fmt("input %g: ratio %.6g above 1.02 gamma", k, ratio));
    }

    // near-attaining input: e^{-lambda t} cos(w t) on the side where the strip weight peaks
    const double rate = norm.attained_at == Boundary::hi ? strip.hi() : strip.lo();
    double slowest = 1e300;
    for (const auto& p : g.poles()) slowest = std::min(slowest, std::abs(p.real() + rate));
    const double window = 40.0 / slowest;
    const double w = std::isfinite(norm.peak_frequency) ? norm.peak_frequency : 0.0;
    const bool right_side = norm.attained_at == Boundary::hi;
    const double t0 = right_side ? 0.0 : -window;
    const auto u = padded(t0, t0 + window, pad, h, [&](double t) { return std::exp(-rate * t) * std::cos(w * t); });
    const auto y = convolve(ss, strip, u);
    const double achieved = weighted_l2_norm(y, strip) / weighted_l2_norm(u, strip);
    o.require(achieved >= 0.90 * gamma, fmt("windowed sinusoid reaches %.6g of %.6g", achieved, gamma));
    if (o.pass) {
        o.detail = fmt("gamma %.6f; worst random ratio %.4f gamma; windowed input %.4f gamma", gamma, worst,
                       achieved / gamma);
    }
    return o;
}

Outcome laplace_round_trips() {
    Outcome o;
    oracle::PoleSampler rng(97);
    int checked = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const int n = rng.integer(1, 6);
        std::vector<double> real_roots;
        std::vector<Complex> pairs;
        while (static_cast<int>(real_roots.size() + 2 * pairs.size()) < n) {
            if (n - static_cast<int>(real_roots.size() + 2 * pairs.size()) >= 2 && rng.uniform(0, 1) < 0.5) {
                pairs.emplace_back(rng.uniform(-3, 3), rng.uniform(0.2, 2));
            } else {
                real_roots.push_back(rng.uniform(-3, 3));
            }
        }
        oracle::coeffs num(static_cast<std::size_t>(rng.integer(1, n)));
        for (double& c : num) c = rng.uniform(-2, 2);
        if (std::abs(num.back()) < 0.2) num.back() = 0.7;
        const auto f = tf(num, oracle::poly_from(real_roots, pairs));
        for (const auto& roc : laplace::roc_options(f)) {
            ++checked;
            const auto back = laplace::forward(laplace::inverse(f, roc));
            const auto same = [](double x, double y) { return x == y || std::abs(x - y) <= 1e-9 * (1 + std::abs(y)); };
            o.require(same(back.roc.re_min, roc.re_min) && same(back.roc.re_max, roc.re_max),
                      fmt("trial %g: region changed", trial));
            const auto& a = back.transform.num().coeffs();
            const auto& b = f.num().coeffs();
            const auto& c = back.transform.den().coeffs();
            const auto& d = f.den().coeffs();
            o.require(c.size() == d.size(), fmt("trial %g: denominator degree changed", trial));
            for (std::size_t k = 0; k < std::min(c.size(), d.size()); ++k) {
                o.require(std::abs(c[k] - d[k]) <= 1e-9 * (1 + std::abs(d[k])), fmt("trial %g: den mismatch", trial));
            }
            for (std::size_t k = 0; k < std::max(a.size(), b.size()); ++k) {
                const double x = k < a.size() ? a[k] : 0.0;
                const double y = k < b.size() ? b[k] : 0.0;
                o.require(std::abs(x - y) <= 1e-9 * (1 + std::abs(y)), fmt("trial %g: num mismatch", trial));
            }
        }
    }

    // two-sided exponential with alpha = 1
    const laplace::SignalSpec two_sided{
        {{1.0, 0, -1.0, laplace::Direction::causal}, {1.0, 0, 1.0, laplace::Direction::anticausal}}};
    const auto pair = laplace::forward(two_sided);
    o.require(pair.transform.num() == Polynomial{-2} && pair.transform.den() == Polynomial{-1, 0, 1},
              "two-sided exponential is not -2/(s^2 - 1)");
    o.require(pair.roc == laplace::Roc{-1.0, 1.0}, "two-sided exponential region is not (-1, 1)");

    // modal impulse response against the inverse transform on the strip
    const auto g = tf({1, 0.5}, oracle::poly_from({1, -3}, {{-0.2, 1.0}}));
    const auto ss = realize(g);
    const Strip strip(0.5, 2.5);
    const auto spec = laplace::inverse(g, laplace::to_roc(strip));
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        const double t = -4.0 + 0.08 * k + 1e-3;
        worst = std::max(worst, std::abs(laplace::eval_signal(spec, t) - impulse_response(ss, strip, t)));
    }
    o.require(worst <= 1e-8, fmt("impulse response differs by %.3e", worst));
    if (o.pass) o.detail = fmt("%g round trips; impulse response max diff %.2e", checked, worst);
    return o;
}

Outcome h2_and_decomposition() {
    Outcome o;
    const double h2 = h2_line_norm(tf({1}, {1, 1}), Line(0.0));
    o.require(std::abs(h2 - std::sqrt(0.5)) <= 1e-6, fmt("h2 norm %.9g", h2));
    const Line line(1.0);
    const auto parts = decompose_line(tf({1}, oracle::poly_from({1, -3})), line);
    const double nm = h2_line_norm(parts.minus, line);
    const double np = h2_line_norm(parts.plus, line);
    const double ip = std::abs(line_inner_product(parts.minus, parts.plus, line));
    o.require(ip <= 1e-6 * nm * np, fmt("inner product %.3e vs norms %.4g, %.4g", ip, nm, np));
    if (o.pass) o.detail = fmt("h2 %.9f; |<minus, plus>| = %.2e", h2, ip);
    return o;
}

}  // namespace

int main() {
    criterion(1, "classical norms", 2.0, classical_norms);
    criterion(2, "bisection against refined grid", 10.0, bisection_vs_grid);
    criterion(3, "singular value test spot checks", 5.0, singular_value_spot_checks);
    criterion(4, "strip reduction to boundary lines", 0.0, strip_reduction);
    criterion(5, "dominance and gain certificates", 0.0, dominance_certificates);
    criterion(6, "small-gain worked pair", 0.0, small_gain_pair);
    criterion(7, "saturated integral control example", 5.0, saturated_integral_control);
    criterion(8, "convolution gain bound", 30.0, convolution_gain);
    criterion(9, "laplace round trips", 0.0, laplace_round_trips);
    criterion(10, "h2 norm and line decomposition", 0.0, h2_and_decomposition);
    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
