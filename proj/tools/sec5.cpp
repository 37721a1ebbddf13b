// Saturated integral control: integrator plant 1/(s(s+d)) under integral
// action k_i/s, a unit-slope saturation and an actuator lag 1/(1+tau s)
// written as the multiplicative perturbation Delta = -tau s/(1+tau s).

#include <algorithm>

#include "commands.hpp"
#include "stripgain/dominance.hpp"
#include "stripgain/error.hpp"

namespace stripgain::cli {

namespace {

Json eigen_list(std::vector<Complex> ev) {
    std::sort(ev.begin(), ev.end(), [](Complex a, Complex b) {
        return a.real() != b.real() ? a.real() > b.real() : a.imag() > b.imag();
    });
    Json out = Json::array();
    for (const auto z : ev) out.push_back(to_json(z));
    return out;
}

int count_right_of(const std::vector<Complex>& ev, double rate) {
    return static_cast<int>(std::count_if(ev.begin(), ev.end(), [&](Complex z) { return z.real() > -rate; }));
}

}  // namespace

std::string cmd_example_sec5(const Sec5Options& opt, Envelope& env, std::ostream* csv) {
    if (!(opt.tau >= 0.0) || !std::isfinite(opt.tau)) throw InputError("--tau must be a nonnegative number");
    if (!(opt.d > 0.0)) throw InputError("--d must be positive");
    const Strip strip(opt.lo, opt.hi);
    const double mid = 0.5 * (opt.lo + opt.hi);
    constexpr int p = 2;

    const RationalFunction delta(Polynomial({0.0, -opt.tau}), Polynomial({1.0, opt.tau}));
    const Polynomial plant({0.0, 0.0, opt.d, 1.0});
    const RationalFunction loop(Polynomial({opt.ki}), plant);        // L = k_i / (s^2 (s+d))
    const RationalFunction seen(Polynomial({-opt.ki}), plant);       // H = -L, seen by the nonlinearity
    const RationalFunction slope_one(Polynomial({-opt.ki}), plant + Polynomial({opt.ki}));

    Json params;
    params["tau"] = opt.tau;
    params["d"] = opt.d;
    params["ki"] = opt.ki;
    params["strip"] = Json::array({opt.lo, opt.hi});
    params["p"] = p;
    env.results["parameters"] = params;

    // perturbation
    const NormResult dn = strip_norm(delta, strip, NormMethod::bisection, opt.tol);
    const NormResult dn_grid = strip_norm(delta, strip, NormMethod::grid, opt.tol);
    const int p_delta = pole_partition(delta, strip).right;
    Json dj;
    dj["transfer"] = to_json(delta);
    dj["poles_right_of_strip"] = p_delta;
    dj["norm"] = to_json(dn);
    dj["grid_norm"] = dn_grid.value;
    env.results["delta"] = dj;

    // loop seen by the perturbation at unit slope
    const StateSpace t_ss = realize(slope_one);
    const StripGainReport gain = strip_gain(t_ss, p, strip, opt.tol);
    Json lj;
    lj["nominal_loop"] = to_json(loop);
    lj["slope_one_loop"] = to_json(slope_one);
    lj["endpoint_gains"] = Json::array({gain.lo.gamma, gain.hi.gamma});
    lj["gamma_strip"] = gain.gamma;
    lj["attained_at"] = std::string(to_string(gain.attained_at));
    env.results["slope_one_gain"] = lj;

    // every slope in [0, 1], sampled
    const SlopeLoop sector{realize(seen), 0.0, 1.0};
    const SlopeGridBound grid_lo = sector_slope_gain(sector, p, strip.lo_line(), opt.tol);
    const SlopeGridBound grid_hi = sector_slope_gain(sector, p, strip.hi_line(), opt.tol);
    Json gj;
    gj["slopes"] = grid_lo.samples.size();
    gj["gamma_lo"] = grid_lo.gamma;
    gj["worst_slope_lo"] = grid_lo.worst_slope;
    gj["gamma_hi"] = grid_hi.gamma;
    gj["worst_slope_hi"] = grid_hi.worst_slope;
    gj["gamma_strip"] = std::max(grid_lo.gamma, grid_hi.gamma);
    env.results["slope_grid"] = gj;
    env.warnings.push_back("slope-grid bound: maximum over " + std::to_string(grid_lo.samples.size()) +
                           " sampled slopes in [0, 1]; a lower bound on the differential gain");

    // small-gain product
    const double gamma = std::max(gain.gamma, std::max(grid_lo.gamma, grid_hi.gamma));
    const double product = gamma * dn.value;
    Json sj;
    sj["gamma"] = gamma;
    sj["delta_norm"] = dn.value;
    sj["product"] = product;
    sj["holds"] = product < 1.0 && p_delta == 0;
    env.results["small_gain"] = sj;
    if (p_delta != 0) {
        env.warnings.push_back("perturbation has " + std::to_string(p_delta) +
                               " pole(s) right of the strip; the small-gain argument does not give " +
                               std::to_string(p) + "-dominance");
    }

    // direct check with the lag included
    const RationalFunction minus_delta(Polynomial({0.0, opt.tau}), Polynomial({1.0, opt.tau}));
    const StateSpace closed = feedback_compose(t_ss, realize(minus_delta));
    const auto ev = eig(closed.a);
    const Polynomial charpoly = plant * Polynomial({1.0, opt.tau}) + Polynomial({opt.ki});
    Json cj;
    cj["characteristic_polynomial"] = to_json(charpoly);
    cj["eigenvalues"] = eigen_list(ev);
    cj["polynomial_roots"] = eigen_list(poly_roots(charpoly));
    Json counts = Json::array();
    bool counts_ok = true;
    for (const double rate : {opt.lo, mid, opt.hi}) {
        const int c = count_right_of(ev, rate);
        counts_ok = counts_ok && c == p;
        counts.push_back(Json::array({rate, c}));
    }
    cj["right_of_line"] = counts;
    env.results["perturbed_closed_loop"] = cj;
    if (counts_ok) {
        Json certs;
        try {
            const auto lo = dominance_check(closed, p, opt.lo);
            const auto hi = dominance_check(closed, p, opt.hi);
            for (const auto* c : {&lo, &hi}) {
                Json j;
                j["rate"] = c->rate;
                j["P"] = to_json(c->p_matrix);
                j["epsilon"] = c->epsilon;
                j["inertia"] = Json::array({c->p_inertia.negative, c->p_inertia.zero, c->p_inertia.positive});
                j["lmi_residual"] = c->lmi_residual;
                certs.push_back(j);
            }
        } catch (const Error& e) {
            counts_ok = false;
            env.warnings.push_back(std::string("perturbed closed loop certificate failed: ") + e.what());
        }
        if (counts_ok) env.certificates["perturbed_closed_loop"] = certs;
    }

    // margin: size of perturbation tolerated
    env.results["margin"] = 1.0 / gamma;

    // nyquist of the nominal loop at the slow edge with disks of radius ||Delta||
    Sweep sweep;
    sweep.rate = opt.lo;
    sweep.points = opt.points;
    sweep.uncertainty = dn.value;
    const auto rows = frequency_response_data(loop, Line(opt.lo), sweep_grid(sweep), dn.value);
    env.results["nyquist"] = summarize_nyquist(rows, sweep);
    if (csv) write_nyquist_csv(*csv, rows);

    Json ref;
    ref["delta_boundary_norms"] = Json::array({1.1111, 1.0526});
    ref["delta_norm"] = 1.1111;
    ref["endpoint_gains"] = Json::array({0.3528, 0.1414});
    ref["gamma_strip"] = 0.3528;
    ref["margin"] = 2.8345;
    ref["note"] = "reference figures are reported for comparison only; computed values come from the grid and "
                  "bisection engines";
    env.results["reference"] = ref;
    if (opt.tau == 0.1 && opt.d == 5.0 && opt.ki == -1.0 && opt.lo == 1.0 && opt.hi == 2.0) {
        env.warnings.push_back("reference values (1.1111/1.0526, 0.3528/0.1414, margin 2.8345) differ from computed (" +
                               format_double(dn.boundary_values ? (*dn.boundary_values)[0] : dn.value) + "/" +
                               format_double(dn.boundary_values ? (*dn.boundary_values)[1] : dn.value) + ", " +
                               format_double(gain.lo.gamma) + "/" + format_double(gain.hi.gamma) + ", margin " +
                               format_double(1.0 / gamma) + ")");
    }

    const bool confirmed = p_delta == 0 && product < 1.0 && counts_ok;
    const std::string verdict =
        std::string("robust ") + std::to_string(p) + "-dominance: " + (confirmed ? "CONFIRMED" : "NOT CONFIRMED");
    env.results["verdict"] = verdict;
    return verdict;
}

}  // namespace stripgain::cli
