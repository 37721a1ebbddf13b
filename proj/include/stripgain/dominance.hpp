#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stripgain/matrix.hpp"
#include "stripgain/region.hpp"
#include "stripgain/statespace.hpp"
#include "stripgain/strip_analysis.hpp"

namespace stripgain {

/// Counts of negative, zero and positive eigenvalues.
struct Inertia {
    int negative = 0;
    int zero = 0;
    int positive = 0;

    friend bool operator==(const Inertia&, const Inertia&) = default;
};

[[nodiscard]] Inertia inertia(const Matrix& m);

/// P with inertia (p, 0, n - p) satisfying A^T P + P A + 2 rate P + eps I <= 0.
struct DominanceCertificate {
    int p = 0;
    double rate = 0.0;
    Matrix p_matrix;
    double epsilon = 0.0;
    double lmi_residual = 0.0;
    Inertia p_inertia;
};

/// Constructs a certificate from the eigenvalue split of A + rate I and two
/// Lyapunov solves. Throws NotPDominant when the count of modes right of
/// Re(s) = -rate differs from p, MarginalRate when a mode sits on that line.
[[nodiscard]] DominanceCertificate dominance_check(const StateSpace& ss, int p, double rate);

/// Largest eigenvalue of A^T P + P A + 2 rate P + eps I, assembled directly.
[[nodiscard]] double dominance_residual(const Matrix& a, const Matrix& p, double rate, double eps);

struct GainCertificate {
    double gamma = 0.0;
    double rate = 0.0;
    int p = 0;
    NormResult norm;
    /// Present only when requested and verified; certifies certified_gamma >= gamma.
    std::optional<Matrix> p_matrix;
    double certified_gamma = 0.0;
    double epsilon = 0.0;
    std::optional<double> lmi_residual;
};

[[nodiscard]] GainCertificate l2p_gain(const StateSpace& ss, int p, const Line& line, double tol = 1e-6,
                                       bool with_certificate = false);

struct LmiCheck {
    double max_eigenvalue = 0.0;
    Inertia p_inertia;
    /// max_eigenvalue <= 0 and P nonsingular.
    bool valid = false;
};

/// Largest eigenvalue of the dissipation block matrix
/// [[A^T P + P A + 2 rate P + eps I + C^T C, P B + C^T D], [B^T P + D^T C, D^T D - gamma^2 I]].
[[nodiscard]] LmiCheck verify_gain_lmi(const StateSpace& ss, const Matrix& p, double gamma, double rate,
                                       double eps);

struct StripGainReport {
    double gamma = 0.0;  // max of the endpoint gains
    Boundary attained_at = Boundary::lo;
    GainCertificate lo;
    GainCertificate hi;
    std::vector<std::pair<double, double>> interior;  // (rate, gain) diagnostics
};

[[nodiscard]] StripGainReport strip_gain(const StateSpace& ss, int p, const Strip& strip, double tol = 1e-6,
                                         bool with_certificate = false);

/// Negative feedback u1 = r - y2, u2 = y1; output y1, input r.
[[nodiscard]] StateSpace feedback_compose(const StateSpace& ss1, const StateSpace& ss2);

enum class SmallGainVerdict { confirmed, inconclusive };

struct SmallGainReport {
    SmallGainVerdict verdict = SmallGainVerdict::inconclusive;
    StripGainReport first;
    StripGainReport second;
    double product = 0.0;
    std::optional<StateSpace> closed_loop;
    std::optional<DominanceCertificate> lo;
    std::optional<DominanceCertificate> hi;
};

[[nodiscard]] SmallGainReport small_gain_check(const StateSpace& ss1, int p1, const StateSpace& ss2, int p2,
                                               const Strip& strip, double tol = 1e-6);

/// Asymptotic behaviour of bounded solutions of a p-dominant system.
[[nodiscard]] std::string classify_attractors(int p);

/// Loop of a SISO linear part H (input v, output e) with a static nonlinearity
/// whose slope ranges over [slope_lo, slope_hi]: v = sigma e + w. The closed
/// loop at slope sigma maps w to e, i.e. H / (1 - sigma H).
struct SlopeLoop {
    StateSpace linear;
    double slope_lo = 0.0;
    double slope_hi = 1.0;
};

[[nodiscard]] StateSpace close_at_slope(const StateSpace& linear, double slope);

struct SlopeGridBound {
    double gamma = 0.0;  // max over the slope grid; a lower bound on the differential gain
    double worst_slope = 0.0;
    std::vector<std::pair<double, double>> samples;  // (slope, gain)
};

[[nodiscard]] SlopeGridBound sector_slope_gain(const SlopeLoop& loop, int p, const Line& line, double tol = 1e-6,
                                               int n_slopes = 11);

}  // namespace stripgain
