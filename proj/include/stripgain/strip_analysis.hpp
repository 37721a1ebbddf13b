#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "stripgain/matrix.hpp"
#include "stripgain/rational.hpp"
#include "stripgain/region.hpp"
#include "stripgain/statespace.hpp"

namespace stripgain {

enum class NormMethod { grid, bisection, boundary_max };
enum class Boundary { lo, hi };

[[nodiscard]] std::string_view to_string(NormMethod m) noexcept;
[[nodiscard]] std::string_view to_string(Boundary b) noexcept;

struct NormResult {
    double value = 0.0;
    NormMethod method = NormMethod::grid;
    /// Line engine behind a boundary_max result; equals method otherwise.
    NormMethod engine = NormMethod::grid;
    double tolerance = 0.0;
    /// Frequency of the peak on the line; +inf when the supremum is the limit at infinity.
    double peak_frequency = 0.0;
    std::optional<Boundary> attained_at;
    std::optional<std::array<double, 2>> bracket;
    /// Per-boundary line results for strip norms.
    std::optional<std::array<double, 2>> boundary_values;
};

/// Default grid: 512 log-spaced points over [1e-3, 1e3] plus 0.
[[nodiscard]] std::vector<double> default_frequency_grid(std::size_t points = 512);

/// Peak of |G(-rate + i w)| over the grid, refined by golden-section search around
/// every local maximum (three rounds). The grid is augmented with |Im| of the
/// shifted poles and with the limit at infinity. A lower bound on the norm.
[[nodiscard]] NormResult line_norm_grid(const RationalFunction& g, const Line& line,
                                        std::span<const double> grid);
[[nodiscard]] NormResult line_norm_grid(const RationalFunction& g, const Line& line);

/// Shifted singular-value Hamiltonian of (A + rate I, B, C, D) at level gamma.
[[nodiscard]] Matrix hamiltonian(const StateSpace& ss, double rate, double gamma);

/// L-infinity norm on the line by Hamiltonian bisection (SISO).
[[nodiscard]] NormResult line_norm_bisection(const StateSpace& ss, const Line& line, double tol = 1e-6);

/// True when gamma is a singular value of G(-rate + i w0), i.e. H_gamma - i w0 I is singular.
[[nodiscard]] bool singular_value_test(const StateSpace& ss, double gamma, double w0, const Line& line);

/// H-infinity norm on the strip as the larger of its two boundary-line norms.
/// Also samples a 5x5 interior grid and fails with NumericalFailure if any
/// sample exceeds the result (maximum-modulus sanity check).
[[nodiscard]] NormResult strip_norm(const RationalFunction& g, const Strip& strip,
                                    NormMethod method = NormMethod::bisection, double tol = 1e-9);

/// ((1/2pi) int |G(-rate + i w)|^2 dw)^{1/2} from the gramians of the two modal parts.
[[nodiscard]] double h2_line_norm(const RationalFunction& g, const Line& line);

/// <f, g> = (1/2pi) int f(-rate + i w) conj(g(-rate + i w)) dw by adaptive quadrature.
[[nodiscard]] Complex line_inner_product(const RationalFunction& f, const RationalFunction& g,
                                         const Line& line);

struct LineDecomposition {
    RationalFunction minus;  // poles left of the line
    RationalFunction plus;   // poles right of the line
};

[[nodiscard]] LineDecomposition decompose_line(const RationalFunction& g, const Line& line);

struct FrequencyRow {
    double omega;
    double re;
    double im;
    double mag;
    double disk_radius;
};

/// G_rate(i w) = G(-rate + i w) for each w in order, with disk radius r |G|.
[[nodiscard]] std::vector<FrequencyRow> frequency_response_data(const RationalFunction& g, const Line& line,
                                                                std::span<const double> omegas,
                                                                double uncertainty_radius = 0.0);

}  // namespace stripgain
