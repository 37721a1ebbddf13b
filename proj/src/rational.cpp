#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "cpoly.hpp"
#include "stripgain/error.hpp"
#include "stripgain/rational.hpp"
#include "stripgain/tolerances.hpp"

namespace stripgain {

namespace {

std::vector<Complex> sample_points(const std::vector<Complex>& poles, int count) {
    double radius = 1.0;
    for (const Complex& p : poles) radius = std::max(radius, 1.0 + std::abs(p));
    radius *= 1.5;
    std::vector<Complex> pts;
    for (int k = 0; k < count; ++k) pts.push_back(std::polar(radius, 0.3 + 0.6 * k));
    return pts;
}

bool same_values(const Polynomial& n0, const Polynomial& d0, const Polynomial& n1, const Polynomial& d1,
                 const std::vector<Complex>& pts) {
    for (const Complex& s : pts) {
        const Complex a = n0(s) / d0(s);
        const Complex b = n1(s) / d1(s);
        if (std::abs(a - b) > tol::eval * (1.0 + std::abs(a))) return false;
    }
    return true;
}

Polynomial linear_factor(const Complex& r) {
    if (r.imag() == 0.0) return Polynomial({-r.real(), 1.0});
    return Polynomial({std::norm(r), -2.0 * r.real(), 1.0});
}

}  // namespace

RationalFunction::RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) fail(ErrorKind::InvalidInput, "denominator is identically zero");
    const double lead = den_.leading();
    if (lead != 1.0) {
        den_ = (1.0 / lead) * den_;
        num_ = (1.0 / lead) * num_;
    }
    if (num_.is_zero()) {
        den_ = Polynomial::constant(1.0);
        return;
    }
    if (num_.degree() > 0 && den_.degree() > 0) {
        std::vector<Complex> zs = poly_roots(num_);
        std::vector<Complex> ps = poly_roots(den_);
        std::vector<bool> used(zs.size(), false);
        Polynomial n = num_;
        Polynomial d = den_;
        int cancelled = 0;
        for (const Complex& p : ps) {
            if (p.imag() < 0.0) continue;  // handled with its conjugate
            for (std::size_t j = 0; j < zs.size(); ++j) {
                if (used[j] || (zs[j].imag() == 0.0) != (p.imag() == 0.0)) continue;
                if (std::abs(zs[j] - p) <= tol::gcd * (1.0 + std::abs(p))) {
                    used[j] = true;
                    const Complex r = 0.5 * (zs[j] + p);
                    const Polynomial f = linear_factor(r);
                    n = divide(n, f).first;
                    d = divide(d, f).first;
                    cancelled += (p.imag() == 0.0) ? 1 : 2;
                    break;
                }
            }
        }
        if (cancelled > 0) {
            if (same_values(num_, den_, n, d, sample_points(ps, 5))) {
                num_ = std::move(n);
                den_ = std::move(d);
                cancelled_ = cancelled;
            }
        }
        poles_ = cancelled_ > 0 ? poly_roots(den_) : std::move(ps);
        return;
    }
    poles_ = poly_roots(den_);
}

double RationalFunction::feedthrough() const {
    if (!is_proper()) fail(ErrorKind::ImproperTransferFunction, "no finite limit at infinity");
    if (num_.is_zero() || num_.degree() < den_.degree()) return 0.0;
    return num_.leading() / den_.leading();
}

std::vector<Complex> RationalFunction::zeros() const {
    if (num_.is_zero()) return {};
    return poly_roots(num_);
}

Complex rational_eval(const RationalFunction& g, Complex s) {
    for (const Complex& p : g.poles()) {
        if (std::abs(s - p) <= tol::pole * (1.0 + std::abs(s))) {
            fail(ErrorKind::PoleProximity, "evaluation point is at a pole", p.real());
        }
    }
    return g(s);
}

RationalFunction shift(const RationalFunction& g, double rate) {
    if (rate == 0.0) return g;
    return {g.num().taylor_shift(-rate), g.den().taylor_shift(-rate)};
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    return {a.num() * b.den() + b.num() * a.den(), a.den() * b.den()};
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    return {a.num() * b.den() - b.num() * a.den(), a.den() * b.den()};
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return {a.num() * b.num(), a.den() * b.den()};
}

Complex PartialFractions::operator()(Complex s) const {
    Complex acc = polynomial_part(s);
    for (const auto& t : terms) acc += t(s);
    return acc;
}

namespace {

struct Cluster {
    Complex center;
    std::vector<std::size_t> members;
};

std::vector<Cluster> cluster_roots(const std::vector<Complex>& roots, double rel, const Polynomial& den) {
    std::vector<Cluster> out;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        bool placed = false;
        for (auto& c : out) {
            if (std::abs(roots[i] - c.center) <= rel * (1.0 + std::abs(c.center))) {
                c.members.push_back(i);
                Complex sum = 0.0;
                for (std::size_t m : c.members) sum += roots[m];
                c.center = sum / static_cast<double>(c.members.size());
                placed = true;
                break;
            }
        }
        if (!placed) out.push_back({roots[i], {i}});
    }
    // A root of multiplicity m is a simple root of the (m-1)-th derivative;
    // a few Newton steps there recover the digits lost by the eigensolver.
    for (auto& c : out) {
        if (c.members.size() < 2) continue;
        Polynomial d = den;
        for (std::size_t k = 1; k < c.members.size(); ++k) d = d.derivative();
        const Polynomial dd = d.derivative();
        Complex z = c.center;
        for (int it = 0; it < 4; ++it) {
            const Complex slope = dd(z);
            if (std::abs(slope) == 0.0) break;
            z -= d(z) / slope;
        }
        if (std::abs(z - c.center) <= rel * (1.0 + std::abs(c.center))) c.center = z;
    }
    for (auto& c : out) {
        if (std::abs(c.center.imag()) <= 1e-12 * (1.0 + std::abs(c.center))) c.center = {c.center.real(), 0.0};
    }
    return out;
}

// Residues of rem/den at each cluster by Taylor division:
// (s - a)^m G(s) = rem(s) / Q(s), with Q the product of the other factors.
std::vector<PartialFractionTerm> expand(const Polynomial& rem, const std::vector<Cluster>& clusters) {
    using detail::CPoly;
    const CPoly r(rem.coeffs().begin(), rem.coeffs().end());
    std::vector<PartialFractionTerm> terms;
    for (const Cluster& cl : clusters) {
        if (cl.center.imag() < 0.0) continue;
        std::vector<Complex> others;
        for (const Cluster& other : clusters) {
            if (&other == &cl) continue;
            others.insert(others.end(), other.members.size(), other.center);
        }
        const int m = static_cast<int>(cl.members.size());
        const CPoly rt = detail::ctaylor(r, cl.center);
        const CPoly qt = detail::ctaylor(detail::cfrom_roots(others), cl.center);
        std::vector<Complex> h(static_cast<std::size_t>(m), 0.0);
        for (int j = 0; j < m; ++j) {
            Complex acc = j < static_cast<int>(rt.size()) ? rt[static_cast<std::size_t>(j)] : 0.0;
            for (int i = 1; i <= j && i < static_cast<int>(qt.size()); ++i) {
                acc -= qt[static_cast<std::size_t>(i)] * h[static_cast<std::size_t>(j - i)];
            }
            h[static_cast<std::size_t>(j)] = acc / qt[0];
        }
        const bool real = cl.center.imag() == 0.0;
        for (int j = 0; j < m; ++j) {
            Complex res = h[static_cast<std::size_t>(j)];
            if (real) res = {res.real(), 0.0};
            terms.push_back({res, cl.center, m - j});
            if (!real) terms.push_back({std::conj(res), std::conj(cl.center), m - j});
        }
    }
    return terms;
}

double recombination_error(const RationalFunction& g, const PartialFractions& pf) {
    double worst = 0.0;
    for (const Complex& s : sample_points(g.poles(), 10)) {
        const Complex exact = g(s);
        worst = std::max(worst, std::abs(exact - pf(s)) / (1.0 + std::abs(exact)));
    }
    return worst;
}

}  // namespace

PartialFractions partial_fractions(const RationalFunction& g) {
    auto [quot, rem] = divide(g.num(), g.den());
    PartialFractions best{quot, {}};
    if (g.den().degree() == 0 || rem.is_zero()) return best;
    const std::vector<Complex>& roots = g.poles();
    double best_err = -1.0;
    // Clustered first (repeated poles); plain simple poles as the fallback.
    for (double rel : {1e-5, 0.0}) {
        PartialFractions candidate{quot, expand(rem, cluster_roots(roots, rel, g.den()))};
        const double err = recombination_error(g, candidate);
        if (best_err < 0.0 || err < best_err) {
            best = std::move(candidate);
            best_err = err;
        }
        if (err <= tol::eval) break;
    }
    return best;
}

RationalFunction recombine(std::span<const PartialFractionTerm> terms, const Polynomial& polynomial_part) {
    using detail::CPoly;
    std::map<std::pair<double, double>, int> orders;
    for (const auto& t : terms) {
        auto& o = orders[{t.pole.real(), t.pole.imag()}];
        o = std::max(o, t.order);
    }
    CPoly den{1.0};
    for (const auto& [key, m] : orders) den = detail::cmul(den, detail::cpow_linear({key.first, key.second}, m));
    CPoly num{0.0};
    for (const auto& t : terms) {
        CPoly part{t.residue};
        for (const auto& [key, m] : orders) {
            const Complex pole{key.first, key.second};
            const int power = (pole == t.pole) ? m - t.order : m;
            part = detail::cmul(part, detail::cpow_linear(pole, power));
        }
        detail::cadd_into(num, part);
    }
    std::vector<double> n(num.size());
    std::vector<double> d(den.size());
    double scale = 0.0;
    double imag = 0.0;
    for (std::size_t i = 0; i < num.size(); ++i) {
        n[i] = num[i].real();
        scale = std::max(scale, std::abs(num[i]));
        imag = std::max(imag, std::abs(num[i].imag()));
    }
    for (std::size_t i = 0; i < den.size(); ++i) {
        d[i] = den[i].real();
        scale = std::max(scale, std::abs(den[i]));
        imag = std::max(imag, std::abs(den[i].imag()));
    }
    if (imag > 1e-8 * (1.0 + scale)) fail(ErrorKind::InvalidInput, "terms are not closed under conjugation");
    // Cancellation in the sum leaves rounding noise in the top coefficients.
    double num_scale = 0.0;
    for (double v : n) num_scale = std::max(num_scale, std::abs(v));
    for (double& v : n) {
        if (std::abs(v) <= 1e-13 * num_scale) v = 0.0;
    }
    const Polynomial dp(std::move(d));
    return {Polynomial(std::move(n)) + polynomial_part * dp, dp};
}

namespace {

[[noreturn]] void reject(ErrorKind kind, const std::string& where, double re) {
    fail(kind, "pole with real part " + std::to_string(re) + " lies " + where, re);
}

}  // namespace

PolePartition pole_partition(const RationalFunction& g, const Strip& strip) {
    PolePartition out;
    for (const Complex& p : g.poles()) {
        const double re = p.real();
        const double margin = tol::line * (1.0 + std::abs(re));
        if (re > strip.re_right() + margin) {
            ++out.right;
        } else if (re < strip.re_left() - margin) {
            ++out.left;
        } else {
            reject(ErrorKind::PoleInStrip, "in the closed strip " + describe(strip), re);
        }
    }
    return out;
}

PolePartition pole_partition(const RationalFunction& g, const Line& line) {
    PolePartition out;
    for (const Complex& p : g.poles()) {
        const double re = p.real();
        const double margin = tol::line * (1.0 + std::abs(re));
        if (re > line.abscissa() + margin) {
            ++out.right;
        } else if (re < line.abscissa() - margin) {
            ++out.left;
        } else {
            reject(ErrorKind::PoleOnLine, "on the line " + describe(line), re);
        }
    }
    return out;
}

}  // namespace stripgain
