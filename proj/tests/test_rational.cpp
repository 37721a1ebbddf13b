#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "stripgain/error.hpp"
#include "stripgain/rational.hpp"

using namespace stripgain;
using doctest::Approx;

namespace {

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::InvalidInput;
}

RationalFunction random_rational(oracle::PoleSampler& rng, int max_order, bool strictly_proper) {
    const int n = rng.integer(1, max_order);
    std::vector<double> real_roots;
    std::vector<Complex> pairs;
    while (static_cast<int>(real_roots.size() + 2 * pairs.size()) < n) {
        if (n - static_cast<int>(real_roots.size() + 2 * pairs.size()) >= 2 && rng.uniform(0, 1) < 0.5) {
            pairs.emplace_back(rng.uniform(-3, 3), rng.uniform(0.2, 3));
        } else {
            real_roots.push_back(rng.uniform(-3, 3));
        }
    }
    const int m = strictly_proper ? rng.integer(0, n - 1) : rng.integer(0, n);
    std::vector<double> num(m + 1);
    for (double& c : num) c = rng.uniform(-2, 2);
    if (std::abs(num.back()) < 0.2) num.back() = 1.0;
    return {Polynomial(num), Polynomial(oracle::poly_from(real_roots, pairs))};
}

}  // namespace

TEST_CASE("poly_roots of textbook polynomials") {
    auto r = poly_roots(Polynomial{2, 3, 1});
    REQUIRE(r.size() == 2);
    std::sort(r.begin(), r.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
    CHECK(r[0].real() == Approx(-2.0).epsilon(1e-12));
    CHECK(r[1].real() == Approx(-1.0).epsilon(1e-12));
    CHECK(r[0].imag() == 0.0);

    const Polynomial lightly_damped{1, 0.2, 1};
    const auto z = poly_roots(lightly_damped);
    REQUIRE(z.size() == 2);
    for (const auto& root : z) {
        CHECK(root.real() == Approx(-0.1).epsilon(1e-12));
        CHECK(std::abs(root.imag()) == Approx(std::sqrt(0.99)).epsilon(1e-12));
        CHECK(std::abs(lightly_damped(root)) < 1e-10);
    }
    CHECK(z[0] == std::conj(z[1]));

    CHECK(poly_roots(Polynomial{5}).empty());
    CHECK(kind_of([] { (void)poly_roots(Polynomial{0}); }) == ErrorKind::InvalidInput);
}

TEST_CASE("poly_roots agrees with Durand-Kerner on random polynomials") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> coef(-3, 3);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<double> c(2 + trial % 6);
        for (double& v : c) v = coef(rng);
        c.back() = 1.0 + std::abs(c.back());
        const Polynomial p(c);
        auto mine = poly_roots(p);
        auto ref = oracle::roots(c);
        REQUIRE(mine.size() == ref.size());
        for (const auto& r : mine) {
            CHECK(std::abs(p(r)) <= 1e-8 * (1 + p.norm()) * std::max(1.0, std::pow(std::abs(r), p.degree())));
            double nearest = 1e300;
            for (const auto& q : ref) nearest = std::min(nearest, std::abs(q - r));
            CHECK(nearest < 1e-6);
        }
    }
}

TEST_CASE("rational_eval values and pole proximity") {
    const RationalFunction g({1}, {2, 1});
    CHECK(rational_eval(g, 0.0).real() == Approx(0.5));
    const RationalFunction lag({0, -0.1}, {1, 0.1});
    CHECK(rational_eval(lag, Complex(-1, 0)).real() == Approx(0.1 / 0.9).epsilon(1e-12));
    CHECK(kind_of([&] { (void)rational_eval(g, Complex(-2, 0)); }) == ErrorKind::PoleProximity);
}

TEST_CASE("construction normalizes and cancels common factors") {
    const RationalFunction g({2, 2}, {2, 6, 4});  // 2(s+1) / (4 (s+1)(s+0.5))
    CHECK(g.den().leading() == 1.0);
    CHECK(g.order() == 1);
    CHECK(g.cancelled() == 1);
    CHECK(g.num().coeffs()[0] == Approx(0.5));
    CHECK(g.den().coeffs()[0] == Approx(0.5));
    const RationalFunction zero({0}, {1, 3});
    CHECK(zero.num().is_zero());
    CHECK(zero.den() == Polynomial{1});
    CHECK(kind_of([] { RationalFunction({1}, {0}); }) == ErrorKind::InvalidInput);
}

TEST_CASE("shift moves poles and matches substitution") {
    const RationalFunction g({1}, {2, 1});
    const auto s1 = shift(g, 1.0);
    CHECK(s1.den().coeffs()[0] == Approx(1.0));
    CHECK(s1.num().coeffs()[0] == Approx(1.0));

    const RationalFunction lag({0, -0.1}, {1, 0.1});
    const auto shifted = shift(lag, 1.0);
    // (-s + 1) / (s + 9)
    REQUIRE(shifted.num().degree() == 1);
    CHECK(shifted.num().coeffs()[0] == Approx(1.0));
    CHECK(shifted.num().coeffs()[1] == Approx(-1.0));
    CHECK(shifted.den().coeffs()[0] == Approx(9.0));
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int k = 0; k < 5; ++k) {
        const Complex s(u(rng), u(rng));
        CHECK(std::abs(shifted(s) - oracle::ratio({1, -1}, {9, 1}, s)) < 1e-12);
    }
    CHECK(shift(lag, 0.0).num() == lag.num());
    CHECK(shift(lag, 0.0).den() == lag.den());
}

TEST_CASE("shift round trip and line evaluation on random functions") {
    oracle::PoleSampler rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        const auto g = random_rational(rng, 6, false);
        const double rate = rng.uniform(-2, 2);
        const auto back = shift(shift(g, rate), -rate);
        REQUIRE(back.num().degree() == g.num().degree());
        REQUIRE(back.den().degree() == g.den().degree());
        for (int k = 0; k <= g.den().degree(); ++k) {
            CHECK(back.den().coeffs()[k] == Approx(g.den().coeffs()[k]).epsilon(1e-9).scale(1.0));
        }
        for (int k = 0; k <= g.num().degree(); ++k) {
            CHECK(back.num().coeffs()[k] == Approx(g.num().coeffs()[k]).epsilon(1e-9).scale(1.0));
        }
        const double w = rng.uniform(-5, 5);
        const Complex lhs = shift(g, rate)(Complex(0, w));
        const Complex rhs = g(Complex(-rate, w));
        CHECK(std::abs(lhs - rhs) <= 1e-9 * (1 + std::abs(rhs)));
    }
}

TEST_CASE("partial fractions of worked examples") {
    const RationalFunction g({1}, Polynomial(oracle::poly_from({1, -3})));
    const auto pf = partial_fractions(g);
    CHECK(pf.polynomial_part.is_zero());
    REQUIRE(pf.terms.size() == 2);
    for (const auto& t : pf.terms) {
        CHECK(t.order == 1);
        if (t.pole.real() > 0) {
            CHECK(t.pole.real() == Approx(1.0));
            CHECK(t.residue.real() == Approx(0.25));
        } else {
            CHECK(t.pole.real() == Approx(-3.0));
            CHECK(t.residue.real() == Approx(-0.25));
        }
    }

    const RationalFunction two_sided({-2}, {-1, 0, 1});
    for (const auto& t : partial_fractions(two_sided).terms) {
        CHECK(t.residue.real() == Approx(t.pole.real() < 0 ? 1.0 : -1.0));
    }

    const auto single = partial_fractions(RationalFunction({1}, {2, 1}));
    REQUIRE(single.terms.size() == 1);
    CHECK(single.terms[0].residue.real() == Approx(1.0));
    CHECK(single.terms[0].pole.real() == Approx(-2.0));
    CHECK(single.polynomial_part.is_zero());
}

TEST_CASE("partial fractions with repeated poles and polynomial part") {
    // (s^3 + 2) / ((s + 1)^2 (s + 2))
    const RationalFunction g({2, 0, 0, 1}, Polynomial(oracle::poly_from({-1, -1, -2})));
    const auto pf = partial_fractions(g);
    CHECK(pf.polynomial_part.degree() == 0);
    int orders = 0;
    for (const auto& t : pf.terms) orders = std::max(orders, t.order);
    CHECK(orders == 2);
    // 1/(s^2 (s+5)) has a double pole at the origin
    const RationalFunction plant({1}, Polynomial(oracle::poly_from({0, 0, -5})));
    const auto pp = partial_fractions(plant);
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-4, 4);
    for (int k = 0; k < 10; ++k) {
        const Complex s(u(rng), u(rng));
        CHECK(std::abs(pf(s) - g(s)) <= 1e-9 * (1 + std::abs(g(s))));
        CHECK(std::abs(pp(s) - plant(s)) <= 1e-9 * (1 + std::abs(plant(s))));
    }
}

TEST_CASE("partial fraction recombination on random functions") {
    oracle::PoleSampler rng(8);
    for (int trial = 0; trial < 25; ++trial) {
        const auto g = random_rational(rng, 6, false);
        const auto pf = partial_fractions(g);
        for (int k = 0; k < 10; ++k) {
            const Complex s(rng.uniform(-5, 5), rng.uniform(-5, 5));
            const Complex want = oracle::ratio(g.num().coeffs(), g.den().coeffs(), s);
            CHECK(std::abs(pf(s) - want) <= 1e-9 * (1 + std::abs(want)));
        }
        const auto back = recombine(pf.terms, pf.polynomial_part);
        const Complex s(0.3, 1.7);
        CHECK(std::abs(back(s) - g(s)) <= 1e-9 * (1 + std::abs(g(s))));
        for (const auto& t : pf.terms) {
            if (t.pole.imag() == 0.0) continue;
            const bool mirrored = std::any_of(pf.terms.begin(), pf.terms.end(), [&](const PartialFractionTerm& o) {
                return o.order == t.order && std::abs(o.pole - std::conj(t.pole)) < 1e-12 &&
                       std::abs(o.residue - std::conj(t.residue)) < 1e-12;
            });
            CHECK(mirrored);
        }
    }
}

TEST_CASE("pole partition relative to strips and lines") {
    const RationalFunction g({1}, Polynomial(oracle::poly_from({1, -3})));
    const auto part = pole_partition(g, Strip(0, 2));
    CHECK(part.right == 1);
    CHECK(part.left == 1);
    const auto single = pole_partition(RationalFunction({1}, {2, 1}), Strip(0, 1));
    CHECK(single.right == 0);
    CHECK(single.left == 1);
    CHECK(kind_of([] { (void)pole_partition(RationalFunction({1}, {1, 1}), Strip(0.5, 2)); }) ==
          ErrorKind::PoleInStrip);
    CHECK(kind_of([] { (void)pole_partition(RationalFunction({1}, {1, 1}), Line(1.0)); }) == ErrorKind::PoleOnLine);

    oracle::PoleSampler rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        const auto g2 = random_rational(rng, 6, false);
        try {
            const auto p = pole_partition(g2, Strip(0.5, 1.0));
            CHECK(p.left + p.right == g2.order());
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::PoleInStrip);
        }
    }
}
