#include "doctest.h"

#include <cmath>
#include <vector>

#include "mh/quadrature.hpp"

using namespace mh;

namespace {
const PVQuadratureSpec spec{};
}

TEST_CASE("half-line integrals with known values") {
    // INT_0^1 t^{-1/2} dt = 2
    auto r = integrateHalfLine([](double t) { return Complex(t < 1.0 ? std::pow(t, -0.5) : 0.0, 0.0); },
                               spec, {1.0});
    CHECK(r.converged);
    CHECK(r.value.real() == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(std::abs(r.value.imag()) < 1e-12);

    // INT_0^inf e^{-t} t dt = Gamma(2) = 1! = 1 (factorial oracle at integer argument)
    auto gamma2 = integrateHalfLine([](double t) { return Complex(std::exp(-t) * t, 0.0); }, spec);
    CHECK(gamma2.converged);
    CHECK(gamma2.value.real() == doctest::Approx(1.0).epsilon(1e-10));

    // Gamma(4) = 3! = 6
    auto gamma4 = integrateHalfLine(
        [](double t) { return Complex(std::exp(-t) * t * t * t, 0.0); }, spec);
    CHECK(gamma4.value.real() == doctest::Approx(6.0).epsilon(1e-10));
}

TEST_CASE("half-line divergence is diagnosed, not silently returned") {
    // INT_0^1 dt/t diverges logarithmically at 0
    auto r = integrateHalfLine([](double t) { return Complex(t < 1.0 ? 1.0 / t : 0.0, 0.0); },
                               spec, {1.0});
    CHECK(!r.converged);
    CHECK(r.note.find("t -> 0") != std::string::npos);
}

TEST_CASE("half-line linearity") {
    const auto f = [](double t) { return Complex(t < 1.0 ? std::pow(t, -0.25) : 0.0, 0.0); };
    const auto g = [](double t) { return Complex(std::exp(-t), 0.0); };
    const Complex alpha(2.0, 1.0), beta(-0.5, 3.0);
    auto rf = integrateHalfLine(f, spec, {1.0});
    auto rg = integrateHalfLine(g, spec);
    auto rc = integrateHalfLine(
        [&](double t) { return alpha * f(t) + beta * g(t); }, spec, {1.0});
    CHECK(std::abs(rc.value - (alpha * rf.value + beta * rg.value)) <
          10.0 * spec.relTol * (1.0 + std::abs(rc.value)));
}

TEST_CASE("Haar scaling invariance of the dt/t integral") {
    // INT f(t/lambda) dt/t = INT f(t) dt/t for any lambda > 0
    const auto f = [](double t) {
        const double u = std::log(t);
        return Complex(std::exp(-u * u), 0.0);
    };
    auto base = integrateHalfLine([&](double t) { return f(t) / t; }, spec);
    for (double lambda : {0.5, 2.0, 10.0}) {
        auto shifted = integrateHalfLine([&](double t) { return f(t / lambda) / t; }, spec);
        CHECK(std::abs(shifted.value - base.value) <
              10.0 * spec.relTol * (1.0 + std::abs(base.value)));
    }
}

TEST_CASE("principal value quadrature") {
    const auto ind = [](double t) { return Complex(t < 1.0 ? 1.0 : 0.0, 0.0); };

    // singularity outside the support: plain integral, INT_0^1 dt/(2-t) = ln 2
    auto a = integratePV(ind, 2.0, spec, {1.0});
    CHECK(a.converged);
    CHECK(a.value.real() == doctest::Approx(std::log(2.0)).epsilon(1e-10));

    // constant on the window: exact symmetric cancellation
    for (double x0 : {0.4, 1.0, 3.7}) {
        auto z = integratePV(
            [x0](double t) {
                return Complex(t > 0.5 * x0 && t < 1.5 * x0 ? 1.0 : 0.0, 0.0);
            },
            x0, spec, {0.5 * x0, 1.5 * x0});
        CHECK(std::abs(z.value) < 1e-9);
    }

    // pv INT_0^1 dt/(1/2 - t) = 0 by symmetry about x0 = 1/2
    auto s = integratePV(ind, 0.5, spec, {1.0});
    CHECK(std::abs(s.value) < 1e-9);

    // x0 on a declared discontinuity is not evaluatable
    CHECK_THROWS_AS(integratePV(ind, 1.0, spec, {1.0}), DomainError);

    // window overlapping a discontinuity is shrunk with a diagnostic
    auto shrunk = integratePV(ind, 0.8, spec, {1.0});
    CHECK(shrunk.note.find("shrunk") != std::string::npos);
    // oracle: pv INT_0^1 dt/(x-t) = ln(x/(1-x)) at x = 0.8
    CHECK(shrunk.value.real() == doctest::Approx(std::log(0.8 / 0.2)).epsilon(1e-9));
}

TEST_CASE("pv reproduces plain integration when the pole is outside the support") {
    const auto f = [](double t) {
        return Complex(t > 1.0 && t < 2.0 ? std::sin(3.0 * t) : 0.0, 0.0);
    };
    const double x0 = 5.0;
    auto pv = integratePV(f, x0, spec, {1.0, 2.0});
    auto plain = integrateHalfLine([&](double t) { return f(t) / (x0 - t); }, spec, {1.0, 2.0});
    CHECK(std::abs(pv.value - plain.value) < spec.relTol * (1.0 + std::abs(plain.value)) * 10);
}

TEST_CASE("vertical line integrals") {
    PVQuadratureSpec vspec;
    vspec.absTol = 1e-10;

    // F identically zero
    auto z = integrateVerticalLine([](Complex) { return Complex(0.0, 0.0); },
                                   ContourSpec{1.0, 0.0, 24}, vspec, {1.0, 2.0, 8.0});
    CHECK(std::abs(z.value) < 1e-12);

    // F(s) = 1/s^2 on Re s = 1: closed antiderivative gives
    // INT_{-Y}^{Y} (1+iy)^{-2} dy = 2Y/(1+Y^2) -> 0, so the full line is 0
    auto w = integrateVerticalLine([](Complex s) { return 1.0 / (s * s); },
                                   ContourSpec{1.0, 0.0, 24}, vspec, {1.5, 2.0, 8.0});
    CHECK(std::abs(w.value) < 2e-6);

    // decaying Gaussian F(s) = exp(s^2): (1/(2 pi i)) INT = 1/(2 sqrt(pi)),
    // independent of the abscissa
    for (double c : {0.25, 0.5, 1.0}) {
        auto g = integrateVerticalLine([](Complex s) { return std::exp(s * s); },
                                       ContourSpec{c, 0.0, 24}, vspec, {10.0, 2.0, 6.0});
        CHECK(g.value.real() == doctest::Approx(0.5 / std::sqrt(kPi)).epsilon(1e-9));
        CHECK(std::abs(g.value.imag()) < 1e-10);
    }

    // growing integrand violates any algebraic certificate and is refused
    CHECK_THROWS_AS(integrateVerticalLine([](Complex s) { return std::exp(-s * s); },
                                          ContourSpec{0.5, 0.0, 24}, vspec, {1.0, 2.0, 8.0}),
                    DomainError);

    // doubling the truncation height does not move the result once the
    // certified tail bound is below absTol
    PVQuadratureSpec tspec;
    tspec.absTol = 1e-6;
    const auto F = [](Complex s) { return 1.0 / ((s + 1.0) * (s + 1.0) * (s + 2.0)); };
    auto y1 = integrateVerticalLine(F, ContourSpec{1.0, 6000.0, 24}, tspec, {10.0, 3.0, 8.0});
    auto y2 = integrateVerticalLine(F, ContourSpec{1.0, 12000.0, 24}, tspec, {10.0, 3.0, 8.0});
    CHECK(std::abs(y1.value - y2.value) < 2.0 * tspec.absTol);
}

TEST_CASE("log-grid differencing") {
    const double du = 0.05;
    const int n = 101;

    SUBCASE("t^{-1/2} is an eigenfunction with eigenvalue 1/2 per order") {
        for (int order : {1, 2, 3}) {
            std::vector<Complex> g(n);
            for (int i = 0; i < n; ++i) g[i] = std::exp(-0.5 * (i - n / 2) * du);
            auto d = logDerivative(g, du, order);
            REQUIRE(d.size() == g.size() - 4 * order);
            const double eig = std::pow(0.5, order);
            for (std::size_t i = 0; i < d.size(); ++i) {
                const double expected = eig * std::exp(-0.5 * (double(i) + 2 * order - n / 2) * du);
                CHECK(d[i].real() == doctest::Approx(expected).epsilon(1e-7));
            }
        }
    }

    SUBCASE("constants are annihilated") {
        std::vector<Complex> g(n, Complex(3.25, -1.0));
        auto d = logDerivative(g, du, 2);
        for (auto v : d) CHECK(std::abs(v) < 1e-12);
    }

    SUBCASE("composition matches a single higher-order application") {
        std::vector<Complex> g(n);
        for (int i = 0; i < n; ++i) {
            const double u = (i - n / 2) * du;
            g[i] = std::sin(u) + Complex(0.0, 1.0) * std::cos(0.5 * u);
        }
        auto once = logDerivative(logDerivative(g, du, 1), du, 2);
        auto direct = logDerivative(g, du, 3);
        REQUIRE(once.size() == direct.size());
        for (std::size_t i = 0; i < once.size(); ++i)
            CHECK(std::abs(once[i] - direct[i]) < 1e-6);
    }

    SUBCASE("too few points is an error") {
        std::vector<Complex> g(8, Complex(1.0, 0.0));
        CHECK_THROWS_AS(logDerivative(g, du, 1), DomainError);
    }
}
