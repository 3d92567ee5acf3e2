#include "doctest.h"

#include <cmath>
#include <random>

#include "mh/strip.hpp"

using namespace mh;

namespace {

HalfLineFunction powerFunction(Complex s) {
    return HalfLineFunction{
        [s](double t) { return std::exp((s - 1.0) * std::log(t)); },
        Strip::wholePlane(),
        "t^{s-1}",
        {},
        [s](int k, double t) {
            Complex c{1.0, 0.0};
            for (int j = 1; j <= k; ++j) c *= s - double(j);
            return c * std::exp((s - 1.0 - double(k)) * std::log(t));
        }};
}

} // namespace

TEST_CASE("strip invariants") {
    CHECK_THROWS_AS(Strip(1.0, 1.0), DomainError); // degenerate strips rejected
    CHECK_THROWS_AS(Strip(2.0, 1.0), DomainError);
    const Strip s(0.0, 1.0);
    CHECK(s.contains(0.5));
    CHECK(!s.contains(0.0));
    CHECK(!s.contains(1.0));
    CHECK(s.contains(Complex(0.25, 100.0)));

    const auto i = intersect(Strip(0.0, 2.0), Strip(1.0, 3.0));
    REQUIRE(i.has_value());
    CHECK(i->lo == 1.0);
    CHECK(i->hi == 2.0);
    CHECK(!intersect(Strip(0.0, 1.0), Strip(2.0, 3.0)).has_value());
}

TEST_CASE("strip intersection is commutative and associative") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> d(-3.0, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
        double a1 = d(rng), b1 = d(rng), a2 = d(rng), b2 = d(rng), a3 = d(rng), b3 = d(rng);
        if (a1 >= b1 || a2 >= b2 || a3 >= b3) continue;
        Strip A(a1, b1), B(a2, b2), C(a3, b3);
        auto ab = intersect(A, B);
        auto ba = intersect(B, A);
        CHECK(ab.has_value() == ba.has_value());
        if (ab && ba) CHECK(*ab == *ba);
        auto lhs = ab ? intersect(*ab, C) : std::nullopt;
        auto bc = intersect(B, C);
        auto rhs = bc ? intersect(A, *bc) : std::nullopt;
        CHECK(lhs.has_value() == rhs.has_value());
        if (lhs && rhs) CHECK(*lhs == *rhs);
    }
}

TEST_CASE("norm of t^{s-1} is finite iff a1 <= Re(s) <= a2") {
    // s = 0.5 inside [0.25, 0.75]: bounded (value 1 attained at t = 1)
    auto phi = powerFunction(Complex(0.5, 0.0));
    auto r = testFunctionNorm(phi, 0.25, 0.75, 0);
    CHECK(!r.divergent);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-9));

    // s = 0.1 below the window: grid sup grows without bound toward t -> 0
    auto bad = testFunctionNorm(powerFunction(Complex(0.1, 0.0)), 0.25, 0.75, 0);
    CHECK(bad.divergent);

    // full iff sweep for k <= 3
    for (int k = 0; k <= 3; ++k) {
        for (double res : {0.1, 0.25, 0.5, 0.75, 0.9}) {
            auto rr = testFunctionNorm(powerFunction(Complex(res, 0.3)), 0.25, 0.75, k);
            const bool shouldConverge = res >= 0.25 && res <= 0.75;
            CHECK(rr.divergent == !shouldConverge);
        }
    }
}

TEST_CASE("norm of the log-Gaussian is finite for k = 1") {
    HalfLineFunction g{[](double t) {
                           const double u = std::log(t);
                           return Complex(std::exp(-u * u), 0.0);
                       },
                       Strip::wholePlane(),
                       "loggauss",
                       {},
                       nullptr};
    auto r = testFunctionNorm(g, -2.0, 3.0, 1);
    CHECK(!r.divergent);
    CHECK(r.value > 0.0);
    CHECK(std::isfinite(r.value));
}

TEST_CASE("norm is absolutely homogeneous") {
    const Complex c(1.25, -2.0);
    auto phi = powerFunction(Complex(0.5, 0.2));
    auto scaled = phi;
    auto base = phi.eval;
    auto baseD = phi.derivative;
    scaled.eval = [base, c](double t) { return c * base(t); };
    scaled.derivative = [baseD, c](int k, double t) { return c * baseD(k, t); };
    for (int k = 0; k <= 2; ++k) {
        auto a = testFunctionNorm(phi, 0.3, 0.7, k);
        auto b = testFunctionNorm(scaled, 0.3, 0.7, k);
        CHECK(b.value == doctest::Approx(std::abs(c) * a.value).epsilon(1e-12));
    }
}

TEST_CASE("membership diagnostics") {
    HalfLineFunction ind{[](double t) { return Complex(t < 1.0 ? 1.0 : 0.0, 0.0); },
                         Strip(0.0, std::numeric_limits<double>::infinity()),
                         "indicator01",
                         {1.0},
                         nullptr};
    CHECK(checkMembership(ind, Strip(0.0, 1.0), 0.05) == MembershipDiagnostic::Consistent);
    // bounded near zero: decay sampling cannot flag S(-0.5, 1); the Mellin
    // integral itself is the authoritative divergence check for that case
    CHECK(checkMembership(ind, Strip(-0.5, 1.0), 0.05) == MembershipDiagnostic::Consistent);

    HalfLineFunction pc{[](double t) { return Complex(t < 1.0 ? std::pow(t, -0.25) : 0.0, 0.0); },
                        Strip(0.25, std::numeric_limits<double>::infinity()),
                        "powercut",
                        {1.0},
                        nullptr};
    CHECK(checkMembership(pc, Strip(0.25, std::numeric_limits<double>::infinity()), 0.05) ==
          MembershipDiagnostic::Consistent);
    // declaring faster decay at 0 than the function has must be flagged
    CHECK(checkMembership(pc, Strip(-0.6, std::numeric_limits<double>::infinity()), 0.05) ==
          MembershipDiagnostic::InconsistentAtZero);

    HalfLineFunction grow{[](double t) { return Complex(t, 0.0); }, Strip::wholePlane(),
                          "t", {}, nullptr};
    CHECK(checkMembership(grow, Strip(-3.0, 0.5), 0.05) ==
          MembershipDiagnostic::InconsistentAtInfinity);
}
