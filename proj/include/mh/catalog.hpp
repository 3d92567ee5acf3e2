#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mh/common.hpp"
#include "mh/mellin.hpp"
#include "mh/strip.hpp"

namespace mh {

/// A built-in right-hand side / test function with whatever closed forms are
/// known for it. Closed forms are oracles: the library always recomputes the
/// same quantities by quadrature, and tests hold the two routes together.
struct CatalogEntry {
    std::string id;
    HalfLineFunction function;
    std::optional<StripFunction> knownMellin;
    std::function<Complex(double)> knownHilbert; // may be empty
    std::string notes;
};

namespace catalog_detail {

inline constexpr double kExpisqrtCut = 4.0 * kPi * kPi; // (2 pi)^2

/// Mellin transform of exp(i sqrt(t)) 1_(0,(2pi)^2):
///   2 (2 pi)^{2s} SUM_{n>=0} (-2 pi i)^n / ((2s)(2s+1)...(2s+n)),
/// the incomplete-gamma series written so the prefactors never overflow.
inline Complex expisqrtMellin(Complex s) {
    const Complex a(0.0, -2.0 * kPi);
    const Complex z = 2.0 * s;
    Complex term = 1.0 / z;
    Complex sum = term;
    for (int n = 1; n < 400; ++n) {
        term *= a / (z + double(n));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum) && n > 16) break;
    }
    return 2.0 * std::exp(2.0 * s * std::log(2.0 * kPi)) * sum;
}

inline double bumpCenter() { return 0.5 * std::log(2.0); }
inline double bumpHalfWidth() { return 0.5 * std::log(2.0); }

inline double bumpValue(double u) {
    const double xi = (u - bumpCenter()) / bumpHalfWidth();
    if (std::abs(xi) >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - xi * xi));
}

/// d/dt of the bump; used where analytic derivatives are wanted.
inline double bumpDerivT(double t) {
    const double u = std::log(t);
    const double beta = bumpHalfWidth();
    const double xi = (u - bumpCenter()) / beta;
    if (std::abs(xi) >= 1.0) return 0.0;
    const double denom = 1.0 - xi * xi;
    return bumpValue(u) * (-2.0 * xi / (denom * denom)) / (beta * t);
}

} // namespace catalog_detail

inline CatalogEntry makeIndicator01() {
    CatalogEntry e;
    e.id = "indicator01";
    e.function = HalfLineFunction{
        [](double t) { return Complex(t < 1.0 ? 1.0 : 0.0, 0.0); },
        Strip(0.0, std::numeric_limits<double>::infinity()),
        "indicator01",
        {1.0},
        nullptr};
    StripFunction M;
    M.strip = e.function.strip;
    M.label = "M[indicator01]";
    M.eval = [](Complex s) { return 1.0 / s; };
    M.growthDegree = 0;
    M.growthConstant = 2.0;
    e.knownMellin = M;
    e.knownHilbert = [](double x) {
        return Complex(std::log(x / std::abs(1.0 - x)) / kPi, 0.0);
    };
    e.notes = "unit drop on (0,1); M = 1/s; Hf = (1/pi) ln(x/|1-x|)";
    return e;
}

inline CatalogEntry makeNeglog01() {
    CatalogEntry e;
    e.id = "neglog01";
    e.function = HalfLineFunction{
        [](double t) { return Complex(t < 1.0 ? -std::log(t) : 0.0, 0.0); },
        Strip(0.0, std::numeric_limits<double>::infinity()),
        "neglog01",
        {},
        nullptr};
    StripFunction M;
    M.strip = e.function.strip;
    M.label = "M[neglog01]";
    M.eval = [](Complex s) { return 1.0 / (s * s); };
    M.growthDegree = 0;
    M.growthConstant = 4.0;
    e.knownMellin = M;
    e.notes = "-ln t on (0,1), continuous at 1; M = 1/s^2";
    return e;
}

inline CatalogEntry makeBump12() {
    CatalogEntry e;
    e.id = "bump12";
    e.function = HalfLineFunction{
        [](double t) { return Complex(catalog_detail::bumpValue(std::log(t)), 0.0); },
        Strip::wholePlane(),
        "bump12",
        {},
        [](int k, double t) -> Complex {
            if (k == 0) return Complex(catalog_detail::bumpValue(std::log(t)), 0.0);
            if (k == 1) return Complex(catalog_detail::bumpDerivT(t), 0.0);
            return detail::fdDerivative(
                [](double tt) { return Complex(catalog_detail::bumpValue(std::log(tt)), 0.0); },
                t, k);
        }};
    e.notes = "smooth bump supported on (1,2); entire Mellin transform";
    return e;
}

inline CatalogEntry makeExpisqrt() {
    CatalogEntry e;
    e.id = "expisqrt";
    const double cut = catalog_detail::kExpisqrtCut;
    e.function = HalfLineFunction{
        [cut](double t) {
            if (t >= cut) return Complex(0.0, 0.0);
            const double r = std::sqrt(t);
            return Complex(std::cos(r), std::sin(r));
        },
        Strip(0.0, std::numeric_limits<double>::infinity()),
        "expisqrt",
        {cut},
        nullptr};
    StripFunction M;
    M.strip = e.function.strip;
    M.label = "M[expisqrt]";
    M.eval = catalog_detail::expisqrtMellin;
    M.growthDegree = 0;
    M.growthConstant = 60.0;
    e.knownMellin = M;
    e.notes = "exp(i sqrt t) cut at (2 pi)^2; M vanishes at s = 1/2";
    return e;
}

inline CatalogEntry makePowercut(double p) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("powercut: need 0 < p < 1");
    CatalogEntry e;
    std::ostringstream id;
    id << "powercut(" << p << ")";
    e.id = id.str();
    e.function = HalfLineFunction{
        [p](double t) { return Complex(t < 1.0 ? std::pow(t, -p) : 0.0, 0.0); },
        Strip(p, std::numeric_limits<double>::infinity()),
        e.id,
        {1.0},
        nullptr};
    StripFunction M;
    M.strip = e.function.strip;
    M.label = "M[" + e.id + "]";
    M.eval = [p](Complex s) { return 1.0 / (s - p); };
    M.growthDegree = 0;
    M.growthConstant = 2.0;
    e.knownMellin = M;
    e.notes = "t^{-p} on (0,1); M = 1/(s-p) on S(p, inf)";
    return e;
}

inline CatalogEntry makeLogGauss() {
    CatalogEntry e;
    e.id = "loggauss";
    e.function = HalfLineFunction{
        [](double t) {
            const double u = std::log(t);
            return Complex(std::exp(-u * u), 0.0);
        },
        Strip::wholePlane(),
        "loggauss",
        {},
        nullptr};
    StripFunction M;
    M.strip = Strip::wholePlane();
    M.label = "M[loggauss]";
    M.eval = [](Complex s) { return std::sqrt(kPi) * std::exp(0.25 * s * s); };
    M.growthDegree = 0;
    M.growthConstant = 2.0;
    e.knownMellin = M;
    e.notes = "Gaussian in ln t; M(s) = sqrt(pi) exp(s^2/4)";
    return e;
}

inline std::vector<std::string> listEntries() {
    return {"indicator01", "neglog01", "bump12", "expisqrt", "loggauss", "powercut(p)"};
}

/// Fetch an entry by id; "powercut(0.25)" style ids construct the family.
inline CatalogEntry getEntry(const std::string& id) {
    if (id == "indicator01") return makeIndicator01();
    if (id == "neglog01") return makeNeglog01();
    if (id == "bump12") return makeBump12();
    if (id == "expisqrt") return makeExpisqrt();
    if (id == "loggauss") return makeLogGauss();
    if (id.rfind("powercut(", 0) == 0 && id.back() == ')') {
        const std::string num = id.substr(9, id.size() - 10);
        try {
            return makePowercut(std::stod(num));
        } catch (const std::invalid_argument&) {
            throw DomainError("catalog: malformed powercut id '" + id + "'");
        }
    }
    std::string known;
    for (const auto& k : listEntries()) known += (known.empty() ? "" : ", ") + k;
    throw DomainError("catalog: unknown id '" + id + "'; available: " + known);
}

} // namespace mh
