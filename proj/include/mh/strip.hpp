#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "mh/common.hpp"

namespace mh {

/// Open vertical strip a < Re(s) < b of the complex plane. Either endpoint
/// may be infinite. Degenerate strips (a >= b) are rejected outright.
struct Strip {
    double lo;
    double hi;

    Strip(double a, double b) : lo(a), hi(b) {
        if (std::isnan(a) || std::isnan(b) || !(a < b))
            throw DomainError("Strip: need lo < hi, got [" + std::to_string(a) + ", " +
                              std::to_string(b) + "]");
    }

    static Strip wholePlane() {
        return Strip(-std::numeric_limits<double>::infinity(),
                     std::numeric_limits<double>::infinity());
    }

    bool contains(double x) const { return lo < x && x < hi; }
    bool contains(Complex s) const { return contains(s.real()); }
    bool contains(const Strip& other) const { return lo <= other.lo && other.hi <= hi; }

    double width() const { return hi - lo; }
    bool bounded() const { return std::isfinite(lo) && std::isfinite(hi); }

    /// Midpoint of the strip, clamped to a finite value for unbounded strips.
    double midpoint() const {
        if (bounded()) return 0.5 * (lo + hi);
        if (std::isfinite(lo)) return lo + 1.0;
        if (std::isfinite(hi)) return hi - 1.0;
        return 0.0;
    }

    friend bool operator==(const Strip& a, const Strip& b) {
        return a.lo == b.lo && a.hi == b.hi;
    }
};

/// Intersection, or nullopt when the strips do not overlap.
inline std::optional<Strip> intersect(const Strip& a, const Strip& b) {
    const double lo = std::max(a.lo, b.lo);
    const double hi = std::min(a.hi, b.hi);
    if (!(lo < hi)) return std::nullopt;
    return Strip(lo, hi);
}

/// A complex-valued function on (0, inf) with a declared admissible strip.
/// `discontinuities` lists the points where the function jumps; evaluators
/// must be total everywhere else. `derivative`, when set, supplies the
/// analytic k-th derivative; otherwise finite differences are used.
struct HalfLineFunction {
    std::function<Complex(double)> eval;
    Strip strip = Strip::wholePlane();
    std::string label;
    std::vector<double> discontinuities;
    std::function<Complex(int, double)> derivative;

    Complex operator()(double t) const { return eval(t); }
};

namespace detail {

/// Order-4 central finite difference of the k-th derivative (k <= 4),
/// with step chosen to balance truncation against roundoff.
inline Complex fdDerivative(const std::function<Complex(double)>& f, double t, int k,
                            double hOverride = 0.0) {
    if (k == 0) return f(t);
    if (k < 0 || k > 4) throw DomainError("fdDerivative: order must be in [0, 4]");
    const double eps = std::numeric_limits<double>::epsilon();
    double h = hOverride > 0.0 ? hOverride : std::pow(eps, 1.0 / (4 + k)) * t;
    h = std::min(h, 0.3 * t); // keep the stencil inside (0, inf)
    const auto fv = [&](int j) { return f(t + j * h); };
    switch (k) {
        case 1:
            return (-fv(2) + 8.0 * fv(1) - 8.0 * fv(-1) + fv(-2)) / (12.0 * h);
        case 2:
            return (-fv(2) + 16.0 * fv(1) - 30.0 * fv(0) + 16.0 * fv(-1) - fv(-2)) /
                   (12.0 * h * h);
        case 3:
            return (-fv(3) + 8.0 * fv(2) - 13.0 * fv(1) + 13.0 * fv(-1) - 8.0 * fv(-2) +
                    fv(-3)) /
                   (8.0 * h * h * h);
        default:
            return (-fv(3) + 12.0 * fv(2) - 39.0 * fv(1) + 56.0 * fv(0) - 39.0 * fv(-1) +
                    12.0 * fv(-2) - fv(-3)) /
                   (6.0 * h * h * h * h);
    }
}

} // namespace detail

/// Weight from the test-function seminorms: t^{-a1} on (0,1], t^{-a2} beyond.
inline double zetaWeight(double a1, double a2, double t) {
    return t <= 1.0 ? std::pow(t, -a1) : std::pow(t, -a2);
}

struct NormResult {
    double value = 0.0;   // lower bound of the sup over the sampled grids
    bool divergent = false;
    int levels = 0;
    std::vector<double> supPerLevel;
};

/// Sampled seminorm sup_t zeta_{a1,a2}(t) t^{k+1} |phi^(k)(t)| on refining
/// geometric grids t = 2^x. Each refinement doubles the exponent range and
/// halves the step; a sup growing by more than 2x across two consecutive
/// refinements flags divergence. The returned value is a grid lower bound of
/// the true sup, never a certificate.
inline NormResult testFunctionNorm(const HalfLineFunction& phi, double a1, double a2, int k,
                                   int extraLevels = 0) {
    if (!std::isfinite(a1) || !std::isfinite(a2) || !(a1 < a2))
        throw DomainError("testFunctionNorm: need finite a1 < a2");
    if (k < 0 || k > 4) throw DomainError("testFunctionNorm: derivative order must be in [0, 4]");

    const auto kthDeriv = [&](double t) -> Complex {
        return phi.derivative ? phi.derivative(k, t) : detail::fdDerivative(phi.eval, t, k);
    };

    NormResult out;
    out.levels = 3 + extraLevels;
    for (int level = 0; level < out.levels; ++level) {
        const double range = 40.0 * (1 << level);
        const double step = 1.0 / (1 << level);
        double sup = 0.0;
        for (double x = -range; x <= range + 0.5 * step; x += step) {
            const double t = std::exp2(x);
            if (t <= 0.0 || !std::isfinite(t)) continue;
            bool skip = false;
            for (double d : phi.discontinuities)
                if (std::abs(t - d) <= 1e-12 * std::max(1.0, d)) skip = true;
            if (skip) continue;
            const Complex v = kthDeriv(t);
            if (std::isnan(v.real()) || std::isnan(v.imag()))
                throw DomainError("testFunctionNorm: derivative not evaluatable at t=" +
                                  std::to_string(t));
            const double w = zetaWeight(a1, a2, t) * std::pow(t, k + 1) * std::abs(v);
            if (std::isfinite(w)) sup = std::max(sup, w);
            else sup = std::numeric_limits<double>::infinity();
        }
        out.supPerLevel.push_back(sup);
    }
    out.value = out.supPerLevel.back();
    int growths = 0;
    for (std::size_t i = 1; i < out.supPerLevel.size(); ++i) {
        const double prev = out.supPerLevel[i - 1];
        if (!std::isfinite(out.supPerLevel[i]) ||
            (prev > 0.0 && out.supPerLevel[i] / prev > 2.0))
            ++growths;
        else
            growths = 0;
        if (growths >= 2) out.divergent = true;
    }
    return out;
}

enum class MembershipDiagnostic { Consistent, InconsistentAtZero, InconsistentAtInfinity };

inline const char* diagnosticName(MembershipDiagnostic d) {
    switch (d) {
        case MembershipDiagnostic::Consistent: return "consistent";
        case MembershipDiagnostic::InconsistentAtZero: return "inconsistent-at-0";
        default: return "inconsistent-at-infinity";
    }
}

/// Decay heuristic for a declared strip: samples |f(t)| t^{a+delta} toward 0
/// and |f(t)| t^{b-delta} toward infinity and looks for sustained growth.
/// An endpoint is flagged only when the raw samples |f(t)| themselves grow
/// there: a bounded function can never be flagged by decay alone, even when
/// the declared exponent asks for decay it does not have. That case is left
/// to the authoritative check, divergence of the Mellin integral itself.
/// Infinite endpoints skip the respective check.
inline MembershipDiagnostic checkMembership(const HalfLineFunction& f, const Strip& candidate,
                                            double delta) {
    if (!(delta > 0.0)) throw DomainError("checkMembership: delta must be positive");

    const auto trendGrows = [&](bool towardZero, double exponent) {
        std::vector<double> blockMax;
        double cur = 0.0;
        int inBlock = 0;
        for (int j = 2; j <= 46; ++j) {
            const double t = towardZero ? std::exp2(-double(j)) : std::exp2(double(j));
            bool skip = false;
            for (double d : f.discontinuities)
                if (std::abs(t - d) <= 1e-12 * std::max(1.0, d)) skip = true;
            if (skip) continue;
            const double v = std::abs(f.eval(t)) * std::pow(t, exponent);
            cur = std::max(cur, std::isfinite(v) ? v : std::numeric_limits<double>::infinity());
            if (++inBlock == 5) {
                blockMax.push_back(cur);
                cur = 0.0;
                inBlock = 0;
            }
        }
        int growths = 0;
        for (std::size_t i = 1; i < blockMax.size(); ++i) {
            if (blockMax[i] > 2.0 * std::max(blockMax[i - 1], 1e-300)) ++growths;
            else growths = 0;
            if (growths >= 2) return true;
        }
        return false;
    };

    if (std::isfinite(candidate.lo) && trendGrows(true, candidate.lo + delta) &&
        trendGrows(true, 0.0))
        return MembershipDiagnostic::InconsistentAtZero;
    if (std::isfinite(candidate.hi) && trendGrows(false, candidate.hi - delta) &&
        trendGrows(false, 0.0))
        return MembershipDiagnostic::InconsistentAtInfinity;
    return MembershipDiagnostic::Consistent;
}

} // namespace mh
