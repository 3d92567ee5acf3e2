#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "mh/common.hpp"

namespace mh {

/// Tolerances and budgets for the quadrature engines.
struct PVQuadratureSpec {
    double relTol = 1e-9;
    double absTol = 1e-12;
    int maxPanels = 20000;     // bisection budget per adaptive call
    double logWindow = 30.0;   // initial half-width of the window in u = ln t
    double tailSafety = 2.0;   // safety factor on certified contour tails

    void validate() const {
        if (!(relTol > 0.0) || !(absTol > 0.0) || maxPanels < 1 || !(logWindow > 0.0) ||
            !(tailSafety > 0.0))
            throw DomainError("PVQuadratureSpec: tolerances, panel budget and window must be positive");
    }
};

/// Placement of a vertical integration contour Re(s) = abscissa.
struct ContourSpec {
    double abscissa = 0.5;
    double truncationHeight = 0.0; // 0 = auto (from certificate / stabilization)
    int nodesPerUnit = 24;
};

struct IntegralResult {
    Complex value{0.0, 0.0};
    double error = 0.0;
    std::size_t evaluations = 0;
    bool converged = true;
    std::string note;
};

using Integrand = std::function<Complex(double)>;

namespace detail {

// Gauss-Kronrod 15(7) on [-1, 1].
inline constexpr double kGK15Nodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kGK15Weights[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kG7Weights[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelEstimate {
    Complex value;
    double error;
};

inline PanelEstimate gk15(const Integrand& f, double a, double b, std::size_t& evals) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    Complex gk{0.0, 0.0};
    Complex g7{0.0, 0.0};
    for (int i = 0; i < 8; ++i) {
        const double dx = half * kGK15Nodes[i];
        Complex v;
        if (i == 7) {
            v = f(mid);
            ++evals;
        } else {
            v = f(mid - dx) + f(mid + dx);
            evals += 2;
        }
        gk += kGK15Weights[i] * v;
        if (i % 2 == 1) g7 += kG7Weights[i / 2] * v; // odd Kronrod nodes carry the Gauss-7 rule
    }
    gk *= half;
    g7 *= half;
    const double diff = std::abs(gk - g7);
    // QUADPACK-style sharpened estimate; keeps smooth panels from being over-refined.
    const double err = diff > 0.0 ? std::min(diff, 200.0 * diff * std::sqrt(diff)) : 0.0;
    return {gk, std::max(err, 1e-300)};
}

struct Panel {
    double a, b;
    Complex value;
    double error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

/// Globally adaptive bisection on [a, b], splitting initially at the given
/// interior breakpoints. Complex-valued integrands.
inline IntegralResult adaptive(const Integrand& f, double a, double b, double absTol,
                               double relTol, int maxPanels,
                               const std::vector<double>& breakpoints = {}) {
    IntegralResult out;
    if (!(a < b)) return out;

    std::vector<double> cuts{a};
    for (double c : breakpoints)
        if (c > a && c < b) cuts.push_back(c);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::priority_queue<Panel> queue;
    Complex total{0.0, 0.0};
    double totalErr = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const auto est = gk15(f, cuts[i], cuts[i + 1], out.evaluations);
        queue.push({cuts[i], cuts[i + 1], est.value, est.error});
        total += est.value;
        totalErr += est.error;
    }

    int panels = static_cast<int>(cuts.size()) - 1;
    const double widthFloor = (b - a) * 1e-14;
    while (totalErr > std::max(absTol, relTol * std::abs(total)) && panels < maxPanels) {
        Panel worst = queue.top();
        if (worst.b - worst.a <= std::max(widthFloor, 1e-300)) break; // roundoff floor
        queue.pop();
        total -= worst.value;
        totalErr -= worst.error;
        const double mid = 0.5 * (worst.a + worst.b);
        const auto left = gk15(f, worst.a, mid, out.evaluations);
        const auto right = gk15(f, mid, worst.b, out.evaluations);
        queue.push({worst.a, mid, left.value, left.error});
        queue.push({mid, worst.b, right.value, right.error});
        total += left.value + right.value;
        totalErr += left.error + right.error;
        ++panels;
    }

    out.value = total;
    out.error = totalErr;
    if (totalErr > std::max(absTol, relTol * std::abs(total))) {
        out.converged = false;
        out.note = "panel budget exhausted";
    }
    return out;
}

} // namespace detail

/// Integral of f over (tLo, tHi) within (0, inf), computed in u = ln t with
/// adaptive panels. Unbounded ends are handled by growing the log window
/// until two consecutive extensions contribute less than the tolerance.
/// Nonconvergent growth produces converged = false with the partial sums.
inline IntegralResult integrateHalfLine(const Integrand& f, const PVQuadratureSpec& spec,
                                        const std::vector<double>& breakpoints = {},
                                        double tLo = 0.0,
                                        double tHi = std::numeric_limits<double>::infinity()) {
    spec.validate();
    if (!(tLo >= 0.0) || !(tHi > tLo)) throw DomainError("integrateHalfLine: bad range");

    const Integrand g = [&f](double u) {
        const double t = std::exp(u);
        return f(t) * t;
    };
    std::vector<double> uBreaks;
    for (double d : breakpoints)
        if (d > 0.0 && std::isfinite(d)) uBreaks.push_back(std::log(d));

    const bool openLeft = tLo == 0.0;
    const bool openRight = !std::isfinite(tHi);
    double uMin = openLeft ? -spec.logWindow : std::log(tLo);
    double uMax = openRight ? spec.logWindow : std::log(tHi);
    if (!openLeft && !openRight && uMin >= uMax)
        throw DomainError("integrateHalfLine: empty range");
    // keep the core window nonempty when a finite endpoint lies outside it
    if (openLeft && uMin > uMax - 1.0) uMin = uMax - 1.0;
    if (openRight && uMax < uMin + 1.0) uMax = uMin + 1.0;

    IntegralResult out;
    auto core = detail::adaptive(g, uMin, uMax, spec.absTol, spec.relTol, spec.maxPanels, uBreaks);
    out.value = core.value;
    out.error = core.error;
    out.evaluations = core.evaluations;
    if (!core.converged) {
        out.converged = false;
        out.note = core.note;
    }

    const double chunk = 10.0;
    const double uLimit = 1500.0;
    const auto tol = [&] { return std::max(spec.absTol, spec.relTol * std::abs(out.value)); };

    for (int side = 0; side < 2; ++side) {
        const bool left = side == 0;
        if (left && !openLeft) continue;
        if (!left && !openRight) continue;
        double edge = left ? uMin : uMax;
        int stable = 0;
        int nonDecreasing = 0;
        double prevMag = std::numeric_limits<double>::infinity();
        while (stable < 2) {
            const double a = left ? edge - chunk : edge;
            const double b = left ? edge : edge + chunk;
            auto piece = detail::adaptive(g, a, b, 0.25 * spec.absTol, 0.25 * spec.relTol,
                                          spec.maxPanels, {});
            out.value += piece.value;
            out.error += piece.error;
            out.evaluations += piece.evaluations;
            edge = left ? a : b;
            const double mag = std::abs(piece.value);
            if (mag < 0.25 * tol()) ++stable;
            else stable = 0;
            if (mag > tol() && mag >= 0.95 * prevMag) ++nonDecreasing;
            else nonDecreasing = 0;
            prevMag = std::max(mag, 1e-300);
            if (nonDecreasing >= 5 || std::abs(out.value) > 1e14 ||
                std::abs(edge) > uLimit) {
                out.converged = false;
                out.note = left ? "window growth did not stabilize toward t -> 0"
                                : "window growth did not stabilize toward t -> inf";
                out.error += 10.0 * mag;
                stable = 2;
            }
        }
    }
    return out;
}

/// Principal value of  pv INT f(t) / (x0 - t) dt  over (0, inf), regularized
/// by secant subtraction on the multiplicative window (x0 - d, x0 + d),
/// d = x0/2 by default:
///     pv INT = [outside-window INT f(t)/(x0-t) dt] - INT (f(t)-f(x0))/(t-x0) dt.
/// The symmetric window makes the pure-pole part cancel exactly, so no
/// epsilon limit is ever taken. A window overlapping a declared
/// discontinuity of f is shrunk (diagnostic attached to the note).
inline IntegralResult integratePV(const Integrand& f, double x0, const PVQuadratureSpec& spec,
                                  const std::vector<double>& discontinuities = {}) {
    spec.validate();
    if (!(x0 > 0.0) || !std::isfinite(x0)) throw DomainError("integratePV: x0 must be positive");
    for (double d : discontinuities)
        if (std::abs(d - x0) <= 1e-12 * std::max(1.0, x0))
            throw DomainError("integratePV: f is not evaluatable at the singular point x0=" +
                              std::to_string(x0));

    double delta = 0.5 * x0;
    std::string note;
    for (double d : discontinuities) {
        const double dist = std::abs(d - x0);
        if (dist < delta) {
            delta = 0.45 * dist;
            note = "window shrunk to avoid discontinuity at t=" + std::to_string(d);
        }
    }

    const Complex fx0 = f(x0);
    if (std::isnan(fx0.real()) || std::isnan(fx0.imag()))
        throw DomainError("integratePV: f not evaluatable at x0");

    IntegralResult out;
    out.note = note;

    // outside pieces, kernel included
    const Integrand h = [&](double t) { return f(t) / (x0 - t); };
    auto lower = integrateHalfLine(h, spec, discontinuities, 0.0, x0 - delta);
    auto upper = integrateHalfLine(h, spec, discontinuities, x0 + delta,
                                   std::numeric_limits<double>::infinity());

    // bounded secant on the window, split at x0 so nodes never hit the pole
    const Integrand secant = [&](double t) { return (f(t) - fx0) / (t - x0); };
    auto window = detail::adaptive(secant, x0 - delta, x0 + delta, 0.5 * spec.absTol,
                                   0.5 * spec.relTol, spec.maxPanels, {x0});

    out.value = lower.value + upper.value - window.value;
    out.error = lower.error + upper.error + window.error;
    out.evaluations = lower.evaluations + upper.evaluations + window.evaluations;
    out.converged = lower.converged && upper.converged && window.converged;
    if (!lower.converged || !upper.converged)
        out.note = "tail divergence: " + (lower.converged ? upper.note : lower.note);
    return out;
}

/// Caller-supplied decay certificate |F(c+iy)| <= K |y|^{-p} for |y| >= y0.
struct DecayCertificate {
    double K = 1.0;
    double p = 2.0;
    double y0 = 8.0;
};

namespace detail {

/// Least-squares slope of log|F| against log y on doubling heights; used to
/// sanity-check decay certificates.
inline double measuredDecayExponent(const std::function<Complex(Complex)>& F, double c,
                                    double y0) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (int i = 0; i < 4; ++i) {
        const double y = y0 * std::exp2(double(i));
        const double mag =
            std::max(std::abs(F(Complex(c, y))), std::abs(F(Complex(c, -y))));
        if (mag <= 0.0) continue;
        const double lx = std::log(y), ly = std::log(mag);
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
        ++n;
    }
    if (n < 2) return std::numeric_limits<double>::infinity(); // identically zero tail
    return -(n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace detail

namespace detail {

/// Two-term integration-by-parts model of the truncated oscillatory tails
///   INT_{|y|>Y} A(y) e^{-i y tau} dy,  A(y) = F(c+iy) e^{+i y tau},
/// valid when A varies slowly at the boundary. `error` estimates the
/// next-order term.
struct TailCorrection {
    Complex value{0.0, 0.0};
    double error = std::numeric_limits<double>::infinity();
};

inline TailCorrection oscillatoryTail(const std::function<Complex(Complex)>& F, double c,
                                      double Y, double tau) {
    const double dy = std::min(0.1, 0.01 * Y);
    const auto A = [&](double y) { return F(Complex(c, y)) * std::exp(Complex(0.0, y * tau)); };
    const Complex aU = A(Y), aD = A(-Y);
    const Complex apU = (A(Y + dy) - A(Y - dy)) / (2.0 * dy);
    const Complex apD = (A(-Y + dy) - A(-Y - dy)) / (2.0 * dy);
    const Complex itau(0.0, tau);
    const Complex up = std::exp(Complex(0.0, -Y * tau)) * (aU / itau - apU / (tau * tau));
    const Complex dn = std::exp(Complex(0.0, Y * tau)) * (-aD / itau + apD / (tau * tau));
    TailCorrection out;
    out.value = up + dn;
    out.error = (2.0 * (std::abs(apU) + std::abs(apD)) +
                 4.0 * (std::abs(aU) + std::abs(aD)) / Y) /
                (tau * tau);
    return out;
}

} // namespace detail

/// (1/(2 pi i)) INT F(s) ds along Re(s) = contour.abscissa. The certificate
/// is spot-checked by sampling; truncation grows geometrically and stops
/// when the certified tail bound 2 K Y^{1-p}/(p-1) drops below absTol, when
/// two consecutive extensions contribute less than the tolerance, or - for
/// integrands of the form A(y) e^{-i y oscillation} with A slowly varying
/// at the tails - when the integration-by-parts tail model converges, in
/// which case the modeled tails are added in.
inline IntegralResult integrateVerticalLine(const std::function<Complex(Complex)>& F,
                                            const ContourSpec& contour,
                                            const PVQuadratureSpec& spec,
                                            const DecayCertificate& cert = {},
                                            double oscillation = 0.0) {
    spec.validate();
    if (!(cert.p >= 2.0)) throw DomainError("integrateVerticalLine: certificate needs p >= 2");
    const double c = contour.abscissa;

    bool certViolated = false;
    for (int i = 0; i < 4 && !certViolated; ++i) {
        const double y = cert.y0 * std::exp2(double(i));
        const double bound = 1.5 * cert.K * std::pow(y, -cert.p);
        if (std::abs(F(Complex(c, y))) > bound || std::abs(F(Complex(c, -y))) > bound)
            certViolated = true;
    }
    if (certViolated) {
        const double measured = detail::measuredDecayExponent(F, c, cert.y0);
        throw DomainError("integrateVerticalLine: sampled decay slower than certified (measured exponent ~" +
                          std::to_string(measured) + ", certified p=" + std::to_string(cert.p) + ")");
    }

    const Integrand g = [&](double y) { return F(Complex(c, y)); };
    const double tol = spec.absTol; // scale unknown a priori; refined below
    const double tau = oscillation;
    const bool parts = std::abs(tau) > 1e-3;

    double yTarget;
    if (contour.truncationHeight > 0.0) {
        yTarget = contour.truncationHeight;
    } else {
        yTarget = std::pow(2.0 * cert.K * spec.tailSafety / ((cert.p - 1.0) * spec.absTol),
                           1.0 / (cert.p - 1.0));
        yTarget = std::clamp(yTarget, 2.0 * cert.y0, 1e13);
    }

    IntegralResult out;
    double y = std::min(std::max(16.0, 2.0 * cert.y0), yTarget);
    auto core = detail::adaptive(g, -y, y, 0.5 * tol, 0.5 * spec.relTol, spec.maxPanels, {0.0});
    out.value = core.value;
    out.error = core.error;
    out.evaluations = core.evaluations;
    out.converged = core.converged;

    int stable = 0;
    double lastMag = 0.0;
    bool corrected = false;
    while (y < yTarget && stable < 2) {
        const double target = std::max(spec.absTol, spec.relTol * std::abs(out.value));
        if (parts) {
            auto tc = detail::oscillatoryTail(F, c, y, tau);
            out.evaluations += 6;
            if (tc.error < 0.25 * target) {
                out.value += tc.value;
                out.error += tc.error;
                corrected = true;
                break;
            }
        }
        const double yNext = std::min(1.6 * y, yTarget);
        auto up = detail::adaptive(g, y, yNext, 0.25 * tol, 0.25 * spec.relTol, spec.maxPanels, {});
        auto dn = detail::adaptive(g, -yNext, -y, 0.25 * tol, 0.25 * spec.relTol, spec.maxPanels, {});
        out.value += up.value + dn.value;
        out.error += up.error + dn.error;
        out.evaluations += up.evaluations + dn.evaluations;
        lastMag = std::abs(up.value) + std::abs(dn.value);
        if (lastMag < 0.25 * std::max(spec.absTol, spec.relTol * std::abs(out.value))) ++stable;
        else stable = 0;
        y = yNext;
    }

    if (corrected) {
        out.note = "oscillatory tail model applied at Y=" + std::to_string(y);
    } else {
        const double certTail = 2.0 * cert.K * std::pow(y, 1.0 - cert.p) / (cert.p - 1.0);
        out.error += std::min(certTail, 3.0 * lastMag);
        if (y < yTarget) out.note = "tail stopped by stabilization at Y=" + std::to_string(y);
    }

    out.value /= 2.0 * kPi; // (1/(2 pi i)) F ds = (1/(2 pi)) F dy
    out.error /= 2.0 * kPi;
    return out;
}

/// Samples of (-t d/dt)^order g from samples of g on a grid uniform in
/// u = ln t, via order-4 central differences applied `order` times. The
/// output grid loses two points per side per application.
inline std::vector<Complex> logDerivative(const std::vector<Complex>& g, double du, int order) {
    if (order < 0 || order > 8) throw DomainError("logDerivative: order must be in [0, 8]");
    if (!(du > 0.0)) throw DomainError("logDerivative: grid step must be positive");
    if (static_cast<int>(g.size()) < 4 * order + 5)
        throw DomainError("logDerivative: too few points (need >= 4*order + 5)");
    std::vector<Complex> cur = g;
    for (int pass = 0; pass < order; ++pass) {
        std::vector<Complex> next(cur.size() - 4);
        for (std::size_t i = 2; i + 2 < cur.size(); ++i) {
            // (-d/du) with the 5-point order-4 stencil
            next[i - 2] = -(-cur[i + 2] + 8.0 * cur[i + 1] - 8.0 * cur[i - 1] + cur[i - 2]) /
                          (12.0 * du);
        }
        cur = std::move(next);
    }
    return cur;
}

} // namespace mh
