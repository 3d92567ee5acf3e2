#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "mh/common.hpp"
#include "mh/quadrature.hpp"
#include "mh/strip.hpp"

namespace mh {

/// A function holomorphic on a strip minus finitely many listed points, with
/// a polynomial growth certificate |F(s)| <= K (1+|s|)^m on closed substrips.
struct StripFunction {
    Strip strip = Strip::wholePlane();
    std::function<Complex(Complex)> eval;
    int growthDegree = 0;
    double growthConstant = 1.0;
    std::vector<Complex> singularities;
    std::string label;

    Complex operator()(Complex s) const { return eval(s); }
};

/// M[f](s) = INT_0^inf f(t) t^{s-1} dt for s strictly inside f's strip.
inline Complex mellinForward(const HalfLineFunction& f, Complex s, const PVQuadratureSpec& spec) {
    if (!f.strip.contains(s))
        throw DomainError("mellinForward: Re(s)=" + std::to_string(s.real()) +
                          " outside declared strip (" + std::to_string(f.strip.lo) + ", " +
                          std::to_string(f.strip.hi) + ") of " + f.label);
    const auto integrand = [&f, s](double t) { return f.eval(t) * std::exp((s - 1.0) * std::log(t)); };
    auto r = integrateHalfLine(integrand, spec, f.discontinuities);
    if (!r.converged)
        throw DivergenceError("mellinForward(" + f.label + "): " + r.note +
                              " (declared strip may be wrong)", r.value, r.error);
    return r.value;
}

namespace detail {

/// Integer power without the principal-log branch cut.
inline Complex ipow(Complex s, int n) {
    Complex r{1.0, 0.0};
    Complex base = s;
    for (int k = n; k > 0; k >>= 1) {
        if (k & 1) r *= base;
        base *= base;
    }
    return r;
}

/// Log-log slope fit of |F| on two boundary-adjacent vertical lines at
/// heights 10, 100, 1000; the growth degree gets a +1 safety margin.
inline void estimateGrowth(const std::function<Complex(Complex)>& F, const Strip& strip,
                           int& degree, double& constant) {
    const double width = strip.bounded() ? strip.width() : 2.0;
    const double inset = std::min(0.1 * width, 0.1);
    const double loLine = std::isfinite(strip.lo) ? strip.lo + inset : strip.midpoint() - 2.0;
    const double hiLine = std::isfinite(strip.hi) ? strip.hi - inset : strip.midpoint() + 2.0;

    double slope = -std::numeric_limits<double>::infinity();
    std::vector<std::pair<double, double>> pts; // (|s|, |F|)
    for (double c : {loLine, hiLine}) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int n = 0;
        for (double y : {10.0, 100.0, 1000.0}) {
            const double mag = std::abs(F(Complex(c, y)));
            if (!(mag > 0.0) || !std::isfinite(mag)) continue;
            const double as = std::abs(Complex(c, y));
            pts.emplace_back(as, mag);
            const double lx = std::log(as), ly = std::log(mag);
            sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
            ++n;
        }
        if (n >= 2) slope = std::max(slope, (n * sxy - sx * sy) / (n * sxx - sx * sx));
    }
    degree = std::isfinite(slope) ? std::max(0, static_cast<int>(std::ceil(slope)) + 1) : 0;
    double K = 1e-30;
    for (auto& [as, mag] : pts) K = std::max(K, mag / std::pow(1.0 + as, degree));
    constant = 1.1 * K;
}

} // namespace detail

/// Wrap the forward transform as a StripFunction with an estimated growth
/// certificate. The degree estimate is a sampling heuristic and is recorded
/// in the result, not certified.
inline StripFunction mellinTransform(const HalfLineFunction& f, const PVQuadratureSpec& spec) {
    StripFunction F;
    F.strip = f.strip;
    F.label = "M[" + f.label + "]";
    F.eval = [f, spec](Complex s) { return mellinForward(f, s, spec); };
    detail::estimateGrowth(F.eval, F.strip, F.growthDegree, F.growthConstant);
    return F;
}

/// f(t) = (1/(2 pi i)) INT F(s) t^{-s} ds over Re(s) = contour.abscissa,
/// for F decaying at least like |s|^{-2} on the line. sigma-independent
/// within the quadrature tolerance.
inline Complex invertMellin(const StripFunction& F, double t, const ContourSpec& contour,
                            const PVQuadratureSpec& spec) {
    if (!(t > 0.0)) throw DomainError("invertMellin: t must be positive");
    if (!F.strip.contains(contour.abscissa))
        throw DomainError("invertMellin: contour abscissa outside the strip");

    const double c = contour.abscissa;
    // sampled decay check; algebraic p >= 2 is required for absolute convergence
    const double measured = detail::measuredDecayExponent(F.eval, c, 8.0);
    if (measured < 1.9)
        throw DomainError("invertMellin: |F| decays like |y|^" + std::to_string(-measured) +
                          " on the contour; need p >= 2 (use invertMellinRegularized)");
    double K = 1e-300;
    for (double y : {8.0, 16.0, 32.0, 64.0})
        K = std::max({K, std::abs(F.eval(Complex(c, y))) * y * y,
                      std::abs(F.eval(Complex(c, -y))) * y * y});

    const auto integrand = [&](Complex s) { return F.eval(s) * std::exp(-s * std::log(t)); };
    DecayCertificate cert{K * std::pow(t, -c) * 1.5, 2.0, 8.0};
    auto r = integrateVerticalLine(integrand, contour, spec, cert, std::log(t));
    if (!r.converged)
        throw DivergenceError("invertMellin: contour quadrature did not converge", r.value, r.error);
    return r.value;
}

/// Log-uniform grid t_k = exp(u0 + k du), k = 0..n-1.
struct LogGrid {
    double u0;
    double du;
    int n;

    std::vector<double> points() const {
        std::vector<double> t(n);
        for (int k = 0; k < n; ++k) t[k] = std::exp(u0 + k * du);
        return t;
    }
    static LogGrid decades(double uLo, double uHi, int perUnit) {
        const int n = static_cast<int>(std::ceil((uHi - uLo) * perUnit)) + 1;
        return LogGrid{uLo, (uHi - uLo) / (n - 1), n};
    }
};

/// Samples of f on the interior of the requested grid (the differentiation
/// stencil trims 2(m+2) points per side), with per-sample error bounds.
struct RegularizedInversion {
    std::vector<double> t;
    std::vector<Complex> values;
    double sampleErrorBound = 0.0;
    int trimmedPerSide = 0;
    double contourAbscissa = 0.0;
    int mUsed = 0;
};

/// Growth-regularized inversion: with Q(s) = s^{m+2},
///     g(t) = (1/(2 pi i)) INT F(s) s^{-m-2} t^{-s} ds,   f = (-t d/dt)^{m+2} g.
/// g is computed on an oversampled log-uniform grid by a shared-node
/// trapezoid sum on the contour (all grid points reuse the same F values),
/// and the Mellin differential operator is applied by finite differences on
/// the log grid. Differentiating under the integral sign is not an option
/// here: s^{m+2} F(s) need not decay on the line.
inline RegularizedInversion invertMellinRegularized(const StripFunction& F, int m,
                                                    const ContourSpec& contour,
                                                    const LogGrid& outGrid,
                                                    const PVQuadratureSpec& spec,
                                                    int oversample = 16) {
    spec.validate();
    if (m < 0) throw DomainError("invertMellinRegularized: m must be nonnegative");
    if (outGrid.n < 2 || !(outGrid.du > 0.0))
        throw DomainError("invertMellinRegularized: need a log-uniform grid with n >= 2");
    if (!F.strip.contains(contour.abscissa))
        throw DomainError("invertMellinRegularized: contour abscissa outside the strip");
    const double c = contour.abscissa;
    for (Complex p : F.singularities)
        if (std::abs(c - p.real()) < 1e-3 && std::abs(p.imag()) < 1e-3)
            throw DomainError("invertMellinRegularized: contour near pole at Re(s)=" +
                              std::to_string(p.real()));
    oversample = std::max(1, oversample);

    const int order = m + 2;
    const auto G = [&](Complex s) { return F.eval(s) / detail::ipow(s, order); };
    const double measured = detail::measuredDecayExponent(G, c, 8.0);
    if (measured < 1.9)
        throw DomainError("invertMellinRegularized: F/s^{m+2} decays like |y|^" +
                          std::to_string(-measured) + " on the contour; increase m");

    // analyticity margin of the integrand around the contour line
    double band = 0.75;
    if (std::isfinite(F.strip.lo)) band = std::min(band, c - F.strip.lo);
    if (std::isfinite(F.strip.hi)) band = std::min(band, F.strip.hi - c);
    for (Complex p : F.singularities) band = std::min(band, std::abs(c - p.real()));
    band *= 0.9;

    // node spacing: trapezoid discretization error ~ exp(-2 pi band / h)
    const double targetG = std::max(spec.absTol * 1e-2, 1e-15);
    double hy = 2.0 * kPi * band / std::log(1.0 / targetG + 10.0);
    hy = std::min(hy, 1.0 / contour.nodesPerUnit);

    // internal oversampled grid, extended for the stencil trim
    const double hu = outGrid.du / oversample;
    const int trim = 2 * order;
    const int nInternal = (outGrid.n - 1) * oversample + 1 + 2 * trim;
    const double u0 = outGrid.u0 - trim * hu;

    // grow the node table chunkwise; sum|G| h bounds every tail uniformly in t
    std::vector<Complex> nodeG; // index j <-> y = (j - j0) hy, stored from -Y..Y
    const auto evalNode = [&](double y) { return G(Complex(c, y)); };
    double Y = 0.0;
    std::vector<Complex> upper{evalNode(0.0)};
    std::vector<Complex> lower; // negative y, mirrored ordering
    int stable = 0;
    const int chunkNodes = 512;
    double certCap = contour.truncationHeight > 0.0 ? contour.truncationHeight : 3e6;
    std::size_t evals = 1;
    double tailBound = 0.0;
    while (stable < 2 && Y < certCap) {
        double chunkMass = 0.0;
        for (int i = 0; i < chunkNodes && Y < certCap; ++i) {
            Y += hy;
            const Complex up = evalNode(Y);
            const Complex dn = evalNode(-Y);
            upper.push_back(up);
            lower.push_back(dn);
            evals += 2;
            chunkMass += (std::abs(up) + std::abs(dn)) * hy;
        }
        if (chunkMass < 0.25 * std::max(spec.absTol, targetG)) ++stable;
        else stable = 0;
        tailBound = chunkMass;
        if (upper.size() > 6'000'000)
            throw DivergenceError("invertMellinRegularized: node budget exhausted on the contour",
                                  Complex(0.0), tailBound);
    }

    // synthesis: g(u) = (hy/(2 pi)) SUM_j G(c + i y_j) exp(-(c + i y_j) u)
    const int nUp = static_cast<int>(upper.size());
    std::vector<Complex> g(nInternal);
    for (int k = 0; k < nInternal; ++k) {
        const double u = u0 + k * hu;
        const Complex rot = std::exp(Complex(0.0, -hy * u));
        Complex phase{1.0, 0.0};
        Complex acc = upper[0];
        for (int j = 1; j < nUp; ++j) {
            phase *= rot;
            acc += upper[j] * phase + lower[j - 1] * std::conj(phase);
        }
        g[k] = acc * hy / (2.0 * kPi) * std::exp(-c * u);
    }

    auto rho = logDerivative(g, hu, order);

    RegularizedInversion out;
    out.trimmedPerSide = 0; // trim consumed by the internal margin
    out.contourAbscissa = c;
    out.mUsed = m;
    out.t.reserve(outGrid.n);
    out.values.reserve(outGrid.n);
    for (int k = 0; k < outGrid.n; ++k) {
        out.t.push_back(std::exp(outGrid.u0 + k * outGrid.du));
        out.values.push_back(rho[k * oversample]);
    }
    // per-sample error accumulated on g, amplified by the stencil 1-norm per pass
    const double gErr = tailBound + targetG;
    out.sampleErrorBound = gErr * std::pow(1.5 / hu, order);
    return out;
}

/// Mellin (multiplicative) convolution (f v g)(tau) = INT f(t) g(tau/t) dt/t.
inline Complex mellinConvolve(const HalfLineFunction& f, const HalfLineFunction& g, double tau,
                              const PVQuadratureSpec& spec) {
    if (!(tau > 0.0)) throw DomainError("mellinConvolve: tau must be positive");
    if (!intersect(f.strip, g.strip))
        throw DomainError("mellinConvolve: strips of " + f.label + " and " + g.label +
                          " do not overlap");
    const auto integrand = [&](double t) { return f.eval(t) * g.eval(tau / t) / t; };
    std::vector<double> breaks = f.discontinuities;
    for (double d : g.discontinuities)
        if (d > 0.0) breaks.push_back(tau / d);
    auto r = integrateHalfLine(integrand, spec, breaks);
    if (!r.converged)
        throw DivergenceError("mellinConvolve: non-overlapping decay", r.value, r.error);
    return r.value;
}

/// Symbol of the Mellin differential operator: M[(-t d/dt)^n f](s) = s^n M[f](s).
inline StripFunction mellinOfLogDerivative(const StripFunction& F, int n) {
    if (n < 0) throw DomainError("mellinOfLogDerivative: n must be nonnegative");
    StripFunction out = F;
    out.label = "s^" + std::to_string(n) + " " + F.label;
    out.growthDegree = F.growthDegree + n;
    auto base = F.eval;
    out.eval = [base, n](Complex s) {
        Complex p{1.0, 0.0};
        for (int i = 0; i < n; ++i) p *= s;
        return p * base(s);
    };
    return out;
}

} // namespace mh
