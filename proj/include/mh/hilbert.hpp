#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "mh/common.hpp"
#include "mh/kernels.hpp"
#include "mh/mellin.hpp"
#include "mh/quadrature.hpp"
#include "mh/strip.hpp"

namespace mh {

/// Hf(x) = (1/pi) pv INT_0^inf f(y)/(x-y) dy.
inline IntegralResult hilbertDirect(const HalfLineFunction& f, double x,
                                    const PVQuadratureSpec& spec) {
    if (!(x > 0.0)) throw DomainError("hilbertDirect: x must be positive");
    for (double d : f.discontinuities)
        if (std::abs(d - x) <= 1e-12 * std::max(1.0, x))
            throw DomainError("hilbertDirect: x coincides with a discontinuity of " + f.label);
    auto r = integratePV(f.eval, x, spec, f.discontinuities);
    r.value /= kPi;
    r.error /= kPi;
    return r;
}

/// Same transform through the multiplicative convolution:
/// Hf(x) = -(1/pi) pv INT_0^inf f(x/t)/(1-t) dt/t, secant window around t = 1.
inline IntegralResult hilbertViaConvolution(const HalfLineFunction& f, double x,
                                            const PVQuadratureSpec& spec) {
    if (!(x > 0.0)) throw DomainError("hilbertViaConvolution: x must be positive");
    std::vector<double> mapped;
    for (double d : f.discontinuities) {
        if (d <= 0.0) continue;
        const double td = x / d;
        if (std::abs(td - 1.0) <= 1e-12)
            throw DomainError("hilbertViaConvolution: x coincides with a discontinuity of " +
                              f.label);
        mapped.push_back(td);
    }
    const auto g = [&f, x](double t) { return f.eval(x / t) / t; };
    auto r = integratePV(g, 1.0, spec, mapped);
    r.value /= -kPi;
    r.error /= kPi;
    return r;
}

/// M[Hf] as a StripFunction: s -> -cot(pi s) M[f](s) on f.strip intersected
/// with the kernel's transformability strip S(0,1).
inline StripFunction hilbertViaSymbol(const HalfLineFunction& f, const PVQuadratureSpec& spec) {
    const auto common = intersect(f.strip, Strip(0.0, 1.0));
    if (!common)
        throw DomainError("hilbertViaSymbol: strip of " + f.label + " does not meet S(0,1)");
    StripFunction out;
    out.strip = *common;
    out.label = "M[H " + f.label + "]";
    out.eval = [f, spec](Complex s) { return hilbertSymbol(s) * mellinForward(f, s, spec); };
    detail::estimateGrowth(out.eval, out.strip, out.growthDegree, out.growthConstant);
    return out;
}

} // namespace mh
