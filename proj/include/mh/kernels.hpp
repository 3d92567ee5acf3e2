#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "mh/common.hpp"

namespace mh {

namespace detail {

/// tan(pi s), stable for large |Im s| (no overflowing sinh/cosh).
inline Complex tanPi(Complex s) {
    if (s.imag() < 0.0) return std::conj(tanPi(std::conj(s)));
    // q = exp(2 pi i s) has |q| = exp(-2 pi Im s) <= 1 here
    const Complex q = std::exp(Complex(0.0, 2.0 * kPi) * s);
    return Complex(0.0, -1.0) * (q - 1.0) / (q + 1.0);
}

/// cot(pi s), same stabilization.
inline Complex cotPi(Complex s) {
    if (s.imag() < 0.0) return std::conj(cotPi(std::conj(s)));
    const Complex q = std::exp(Complex(0.0, 2.0 * kPi) * s);
    return Complex(0.0, 1.0) * (q + 1.0) / (q - 1.0);
}

inline double distToLattice(double x, double offset) {
    const double d = x - offset;
    return std::abs(d - std::round(d));
}

} // namespace detail

inline constexpr double kPoleTolerance = 1e-8;

/// Mellin symbol of the principal-value kernel 1/(1-t): pi cot(pi s),
/// defined on the transformability strip 0 < Re(s) < 1.
inline Complex kernelMellinSymbol(Complex s) {
    if (!(s.real() > 0.0 && s.real() < 1.0))
        throw DomainError("kernelMellinSymbol: the kernel is Mellin-transformable only for 0 < Re(s) < 1");
    if (std::abs(s) < kPoleTolerance || std::abs(s - 1.0) < kPoleTolerance)
        throw PoleError("kernelMellinSymbol: s too close to a pole of cot(pi s)");
    return kPi * detail::cotPi(s);
}

/// Multiplier of the half-line Hilbert transform: M[Hu](s) = -cot(pi s) M[u](s).
inline Complex hilbertSymbol(Complex s) {
    const double dist = detail::distToLattice(s.real(), 0.0);
    if (dist < kPoleTolerance && std::abs(s.imag()) < kPoleTolerance)
        throw PoleError("hilbertSymbol: s within 1e-8 of an integer pole");
    return -detail::cotPi(s);
}

struct TanBound {
    double bound; // certified upper bound for |tan(pi(x+iy))|^2
    enum class Regime { XSeparated, YSeparated } regime;
};

/// Certified upper bound for |tan(pi(x+iy))|^2, from whichever of the two
/// separation regimes applies (the smaller when both do).
///   x-regime, eps = dist(x, 1/2 + Z) > 0:
///     (cos(pi(1-2 eps)) + 1)^{-2} dominates only while the cosine term is
///     <= 0, i.e. eps <= 1/4; beyond that |tan|^2 <= 1, attained at eps = 1/4.
///   y-regime, |y| = M > 0: (1 - 1/cosh(2 pi M))^{-2}, at most 4 for M > 1/pi.
inline TanBound tanBound(double x, double y, double epsilonFromHalfLattice) {
    const double eps = epsilonFromHalfLattice;
    const double M = std::abs(y);
    if (!(eps > 0.0) && !(M > 0.0))
        throw PoleError("tanBound: no bound exists on the half-integer lattice with y = 0");

    double bx = std::numeric_limits<double>::infinity();
    if (eps > 0.0) {
        bx = eps <= 0.25 ? std::pow(std::cos(kPi * (1.0 - 2.0 * std::min(eps, 0.5))) + 1.0, -2.0)
                         : 1.0;
    }
    double by = std::numeric_limits<double>::infinity();
    if (M > 0.0) {
        const double c = std::cosh(2.0 * kPi * M);
        by = std::isfinite(c) ? std::pow(1.0 - 1.0 / c, -2.0) : 1.0;
    }
    (void)x;
    return bx <= by ? TanBound{bx, TanBound::Regime::XSeparated}
                    : TanBound{by, TanBound::Regime::YSeparated};
}

/// Residue of tan(pi s) at s = 1/2 (simple pole; same at every half-integer).
inline Complex tanResidueAtHalf() { return Complex(-1.0 / kPi, 0.0); }

} // namespace mh
