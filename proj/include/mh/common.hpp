#pragma once

#include <complex>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace mh {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Argument outside an operation's domain (wrong strip, malformed grid, ...).
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// Evaluation too close to a pole of an analytic kernel.
class PoleError : public DomainError {
public:
    explicit PoleError(const std::string& what) : DomainError(what) {}
};

/// Quadrature failed to stabilize; carries the partial sum it reached.
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(const std::string& what, Complex partial, double errorEstimate)
        : std::runtime_error(what), partial(partial), errorEstimate(errorEstimate) {}
    Complex partial;
    double errorEstimate;
};

/// A solution was requested on a strip that straddles the obstructed point s = 1/2.
class ObstructionError : public std::runtime_error {
public:
    explicit ObstructionError(const std::string& what) : std::runtime_error(what) {}
};

/// Thread budget for internally parallel operations. Controlled by the
/// MELLIN_HILBERT_THREADS environment variable; defaults to 1 (sequential).
inline int threadBudget() {
    static const int budget = [] {
        const char* env = std::getenv("MELLIN_HILBERT_THREADS");
        if (!env) return 1;
        const long v = std::strtol(env, nullptr, 10);
        return v >= 1 && v < 1024 ? static_cast<int>(v) : 1;
    }();
    return budget;
}

} // namespace mh
