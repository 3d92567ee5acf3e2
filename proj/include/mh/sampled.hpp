#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include "mh/common.hpp"
#include "mh/strip.hpp"

namespace mh {

/// Function given by samples on an increasing grid in u = ln t.
/// Interpolation is linear or cubic (local Hermite with finite-difference
/// slopes); outside the grid the function is zero-extended or continued by
/// the fitted tail models below.
class SampledFunction {
public:
    enum class Interp { Linear, Cubic };
    enum class Tail { Zero, Constant, PowerLaw };

    SampledFunction(std::vector<double> u, std::vector<Complex> values,
                    Interp interp = Interp::Linear)
        : u_(std::move(u)), v_(std::move(values)), interp_(interp) {
        if (u_.size() != v_.size() || u_.size() < 2)
            throw DomainError("SampledFunction: need matching grids with >= 2 samples");
        for (std::size_t i = 1; i < u_.size(); ++i)
            if (!(u_[i] > u_[i - 1]))
                throw DomainError("SampledFunction: grid must be strictly increasing");
    }

    static SampledFunction fromT(const std::vector<double>& t, std::vector<Complex> values,
                                 Interp interp = Interp::Linear) {
        std::vector<double> u(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (!(t[i] > 0.0)) throw DomainError("SampledFunction: t samples must be positive");
            u[i] = std::log(t[i]);
        }
        return SampledFunction(std::move(u), std::move(values), interp);
    }

    /// Continue beyond the grid with |t|-power laws fitted to the outermost
    /// samples: v ~ A t^{-p} at the far end, constant or power at zero.
    void fitPowerTails(int fitPoints = 5) {
        lowTail_ = fitTail(true, fitPoints);
        highTail_ = fitTail(false, fitPoints);
        tailMode_ = Tail::PowerLaw;
    }
    void setConstantLowTail() {
        tailMode_ = Tail::PowerLaw;
        lowTail_ = {v_.front(), 0.0};
    }

    Complex operator()(double t) const {
        const double u = std::log(t);
        if (u < u_.front()) return belowGrid(t);
        if (u > u_.back()) return aboveGrid(t);
        const auto it = std::upper_bound(u_.begin(), u_.end(), u);
        std::size_t i = static_cast<std::size_t>(std::distance(u_.begin(), it));
        i = std::clamp<std::size_t>(i, 1, u_.size() - 1) - 1;
        const double w = (u - u_[i]) / (u_[i + 1] - u_[i]);
        if (interp_ == Interp::Linear) return (1.0 - w) * v_[i] + w * v_[i + 1];
        return hermite(i, w);
    }

    double uMin() const { return u_.front(); }
    double uMax() const { return u_.back(); }
    const std::vector<double>& grid() const { return u_; }
    const std::vector<Complex>& values() const { return v_; }

private:
    struct TailModel {
        Complex amplitude{0.0, 0.0};
        double exponent = 0.0; // v(t) = amplitude * t^{-exponent}
    };

    Complex belowGrid(double t) const {
        if (tailMode_ == Tail::Zero) return {0.0, 0.0};
        return lowTail_.amplitude * std::pow(t, -lowTail_.exponent);
    }
    Complex aboveGrid(double t) const {
        if (tailMode_ == Tail::Zero) return {0.0, 0.0};
        return highTail_.amplitude * std::pow(t, -highTail_.exponent);
    }

    TailModel fitTail(bool low, int m) const {
        const int n = static_cast<int>(u_.size());
        m = std::min(m, n / 2);
        // log-log least squares on |v|, phase taken from the boundary sample
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int used = 0;
        for (int j = 0; j < m; ++j) {
            const int i = low ? j : n - 1 - j;
            const double mag = std::abs(v_[i]);
            if (!(mag > 1e-280)) continue;
            const double lx = u_[i], ly = std::log(mag);
            sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
            ++used;
        }
        const int edge = low ? 0 : n - 1;
        if (used < 2 || std::abs(v_[edge]) < 1e-280) return {Complex{0.0, 0.0}, 0.0};
        const double slope = (used * sxy - sx * sy) / (used * sxx - sx * sx);
        const double p = -slope; // |v| ~ e^{slope u} = t^{-p}
        TailModel tm;
        tm.exponent = p;
        tm.amplitude = v_[edge] * std::pow(std::exp(u_[edge]), p);
        return tm;
    }

    Complex hermite(std::size_t i, double w) const {
        const std::size_t n = u_.size();
        const double h = u_[i + 1] - u_[i];
        const auto slope = [&](std::size_t j) -> Complex {
            if (j == 0) return (v_[1] - v_[0]) / (u_[1] - u_[0]);
            if (j + 1 >= n) return (v_[n - 1] - v_[n - 2]) / (u_[n - 1] - u_[n - 2]);
            return (v_[j + 1] - v_[j - 1]) / (u_[j + 1] - u_[j - 1]);
        };
        const Complex m0 = slope(i) * h;
        const Complex m1 = slope(i + 1) * h;
        const double w2 = w * w, w3 = w2 * w;
        return (2 * w3 - 3 * w2 + 1) * v_[i] + (w3 - 2 * w2 + w) * m0 +
               (-2 * w3 + 3 * w2) * v_[i + 1] + (w3 - w2) * m1;
    }

    std::vector<double> u_;
    std::vector<Complex> v_;
    Interp interp_;
    Tail tailMode_ = Tail::Zero;
    TailModel lowTail_{};
    TailModel highTail_{};
};

} // namespace mh
