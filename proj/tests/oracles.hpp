// Test-side oracles: independent reference computations the library results
// are checked against. Nothing here calls back into the implementation paths
// under test.
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "lightcone/minkowski.hpp"

namespace oracles {

// Deterministic uniform generator; the double mapping is pinned so expected
// values never move between platforms or library versions.
class TestRng {
public:
    explicit TestRng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

    double uniform01() {
        // splitmix64 step, top 53 bits to [0,1).
        state_ += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        z = z ^ (z >> 31);
        return static_cast<double>(z >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    lightcone::FourVector event(double half_width) {
        return {uniform(-half_width, half_width), uniform(-half_width, half_width),
                uniform(-half_width, half_width), uniform(-half_width, half_width)};
    }

private:
    std::uint64_t state_;
};

// 4th-order central difference d f / d component.
inline double fd_partial(const std::function<double(const lightcone::FourVector&)>& f,
                         lightcone::FourVector x, int axis, double h) {
    auto at = [&](double delta) {
        lightcone::FourVector y = x;
        switch (axis) {
            case 0: y.t += delta; break;
            case 1: y.x += delta; break;
            case 2: y.y += delta; break;
            default: y.z += delta; break;
        }
        return f(y);
    };
    return (at(-2.0 * h) - at(2.0 * h) + 8.0 * (at(h) - at(-h))) / (12.0 * h);
}

// Composite Simpson quadrature with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 2048) {
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

// Least-squares slope of y against x.
inline double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("ls_slope: bad input");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(x.size());
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        num += (x[i] - mx) * (y[i] - my);
        den += (x[i] - mx) * (x[i] - mx);
    }
    return num / den;
}

// Exact motion of a charge starting from rest at the origin in a plane wave
// A_perp(phi) propagating along +z (units m = c = 1, A_perp(0) = 0).
// Constants of motion: p_perp = -q A_perp(phi) and gamma - p_z = 1; lab time
// and positions follow by quadrature over phi.
class PlaneWaveMotionOracle {
public:
    PlaneWaveMotionOracle(std::function<lightcone::Vec3(double)> a_perp, double q, double omega,
                          double phi_max, int grid = 200001)
        : a_perp_(std::move(a_perp)), q_(q), omega_(omega) {
        phi_.resize(grid);
        t_.resize(grid);
        x_.resize(grid);
        y_.resize(grid);
        z_.resize(grid);
        const double dphi = phi_max / (grid - 1);
        double t = 0.0, x = 0.0, y = 0.0, z = 0.0;
        auto integrand = [&](double phi) {
            const lightcone::Vec3 p = momentum_at_phase(phi);
            const double gamma = 1.0 + 0.5 * (p.x * p.x + p.y * p.y);
            return lightcone::Vec3{p.x / omega_, p.y / omega_, gamma};
        };
        phi_[0] = 0.0;
        for (int i = 1; i < grid; ++i) {
            const double a = (i - 1) * dphi;
            const double b = i * dphi;
            const double m = 0.5 * (a + b);
            auto fa = integrand(a), fm = integrand(m), fb = integrand(b);
            // dt/dphi = gamma/omega, dx_perp/dphi = p_perp/omega,
            // dz/dphi = p_z/omega with p_z = |p_perp|^2 / 2.
            const double wt = dphi / 6.0;
            t += wt * (fa.z + 4.0 * fm.z + fb.z) / omega_;
            x += wt * (fa.x + 4.0 * fm.x + fb.x);
            y += wt * (fa.y + 4.0 * fm.y + fb.y);
            auto pz = [&](double phi2) {
                const lightcone::Vec3 p = momentum_at_phase(phi2);
                return 0.5 * (p.x * p.x + p.y * p.y) / omega_;
            };
            z += wt * (pz(a) + 4.0 * pz(m) + pz(b));
            phi_[i] = b;
            t_[i] = t;
            x_[i] = x;
            y_[i] = y;
            z_[i] = z;
        }
    }

    lightcone::Vec3 momentum_at_phase(double phi) const {
        const lightcone::Vec3 a = a_perp_(phi);
        const lightcone::Vec3 p_perp = -q_ * a;
        const double pz = 0.5 * (p_perp.x * p_perp.x + p_perp.y * p_perp.y);
        return {p_perp.x, p_perp.y, pz};
    }

    double phase_at_time(double t) const {
        if (t <= 0.0) return 0.0;
        if (t > t_.back()) throw std::out_of_range("oracle: time beyond tabulated range");
        std::size_t lo = 0, hi = t_.size() - 1;
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            (t_[mid] <= t ? lo : hi) = mid;
        }
        const double f = (t - t_[lo]) / (t_[hi] - t_[lo]);
        return phi_[lo] + f * (phi_[hi] - phi_[lo]);
    }

    lightcone::Vec3 position_at_time(double t) const {
        const double phi = phase_at_time(t);
        const double dphi = phi_[1] - phi_[0];
        const double idx = phi / dphi;
        const std::size_t lo = std::min(static_cast<std::size_t>(idx), phi_.size() - 2);
        const double f = idx - static_cast<double>(lo);
        return {x_[lo] + f * (x_[lo + 1] - x_[lo]), y_[lo] + f * (y_[lo + 1] - y_[lo]),
                z_[lo] + f * (z_[lo + 1] - z_[lo])};
    }

    lightcone::Vec3 momentum_at_time(double t) const { return momentum_at_phase(phase_at_time(t)); }

private:
    std::function<lightcone::Vec3(double)> a_perp_;
    double q_;
    double omega_;
    std::vector<double> phi_, t_, x_, y_, z_;
};

}  // namespace oracles
