#pragma once

#include <functional>
#include <memory>
#include <string>

#include "lightcone/minkowski.hpp"

namespace lightcone {

/// Scalar generating function Lambda(event) of a gauge transformation,
/// together with its contravariant 4-gradient.
///
/// Gradient convention: with events written as (ct, r),
///     grad^mu Lambda = (d Lambda / d(ct), -nabla Lambda),
/// which is what makes the single 4-vector replacement A -> A + grad Lambda
/// reproduce the pair of 3+1 rules  phi -> phi + (1/c) dLambda/dt  and
/// A -> A - nabla Lambda.  When no analytic gradient is supplied the
/// gradient falls back to 4th-order central differences of the evaluator.
class GaugeFunction {
public:
    enum class Kind { Constant, LightCone, PotentialContraction, Custom };

    /// Lambda at an event.
    double operator()(const FourVector& event) const;

    /// Contravariant gradient grad^mu Lambda at an event.
    FourVector gradient(const FourVector& event) const;

    Kind kind() const;
    bool has_analytic_gradient() const;
    const std::string& label() const;

    static GaugeFunction constant(double value);

    /// Arbitrary smooth Lambda; pass an analytic gradient when available,
    /// otherwise a finite-difference gradient is used.
    static GaugeFunction custom(std::function<double(const FourVector&)> evaluator,
                                std::function<FourVector(const FourVector&)> analytic_gradient = {},
                                std::string label = "custom");

    friend GaugeFunction operator+(const GaugeFunction& a, const GaugeFunction& b);

    struct Impl;
    explicit GaugeFunction(std::shared_ptr<const Impl> impl);

private:
    std::shared_ptr<const Impl> impl_;
};

/// Gauge shift restricted to the light cone of k: grad^mu Lambda = k^mu * lambda_prime(phi).
/// The evaluator integrates lambda_prime from phi = 0 by adaptive quadrature
/// unless an antiderivative (with antiderivative(0) = 0) is supplied.
/// k must be lightlike.
GaugeFunction light_cone_gauge(std::function<double(double)> lambda_prime, const FourVector& k,
                               std::function<double(double)> antiderivative = {});

/// Second-order finite-difference estimate of the d'Alembertian
/// (1/c^2) d^2/dt^2 - laplacian acting on Lambda, in (ct, r) coordinates.
double wave_equation_residual(const GaugeFunction& lambda, const FourVector& event,
                              double h = 1e-3);

/// Adaptive Simpson quadrature of f over [a, b].
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12);

}  // namespace lightcone
