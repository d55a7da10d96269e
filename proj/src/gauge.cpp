#include "lightcone/gauge.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "lightcone/gauge_function.hpp"
#include "lightcone/potential.hpp"

namespace lightcone {

struct GaugeFunction::Impl {
    Kind kind = Kind::Custom;
    std::function<double(const FourVector&)> evaluator;
    std::function<FourVector(const FourVector&)> analytic_gradient;
    std::string label = "custom";
    double fd_scale = 1e-4;
};

namespace {

double& comp(FourVector& v, int axis) {
    switch (axis) {
        case 0: return v.t;
        case 1: return v.x;
        case 2: return v.y;
        default: return v.z;
    }
}

// 4th-order central dLambda/dx^axis.
double fd_partial(const std::function<double(const FourVector&)>& f, const FourVector& x, int axis,
                  double h) {
    FourVector xp1 = x, xp2 = x, xm1 = x, xm2 = x;
    comp(xp1, axis) += h;
    comp(xp2, axis) += 2.0 * h;
    comp(xm1, axis) -= h;
    comp(xm2, axis) -= 2.0 * h;
    return (f(xm2) - f(xp2) + 8.0 * (f(xp1) - f(xm1))) / (12.0 * h);
}

double simpson_recurse(const std::function<double(double)>& f, double a, double b, double fa,
                       double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double err = left + right - whole;
    if (depth <= 0 || std::abs(err) <= 15.0 * tol) {
        return left + right + err / 15.0;
    }
    return simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
    if (a == b) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_recurse(f, a, b, fa, fm, fb, whole, tol, 40);
}

GaugeFunction::GaugeFunction(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

double GaugeFunction::operator()(const FourVector& event) const { return impl_->evaluator(event); }

FourVector GaugeFunction::gradient(const FourVector& event) const {
    if (impl_->analytic_gradient) return impl_->analytic_gradient(event);
    // Contravariant convention: (d/dx0, -grad).
    const double h = fd_step(event, impl_->fd_scale);
    return {fd_partial(impl_->evaluator, event, 0, h), -fd_partial(impl_->evaluator, event, 1, h),
            -fd_partial(impl_->evaluator, event, 2, h), -fd_partial(impl_->evaluator, event, 3, h)};
}

GaugeFunction::Kind GaugeFunction::kind() const { return impl_->kind; }

bool GaugeFunction::has_analytic_gradient() const {
    return static_cast<bool>(impl_->analytic_gradient);
}

const std::string& GaugeFunction::label() const { return impl_->label; }

GaugeFunction GaugeFunction::constant(double value) {
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::Constant;
    impl->evaluator = [value](const FourVector&) { return value; };
    impl->analytic_gradient = [](const FourVector&) { return FourVector{}; };
    impl->label = "constant";
    return GaugeFunction(std::move(impl));
}

GaugeFunction GaugeFunction::custom(std::function<double(const FourVector&)> evaluator,
                                    std::function<FourVector(const FourVector&)> analytic_gradient,
                                    std::string label) {
    if (!evaluator) throw std::invalid_argument("GaugeFunction::custom: evaluator required");
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::Custom;
    impl->evaluator = std::move(evaluator);
    impl->analytic_gradient = std::move(analytic_gradient);
    impl->label = std::move(label);
    return GaugeFunction(std::move(impl));
}

GaugeFunction operator+(const GaugeFunction& a, const GaugeFunction& b) {
    auto impl = std::make_shared<GaugeFunction::Impl>();
    impl->kind = GaugeFunction::Kind::Custom;
    impl->evaluator = [a, b](const FourVector& x) { return a(x) + b(x); };
    impl->analytic_gradient = [a, b](const FourVector& x) { return a.gradient(x) + b.gradient(x); };
    impl->label = a.label() + "+" + b.label();
    return GaugeFunction(std::move(impl));
}

GaugeFunction light_cone_gauge(std::function<double(double)> lambda_prime, const FourVector& k,
                               std::function<double(double)> antiderivative) {
    if (!lambda_prime) throw std::invalid_argument("light_cone_gauge: lambda_prime required");
    if (classify(k, 1e-12) != CausalClass::Lightlike) {
        throw std::invalid_argument("light_cone_gauge: k must be lightlike");
    }
    auto impl = std::make_shared<GaugeFunction::Impl>();
    impl->kind = GaugeFunction::Kind::LightCone;
    if (antiderivative) {
        impl->evaluator = [antiderivative, k](const FourVector& x) {
            return antiderivative(phase(k, x));
        };
    } else {
        impl->evaluator = [lambda_prime, k](const FourVector& x) {
            return adaptive_simpson(lambda_prime, 0.0, phase(k, x));
        };
    }
    impl->analytic_gradient = [lambda_prime, k](const FourVector& x) {
        return lambda_prime(phase(k, x)) * k;
    };
    impl->label = "lightcone";
    return GaugeFunction(std::move(impl));
}

GaugeFunction lambda_from_potential(const PotentialField& a) {
    auto k = a.propagation_vector();
    if (a.kind() != PotentialField::Kind::PlaneWave &&
        a.kind() != PotentialField::Kind::Superposition) {
        throw std::invalid_argument(
            "lambda_from_potential: input must be a plane-wave-family potential");
    }
    if (!k || !a.phase_derivative(FourVector{})) {
        throw std::invalid_argument(
            "lambda_from_potential: input lacks a propagation vector or analytic phase "
            "derivative");
    }
    auto impl = std::make_shared<GaugeFunction::Impl>();
    impl->kind = GaugeFunction::Kind::PotentialContraction;
    impl->evaluator = [a](const FourVector& x) { return -minkowski_dot(a(x), x); };
    const FourVector kv = *k;
    impl->analytic_gradient = [a, kv](const FourVector& x) {
        // grad(-A(phi).x) = -k (x . dA/dphi) - A, by the chain and product rules.
        const FourVector dA = *a.phase_derivative(x);
        return -minkowski_dot(x, dA) * kv - a(x);
    };
    impl->label = "potential_contraction";
    return GaugeFunction(std::move(impl));
}

double wave_equation_residual(const GaugeFunction& lambda, const FourVector& event, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("wave_equation_residual: step must be > 0");
    // Second-order central d2/dx_a2; d'Alembertian = time term - laplacian.
    double result = 0.0;
    const double center = lambda(event);
    for (int axis = 0; axis < 4; ++axis) {
        FourVector xp = event, xm = event;
        comp(xp, axis) += h;
        comp(xm, axis) -= h;
        const double second = (lambda(xp) - 2.0 * center + lambda(xm)) / (h * h);
        result += (axis == 0) ? second : -second;
    }
    return result;
}

PotentialField apply_gauge(const PotentialField& a, const GaugeFunction& lambda) {
    return make_gauge_transformed(a, lambda);
}

}  // namespace lightcone
