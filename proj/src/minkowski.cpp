#include "lightcone/minkowski.hpp"

#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace lightcone {

const char* to_string(CausalClass c) {
    switch (c) {
        case CausalClass::Lightlike: return "LIGHTLIKE";
        case CausalClass::Spacelike: return "SPACELIKE";
        case CausalClass::Timelike: return "TIMELIKE";
    }
    return "UNKNOWN";
}

FourVector make_propagation_vector(double omega, const Vec3& direction, double c) {
    if (!(omega > 0.0)) {
        throw std::invalid_argument("make_propagation_vector: omega must be > 0");
    }
    if (!(c > 0.0)) {
        throw std::invalid_argument("make_propagation_vector: c must be > 0");
    }
    const double n = norm(direction);
    if (!(std::abs(n - 1.0) <= 1e-12)) {
        std::ostringstream msg;
        msg << "make_propagation_vector: direction must be a unit vector "
            << "(|direction| = " << n << ", tolerance 1e-12)";
        throw std::invalid_argument(msg.str());
    }
    const double wc = omega / c;
    return FourVector::from_spatial(wc, wc * direction);
}

CausalClass classify(const FourVector& v, double tol) {
    if (!(tol > 0.0)) {
        throw std::invalid_argument("classify: tolerance must be > 0");
    }
    const double s = minkowski_dot(v, v);
    const double scale = std::max(1.0, euclidean_norm2(v));
    if (std::abs(s) <= tol * scale) return CausalClass::Lightlike;
    return s < 0.0 ? CausalClass::Spacelike : CausalClass::Timelike;
}

std::ostream& operator<<(std::ostream& os, const FourVector& v) {
    return os << "(" << v.t << ", " << v.x << ", " << v.y << ", " << v.z << ")";
}

}  // namespace lightcone
