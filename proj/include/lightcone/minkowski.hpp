#pragma once

#include <cmath>
#include <iosfwd>

namespace lightcone {

/// Spatial 3-vector with Euclidean operations.
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

constexpr Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
constexpr Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
constexpr Vec3 operator*(double s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }
constexpr Vec3 operator*(const Vec3& v, double s) { return s * v; }
constexpr Vec3 operator-(const Vec3& v) { return {-v.x, -v.y, -v.z}; }
constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

/// Contravariant 4-vector under the fixed metric signature (+,-,-,-).
/// The time slot holds whatever the context dictates: ct for events,
/// omega/c for propagation vectors, the scalar potential for potentials.
struct FourVector {
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Vec3 spatial() const { return {x, y, z}; }
    static constexpr FourVector from_spatial(double t_comp, const Vec3& v) {
        return {t_comp, v.x, v.y, v.z};
    }
};

constexpr FourVector operator+(const FourVector& a, const FourVector& b) {
    return {a.t + b.t, a.x + b.x, a.y + b.y, a.z + b.z};
}
constexpr FourVector operator-(const FourVector& a, const FourVector& b) {
    return {a.t - b.t, a.x - b.x, a.y - b.y, a.z - b.z};
}
constexpr FourVector operator*(double s, const FourVector& v) {
    return {s * v.t, s * v.x, s * v.y, s * v.z};
}
constexpr FourVector operator*(const FourVector& v, double s) { return s * v; }
constexpr FourVector operator-(const FourVector& v) { return {-v.t, -v.x, -v.y, -v.z}; }

constexpr double minkowski_dot(const FourVector& a, const FourVector& b) {
    return a.t * b.t - a.x * b.x - a.y * b.y - a.z * b.z;
}

/// Phase of an event relative to a propagation vector, phi = k^mu x_mu.
/// For k = (omega/c, k) and x = (ct, r) this is omega*t - k.r.
constexpr double phase(const FourVector& k, const FourVector& event) {
    return minkowski_dot(k, event);
}

constexpr double euclidean_norm2(const FourVector& v) {
    return v.t * v.t + v.x * v.x + v.y * v.y + v.z * v.z;
}

inline bool all_finite(const FourVector& v) {
    return std::isfinite(v.t) && std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

enum class CausalClass { Lightlike, Spacelike, Timelike };

const char* to_string(CausalClass c);

/// Lightlike (omega/c, (omega/c)*direction). direction must be unit within 1e-12.
FourVector make_propagation_vector(double omega, const Vec3& direction, double c = 1.0);

/// Sign class of v.v. The lightlike band |v.v| <= tol * max(1, |v|^2_euclid)
/// widens with the vector's magnitude so the classification stays meaningful
/// for large vectors.
CausalClass classify(const FourVector& v, double tol);

std::ostream& operator<<(std::ostream& os, const FourVector& v);

}  // namespace lightcone
