#include "lightcone/potential.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>
#include <variant>

namespace lightcone {

namespace {

constexpr double kLightlikeTol = 1e-12;
constexpr double kTransversalityTol = 1e-10;

struct PlaneWaveData {
    FourVector amplitude;
    FourVector k;
    PhaseProfile profile;
};

struct NonphysicalData {};

struct CoulombData {
    double charge = 0.0;
    double r_min = 1e-12;
};

struct SuperpositionData {
    std::vector<PotentialField> parts;
};

struct GaugeData {
    GaugeFunction lambda;
};

struct FrozenData {
    Vec3 anchor;
};

double& comp(FourVector& v, int axis) {
    switch (axis) {
        case 0: return v.t;
        case 1: return v.x;
        case 2: return v.y;
        default: return v.z;
    }
}

bool near_equal(const FourVector& a, const FourVector& b) {
    const double scale = std::max(1.0, std::sqrt(std::max(euclidean_norm2(a), euclidean_norm2(b))));
    return std::abs(a.t - b.t) <= 1e-12 * scale && std::abs(a.x - b.x) <= 1e-12 * scale &&
           std::abs(a.y - b.y) <= 1e-12 * scale && std::abs(a.z - b.z) <= 1e-12 * scale;
}

}  // namespace

struct PotentialField::Impl {
    Kind kind;
    std::variant<PlaneWaveData, NonphysicalData, CoulombData, SuperpositionData, GaugeData,
                 FrozenData>
        data;
    std::optional<PotentialField> base;
};

PotentialField::PotentialField(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

PotentialField::Kind PotentialField::kind() const { return impl_->kind; }

const PotentialField* PotentialField::base() const {
    return impl_->base ? &*impl_->base : nullptr;
}

const GaugeFunction* PotentialField::gauge() const {
    if (const auto* g = std::get_if<GaugeData>(&impl_->data)) return &g->lambda;
    return nullptr;
}

FourVector PotentialField::operator()(const FourVector& event) const {
    const Impl& im = *impl_;
    switch (im.kind) {
        case Kind::PlaneWave: {
            const auto& pw = std::get<PlaneWaveData>(im.data);
            return pw.amplitude * pw.profile.value(phase(pw.k, event));
        }
        case Kind::NonphysicalPW: {
            const PotentialField& b = *im.base;
            const FourVector k = *b.propagation_vector();
            const FourVector dA = *b.phase_derivative(event);
            return -minkowski_dot(event, dA) * k;
        }
        case Kind::Coulomb: {
            const auto& cd = std::get<CoulombData>(im.data);
            const double r = norm(event.spatial());
            if (r < cd.r_min) {
                std::ostringstream msg;
                msg << "coulomb potential evaluated at r = " << r << " inside the excluded radius "
                    << cd.r_min;
                throw SingularityError(msg.str());
            }
            return {cd.charge / r, 0.0, 0.0, 0.0};
        }
        case Kind::Superposition: {
            const auto& sd = std::get<SuperpositionData>(im.data);
            FourVector sum{};
            for (const auto& p : sd.parts) sum = sum + p(event);
            return sum;
        }
        case Kind::GaugeTransformed:
            return (*im.base)(event) + std::get<GaugeData>(im.data).lambda.gradient(event);
        case Kind::DipoleFrozen:
            return (*im.base)(
                FourVector::from_spatial(event.t, std::get<FrozenData>(im.data).anchor));
    }
    throw std::logic_error("PotentialField: unknown kind");
}

std::optional<FourVector> PotentialField::propagation_vector() const {
    const Impl& im = *impl_;
    switch (im.kind) {
        case Kind::PlaneWave:
            return std::get<PlaneWaveData>(im.data).k;
        case Kind::NonphysicalPW:
        case Kind::GaugeTransformed:
        case Kind::DipoleFrozen:
            return im.base->propagation_vector();
        case Kind::Coulomb:
            return std::nullopt;
        case Kind::Superposition: {
            const auto& parts = std::get<SuperpositionData>(im.data).parts;
            std::optional<FourVector> common;
            for (const auto& p : parts) {
                auto k = p.propagation_vector();
                if (!k) return std::nullopt;
                if (!common) {
                    common = k;
                } else if (!near_equal(*common, *k)) {
                    return std::nullopt;
                }
            }
            return common;
        }
    }
    return std::nullopt;
}

std::optional<FourVector> PotentialField::phase_derivative(const FourVector& event) const {
    const Impl& im = *impl_;
    switch (im.kind) {
        case Kind::PlaneWave: {
            const auto& pw = std::get<PlaneWaveData>(im.data);
            return pw.amplitude * pw.profile.derivative(phase(pw.k, event));
        }
        case Kind::Superposition: {
            if (!propagation_vector()) return std::nullopt;
            const auto& parts = std::get<SuperpositionData>(im.data).parts;
            FourVector sum{};
            for (const auto& p : parts) {
                auto d = p.phase_derivative(event);
                if (!d) return std::nullopt;
                sum = sum + *d;
            }
            return sum;
        }
        default:
            return std::nullopt;
    }
}

std::optional<FourVector> PotentialField::second_phase_derivative(const FourVector& event) const {
    const Impl& im = *impl_;
    switch (im.kind) {
        case Kind::PlaneWave: {
            const auto& pw = std::get<PlaneWaveData>(im.data);
            if (!pw.profile.second_derivative) return std::nullopt;
            return pw.amplitude * pw.profile.second_derivative(phase(pw.k, event));
        }
        case Kind::Superposition: {
            if (!propagation_vector()) return std::nullopt;
            const auto& parts = std::get<SuperpositionData>(im.data).parts;
            FourVector sum{};
            for (const auto& p : parts) {
                auto d = p.second_phase_derivative(event);
                if (!d) return std::nullopt;
                sum = sum + *d;
            }
            return sum;
        }
        default:
            return std::nullopt;
    }
}

std::optional<FieldSample> PotentialField::analytic_sample(const FourVector& event) const {
    const Impl& im = *impl_;
    switch (im.kind) {
        case Kind::PlaneWave: {
            const auto& pw = std::get<PlaneWaveData>(im.data);
            const FourVector dA = *phase_derivative(event);
            const Vec3 kv = pw.k.spatial();
            const Vec3 dAv = dA.spatial();
            // E = k_vec * dA^0 - k^0 * dA_vec, B = -k_vec x dA_vec.
            return FieldSample{kv * dA.t - pw.k.t * dAv, -cross(kv, dAv), event};
        }
        case Kind::NonphysicalPW: {
            // A~ = -k * S with S = x . dA/dphi; derivatives of S need the
            // base's d2A/dphi2.
            const PotentialField& b = *im.base;
            const FourVector k = *b.propagation_vector();
            auto dA = b.phase_derivative(event);
            auto d2A = b.second_phase_derivative(event);
            if (!dA || !d2A) return std::nullopt;
            const double w2 = minkowski_dot(event, *d2A);
            const Vec3 kv = k.spatial();
            const double dS_dx0 = dA->t + w2 * k.t;
            const Vec3 gradS = -dA->spatial() - w2 * kv;
            return FieldSample{k.t * gradS + dS_dx0 * kv, cross(kv, gradS), event};
        }
        case Kind::Coulomb: {
            const FourVector a = (*this)(event);  // singularity guard in the evaluator
            const Vec3 r = event.spatial();
            const double rn = norm(r);
            return FieldSample{(a.t / (rn * rn)) * r, Vec3{}, event};
        }
        case Kind::Superposition: {
            const auto& parts = std::get<SuperpositionData>(im.data).parts;
            FieldSample total{Vec3{}, Vec3{}, event};
            for (const auto& p : parts) {
                auto s = p.analytic_sample(event);
                if (!s) return std::nullopt;
                total.E = total.E + s->E;
                total.B = total.B + s->B;
            }
            return total;
        }
        case Kind::GaugeTransformed:
            // A pure gradient contributes no field; the sample is the base's.
            return im.base->analytic_sample(event);
        case Kind::DipoleFrozen: {
            const auto& fd = std::get<FrozenData>(im.data);
            const PotentialField& b = *im.base;
            const FourVector frozen_event = FourVector::from_spatial(event.t, fd.anchor);
            auto k = b.propagation_vector();
            auto dA = b.phase_derivative(frozen_event);
            if (!k || !dA) return std::nullopt;
            // Only the time derivative of the frozen 3-vector potential
            // survives: E = -k^0 * dA_vec(phi at the anchor), B = 0.
            return FieldSample{-k->t * dA->spatial(), Vec3{}, event};
        }
    }
    return std::nullopt;
}

bool PotentialField::has_analytic_fields() const {
    const Impl& im = *impl_;
    switch (im.kind) {
        case Kind::PlaneWave:
            return true;
        case Kind::NonphysicalPW:
            return im.base->second_phase_derivative(FourVector{}).has_value();
        case Kind::Coulomb:
            return true;
        case Kind::Superposition: {
            const auto& parts = std::get<SuperpositionData>(im.data).parts;
            return std::all_of(parts.begin(), parts.end(),
                               [](const PotentialField& p) { return p.has_analytic_fields(); });
        }
        case Kind::GaugeTransformed:
            return im.base->has_analytic_fields();
        case Kind::DipoleFrozen:
            return im.base->propagation_vector().has_value() &&
                   im.base->phase_derivative(FourVector{}).has_value();
    }
    return false;
}

std::string PotentialField::describe() const {
    const Impl& im = *impl_;
    std::ostringstream os;
    switch (im.kind) {
        case Kind::PlaneWave: {
            const auto& pw = std::get<PlaneWaveData>(im.data);
            os << "plane_wave(A_c=" << pw.amplitude << ", k=" << pw.k << ", w=" << pw.profile.label
               << ")";
            break;
        }
        case Kind::NonphysicalPW:
            os << "nonphysical_pw(" << im.base->describe() << ")";
            break;
        case Kind::Coulomb: {
            const auto& cd = std::get<CoulombData>(im.data);
            os << "coulomb(q=" << cd.charge << ")";
            break;
        }
        case Kind::Superposition: {
            const auto& parts = std::get<SuperpositionData>(im.data).parts;
            os << "superpose[";
            for (std::size_t i = 0; i < parts.size(); ++i) {
                if (i) os << ", ";
                os << parts[i].describe();
            }
            os << "]";
            break;
        }
        case Kind::GaugeTransformed:
            os << "gauge_transformed(" << im.base->describe()
               << ", lambda=" << std::get<GaugeData>(im.data).lambda.label() << ")";
            break;
        case Kind::DipoleFrozen: {
            const auto& fd = std::get<FrozenData>(im.data);
            os << "dipole_frozen(" << im.base->describe() << ", anchor=(" << fd.anchor.x << ", "
               << fd.anchor.y << ", " << fd.anchor.z << "))";
            break;
        }
    }
    return os.str();
}

PhaseProfile phase_profile(Waveform w) {
    switch (w) {
        case Waveform::Cos:
            return {[](double p) { return std::cos(p); }, [](double p) { return -std::sin(p); },
                    [](double p) { return -std::cos(p); }, "cos"};
        case Waveform::Sin:
            return {[](double p) { return std::sin(p); }, [](double p) { return std::cos(p); },
                    [](double p) { return -std::sin(p); }, "sin"};
    }
    throw std::logic_error("phase_profile: unknown waveform");
}

namespace {

void check_plane_wave_args(const FourVector& amplitude, const FourVector& k,
                           bool check_transverse) {
    if (!all_finite(amplitude) || !all_finite(k)) {
        throw std::invalid_argument("plane_wave: amplitude and k must be finite");
    }
    if (classify(k, kLightlikeTol) != CausalClass::Lightlike) {
        std::ostringstream msg;
        msg << "plane_wave: propagation vector must be lightlike (k.k = " << minkowski_dot(k, k)
            << ")";
        throw std::invalid_argument(msg.str());
    }
    if (check_transverse) {
        const double proj = minkowski_dot(k, amplitude);
        const double scale =
            std::max(1.0, std::sqrt(euclidean_norm2(k) * euclidean_norm2(amplitude)));
        if (std::abs(proj) > kTransversalityTol * scale) {
            std::ostringstream msg;
            msg << "plane_wave: amplitude violates the transversality condition k.A_c = 0 "
                << "(k.A_c = " << proj << ")";
            throw std::invalid_argument(msg.str());
        }
    }
}

PotentialField make_plane_wave(const FourVector& amplitude, const FourVector& k,
                               PhaseProfile profile, bool check_transverse) {
    check_plane_wave_args(amplitude, k, check_transverse);
    if (!profile.value || !profile.derivative) {
        throw std::invalid_argument("plane_wave: profile must supply value and derivative");
    }
    auto impl = std::make_shared<PotentialField::Impl>();
    impl->kind = PotentialField::Kind::PlaneWave;
    impl->data = PlaneWaveData{amplitude, k, std::move(profile)};
    return PotentialField(std::move(impl));
}

}  // namespace

PotentialField plane_wave(const FourVector& amplitude, const FourVector& k, Waveform waveform) {
    return make_plane_wave(amplitude, k, phase_profile(waveform), true);
}

PotentialField plane_wave_with_profile(const FourVector& amplitude, const FourVector& k,
                                       PhaseProfile profile) {
    return make_plane_wave(amplitude, k, std::move(profile), true);
}

PotentialField plane_wave_unchecked(const FourVector& amplitude, const FourVector& k,
                                    Waveform waveform) {
    return make_plane_wave(amplitude, k, phase_profile(waveform), false);
}

PotentialField nonphysical_gauge(const PotentialField& base) {
    if (!base.propagation_vector() || !base.phase_derivative(FourVector{})) {
        throw std::invalid_argument(
            "nonphysical_gauge: base must be a plane-wave-family potential with an analytic "
            "phase derivative");
    }
    auto impl = std::make_shared<PotentialField::Impl>();
    impl->kind = PotentialField::Kind::NonphysicalPW;
    impl->data = NonphysicalData{};
    impl->base = base;
    return PotentialField(std::move(impl));
}

PotentialField coulomb(double source_charge, double r_min) {
    if (source_charge == 0.0 || !std::isfinite(source_charge)) {
        throw std::invalid_argument("coulomb: source charge must be finite and nonzero");
    }
    if (!(r_min > 0.0)) {
        throw std::invalid_argument("coulomb: r_min must be > 0");
    }
    auto impl = std::make_shared<PotentialField::Impl>();
    impl->kind = PotentialField::Kind::Coulomb;
    impl->data = CoulombData{source_charge, r_min};
    return PotentialField(std::move(impl));
}

PotentialField superpose(std::vector<PotentialField> parts) {
    if (parts.empty()) {
        throw std::invalid_argument("superpose: part list must be non-empty");
    }
    auto impl = std::make_shared<PotentialField::Impl>();
    impl->kind = PotentialField::Kind::Superposition;
    impl->data = SuperpositionData{std::move(parts)};
    return PotentialField(std::move(impl));
}

PotentialField make_gauge_transformed(const PotentialField& base, const GaugeFunction& lambda) {
    auto impl = std::make_shared<PotentialField::Impl>();
    impl->kind = PotentialField::Kind::GaugeTransformed;
    impl->data = GaugeData{lambda};
    impl->base = base;
    return PotentialField(std::move(impl));
}

PotentialField dipole_freeze(const PotentialField& field, const Vec3& anchor) {
    auto impl = std::make_shared<PotentialField::Impl>();
    impl->kind = PotentialField::Kind::DipoleFrozen;
    impl->data = FrozenData{anchor};
    impl->base = field;
    return PotentialField(std::move(impl));
}

double fd_step(const FourVector& event, double scale) {
    const double m = std::max(std::max(std::abs(event.t), std::abs(event.x)),
                              std::max(std::abs(event.y), std::abs(event.z)));
    return scale * (1.0 + m);
}

namespace {

// dA^mu/dx^axis by 4th-order central differences.
FourVector fd_axis_derivative(const PotentialField& f, const FourVector& event, int axis,
                              double h) {
    FourVector xp1 = event, xp2 = event, xm1 = event, xm2 = event;
    comp(xp1, axis) += h;
    comp(xp2, axis) += 2.0 * h;
    comp(xm1, axis) -= h;
    comp(xm2, axis) -= 2.0 * h;
    const FourVector a = f(xm2) - f(xp2);
    const FourVector b = f(xp1) - f(xm1);
    return (1.0 / (12.0 * h)) * (a + 8.0 * b);
}

}  // namespace

FieldSample evaluate_fields(const PotentialField& f, const FourVector& event,
                            const FieldEvalOptions& opts) {
    const bool analytic_available = f.has_analytic_fields();
    const bool use_analytic = opts.method == FieldMethod::Analytic ||
                              (opts.method == FieldMethod::Auto && analytic_available);
    if (use_analytic) {
        auto s = f.analytic_sample(event);
        if (!s) {
            throw std::invalid_argument(
                "evaluate_fields: analytic derivatives requested but unavailable for " +
                f.describe());
        }
        return *s;
    }
    const double h = opts.step ? *opts.step : fd_step(event, opts.step_scale);
    if (!(h > 0.0)) throw std::invalid_argument("evaluate_fields: step must be > 0");
    FourVector d[4];
    for (int axis = 0; axis < 4; ++axis) d[axis] = fd_axis_derivative(f, event, axis, h);
    FieldSample s;
    s.at = event;
    s.E = {-d[1].t - d[0].x, -d[2].t - d[0].y, -d[3].t - d[0].z};
    s.B = {d[2].z - d[3].y, d[3].x - d[1].z, d[1].y - d[2].x};
    return s;
}

double four_divergence_fd(const PotentialField& f, const FourVector& event, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("four_divergence_fd: step must be > 0");
    double div = 0.0;
    for (int axis = 0; axis < 4; ++axis) {
        const FourVector d = fd_axis_derivative(f, event, axis, h);
        switch (axis) {
            case 0: div += d.t; break;
            case 1: div += d.x; break;
            case 2: div += d.y; break;
            case 3: div += d.z; break;
        }
    }
    return div;
}

const char* to_string(PotentialField::Kind k) {
    switch (k) {
        case PotentialField::Kind::PlaneWave: return "plane_wave";
        case PotentialField::Kind::NonphysicalPW: return "nonphysical_pw";
        case PotentialField::Kind::Coulomb: return "coulomb";
        case PotentialField::Kind::Superposition: return "superposition";
        case PotentialField::Kind::GaugeTransformed: return "gauge_transformed";
        case PotentialField::Kind::DipoleFrozen: return "dipole_frozen";
    }
    return "unknown";
}

}  // namespace lightcone
