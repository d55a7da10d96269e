#include "lightcone/validator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "lightcone/gauge.hpp"

namespace lightcone {

namespace {

double euclid_norm(const FourVector& v) { return std::sqrt(euclidean_norm2(v)); }

double max_component(const Vec3& v) {
    return std::max(std::abs(v.x), std::max(std::abs(v.y), std::abs(v.z)));
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// Orthonormal spatial pair perpendicular to the propagation direction.
void transverse_basis(const FourVector& k, Vec3& e1, Vec3& e2) {
    Vec3 kh = k.spatial();
    const double n = norm(kh);
    if (n == 0.0) throw std::invalid_argument("transverse_basis: k has no spatial part");
    kh = (1.0 / n) * kh;
    const Vec3 seed = std::abs(kh.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    e1 = cross(kh, seed);
    e1 = (1.0 / norm(e1)) * e1;
    e2 = cross(kh, e1);
}

CheckResult make_result(std::string name, double residual, double tol, std::string detail = {}) {
    CheckResult r;
    r.name = std::move(name);
    r.residual = residual;
    r.tolerance = tol;
    r.detail = std::move(detail);
    r.status = residual <= tol ? CheckStatus::Pass : CheckStatus::Fail;
    return r;
}

CheckResult skip_result(std::string name, std::string detail) {
    CheckResult r;
    r.name = std::move(name);
    r.status = CheckStatus::Skip;
    r.detail = std::move(detail);
    return r;
}

}  // namespace

const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "PASS";
        case CheckStatus::Fail: return "FAIL";
        case CheckStatus::Warn: return "WARN";
        case CheckStatus::Skip: return "SKIP";
    }
    return "UNKNOWN";
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Physical: return "PHYSICAL";
        case Verdict::Unphysical: return "UNPHYSICAL";
        case Verdict::Indeterminate: return "INDETERMINATE";
    }
    return "UNKNOWN";
}

CheckResult check_transversality(const PotentialField& f, const FourVector& k,
                                 const SampleSpec& spec, double tol) {
    EventSampler sampler(spec);
    double worst = 0.0;
    for (int i = 0; i < spec.count; ++i) {
        const FourVector x = sampler.nonsingular_event();
        const FourVector v = f(x);
        const double r = std::abs(minkowski_dot(k, v)) / std::max(1.0, euclid_norm(v));
        worst = std::max(worst, r);
    }
    return make_result("transversality", worst, tol);
}

CheckResult check_phase_only_dependence(const PotentialField& f, const FourVector& k,
                                        const SampleSpec& spec, double tol) {
    EventSampler sampler(spec);
    Vec3 e1, e2;
    transverse_basis(k, e1, e2);
    double worst = 0.0;
    for (int i = 0; i < spec.count; ++i) {
        FourVector x1{}, x2{};
        for (int tries = 0; tries < 1000; ++tries) {
            x1 = sampler.event();
            const double beta = sampler.uniform(-spec.half_width / 2, spec.half_width / 2);
            const double c1 = sampler.uniform(-spec.half_width / 2, spec.half_width / 2);
            const double c2 = sampler.uniform(-spec.half_width / 2, spec.half_width / 2);
            x2 = x1 + beta * k + FourVector::from_spatial(0.0, c1 * e1 + c2 * e2);
            if (norm(x1.spatial()) >= spec.exclusion_radius &&
                norm(x2.spatial()) >= spec.exclusion_radius) {
                break;
            }
        }
        worst = std::max(worst, euclid_norm(f(x1) - f(x2)));
    }
    CheckResult r = make_result("phase_only_dependence", worst, tol);
    if (r.status == CheckStatus::Fail) {
        r.detail = "potential varies between equal-phase events; propagation property violated";
    }
    return r;
}

CheckResult check_quadratic_invariant(const PotentialField& a, const PotentialField& b,
                                      const SampleSpec& spec, double tol) {
    EventSampler sampler(spec);
    double worst = 0.0;
    for (int i = 0; i < spec.count; ++i) {
        const FourVector x = sampler.nonsingular_event();
        const FourVector va = a(x);
        const FourVector vb = b(x);
        worst = std::max(worst, std::abs(minkowski_dot(va, va) - minkowski_dot(vb, vb)));
    }
    CheckResult r = make_result("quadratic_invariant", worst, tol);
    if (r.status == CheckStatus::Fail) {
        r.detail =
            "squared potential differs between the pair; ponderomotive energy is not preserved";
    }
    return r;
}

CheckResult check_field_equivalence(const PotentialField& a, const PotentialField& b,
                                    const SampleSpec& spec, double tol,
                                    const FieldEvalOptions& field_eval) {
    EventSampler sampler(spec);
    double worst = 0.0;
    for (int i = 0; i < spec.count; ++i) {
        const FourVector x = sampler.nonsingular_event();
        const FieldSample sa = evaluate_fields(a, x, field_eval);
        const FieldSample sb = evaluate_fields(b, x, field_eval);
        worst = std::max(worst, max_component(sa.E - sb.E));
        worst = std::max(worst, max_component(sa.B - sb.B));
    }
    return make_result("field_equivalence", worst, tol);
}

CheckResult classify_gauge_character(const PotentialField& f, const SampleSpec& spec,
                                     const ValidatorConfig& cfg) {
    if (f.kind() == PotentialField::Kind::Coulomb || !f.propagation_vector()) {
        return skip_result("causal_character",
                           "longitudinal or mixed field; causal character targets transverse "
                           "candidates");
    }
    EventSampler sampler(spec);
    int spacelike = 0, lightlike = 0, timelike = 0, zero = 0;
    double max_a0 = 0.0;
    double lorenz = 0.0;
    for (int i = 0; i < spec.count; ++i) {
        const FourVector x = sampler.nonsingular_event();
        const FourVector v = f(x);
        max_a0 = std::max(max_a0, std::abs(v.t));
        lorenz = std::max(lorenz, std::abs(four_divergence_fd(f, x, 1e-3)));
        if (euclidean_norm2(v) < 1e-24) {
            ++zero;
            continue;
        }
        switch (classify(v, cfg.tol_algebraic)) {
            case CausalClass::Spacelike: ++spacelike; break;
            case CausalClass::Lightlike: ++lightlike; break;
            case CausalClass::Timelike: ++timelike; break;
        }
    }
    const bool degenerate = lightlike > 0 && spacelike == 0 && timelike == 0;
    CheckResult r;
    r.name = "causal_character";
    r.residual = degenerate ? 1.0 : 0.0;
    r.tolerance = 0.5;
    r.status = degenerate ? CheckStatus::Fail : CheckStatus::Pass;
    std::ostringstream os;
    os << "spacelike=" << spacelike << " lightlike=" << lightlike << " timelike=" << timelike
       << " zero=" << zero << " max|A0|=" << fmt(max_a0) << " lorenz_fd=" << fmt(lorenz);
    if (degenerate) {
        os << "; potential is lightlike at every sampled event (A ~ k degeneracy)";
    }
    r.detail = os.str();
    return r;
}

std::vector<double> cross_term_values(const PotentialField& pw, const PotentialField& bind,
                                      const std::vector<double>& radii, const SampleSpec& spec) {
    if (radii.empty()) throw std::invalid_argument("cross_term_values: radii required");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] > 0.0)) throw std::invalid_argument("cross_term_values: radii must be > 0");
        if (i && !(radii[i] < radii[i - 1])) {
            throw std::invalid_argument("cross_term_values: radii must be strictly decreasing");
        }
    }
    EventSampler sampler(spec);
    constexpr int kProbes = 48;
    std::vector<double> times(kProbes);
    std::vector<Vec3> dirs(kProbes);
    for (int i = 0; i < kProbes; ++i) {
        times[i] = sampler.uniform(-spec.half_width, spec.half_width);
        dirs[i] = sampler.unit_direction();
    }
    std::vector<double> values;
    values.reserve(radii.size());
    for (double r : radii) {
        double worst = 0.0;
        for (int i = 0; i < kProbes; ++i) {
            const FourVector x = FourVector::from_spatial(times[i], r * dirs[i]);
            const double v = bind(x).t;
            const double a0 = pw(x).t;
            worst = std::max(worst, std::abs(v * a0));
        }
        values.push_back(worst);
    }
    return values;
}

CheckResult cross_term_diagnostic(const PotentialField& pw, const PotentialField& bind,
                                  const std::vector<double>& radii, const SampleSpec& spec,
                                  const ValidatorConfig& cfg) {
    if (bind.kind() != PotentialField::Kind::Coulomb) {
        throw std::invalid_argument("cross_term_diagnostic: binding field must be a Coulomb "
                                    "potential");
    }
    const std::vector<double> values = cross_term_values(pw, bind, radii, spec);
    const double worst = *std::max_element(values.begin(), values.end());

    CheckResult r;
    r.name = "cross_term";
    r.residual = worst;
    r.tolerance = cfg.tol_cross_term;
    std::ostringstream os;
    os << "max|V*A0| per radius:";
    for (std::size_t i = 0; i < radii.size(); ++i) {
        os << " r=" << fmt(radii[i]) << "->" << fmt(values[i]);
    }
    if (worst <= cfg.tol_cross_term) {
        r.status = CheckStatus::Pass;
        os << "; no scalar-potential coupling (radiation gauge)";
        r.detail = os.str();
        return r;
    }
    r.status = CheckStatus::Fail;
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (values[i] > cfg.tol_cross_term) {
            lx.push_back(std::log(radii[i]));
            ly.push_back(std::log(values[i]));
        }
    }
    if (lx.size() >= 3) {
        double mx = 0.0, my = 0.0;
        for (std::size_t i = 0; i < lx.size(); ++i) {
            mx += lx[i];
            my += ly[i];
        }
        mx /= static_cast<double>(lx.size());
        my /= static_cast<double>(lx.size());
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < lx.size(); ++i) {
            num += (lx[i] - mx) * (ly[i] - my);
            den += (lx[i] - mx) * (lx[i] - mx);
        }
        const double slope = num / den;
        os << "; log-log slope=" << fmt(slope);
        os << (slope <= cfg.cross_term_slope_threshold
                   ? "; singular 1/r coupling, magnitude set by the transverse field"
                   : "; bounded nonzero coupling");
    } else {
        os << "; insufficient radii above tolerance for a slope fit";
    }
    r.detail = os.str();
    return r;
}

const CheckResult* ValidationReport::find(const std::string& name) const {
    for (const auto& c : checks) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

ValidationReport validate(const PotentialField& f, const ValidationContext& ctx,
                          const ValidatorConfig& cfg) {
    ValidationReport report;
    report.subject = f.describe();
    report.context = ctx.binding ? "transverse_with_binding" : "standalone";
    report.sampled_events = cfg.sample.count;
    report.seed = cfg.sample.seed;

    const auto k = f.propagation_vector();
    const PotentialField* base = f.base();

    // 1. transversality
    if (k) {
        report.checks.push_back(check_transversality(f, *k, cfg.sample, cfg.tol_algebraic));
    } else {
        report.checks.push_back(skip_result("transversality", "no propagation vector"));
    }

    // 2. phase-only dependence
    if (k) {
        report.checks.push_back(
            check_phase_only_dependence(f, *k, cfg.sample, cfg.tol_phase_dependence));
    } else {
        report.checks.push_back(skip_result("phase_only_dependence", "no propagation vector"));
    }

    // 3. causal character
    report.checks.push_back(classify_gauge_character(f, cfg.sample, cfg));

    // 4. quadratic invariant against the untransformed base
    if (base) {
        report.checks.push_back(
            check_quadratic_invariant(*base, f, cfg.sample, cfg.tol_algebraic));
    } else {
        report.checks.push_back(skip_result("quadratic_invariant", "no reference potential"));
    }

    // 5. field equivalence against the base (advisory: agreement is expected
    // for any gauge transform and is precisely what cannot certify the gauge)
    if (base) {
        CheckResult fe = check_field_equivalence(*base, f, cfg.sample, cfg.tol_field_equivalence,
                                                 cfg.field_eval);
        if (fe.status == CheckStatus::Fail) fe.status = CheckStatus::Warn;
        report.checks.push_back(std::move(fe));
    } else {
        report.checks.push_back(skip_result("field_equivalence", "no reference potential"));
    }

    // 6. Lorenz condition (advisory)
    {
        EventSampler sampler(cfg.sample);
        double worst = 0.0;
        for (int i = 0; i < cfg.sample.count; ++i) {
            worst = std::max(worst,
                             std::abs(four_divergence_fd(f, sampler.nonsingular_event(), 1e-3)));
        }
        CheckResult r = make_result("lorenz_condition", worst, cfg.tol_fd);
        if (r.status == CheckStatus::Fail) r.status = CheckStatus::Warn;
        report.checks.push_back(std::move(r));
    }

    // 7. wave equation of the generating function (advisory)
    {
        std::optional<GaugeFunction> lambda;
        if (const GaugeFunction* g = f.gauge()) {
            lambda = *g;
        } else if (f.kind() == PotentialField::Kind::NonphysicalPW && base) {
            lambda = lambda_from_potential(*base);
        }
        if (lambda) {
            EventSampler sampler(cfg.sample);
            double worst = 0.0;
            for (int i = 0; i < cfg.sample.count; ++i) {
                worst = std::max(
                    worst, std::abs(wave_equation_residual(*lambda, sampler.nonsingular_event())));
            }
            CheckResult r = make_result("gauge_wave_equation", worst, cfg.tol_fd);
            if (r.status == CheckStatus::Fail) r.status = CheckStatus::Warn;
            report.checks.push_back(std::move(r));
        } else {
            report.checks.push_back(skip_result("gauge_wave_equation", "no generating function"));
        }
    }

    // 8–9. binding-context checks
    if (ctx.binding) {
        EventSampler sampler(cfg.sample);
        double worst_a0 = 0.0;
        for (int i = 0; i < cfg.sample.count; ++i) {
            worst_a0 = std::max(worst_a0, std::abs(f(sampler.nonsingular_event()).t));
        }
        CheckResult rg = make_result("radiation_gauge", worst_a0, cfg.tol_radiation_gauge);
        if (rg.status == CheckStatus::Fail) {
            rg.detail = "transverse part carries a scalar potential; with a binding potential "
                        "no departure from the radiation gauge is allowable";
        }
        report.checks.push_back(std::move(rg));
        report.checks.push_back(
            cross_term_diagnostic(f, *ctx.binding, cfg.cross_term_radii, cfg.sample, cfg));
    } else {
        report.checks.push_back(skip_result("radiation_gauge", "standalone context"));
        report.checks.push_back(skip_result("cross_term", "standalone context"));
    }

    // Verdict over the mandatory subset.
    const char* mandatory[] = {"transversality",      "phase_only_dependence", "causal_character",
                               "quadratic_invariant", "radiation_gauge",       "cross_term"};
    bool any_fail = false;
    bool any_ran = false;
    for (const char* name : mandatory) {
        const CheckResult* c = report.find(name);
        if (!c || c->status == CheckStatus::Skip) continue;
        any_ran = true;
        if (c->status == CheckStatus::Fail) any_fail = true;
    }
    report.verdict = any_fail      ? Verdict::Unphysical
                     : any_ran     ? Verdict::Physical
                                   : Verdict::Indeterminate;
    return report;
}

std::string ValidationReport::to_text() const {
    std::ostringstream os;
    os << "validation report: " << subject << "\n";
    os << "context: " << context << "  events: " << sampled_events << "  seed: " << seed << "\n";
    for (const auto& c : checks) {
        char line[128];
        std::snprintf(line, sizeof(line), "[%-4s] %-22s residual %-12.5g tol %-10.3g",
                      to_string(c.status), c.name.c_str(), c.residual, c.tolerance);
        os << line;
        if (!c.detail.empty()) os << " | " << c.detail;
        os << "\n";
    }
    os << "verdict: " << to_string(verdict) << "\n";
    return os.str();
}

nlohmann::ordered_json ValidationReport::to_json() const {
    nlohmann::ordered_json j;
    j["subject"] = subject;
    j["context"] = context;
    j["events"] = sampled_events;
    j["seed"] = seed;
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json jc;
        jc["name"] = c.name;
        jc["status"] = to_string(c.status);
        jc["residual"] = c.residual;
        jc["tolerance"] = c.tolerance;
        jc["detail"] = c.detail;
        j["checks"].push_back(std::move(jc));
    }
    j["verdict"] = to_string(verdict);
    return j;
}

}  // namespace lightcone
