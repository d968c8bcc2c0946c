#include "bistab/identities.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace bistab {

std::vector<IdentityDescriptor> identity_catalog() {
    return {
        {"2.5", true, false, false, "algebraic expansion of (lap(u^g phi^g))^2"},
        {"2.6", false, false, false, "Hessian exchange for lap u^g <grad u^g, grad phi^g> phi^g"},
        {"2.6a", false, false, false, "parts for lap u^g u^g lap phi^g phi^g"},
        {"2.6b", false, false, false, "expansion of int (lap(u^g phi^g))^2 - (lap u^g)^2 phi^2g"},
        {"2.12", false, false, false, "pointwise split of (g^2/q) lap u lap(u^q phi^2g)"},
        {"2.13", false, false, false, "regrouping of 2 u^{2g-2} lap u grad u grad phi^2g"},
        {"2.18", false, false, false, "power rewrite of u^{2g-4}|grad u|^4 phi^2g"},
        {"2.19", false, false, false, "parts for u^{-2g}|grad u^g|^4 phi^2g"},
        {"2.20", false, false, false, "pointwise split of |grad u^g|^2 lap u^g phi^2g / u^g"},
        {"2.21", false, false, false, "combined quartic-gradient identity"},
        {"3.5", false, true, false, "expansion of (lap v^g)^2 on the ball"},
        {"3.6", false, true, false, "expansion of lap v lap v^q on the ball"},
        {"3.8", false, true, true, "parts for |grad v|^4 v^{2g-4} with boundary flux"},
        {"3.9", false, true, false, "pointwise split of |grad v^g|^2 lap v^g / v^g"},
        {"3.10", false, true, true, "combined ball identity with boundary flux"},
    };
}

std::string verdict_str(AuditVerdict v) {
    switch (v) {
        case AuditVerdict::Pass: return "PASS";
        case AuditVerdict::Fail: return "FAIL";
        case AuditVerdict::DegenerateProbeFail: return "DEGENERATE-PROBE-FAIL";
        case AuditVerdict::Withheld: return "WITHHELD";
    }
    return "WITHHELD";
}

namespace {

struct Assembly {
    Integrand lhs, rhs;          // integrated with weight r^{n-1}
    double lhs_boundary = 0;     // added after integration
    double rhs_boundary = 0;
    bool pointwise = false;
    Integrand lhs_pt, rhs_pt;    // for pointwise identities
    std::string note;
};

const IdentityDescriptor* find_descriptor(const std::string& id) {
    static const std::vector<IdentityDescriptor> cat = identity_catalog();
    for (const auto& d : cat)
        if (d.id == id) return &d;
    return nullptr;
}

Assembly assemble_whole_space(const std::string& id, const IdentityCase& c) {
    const int n = c.n;
    const double g = c.gamma;
    const double q = 2 * g - 1;
    const Profile u = c.u;
    const Profile phi = c.phi;
    const Profile a = u.pow(g);
    const Profile b = phi.pow(g);
    const Profile A2 = u.pow(q);
    const Profile B2 = phi.pow(2 * g);

    Assembly out;
    if (id == "2.5") {
        out.pointwise = true;
        out.lhs_pt = [=](double r) {
            Derivs da = a.derivs(r), db = b.derivs(r);
            double D = da.f * laplacian(db, r, n) + 2 * da.d1 * db.d1 +
                       db.f * laplacian(da, r, n);
            return D * D;
        };
        out.rhs_pt = [=](double r) {
            Derivs da = a.derivs(r), db = b.derivs(r);
            double la = laplacian(da, r, n), lb = laplacian(db, r, n);
            double dot = da.d1 * db.d1;
            return la * la * db.f * db.f + 4 * dot * lb * da.f + 4 * dot * la * db.f +
                   4 * dot * dot + 2 * la * da.f * lb * db.f + da.f * da.f * lb * lb;
        };
        return out;
    }
    if (id == "2.6") {
        out.lhs = [=](double r) {
            Derivs da = a.derivs(r), db = b.derivs(r);
            return 4 * laplacian(da, r, n) * da.d1 * db.d1 * db.f;
        };
        out.rhs = [=](double r) {
            Derivs da = a.derivs(r), db = b.derivs(r);
            double gsq = da.d1 * da.d1;
            double dot = da.d1 * db.d1;
            return 2 * gsq * laplacian(db, r, n) * db.f + 2 * gsq * db.d1 * db.d1 -
                   4 * gsq * db.d2 * db.f - 4 * dot * dot;
        };
        return out;
    }
    if (id == "2.6a") {
        out.lhs = [=](double r) {
            Derivs da = a.derivs(r), db = b.derivs(r);
            return laplacian(da, r, n) * da.f * laplacian(db, r, n) * db.f;
        };
        out.rhs = [=](double r) {
            Derivs da = a.derivs(r), db = b.derivs(r);
            double lb = laplacian(db, r, n);
            return -da.f * da.d1 * lap_derivative(db, r, n) * db.f -
                   da.d1 * db.d1 * da.f * lb - da.d1 * da.d1 * lb * db.f;
        };
        return out;
    }
    if (id == "2.6b") {
        out.lhs = [=](double r) {
            Derivs da = a.derivs(r), db = b.derivs(r);
            double la = laplacian(da, r, n);
            double D = da.f * laplacian(db, r, n) + 2 * da.d1 * db.d1 + db.f * la;
            return D * D - la * la * db.f * db.f;
        };
        out.rhs = [=](double r) {
            Derivs da = a.derivs(r), db = b.derivs(r);
            double lb = laplacian(db, r, n);
            return 2 * da.d1 * da.d1 * db.d1 * db.d1 - 4 * db.f * da.d1 * da.d1 * db.d2 +
                   da.f * da.f * db.f * bilaplacian(db, r, n) - 2 * da.f * da.f * lb * lb;
        };
        return out;
    }
    if (id == "2.12") {
        out.lhs = [=](double r) {
            Derivs du = u.derivs(r), dA = A2.derivs(r), dB = B2.derivs(r);
            double lap_prod = dA.f * laplacian(dB, r, n) + 2 * dA.d1 * dB.d1 +
                              dB.f * laplacian(dA, r, n);
            return g * g / q * laplacian(du, r, n) * lap_prod;
        };
        out.rhs = [=](double r) {
            Derivs du = u.derivs(r), da = a.derivs(r), db = b.derivs(r), dB = B2.derivs(r);
            double lu = laplacian(du, r, n);
            double la = laplacian(da, r, n);
            double gm1 = g - 1;
            return la * db.f * la * db.f +
                   2 * g * g * std::pow(du.f, 2 * g - 2) * lu * du.d1 * dB.d1 +
                   g * g / q * std::pow(du.f, 2 * g - 1) * lu * laplacian(dB, r, n) -
                   g * g * gm1 * gm1 * std::pow(du.f, 2 * g - 4) * std::pow(du.d1, 4) * dB.f;
        };
        return out;
    }
    if (id == "2.13") {
        out.note = "divergence terms dropped: they integrate to zero under compact support";
        out.lhs = [=](double r) {
            Derivs du = u.derivs(r), dB = B2.derivs(r);
            return 2 * std::pow(du.f, 2 * g - 2) * laplacian(du, r, n) * du.d1 * dB.d1;
        };
        out.rhs = [=](double r) {
            Derivs du = u.derivs(r), dB = B2.derivs(r);
            double u1sq = du.d1 * du.d1;
            return -(2 * g - 2) * std::pow(du.f, 2 * g - 3) * u1sq * du.d1 * dB.d1 +
                   std::pow(du.f, 2 * g - 2) * u1sq * laplacian(dB, r, n) -
                   2 * std::pow(du.f, 2 * g - 2) * u1sq * dB.d2;
        };
        return out;
    }
    if (id == "2.18") {
        out.lhs = [=](double r) {
            Derivs du = u.derivs(r), dB = B2.derivs(r);
            return std::pow(du.f, 2 * g - 4) * std::pow(du.d1, 4) * dB.f;
        };
        out.rhs = [=](double r) {
            Derivs du = u.derivs(r), da = a.derivs(r), dB = B2.derivs(r);
            return std::pow(du.f, -2 * g) * std::pow(da.d1, 4) * dB.f / (g * g * g * g);
        };
        return out;
    }
    if (id == "2.19") {
        out.lhs = [=](double r) {
            Derivs du = u.derivs(r), da = a.derivs(r), dB = B2.derivs(r);
            return std::pow(du.f, -2 * g) * std::pow(da.d1, 4) * dB.f;
        };
        out.rhs = [=](double r) {
            Derivs da = a.derivs(r), dB = B2.derivs(r);
            double a1sq = da.d1 * da.d1;
            return (a1sq * laplacian(da, r, n) * dB.f + 2 * da.d2 * a1sq * dB.f +
                    a1sq * da.d1 * dB.d1) /
                   da.f;
        };
        return out;
    }
    if (id == "2.20") {
        out.lhs = [=](double r) {
            Derivs da = a.derivs(r), dB = B2.derivs(r);
            return da.d1 * da.d1 * laplacian(da, r, n) * dB.f / da.f;
        };
        out.rhs = [=](double r) {
            Derivs du = u.derivs(r), dB = B2.derivs(r);
            return g * g * g *
                   ((g - 1) * std::pow(du.f, 2 * g - 4) * std::pow(du.d1, 4) +
                    std::pow(du.f, 2 * g - 3) * du.d1 * du.d1 * laplacian(du, r, n)) *
                   dB.f;
        };
        return out;
    }
    if (id == "2.21") {
        out.lhs = [=](double r) {
            Derivs du = u.derivs(r), dB = B2.derivs(r);
            return std::pow(du.f, 2 * g - 4) * std::pow(du.d1, 4) * dB.f;
        };
        out.rhs = [=](double r) {
            Derivs du = u.derivs(r), da = a.derivs(r), dB = B2.derivs(r);
            double g3 = g * g * g;
            double a1sq = da.d1 * da.d1;
            return 2 * da.d2 * a1sq * dB.f / (g3 * da.f) +
                   std::pow(du.f, 2 * g - 3) * du.d1 * du.d1 * laplacian(du, r, n) * dB.f +
                   a1sq * da.d1 * dB.d1 / (g3 * da.f);
        };
        return out;
    }
    throw std::invalid_argument("assemble_whole_space: unknown identity " + id);
}

Assembly assemble_ball(const std::string& id, const IdentityCase& c) {
    const int n = c.n;
    const double g = c.gamma;
    const double q = 2 * g - 1;
    const Profile v = c.u;
    const Profile w = v.pow(g);
    const Profile vq = v.pow(q);

    Assembly out;
    if (id == "3.5") {
        out.lhs = [=](double r) {
            Derivs dw = w.derivs(r);
            double lw = laplacian(dw, r, n);
            return lw * lw;
        };
        out.rhs = [=](double r) {
            Derivs dv = v.derivs(r);
            double lv = laplacian(dv, r, n);
            double v1sq = dv.d1 * dv.d1;
            return g * g * std::pow(dv.f, 2 * g - 2) * lv * lv +
                   g * g * (g - 1) * (g - 1) * std::pow(dv.f, 2 * g - 4) * v1sq * v1sq +
                   2 * g * g * (g - 1) * std::pow(dv.f, 2 * g - 3) * lv * v1sq;
        };
        return out;
    }
    if (id == "3.6") {
        out.lhs = [=](double r) {
            Derivs dv = v.derivs(r), dq = vq.derivs(r);
            return laplacian(dv, r, n) * laplacian(dq, r, n);
        };
        out.rhs = [=](double r) {
            Derivs dv = v.derivs(r);
            double lv = laplacian(dv, r, n);
            return q * lv * lv * std::pow(dv.f, q - 1) +
                   q * (q - 1) * dv.d1 * dv.d1 * lv * std::pow(dv.f, q - 2);
        };
        return out;
    }
    if (id == "3.8") {
        out.lhs = [=](double r) {
            Derivs dv = v.derivs(r);
            return std::pow(dv.f, 2 * g - 4) * std::pow(dv.d1, 4);
        };
        out.rhs = [=](double r) {
            Derivs dw = w.derivs(r);
            double w1sq = dw.d1 * dw.d1;
            return (2 * dw.d2 * w1sq + w1sq * laplacian(dw, r, n)) / (g * g * g * g * dw.f);
        };
        Derivs dv1 = v.derivs(1.0);
        out.rhs_boundary =
            -(1.0 / g) * std::pow(dv1.f, 2 * g - 3) * dv1.d1 * dv1.d1 * dv1.d1;
        return out;
    }
    if (id == "3.9") {
        out.lhs = [=](double r) {
            Derivs dw = w.derivs(r);
            return dw.d1 * dw.d1 * laplacian(dw, r, n) / (g * g * g * g * dw.f);
        };
        out.rhs = [=](double r) {
            Derivs dv = v.derivs(r);
            double v1sq = dv.d1 * dv.d1;
            return (g - 1) / g * std::pow(dv.f, 2 * g - 4) * v1sq * v1sq +
                   1.0 / g * std::pow(dv.f, 2 * g - 3) * v1sq * laplacian(dv, r, n);
        };
        return out;
    }
    if (id == "3.10") {
        out.lhs = [=](double r) {
            Derivs dv = v.derivs(r);
            return std::pow(dv.f, 2 * g - 4) * std::pow(dv.d1, 4);
        };
        out.rhs = [=](double r) {
            Derivs dv = v.derivs(r), dw = w.derivs(r);
            return std::pow(dv.f, 2 * g - 3) * dv.d1 * dv.d1 * laplacian(dv, r, n) +
                   2 * dw.d2 * dw.d1 * dw.d1 / (g * g * g * dw.f);
        };
        // printed without the v-power factor (admissible profiles have v(1)=1)
        Derivs dv1 = v.derivs(1.0);
        out.rhs_boundary = -dv1.d1 * dv1.d1 * dv1.d1;
        return out;
    }
    throw std::invalid_argument("assemble_ball: unknown identity " + id);
}

}  // namespace

IdentityReport verify_identity(const std::string& id, const IdentityCase& c, double tol,
                               const QuadratureSpec& spec) {
    const IdentityDescriptor* desc = find_descriptor(id);
    if (!desc) throw std::invalid_argument("verify_identity: unknown identity " + id);
    if (!(tol > 0)) throw std::invalid_argument("verify_identity: tol must be positive");

    // domain admissibility rules
    if (desc->ball_domain) {
        if (c.r_lo != 0.0 || c.r_hi != 1.0)
            throw std::invalid_argument("verify_identity: ball identities run on [0, 1]");
        if (std::abs(c.u.value(1.0) - 1.0) > 1e-12)
            throw std::invalid_argument("verify_identity: ball profiles require v(1) = 1");
    } else {
        if (!c.phi.valid())
            throw std::invalid_argument("verify_identity: whole-space identities need phi");
        if (c.phi.support().second > c.r_hi + 1e-12)
            throw std::invalid_argument(
                "verify_identity: phi must be compactly supported in the domain");
    }

    IdentityReport rep;
    rep.id = id;
    rep.case_label = c.label;
    rep.gamma = c.gamma;
    rep.n = c.n;

    Assembly asmb = desc->ball_domain ? assemble_ball(id, c) : assemble_whole_space(id, c);
    rep.note = asmb.note;

    const double floor_ = 1e-12;
    if (asmb.pointwise) {
        // worst relative residual over an interior radius grid
        double worst_rel = 0;
        double width = c.r_hi - c.r_lo;
        for (int i = 0; i < 64; ++i) {
            double r = c.r_lo + width * (0.02 + 0.96 * (i + 0.5) / 64.0);
            double L = asmb.lhs_pt(r);
            double R = asmb.rhs_pt(r);
            double rel = std::abs(L - R) / std::max({std::abs(L), std::abs(R), floor_});
            if (rel >= worst_rel) {
                worst_rel = rel;
                rep.lhs = L;
                rep.rhs = R;
            }
        }
        rep.abs_residual = std::abs(rep.lhs - rep.rhs);
        rep.rel_residual = worst_rel;
        rep.converged = true;
    } else {
        IntegralResult L = integrate_radial(asmb.lhs, c.n, c.r_lo, c.r_hi, spec);
        IntegralResult R = integrate_radial(asmb.rhs, c.n, c.r_lo, c.r_hi, spec);
        rep.lhs = L.value + asmb.lhs_boundary;
        rep.rhs = R.value + asmb.rhs_boundary;
        rep.converged = L.converged && R.converged;
        rep.abs_residual = std::abs(rep.lhs - rep.rhs);
        rep.rel_residual =
            rep.abs_residual / std::max({std::abs(rep.lhs), std::abs(rep.rhs), floor_});
    }

    if (!rep.converged) {
        rep.verdict = AuditVerdict::Withheld;
        rep.note += (rep.note.empty() ? "" : "; ") + std::string("quadrature did not converge");
        return rep;
    }
    if (rep.rel_residual <= tol) {
        rep.verdict = AuditVerdict::Pass;
        return rep;
    }
    if (c.degenerate_probe) {
        rep.verdict = AuditVerdict::DegenerateProbeFail;
        std::ostringstream os;
        os << "rhs/lhs = " << (rep.rhs / rep.lhs);
        rep.note += (rep.note.empty() ? "" : "; ") + os.str();
    } else {
        rep.verdict = AuditVerdict::Fail;
    }
    return rep;
}

std::vector<IdentityCase> canonical_pairs(int n, double gamma) {
    std::vector<IdentityCase> cases;
    cases.push_back({"u=gaussian,phi=exp_bump", profiles::gaussian(1.0, 1.0),
                     profiles::exp_bump(1.0, 1.0, 2.0), gamma, n, 0.0, 2.0, false});
    cases.push_back({"u=inverse_power3,phi=exp_bump", profiles::inverse_power(1.0, 3.0),
                     profiles::exp_bump(1.0, 1.0, 2.0), gamma, n, 0.0, 2.0, false});
    cases.push_back({"u=poly_bump,phi=poly_bump", profiles::poly_bump(1.0, 1.6, 8.0),
                     profiles::poly_bump(1.0, 1.0, 8.0), gamma, n, 0.0, 1.0, false});
    return cases;
}

std::vector<IdentityCase> canonical_ball_cases(int n, double gamma) {
    std::vector<IdentityCase> cases;
    cases.push_back({"v=1+poly1", profiles::shifted(profiles::poly_bump(1.0, 1.0, 1.0), 1.0),
                     Profile(), gamma, n, 0.0, 1.0, false});
    cases.push_back({"v=1+1.5*poly3",
                     profiles::shifted(profiles::poly_bump(1.5, 1.0, 3.0), 1.0), Profile(),
                     gamma, n, 0.0, 1.0, false});
    cases.push_back({"v=1+2*exp_bump",
                     profiles::shifted(profiles::exp_bump(2.0, 1.0, 1.0), 1.0), Profile(),
                     gamma, n, 0.0, 1.0, false});
    return cases;
}

IdentityCase degenerate_probe_case(int n, double gamma) {
    return {"u=1(probe),phi=exp_bump", profiles::constant(1.0),
            profiles::exp_bump(1.0, 1.0, 2.0), gamma, n, 0.0, 2.0, true};
}

std::vector<IdentityReport> run_identity_audit(int n, double tol, const QuadratureSpec& spec,
                                               const std::vector<double>& gammas) {
    std::vector<IdentityReport> reports;
    for (const auto& desc : identity_catalog()) {
        for (double g : gammas) {
            auto cases = desc.ball_domain ? canonical_ball_cases(n, g) : canonical_pairs(n, g);
            for (const auto& c : cases)
                reports.push_back(verify_identity(desc.id, c, tol, spec));
        }
    }
    // the 2.6b sign probe, once, at the default gamma
    reports.push_back(verify_identity("2.6b", degenerate_probe_case(n, 1.25), tol, spec));
    return reports;
}

PointwiseBoundsReport verify_pointwise_bounds(const SingularSolution& sol,
                                              const std::vector<double>& radii) {
    PointwiseBoundsReport rep;
    rep.n = sol.n;
    rep.p = to_double(sol.p);
    double alpha = to_double(sol.alpha);
    double Qd = to_double(sol.Q);
    rep.lhs_const = alpha * alpha * (sol.n - 2 - alpha) * (sol.n - 2 - alpha);
    rep.rhs_const = 2 * Qd / (rep.p + 1);
    rep.margin_ratio = rep.lhs_const / rep.rhs_const;
    rep.bound_lap_sq = rep.lhs_const >= rep.rhs_const;
    // -lap u = alpha(n-2-alpha) L r^{-alpha-2} > 0 whenever alpha < n-2
    rep.lap_negative = alpha < sol.n - 2;
    rep.bound_neg_lap =
        rep.lap_negative && rep.lhs_const >= rep.rhs_const;  // same constants squared

    Profile u = sol.profile();
    for (double r : radii) {
        RadialCalculus c = radial_calculus(u, r, sol.n);
        PointwiseBoundsReport::RadiusSample s;
        s.r = r;
        s.lap_sq = c.lap * c.lap;
        s.rhs1 = 2.0 / (rep.p + 1) * std::pow(c.f, rep.p + 1);
        s.neg_lap = -c.lap;
        s.rhs2 = std::sqrt(2.0 / (rep.p + 1)) * std::pow(c.f, (rep.p + 1) / 2);
        rep.samples.push_back(s);
        rep.bound_lap_sq = rep.bound_lap_sq && s.lap_sq >= s.rhs1 * (1 - 1e-9);
        rep.bound_neg_lap = rep.bound_neg_lap && s.neg_lap >= s.rhs2 * (1 - 1e-9);
    }
    return rep;
}

}  // namespace bistab
