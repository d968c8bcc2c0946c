#pragma once

// Audits the exact integral identities of the Moser-iteration argument on
// concrete radial profile pairs. Both sides of each identity are
// assembled strictly from the printed formulas and evaluated
// independently; a printed-formula inconsistency is a finding, not a bug.

#include "bistab/quadrature.hpp"
#include "bistab/radial.hpp"
#include "bistab/stability.hpp"

#include <string>
#include <vector>

namespace bistab {

struct IdentityDescriptor {
    std::string id;
    bool pointwise = false;      // algebraic expansion, checked per radius
    bool ball_domain = false;    // unit-ball identity in v = u + 1
    bool boundary_term = false;  // carries a boundary evaluation at r = 1
    std::string summary;
};

// The fifteen audited identities, in catalog order.
std::vector<IdentityDescriptor> identity_catalog();

struct IdentityCase {
    std::string label;
    Profile u;    // u for whole-space ids; v for ball ids
    Profile phi;  // cutoff profile; unset for ball ids
    double gamma = 1.25;
    int n = 9;
    double r_lo = 0, r_hi = 0;  // integration domain
    bool degenerate_probe = false;
};

enum class AuditVerdict { Pass, Fail, DegenerateProbeFail, Withheld };
std::string verdict_str(AuditVerdict v);

struct IdentityReport {
    std::string id;
    std::string case_label;
    double gamma = 0;
    int n = 0;
    double lhs = 0;
    double rhs = 0;
    double abs_residual = 0;
    double rel_residual = 0;
    bool converged = true;
    AuditVerdict verdict = AuditVerdict::Withheld;
    std::string note;
};

IdentityReport verify_identity(const std::string& id, const IdentityCase& c, double tol,
                               const QuadratureSpec& spec = {});

// Frozen audit corpus: (gaussian, exp bump), (inverse-power k=3, exp
// bump), (poly bump, poly bump) for the whole-space identities, and three
// v-profiles with v(1) = 1 for the ball identities.
std::vector<IdentityCase> canonical_pairs(int n, double gamma);
std::vector<IdentityCase> canonical_ball_cases(int n, double gamma);
// u == 1 collapses every u-derivative; exposes the sign structure of the
// printed right-hand side of 2.6b.
IdentityCase degenerate_probe_case(int n, double gamma);

// Every identity on every canonical case for each gamma, in catalog
// order, plus the 2.6b probe.
std::vector<IdentityReport> run_identity_audit(int n, double tol, const QuadratureSpec& spec = {},
                                               const std::vector<double>& gammas = {1.25, 1.1,
                                                                                    1.4});

// Pointwise solution bounds evaluated on the homogeneous solution, where
// both reduce to one constant inequality per bound.
struct PointwiseBoundsReport {
    int n = 0;
    double p = 0;
    double lhs_const = 0;      // alpha^2 (n-2-alpha)^2
    double rhs_const = 0;      // 2 Q/(p+1)
    double margin_ratio = 0;   // lhs/rhs = (n-2-alpha)/(n-4-alpha)
    bool bound_lap_sq = false;    // (lap u)^2 >= 2/(p+1) u^{p+1}
    bool bound_neg_lap = false;   // -lap u >= sqrt(2/(p+1)) u^{(p+1)/2}
    bool lap_negative = false;    // lap u < 0 on the annulus
    struct RadiusSample {
        double r = 0;
        double lap_sq = 0, rhs1 = 0;
        double neg_lap = 0, rhs2 = 0;
    };
    std::vector<RadiusSample> samples;
};

PointwiseBoundsReport verify_pointwise_bounds(const SingularSolution& sol,
                                              const std::vector<double>& radii);

}  // namespace bistab
