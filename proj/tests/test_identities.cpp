#include "bistab/identities.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

using namespace bistab;

TEST_CASE("catalog contains exactly the fifteen audited identities") {
    auto cat = identity_catalog();
    CHECK(cat.size() == 15);
    std::set<std::string> ids;
    for (const auto& d : cat) ids.insert(d.id);
    for (const char* id : {"2.5", "2.6", "2.6a", "2.6b", "2.12", "2.13", "2.18", "2.19",
                           "2.20", "2.21", "3.5", "3.6", "3.8", "3.9", "3.10"})
        CHECK(ids.count(id) == 1);
    for (const auto& d : cat) {
        if (d.id == "2.5") CHECK(d.pointwise);
        if (d.id == "3.8" || d.id == "3.10") {
            CHECK(d.boundary_term);
            CHECK(d.ball_domain);
        }
        if (d.id[0] == '2') CHECK_FALSE(d.ball_domain);
    }
}

TEST_CASE("identity 2.5 passes pointwise on random parameterizations") {
    std::mt19937 rng(4242);
    std::uniform_real_distribution<double> amp(0.5, 2.0);
    std::uniform_real_distribution<double> rate(0.5, 1.5);
    std::uniform_real_distribution<double> gam(1.05, 1.45);
    for (int trial = 0; trial < 10; ++trial) {
        IdentityCase c{"random", profiles::gaussian(amp(rng), rate(rng)),
                       profiles::exp_bump(amp(rng), rate(rng), 2.0), gam(rng), 9, 0.0, 2.0,
                       false};
        auto rep = verify_identity("2.5", c, 1e-10);
        CHECK(rep.verdict == AuditVerdict::Pass);
        CHECK(rep.rel_residual <= 1e-10);
    }
}

TEST_CASE("integration-by-parts identities pass on the canonical corpus") {
    const std::set<std::string> must_pass = {"2.5",  "2.6",  "2.6a", "2.12", "2.13", "2.18",
                                             "2.19", "2.20", "2.21", "3.5",  "3.6",  "3.9",
                                             "3.8",  "3.10"};
    for (double gamma : {1.25, 1.1, 1.4}) {
        for (const auto& desc : identity_catalog()) {
            if (must_pass.count(desc.id) == 0) continue;
            auto cases = desc.ball_domain ? canonical_ball_cases(9, gamma)
                                          : canonical_pairs(9, gamma);
            for (const auto& c : cases) {
                auto rep = verify_identity(desc.id, c, 1e-6);
                INFO(desc.id, " ", c.label, " gamma=", gamma, " rel=", rep.rel_residual);
                CHECK(rep.verdict == AuditVerdict::Pass);
            }
        }
    }
}

TEST_CASE("2.6b fails as printed and the u == 1 probe pins the sign") {
    auto c = canonical_pairs(9, 1.25)[0];
    auto rep = verify_identity("2.6b", c, 1e-6);
    CHECK(rep.verdict == AuditVerdict::Fail);

    auto probe = verify_identity("2.6b", degenerate_probe_case(9, 1.25), 1e-6);
    CHECK(probe.verdict == AuditVerdict::DegenerateProbeFail);
    double ratio = probe.rhs / probe.lhs;
    CHECK(ratio == doctest::Approx(-1.0).epsilon(1e-6));
}

TEST_CASE("audit residuals shrink by >= 10x under one refinement") {
    // Only identities whose proof moves derivatives across an integration
    // by parts have side-dependent quadrature error; the pointwise-equal
    // expansions sit at roundoff for any panel count. A low-order rule
    // makes the truncation regime visible.
    QuadratureSpec coarse;
    coarse.points_per_panel = 4;
    coarse.initial_panels = 4;
    coarse.max_doublings = 0;
    QuadratureSpec fine = coarse;
    fine.initial_panels = 8;

    for (const char* id : {"2.6", "2.6a", "2.13", "2.19", "2.21", "3.8", "3.10"}) {
        const bool ball = id[0] == '3';
        auto c = ball ? canonical_ball_cases(9, 1.25)[0] : canonical_pairs(9, 1.25)[0];
        auto a = verify_identity(id, c, 1e-6, coarse);
        auto b = verify_identity(id, c, 1e-6, fine);
        INFO(id, ": coarse ", a.abs_residual, " fine ", b.abs_residual);
        CHECK(a.abs_residual > 1e-13);  // genuinely truncation-limited
        CHECK(b.abs_residual * 10 <= a.abs_residual);
    }
}

TEST_CASE("audit verdicts are independent of panel partitioning") {
    QuadratureSpec a;
    a.initial_panels = 4;
    QuadratureSpec b;
    b.initial_panels = 23;  // deliberately unaligned
    for (const char* id : {"2.6", "2.12", "3.8", "3.10"}) {
        const bool ball = id[0] == '3';
        auto c = ball ? canonical_ball_cases(9, 1.4)[0] : canonical_pairs(9, 1.4)[2];
        auto ra = verify_identity(id, c, 1e-6, a);
        auto rb = verify_identity(id, c, 1e-6, b);
        CHECK(ra.verdict == rb.verdict);
        CHECK(ra.lhs == doctest::Approx(rb.lhs).epsilon(1e-9));
    }
}

TEST_CASE("ball cases carry live boundary terms where v'(1) is nonzero") {
    // v = 1 + (1 - r^2): flux at the boundary is -(-2)^3 = 8 for 3.10
    auto c = canonical_ball_cases(9, 1.25)[0];
    Derivs d = c.u.derivs(1.0);
    CHECK(d.f == doctest::Approx(1.0));
    CHECK(d.d1 == doctest::Approx(-2.0));
    // flat-flux profile for contrast
    auto c2 = canonical_ball_cases(9, 1.25)[1];
    CHECK(c2.u.derivs(1.0).d1 == doctest::Approx(0.0));
}

TEST_CASE("unknown identity and bad tolerance are rejected") {
    auto c = canonical_pairs(9, 1.25)[0];
    CHECK_THROWS_AS(verify_identity("9.9", c, 1e-6), std::invalid_argument);
    CHECK_THROWS_AS(verify_identity("2.6", c, 0.0), std::invalid_argument);
}

TEST_CASE("domain admissibility rules are enforced") {
    // ball identity with v(1) != 1
    IdentityCase bad_v{"v=2+poly", profiles::shifted(profiles::poly_bump(1.0, 1.0, 2.0), 2.0),
                       Profile(), 1.25, 9, 0.0, 1.0, false};
    CHECK_THROWS_AS(verify_identity("3.5", bad_v, 1e-6), std::invalid_argument);
    // whole-space identity with phi spilling outside the domain
    IdentityCase spill{"spill", profiles::gaussian(1.0, 1.0),
                       profiles::exp_bump(1.0, 1.0, 3.0), 1.25, 9, 0.0, 2.0, false};
    CHECK_THROWS_AS(verify_identity("2.6", spill, 1e-6), std::invalid_argument);
    // ball identity on the wrong interval
    IdentityCase wrong{"wrong", profiles::shifted(profiles::poly_bump(1.0, 2.0, 2.0), 1.0),
                       Profile(), 1.25, 9, 0.0, 2.0, false};
    CHECK_THROWS_AS(verify_identity("3.5", wrong, 1e-6), std::invalid_argument);
}

TEST_CASE("run_identity_audit covers the full corpus in catalog order") {
    for (int n : {9, 12}) {  // verdicts do not depend on the dimension
        auto reports = run_identity_audit(n, 1e-6);
        // 15 ids x 3 gammas x 3 cases + 1 probe
        CHECK(reports.size() == 15 * 3 * 3 + 1);
        int fails = 0, probe_fails = 0;
        for (const auto& r : reports) {
            if (r.verdict == AuditVerdict::Fail) {
                ++fails;
                CHECK(r.id == "2.6b");
            }
            if (r.verdict == AuditVerdict::DegenerateProbeFail) ++probe_fails;
        }
        CHECK(fails == 9);        // 2.6b as printed, every case and gamma
        CHECK(probe_fails == 1);  // the u == 1 probe
    }
}

TEST_CASE("pointwise bounds on the homogeneous solution") {
    auto sol = singular_solution(20, Rational(3));
    std::vector<double> radii = {0.5, 1.0, 2.0, 4.0};
    auto rep = verify_pointwise_bounds(sol, radii);
    CHECK(rep.lhs_const == doctest::Approx(1024.0).epsilon(1e-12));
    CHECK(rep.rhs_const == doctest::Approx(896.0).epsilon(1e-12));
    CHECK(rep.margin_ratio == doctest::Approx(8.0 / 7.0).epsilon(1e-12));
    CHECK(rep.bound_lap_sq);
    CHECK(rep.bound_neg_lap);
    CHECK(rep.lap_negative);
    // -lap u = 32 L r^{-4} > 0, and the second bound at r=1: 32L vs sqrt(.5) L^2
    double L = std::sqrt(1792.0);
    for (const auto& s : rep.samples) {
        if (s.r == 1.0) {
            CHECK(s.neg_lap == doctest::Approx(32.0 * L).epsilon(1e-6));
            CHECK(s.rhs2 == doctest::Approx(std::sqrt(0.5) * 1792.0).epsilon(1e-6));
        }
        CHECK(s.neg_lap > 0);
    }
}

TEST_CASE("negative laplacian holds across admissible parameters") {
    for (int n : {9, 13, 20, 40}) {
        for (double p : {2.5, 3.0, 10.0, 60.0}) {
            Rational rp = parse_rational(std::to_string(p));
            if (!(rp > rat(n, n - 4))) continue;
            auto sol = singular_solution(n, rp);
            auto rep = verify_pointwise_bounds(sol, {1.0});
            CHECK(rep.lap_negative);
        }
    }
}
