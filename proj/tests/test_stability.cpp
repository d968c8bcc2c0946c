#include "bistab/stability.hpp"

#include <doctest.h>

#include <cmath>

using namespace bistab;

TEST_CASE("singular solution construction examples") {
    auto s = singular_solution(20, Rational(3));
    CHECK(s.alpha == Rational(2));
    CHECK(s.Q == Rational(1792));
    CHECK(s.L == doctest::Approx(std::sqrt(1792.0)).epsilon(1e-14));
    CHECK(s.max_residual <= 1e-10);
    // lap u = -32 L r^{-4}
    RadialCalculus c = radial_calculus(s.profile(), 1.0, 20);
    CHECK(c.lap == doctest::Approx(-32.0 * s.L).epsilon(1e-12));

    // alpha p = alpha + 4 for arbitrary admissible input
    auto s2 = singular_solution(13, rat(77, 5));
    CHECK(s2.alpha * s2.p == s2.alpha + 4);

    CHECK_THROWS_AS(singular_solution(20, rat(5, 4)), std::domain_error);  // p <= n/(n-4)
    CHECK_THROWS_AS(singular_solution(8, Rational(3)), std::invalid_argument);
}

TEST_CASE("construction residual across the admissible sweep") {
    for (int n = 9; n <= 40; ++n) {
        Rational lowest = rat(n, n - 4) + rat(1, 10);
        for (Rational p : {lowest, Rational(2), Rational(3), Rational(5), Rational(10),
                           Rational(20), Rational(50), Rational(100)}) {
            if (!(p > rat(n, n - 4))) continue;
            auto s = singular_solution(n, p);
            CHECK(s.max_residual <= 1e-10);
        }
    }
}

TEST_CASE("hardy-rellich constant") {
    CHECK(hardy_rellich_constant(20) == Rational(6400));
    CHECK(hardy_rellich_constant(13) == rat(13689, 16));
    CHECK(hardy_rellich_constant(5) == rat(25, 16));
}

TEST_CASE("singular stability verdicts") {
    auto a = singular_stability(20, Rational(3));
    CHECK(a.pQ == Rational(5376));
    CHECK(a.hr == Rational(6400));
    CHECK(a.stable);
    CHECK(a.margin == rat(6400 - 5376, 6400));

    auto b = singular_stability(13, Rational(40));
    CHECK(b.stable);
    CHECK(to_double(b.pQ) == doctest::Approx(836.4).epsilon(1e-3));

    auto c = singular_stability(13, Rational(20));
    CHECK_FALSE(c.stable);
    CHECK(to_double(c.pQ) == doctest::Approx(882.7).epsilon(1e-3));
}

TEST_CASE("stability is monotone in p beyond the crossing") {
    for (int n : {13, 20, 30}) {
        auto bracket = jl_threshold(n, Rational(1e-9));
        REQUIRE(bracket.has_value());
        Rational threshold = bracket->high;
        bool prev_stable = true;
        for (int step = 0; step <= 20; ++step) {
            Rational p = threshold + Rational(step) * rat(1, 2);
            auto v = singular_stability(n, p);
            CHECK(v.stable);
            prev_stable = prev_stable && v.stable;
        }
        CHECK(prev_stable);
        // just below the bracket: unstable
        auto below = singular_stability(n, bracket->low - rat(1, 100));
        CHECK_FALSE(below.stable);
    }
}

TEST_CASE("jl threshold examples") {
    auto b13 = jl_threshold(13, Rational(1e-9));
    REQUIRE(b13.has_value());
    CHECK(b13->low >= Rational(27));
    CHECK(b13->high <= Rational(29));
    // spot values on both sides of the crossing
    CHECK(to_double(singular_stability(13, Rational(28)).pQ) ==
          doctest::Approx(856.0).epsilon(1e-3));
    CHECK(to_double(singular_stability(13, Rational(30)).pQ) ==
          doctest::Approx(851.6).epsilon(1e-3));

    for (int n = 9; n <= 12; ++n) CHECK_FALSE(jl_threshold(n, Rational(1e-9)).has_value());
    for (int n = 13; n <= 40; ++n) CHECK(jl_threshold(n, Rational(1e-9)).has_value());
}

TEST_CASE("jl tail test in exact integers") {
    // the tail limit of pQ is 8(n-2)(n-4); threshold exists iff it is <= hr
    CHECK_FALSE(jl_tail_exists(12));  // 640 > 576
    CHECK(jl_tail_exists(13));
    for (int n = 9; n <= 40; ++n) CHECK(jl_tail_exists(n) == (n >= 13));
}

TEST_CASE("rayleigh quotient scaling invariance and annulus limit") {
    auto u = singular_solution(13, Rational(20));
    QuadratureSpec spec;
    Profile phi = profiles::log_annulus(-4.5, 8.0, 1.0);
    double q1 = rayleigh_quotient(u, phi, spec);
    double q2 = rayleigh_quotient(u, phi.scaled(0.37), spec);
    CHECK(std::abs(q1 - q2) / std::abs(q1) < 1e-12);

    // widening the annulus at s = 0 approaches hr/Q from above
    double hrQ = to_double(hardy_rellich_constant(13) / u.Q);
    double prev = 1e300;
    for (double T : {4.0, 8.0, 16.0}) {
        double q = rayleigh_quotient(u, profiles::log_annulus(-4.5, T, 1.0), spec);
        CHECK(q > hrQ);
        CHECK(q < prev);
        prev = q;
    }
    CHECK(prev == doctest::Approx(hrQ).epsilon(2e-3));

    CHECK_THROWS_AS(rayleigh_quotient(u, profiles::log_annulus(-4.5, 17.0, 1.0), spec),
                    std::invalid_argument);  // support leaves the annulus
}

TEST_CASE("rayleigh scan finds a witness exactly on the unstable side") {
    QuadratureSpec spec;
    auto unstable = singular_solution(13, Rational(20));
    auto scan_u = rayleigh_scan(unstable, spec);
    CHECK(scan_u.min_quotient < 20.0);
    CHECK(scan_u.below_p_count > 0);
    // widening T monotonically lowers the found minimum
    REQUIRE(scan_u.per_T_min.size() == 3);
    CHECK(scan_u.per_T_min[0].second > scan_u.per_T_min[1].second);
    CHECK(scan_u.per_T_min[1].second > scan_u.per_T_min[2].second);

    auto stable = singular_solution(13, Rational(40));
    auto scan_s = rayleigh_scan(stable, spec);
    CHECK(scan_s.below_p_count == 0);
    CHECK(scan_s.min_quotient >= 40.0);
}

TEST_CASE("rayleigh scan is worker-count independent") {
    QuadratureSpec spec;
    auto u = singular_solution(13, Rational(20));
    auto one = rayleigh_scan(u, spec, 17, {4, 8}, 1);
    auto four = rayleigh_scan(u, spec, 17, {4, 8}, 4);
    REQUIRE(one.rows.size() == four.rows.size());
    for (size_t i = 0; i < one.rows.size(); ++i)
        CHECK(one.rows[i].quotient == four.rows[i].quotient);
    CHECK(one.min_quotient == four.min_quotient);
    CHECK(one.best_s == four.best_s);
}
