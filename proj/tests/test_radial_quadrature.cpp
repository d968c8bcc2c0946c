#include "bistab/quadrature.hpp"
#include "bistab/radial.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace bistab;

namespace {

// Twice-Richardson-extrapolated central differences, order by order.
double fd_at(const Profile& p, double r, int order, double h) {
    auto f = [&p](double x) { return p.value(x); };
    auto stencil = [&](double hh) {
        switch (order) {
            case 1: return (f(r + hh) - f(r - hh)) / (2 * hh);
            case 2: return (f(r + hh) - 2 * f(r) + f(r - hh)) / (hh * hh);
            case 3:
                return (f(r + 2 * hh) - 2 * f(r + hh) + 2 * f(r - hh) - f(r - 2 * hh)) /
                       (2 * hh * hh * hh);
            case 4:
                return (f(r + 2 * hh) - 4 * f(r + hh) + 6 * f(r) - 4 * f(r - hh) +
                        f(r - 2 * hh)) /
                       (hh * hh * hh * hh);
        }
        return 0.0;
    };
    auto r1 = [&](double hh) { return (4 * stencil(hh / 2) - stencil(hh)) / 3; };
    return (16 * r1(h / 2) - r1(h)) / 15;
}

// Truncation and roundoff trade off through h; the oracle takes the best
// agreement over a step-size ladder.
double fd(const Profile& p, double r, int order, double exact) {
    double best = 1e300;
    for (double h = 0.2; h >= 0.2 / 8192; h /= 2) {
        if (r - 2 * h <= 0) continue;
        double cand = fd_at(p, r, order, h);
        if (std::abs(cand - exact) < std::abs(best - exact)) best = cand;
    }
    return best;
}

double pick(const Derivs& d, int order) {
    switch (order) {
        case 1: return d.d1;
        case 2: return d.d2;
        case 3: return d.d3;
        case 4: return d.d4;
    }
    return d.f;
}

void check_derivatives(const Profile& p, double lo, double hi, double tol) {
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> uni(lo, hi);
    for (int i = 0; i < 100; ++i) {
        double r = uni(rng);
        Derivs d = p.derivs(r);
        for (int order = 1; order <= 4; ++order) {
            double exact = pick(d, order);
            double approx = fd(p, r, order, exact);
            double scale = std::max({std::abs(exact), std::abs(d.f), 1e-6});
            INFO(p.name(), " r=", r, " order=", order);
            CHECK(std::abs(approx - exact) / scale < tol);
        }
    }
}

}  // namespace

TEST_CASE("profile derivative closures agree with finite differences") {
    check_derivatives(profiles::gaussian(1.0, 1.0), 0.2, 2.5, 1e-6);
    check_derivatives(profiles::inverse_power(1.0, 3.0), 0.2, 2.5, 1e-6);
    check_derivatives(profiles::exp_bump(1.0, 1.0, 2.0), 0.2, 1.7, 1e-6);
    check_derivatives(profiles::poly_bump(1.0, 1.0, 8.0), 0.1, 0.85, 1e-6);
    check_derivatives(profiles::homogeneous(2.0, 3.5, 1e-3, 1e3), 0.5, 3.0, 1e-6);
    check_derivatives(profiles::log_annulus(-4.5, 8.0, 1.0), 0.5, 4.0, 1e-6);
    // composites: powers and shifts used by the audits
    check_derivatives(profiles::gaussian(1.0, 1.0).pow(1.25), 0.2, 2.0, 1e-6);
    check_derivatives(profiles::shifted(profiles::poly_bump(1.5, 1.0, 3.0), 1.0).pow(2.5),
                      0.1, 0.85, 1e-6);
    // plateau bump away from the junction
    check_derivatives(profiles::plateau_bump(0.5, 1.5), 0.62, 1.35, 1e-6);
}

TEST_CASE("plateau bump is exactly flat inside the plateau") {
    Profile pb = profiles::plateau_bump(0.5, 1.5);
    for (double r : {0.1, 0.3, 0.49}) {
        Derivs d = pb.derivs(r);
        CHECK(d.f == 1.0);
        CHECK(d.d1 == 0.0);
        CHECK(d.d4 == 0.0);
    }
    CHECK(pb.value(1.49) > 0);
    CHECK(pb.value(1.5) == 0.0);
}

TEST_CASE("closed-form powers agree with the generic power chain") {
    // same function through two code paths
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> uni(0.3, 1.6);
    Profile base = profiles::exp_bump(1.0, 1.0, 2.0);
    Profile closed = base.pow(1.3);
    Profile generic = profiles::shifted(base, 0.0).pow(1.3);  // forces the generic node
    for (int i = 0; i < 50; ++i) {
        double r = uni(rng);
        Derivs a = closed.derivs(r), b = generic.derivs(r);
        CHECK(a.f == doctest::Approx(b.f).epsilon(1e-12));
        CHECK(a.d1 == doctest::Approx(b.d1).epsilon(1e-10));
        CHECK(a.d2 == doctest::Approx(b.d2).epsilon(1e-10));
        CHECK(a.d3 == doctest::Approx(b.d3).epsilon(1e-9));
        CHECK(a.d4 == doctest::Approx(b.d4).epsilon(1e-8));
    }
}

TEST_CASE("radial_calculus closed forms") {
    int n = 11;
    // f = r^2 via poly machinery: (0 + 1*r^2)^1 is inverse_power with k=-1;
    // use homogeneous alpha=-2 instead
    Profile r2 = profiles::homogeneous(1.0, -2.0, 1e-6, 1e6);
    CHECK(radial_calculus(r2, 1.7, n).lap == doctest::Approx(2.0 * n).epsilon(1e-13));

    Profile r4 = profiles::homogeneous(1.0, -4.0, 1e-6, 1e6);
    CHECK(radial_calculus(r4, 0.9, n).bilap ==
          doctest::Approx(8.0 * n * (n + 2)).epsilon(1e-12));

    double alpha = 2.5;
    Profile hom = profiles::homogeneous(1.0, alpha, 1e-3, 1e3);
    double r = 1.37;
    RadialCalculus c = radial_calculus(hom, r, n);
    CHECK(c.lap == doctest::Approx(alpha * (alpha + 2 - n) * std::pow(r, -alpha - 2))
                       .epsilon(1e-12));
    CHECK(c.bilap == doctest::Approx(alpha * (alpha + 2) * (n - 2 - alpha) * (n - 4 - alpha) *
                                     std::pow(r, -alpha - 4))
                         .epsilon(1e-12));
    CHECK_THROWS_AS(radial_calculus(hom, 1e-4, n), std::domain_error);
}

TEST_CASE("radial_calculus is scale covariant") {
    Profile f = profiles::gaussian(1.0, 0.7);
    Profile cf = f.scaled(3.25);
    int n = 9;
    for (double r : {0.4, 1.1, 2.3}) {
        RadialCalculus a = radial_calculus(f, r, n);
        RadialCalculus b = radial_calculus(cf, r, n);
        CHECK(b.f == doctest::Approx(3.25 * a.f).epsilon(1e-14));
        CHECK(b.lap == doctest::Approx(3.25 * a.lap).epsilon(1e-14));
        CHECK(b.bilap == doctest::Approx(3.25 * a.bilap).epsilon(1e-14));
        CHECK(b.grad_sq == doctest::Approx(3.25 * 3.25 * a.grad_sq).epsilon(1e-14));
        CHECK(b.hess_sq == doctest::Approx(3.25 * 3.25 * a.hess_sq).epsilon(1e-14));
    }
}

TEST_CASE("grad4_norm") {
    int n = 9;
    // zero on a plateau
    Profile pb = profiles::plateau_bump(0.6, 1.4);
    CHECK(grad4_norm(pb, 1.25, 0.3, n) == 0.0);
    // nonnegative everywhere it is defined
    Profile g = profiles::gaussian(1.0, 1.0);
    for (double r : {0.3, 1.0, 2.0}) CHECK(grad4_norm(g, 1.25, r, n) >= 0.0);
    // rejected where phi vanishes
    CHECK_THROWS_AS(grad4_norm(pb, 1.25, 1.45, n), std::domain_error);

    // cross-validate the assembly against finite differences of phi^gamma
    double gamma = 1.25, r = 1.0;
    Profile b = g.pow(gamma);
    auto fdv = [&](int order, double h) { return fd_at(b, r, order, h); };
    double d1 = fdv(1, 1e-2), d2 = fdv(2, 1e-2), d3 = fdv(3, 1e-2), d4 = fdv(4, 1e-2);
    double f = b.value(r);
    double lap2 = d4 + 2 * (n - 1) * d3 / r + (n - 1) * (n - 3) * (d2 / (r * r) - d1 / (r * r * r));
    double t1 = std::pow(d1 * d1 / f, 2.0);
    double t2 = std::abs(f * lap2);
    double t3 = d2 * d2 + (n - 1) * (d1 / r) * (d1 / r);
    double expected = std::sqrt(t1 + t2 + t3);
    CHECK(grad4_norm(g, gamma, r, n) == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("quadrature basics") {
    QuadratureSpec spec;
    for (int n : {5, 9, 16}) {
        IntegralResult res = integrate_radial([](double) { return 1.0; }, n, 0.0, 1.0, spec);
        CHECK(res.converged);
        CHECK(res.value == doctest::Approx(1.0 / n).epsilon(1e-12));
    }
    // int_0^inf e^{-r^2} r^3 dr = 1/2 (n = 4 weight, truncated at 40)
    IntegralResult g =
        integrate_radial([](double r) { return std::exp(-r * r); }, 4, 0.0, 40.0, spec);
    CHECK(g.converged);
    CHECK(g.value == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("bump integral is stable under panel doubling") {
    Profile bump = profiles::exp_bump(1.0, 1.0, 1.0);
    QuadratureSpec tight;
    tight.rel_tol = 1e-10;
    IntegralResult a = integrate_radial([&](double r) { return bump.value(r); }, 9, 0.0, 1.0,
                                        tight);
    CHECK(a.converged);
    QuadratureSpec tighter = tight;
    tighter.initial_panels = 32;
    IntegralResult b = integrate_radial([&](double r) { return bump.value(r); }, 9, 0.0, 1.0,
                                        tighter);
    CHECK(a.value == doctest::Approx(b.value).epsilon(1e-10));
}

TEST_CASE("non-convergence is flagged, value still reported") {
    QuadratureSpec starved;
    starved.initial_panels = 1;
    starved.max_doublings = 1;
    starved.rel_tol = 1e-15;
    IntegralResult res = integrate_interval(
        [](double x) { return std::cos(37.0 * x * x); }, 0.0, 6.0, starved);
    CHECK_FALSE(res.converged);
    CHECK(std::isfinite(res.value));
}

TEST_CASE("integration-by-parts self-tests") {
    int n = 9;
    Profile f = profiles::exp_bump(1.0, 1.0, 2.0);
    Profile g = profiles::poly_bump(1.0, 1.8, 8.0);
    QuadratureSpec spec;
    spec.rel_tol = 1e-12;

    auto flapg = [&](double r) {
        return f.value(r) * laplacian(g.derivs(r), r, n);
    };
    auto glapf = [&](double r) {
        return g.value(r) * laplacian(f.derivs(r), r, n);
    };
    double a = integrate_radial(flapg, n, 0.0, 2.0, spec).value;
    double b = integrate_radial(glapf, n, 0.0, 2.0, spec).value;
    CHECK(std::abs(a - b) / std::max(std::abs(a), std::abs(b)) < 1e-8);

    auto fbilapf = [&](double r) {
        return f.value(r) * bilaplacian(f.derivs(r), r, n);
    };
    auto lapf_sq = [&](double r) {
        double l = laplacian(f.derivs(r), r, n);
        return l * l;
    };
    double c = integrate_radial(fbilapf, n, 0.0, 2.0, spec).value;
    double d = integrate_radial(lapf_sq, n, 0.0, 2.0, spec).value;
    CHECK(std::abs(c - d) / std::max(std::abs(c), std::abs(d)) < 1e-8);
}

TEST_CASE("gauss-legendre rules integrate polynomials exactly") {
    for (int m : {4, 8, 16}) {
        const GaussLegendreRule& rule = gauss_legendre_rule(m);
        // degree 2m-1 monomial on [-1, 1]
        double acc = 0;
        for (size_t k = 0; k < rule.nodes.size(); ++k)
            acc += rule.weights[k] * std::pow(rule.nodes[k], 2 * m - 2);
        CHECK(acc == doctest::Approx(2.0 / (2 * m - 1)).epsilon(1e-13));
        double wsum = 0;
        for (double w : rule.weights) wsum += w;
        CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
    }
}
