#pragma once

// Composite Gauss-Legendre quadrature with panel doubling. The error
// estimate is the difference between successive refinements; an integral
// that fails to settle within the doubling limit is flagged, not dropped.
//
// Convention used across the project: integrals over R^n of radial
// integrands reduce to int g(r) r^(n-1) dr. The sphere-area constant is
// omitted everywhere; it cancels in every identity and quotient in scope.

#include <functional>
#include <vector>

namespace bistab {

struct QuadratureSpec {
    int points_per_panel = 16;
    int initial_panels = 8;
    int max_doublings = 16;
    double rel_tol = 1e-10;
    double abs_floor = 1e-14;  // convergence floor for near-zero integrals
};

struct IntegralResult {
    double value = 0;
    bool converged = false;
    int panels = 0;
    double last_delta = 0;

    operator double() const { return value; }
};

// Nodes and weights on [-1, 1]; cached per point count.
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussLegendreRule& gauss_legendre_rule(int points);

using Integrand = std::function<double(double)>;

// int_{lo}^{hi} g(x) dx
IntegralResult integrate_interval(const Integrand& g, double lo, double hi,
                                  const QuadratureSpec& spec = {});

// int_{r_lo}^{r_hi} g(r) r^(n-1) dr
IntegralResult integrate_radial(const Integrand& g, int n, double r_lo, double r_hi,
                                const QuadratureSpec& spec = {});

}  // namespace bistab
