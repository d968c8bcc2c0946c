#include "bistab/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace bistab {

namespace {

GaussLegendreRule compute_rule(int m) {
    // Newton iteration on Legendre polynomials, symmetric nodes.
    GaussLegendreRule rule;
    rule.nodes.resize(m);
    rule.weights.resize(m);
    for (int i = 0; i < (m + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
        double dp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= m; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = m * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.weights[i] = w;
        rule.nodes[m - 1 - i] = x;
        rule.weights[m - 1 - i] = w;
    }
    if (m % 2 == 1) rule.nodes[m / 2] = 0.0;
    return rule;
}

// Deterministic pairwise reduction (fixed tree, independent of callers).
double pairwise_sum(std::vector<double>& v, size_t lo, size_t hi) {
    if (hi - lo == 1) return v[lo];
    size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

double composite(const Integrand& g, double lo, double hi, int panels,
                 const GaussLegendreRule& rule) {
    std::vector<double> partial(panels);
    double h = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) {
        double a = lo + p * h;
        double c = a + h / 2;
        double half = h / 2;
        double acc = 0;
        for (size_t k = 0; k < rule.nodes.size(); ++k)
            acc += rule.weights[k] * g(c + half * rule.nodes[k]);
        partial[p] = acc * half;
    }
    return pairwise_sum(partial, 0, partial.size());
}

}  // namespace

const GaussLegendreRule& gauss_legendre_rule(int points) {
    if (points < 2 || points > 128) throw std::invalid_argument("gauss_legendre_rule: 2..128");
    static std::map<int, GaussLegendreRule> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(points);
    if (it == cache.end()) it = cache.emplace(points, compute_rule(points)).first;
    return it->second;
}

IntegralResult integrate_interval(const Integrand& g, double lo, double hi,
                                  const QuadratureSpec& spec) {
    if (!(lo < hi)) throw std::invalid_argument("integrate_interval: lo < hi required");
    const GaussLegendreRule& rule = gauss_legendre_rule(spec.points_per_panel);
    IntegralResult res;
    int panels = std::max(1, spec.initial_panels);
    double prev = composite(g, lo, hi, panels, rule);
    res.value = prev;
    res.panels = panels;
    for (int d = 0; d < spec.max_doublings; ++d) {
        panels *= 2;
        double cur = composite(g, lo, hi, panels, rule);
        double delta = std::abs(cur - prev);
        res.value = cur;
        res.panels = panels;
        res.last_delta = delta;
        if (delta <= spec.rel_tol * std::max(std::abs(cur), spec.abs_floor)) {
            res.converged = true;
            return res;
        }
        prev = cur;
    }
    res.converged = false;
    return res;
}

IntegralResult integrate_radial(const Integrand& g, int n, double r_lo, double r_hi,
                                const QuadratureSpec& spec) {
    auto weighted = [&g, n](double r) { return g(r) * std::pow(r, n - 1); };
    return integrate_interval(weighted, r_lo, r_hi, spec);
}

}  // namespace bistab
