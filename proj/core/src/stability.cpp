#include "bistab/stability.hpp"

#include <cmath>
#include <future>
#include <stdexcept>

namespace bistab {

Profile SingularSolution::profile() const {
    return profiles::homogeneous(L, to_double(alpha), r_lo, r_hi);
}

SingularSolution singular_solution(int n, const Rational& p, double r_lo, double r_hi) {
    if (n < 9) throw std::invalid_argument("singular_solution: n >= 9");
    if (!(p > rat(n, n - 4)))
        throw std::domain_error("singular_solution: requires p > n/(n-4), else Q <= 0");
    if (!(0 < r_lo && r_lo < r_hi))
        throw std::invalid_argument("singular_solution: bad cutoff radii");

    SingularSolution s;
    s.n = n;
    s.p = p;
    s.alpha = 4 / (p - 1);
    s.Q = s.alpha * (s.alpha + 2) * (n - 2 - s.alpha) * (n - 4 - s.alpha);
    s.L = std::pow(to_double(s.Q), 1.0 / to_double(p - 1));
    s.r_lo = r_lo;
    s.r_hi = r_hi;

    // Residual self-check on a log-spaced grid kept away from the extreme
    // cutoffs so u^p stays in double range across the full (n, p) sweep.
    double lo = std::max(r_lo, 1e-2);
    double hi = std::min(r_hi, 1e2);
    Profile u = s.profile();
    double pd = to_double(p);
    double worst = 0;
    for (int i = 0; i < 32; ++i) {
        double r = lo * std::pow(hi / lo, (i + 0.5) / 32.0);
        RadialCalculus c = radial_calculus(u, r, n);
        double up = std::pow(c.f, pd);
        double res = std::abs(c.bilap - up) / up;
        worst = std::max(worst, res);
    }
    s.max_residual = worst;
    if (worst > 1e-10)
        throw std::runtime_error("singular_solution: construction residual exceeds 1e-10");
    return s;
}

Rational hardy_rellich_constant(int n) {
    if (n < 5) throw std::invalid_argument("hardy_rellich_constant: n >= 5");
    return Rational(BigInt(n) * n * (n - 4) * (n - 4), BigInt(16));
}

namespace {

// p * Q(alpha(p)) as an exact rational; domain p > n/(n-4).
Rational pQ_of(int n, const Rational& p) {
    Rational alpha = 4 / (p - 1);
    return p * alpha * (alpha + 2) * (n - 2 - alpha) * (n - 4 - alpha);
}

}  // namespace

StabilityVerdict singular_stability(int n, const Rational& p) {
    if (n < 9) throw std::invalid_argument("singular_stability: n >= 9");
    if (!(p > rat(n, n - 4)))
        throw std::domain_error("singular_stability: requires p > n/(n-4)");
    StabilityVerdict v;
    v.n = n;
    v.p = p;
    v.pQ = pQ_of(n, p);
    v.hr = hardy_rellich_constant(n);
    v.stable = v.pQ <= v.hr;
    v.margin = (v.hr - v.pQ) / v.hr;
    return v;
}

bool jl_tail_exists(int n) {
    if (n < 5) throw std::invalid_argument("jl_tail_exists: n >= 5");
    return BigInt(128) * (n - 2) <= BigInt(n) * n * (n - 4);
}

std::optional<RootBracket> jl_threshold(int n, const Rational& tol) {
    if (n < 9) throw std::invalid_argument("jl_threshold: n >= 9");
    if (tol <= 0) throw std::invalid_argument("jl_threshold: tol must be positive");
    if (!jl_tail_exists(n)) return std::nullopt;

    const Rational hr = hardy_rellich_constant(n);
    auto sign_fn = [n, &hr](const Rational& p) { return sign(pQ_of(n, p) - hr); };

    // Log grid over (n/(n-4) + 1e-3, p_top]; extend p_top while the tail
    // is still on the unstable side (cannot persist, the limit is below hr).
    double lo = static_cast<double>(n) / (n - 4) + 1e-3;
    double hi = 200.0;
    while (sign_fn(Rational(hi)) > 0) {
        hi *= 2;
        if (hi > 1e9) throw std::runtime_error("jl_threshold: tail crossing not found");
    }
    const int cells = 2048;
    // walk down from the top; the threshold is the rightmost +/- change
    Rational right(hi);
    int s_right = sign_fn(right);
    for (int i = cells - 1; i >= 0; --i) {
        double x = lo * std::pow(hi / lo, static_cast<double>(i) / cells);
        Rational px(x);
        int s = sign_fn(px);
        if (s > 0 && s_right < 0) {
            RootBracket b{px, right, s, s_right};
            return isolate_root(sign_fn, b, tol);
        }
        if (s_right == 0) {
            // grid point landed on the crossing; widen to the neighbor
            right = px;
            s_right = s;
            continue;
        }
        right = px;
        s_right = s;
    }
    throw std::runtime_error("jl_threshold: no unstable region found on the scan grid");
}

double rayleigh_quotient(const SingularSolution& u, const Profile& phi,
                         const QuadratureSpec& spec) {
    auto [plo, phi_hi] = phi.support();
    double lo = std::max(plo, u.r_lo);
    double hi = std::min(phi_hi, u.r_hi);
    if (!(lo < hi))
        throw std::invalid_argument("rayleigh_quotient: phi support outside the cutoff annulus");
    if (plo < u.r_lo || phi_hi > u.r_hi)
        throw std::invalid_argument("rayleigh_quotient: phi must live inside the annulus");

    const int n = u.n;
    const double Qd = to_double(u.Q);
    // log-radius substitution: int g(r) r^{n-1} dr = int g(e^s) e^{ns} ds
    auto num = [&phi, n](double sigma) {
        double r = std::exp(sigma);
        RadialCalculus c = radial_calculus(phi, r, n);
        return c.lap * c.lap * std::exp(static_cast<double>(n) * sigma);
    };
    auto den = [&phi, n, Qd](double sigma) {
        double r = std::exp(sigma);
        double f = phi.value(r);
        return Qd * f * f * std::exp((n - 4.0) * sigma);
    };
    double slo = std::log(lo);
    double shi = std::log(hi);
    IntegralResult N = integrate_interval(num, slo, shi, spec);
    IntegralResult D = integrate_interval(den, slo, shi, spec);
    if (D.value <= 0) throw std::domain_error("rayleigh_quotient: vanishing denominator");
    return N.value / D.value;
}

RayleighScanResult rayleigh_scan(const SingularSolution& u, const QuadratureSpec& spec,
                                 int offsets, const std::vector<double>& Ts, int workers) {
    if (offsets < 2 || Ts.empty()) throw std::invalid_argument("rayleigh_scan: empty family");
    RayleighScanResult out;
    out.rows.resize(Ts.size() * offsets);

    auto run_one = [&](size_t idx) {
        size_t ti = idx / offsets;
        int si = static_cast<int>(idx % offsets);
        double T = Ts[ti];
        double s = -0.5 + static_cast<double>(si) / (offsets - 1);
        double c = -(u.n - 4) / 2.0 + s;
        Profile phi = profiles::log_annulus(c, T, 1.0);
        out.rows[idx] = {T, s, rayleigh_quotient(u, phi, spec)};
    };

    if (workers <= 1) {
        for (size_t idx = 0; idx < out.rows.size(); ++idx) run_one(idx);
    } else {
        size_t chunk = (out.rows.size() + workers - 1) / workers;
        std::vector<std::future<void>> jobs;
        for (int w = 0; w < workers; ++w) {
            size_t lo = w * chunk;
            size_t hi = std::min(out.rows.size(), lo + chunk);
            if (lo >= hi) break;
            jobs.push_back(std::async(std::launch::async, [&, lo, hi] {
                for (size_t k = lo; k < hi; ++k) run_one(k);
            }));
        }
        for (auto& j : jobs) j.get();
    }

    const double pd = to_double(u.p);
    out.min_quotient = out.rows[0].quotient;
    out.best_T = out.rows[0].T;
    out.best_s = out.rows[0].s;
    for (size_t ti = 0; ti < Ts.size(); ++ti) {
        double tmin = out.rows[ti * offsets].quotient;
        for (int si = 0; si < offsets; ++si) {
            const RayleighScanRow& row = out.rows[ti * offsets + si];
            tmin = std::min(tmin, row.quotient);
            if (row.quotient < pd) ++out.below_p_count;
            if (row.quotient < out.min_quotient) {  // first in grid order wins ties
                out.min_quotient = row.quotient;
                out.best_T = row.T;
                out.best_s = row.s;
            }
        }
        out.per_T_min.emplace_back(Ts[ti], tmin);
    }
    return out;
}

}  // namespace bistab
