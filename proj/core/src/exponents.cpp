#include "bistab/exponents.hpp"

#include <future>
#include <utility>

namespace bistab {

namespace {

// a3*n^3 + a2*n^2 + a1*n + a0
BigInt cubic_at(long long a3, long long a2, long long a1, long long a0, const BigInt& n) {
    return ((BigInt(a3) * n + a2) * n + a1) * n + a0;
}

void require_n_at_least(int n, int least, const char* what) {
    if (n < least) throw std::invalid_argument(std::string(what) + ": n too small");
}

}  // namespace

Rational p_of_gamma(int n, const Rational& gamma) {
    require_n_at_least(n, 5, "p_of_gamma");
    return (8 * gamma + (n - 4)) / Rational(n - 4);
}

Rational h_value(int n, const Rational& gamma) {
    return E_value(gamma, p_of_gamma(n, gamma));
}

Rational gamma0_of(int n) {
    require_n_at_least(n, 9, "gamma0_of");
    return rat(n - 4, n - 8);
}

IntPolynomial printed_sextic(int n) {
    require_n_at_least(n, 9, "printed_sextic");
    BigInt N(n);
    std::vector<BigInt> c(7);
    c[6] = BigInt(512) * (2 - N);
    c[5] = 4 * cubic_at(1, -60, 670, -1344, N);
    c[4] = -2 * cubic_at(13, -424, 3064, -5408, N);
    c[3] = 2 * cubic_at(27, -572, 3264, -5440, N);
    c[2] = -cubic_at(49, -772, 3776, -5888, N);
    c[1] = 4 * cubic_at(5, -66, 288, -416, N);
    c[0] = -3 * cubic_at(1, -12, 48, -64, N);
    return IntPolynomial(std::move(c));
}

BigInt printed_quartic(int n) {
    require_n_at_least(n, 9, "printed_quartic");
    BigInt N(n);
    return (((N - 18) * N - 56) * N + 384) * N - 512;
}

IntPolynomial cleared_h_polynomial(int n) {
    require_n_at_least(n, 5, "cleared_h_polynomial");
    BigInt m(n - 4);
    // p(g) = P/m, (4g-3+p) = A/m, (p+1) = B/m with
    IntPolynomial P({m, BigInt(8)});                     // 8g + (n-4)
    IntPolynomial A({-2 * m, BigInt(4) * BigInt(n - 2)});  // 4(n-2)g - 2(n-4)
    IntPolynomial B({2 * m, BigInt(8)});                 // 8g + 2(n-4)
    IntPolynomial W({BigInt(-3), BigInt(8), BigInt(-4)});  // 1 - 4(g-1)^2
    IntPolynomial Q({BigInt(-1), BigInt(2)});            // 2g - 1
    IntPolynomial g2 = IntPolynomial::monomial(BigInt(1), 2);
    IntPolynomial gm1({BigInt(-1), BigInt(1)});          // g - 1

    // H = P*W*Q*A*B - g^2*A*B*(n-4) + 8 g^2 (g-1)^2 Q (n-4)^3
    IntPolynomial term1 = P * W * Q * A * B;
    IntPolynomial term2 = g2 * A * B * m;
    IntPolynomial term3 = (g2 * gm1 * gm1 * Q) * (BigInt(8) * m * m * m);
    return term1 - term2 + term3;
}

namespace {

// First sign change of H between consecutive nonzero grid samples over
// (lo, hi); endpoints use the supplied signs. Exact zeros at grid points
// are skipped, so a crossing through a grid root is still detected while
// an even-multiplicity touch is not reported as a change.
std::optional<std::pair<Rational, Rational>> first_grid_sign_change(
    const IntPolynomial& H, const Rational& lo, const Rational& hi, long cells, int sign_lo,
    int sign_hi) {
    Rational step = (hi - lo) / cells;
    Rational prev_x = lo;
    int prev_s = sign_lo;
    for (long i = 1; i <= cells; ++i) {
        Rational x = (i == cells) ? hi : lo + step * i;
        int s = (i == cells) ? sign_hi : H.sign_at(x);
        if (s == 0) continue;
        if (prev_s != 0 && s != prev_s) return std::make_pair(prev_x, x);
        prev_x = std::move(x);
        prev_s = s;
    }
    return std::nullopt;
}

}  // namespace

std::optional<RootBracket> p_star(int n, const Rational& tol) {
    require_n_at_least(n, 9, "p_star");
    if (tol <= 0) throw std::invalid_argument("p_star: tol must be positive");
    const Rational hi = rat(3, 2);
    const Rational g0 = gamma0_of(n);
    if (!(g0 < hi)) return std::nullopt;  // empty search interval (n <= 16)

    IntPolynomial H = cleared_h_polynomial(n);
    int sign_lo = H.sign_at(g0);
    int sign_hi = H.sign_at(hi);
    if (sign_lo == 0) {
        // h vanishes exactly at gamma0; nudge inward by the Sturm step
        Rational nudged = g0 + (hi - g0) / 65536;
        sign_lo = H.sign_at(nudged);
    }

    // An exact root count certifies absence up front and later certifies
    // that a grid cell holds the first root. h can have nearly tangent
    // roots, so a fixed coarse grid alone would not be trustworthy.
    const IntPolynomial Hp = H.primitive();
    if (sturm_count(Hp, g0, hi) == 0) return std::nullopt;

    for (long cells = 512; cells <= (1L << 20); cells *= 2) {
        auto found = first_grid_sign_change(H, g0, hi, cells, sign_lo, sign_hi);
        if (!found) continue;
        // certified first sign change: nothing to the left of the cell
        if (found->first == g0 || sturm_count(Hp, g0, found->first) == 0) {
            auto sign_fn = [&H](const Rational& x) { return H.sign_at(x); };
            RootBracket bracket = make_bracket(sign_fn, found->first, found->second);
            return isolate_root(sign_fn, bracket, tol);
        }
        // roots precede the detected change without flipping the grid
        // signs (an even-multiplicity touch or an unresolved pair); refine
    }
    // Roots exist but no sign change surfaced at the cap: every root in
    // range is an even-multiplicity touch, so there is no sign-change
    // location to report.
    return std::nullopt;
}

ExponentReport exponent_report(int n, const Rational& tol) {
    require_n_at_least(n, 5, "exponent_report");
    ExponentReport rep;
    rep.n = n;
    rep.p_sobolev = rat(n + 4, n - 4);
    if (n <= 8) return rep;
    rep.p_wy = rat(n, n - 8);
    rep.gamma0 = gamma0_of(n);
    rep.pstar = p_star(n, tol);
    if (rep.pstar) {
        rep.p_max = 1 + 8 * rep.pstar->high / Rational(n - 4);
        rep.epsilon_n = *rep.p_max - *rep.p_wy;
    }
    return rep;
}

FeasibilitySample feasibility_sample(int n, const Rational& gamma, const Rational& p) {
    FeasibilitySample s;
    s.n = n;
    s.gamma = gamma;
    s.p = p;
    s.q = 2 * gamma - 1;
    s.theta = theta_of(gamma, p);
    s.E = E_value(gamma, p);
    s.cond_E = s.E > 0;
    s.cond_52 = p < p_of_gamma(n, gamma);
    s.admissible = s.cond_E && s.cond_52;
    return s;
}

std::vector<FeasibilitySample> feasibility_scan(int n, int gamma_steps, int p_steps,
                                                int workers) {
    require_n_at_least(n, 5, "feasibility_scan");
    if (gamma_steps < 2 || p_steps < 2)
        throw std::invalid_argument("feasibility_scan: steps must be >= 2");

    const Rational p_sob = rat(n + 4, n - 4);
    std::vector<std::pair<Rational, Rational>> grid;
    grid.reserve(static_cast<size_t>(gamma_steps) * p_steps);
    for (int i = 1; i <= gamma_steps; ++i) {
        Rational gamma = 1 + Rational(i) / (2 * (gamma_steps + 1));
        for (int j = 1; j <= p_steps; ++j) {
            Rational p = 1 + Rational(j) * p_sob / (p_steps + 1);
            grid.emplace_back(gamma, p);
        }
    }

    std::vector<FeasibilitySample> out(grid.size());
    if (workers <= 1) {
        for (size_t k = 0; k < grid.size(); ++k)
            out[k] = feasibility_sample(n, grid[k].first, grid[k].second);
        return out;
    }
    size_t chunk = (grid.size() + workers - 1) / workers;
    std::vector<std::future<void>> jobs;
    for (int w = 0; w < workers; ++w) {
        size_t lo = w * chunk;
        size_t hi = std::min(grid.size(), lo + chunk);
        if (lo >= hi) break;
        jobs.push_back(std::async(std::launch::async, [&, lo, hi] {
            for (size_t k = lo; k < hi; ++k)
                out[k] = feasibility_sample(n, grid[k].first, grid[k].second);
        }));
    }
    for (auto& j : jobs) j.get();
    return out;
}

DiscrepancyReport discrepancy_report(int n, int sample_count) {
    require_n_at_least(n, 9, "discrepancy_report");
    if (sample_count < 1) throw std::invalid_argument("discrepancy_report: sample_count >= 1");

    DiscrepancyReport rep;
    rep.n = n;
    rep.printed = printed_sextic(n);
    rep.cleared = cleared_h_polynomial(n);
    rep.primitive_cleared = rep.cleared.primitive();

    auto add_sample = [&](const Rational& gamma) {
        SignSample s;
        s.gamma = gamma;
        s.printed_sign = rep.printed.sign_at(gamma);
        s.h_sign = sign(h_value(n, gamma));
        s.mismatch = s.printed_sign != 0 && s.h_sign != 0 && s.printed_sign != s.h_sign;
        rep.any_sign_mismatch = rep.any_sign_mismatch || s.mismatch;
        rep.samples.push_back(std::move(s));
    };
    for (int j = 1; j <= sample_count; ++j)
        add_sample(1 + Rational(j) / (2 * (sample_count + 1)));
    add_sample(rat(4, 3));  // the appendix anchor point
    Rational g0 = gamma0_of(n);
    if (Rational(1) < g0 && g0 < rat(3, 2)) add_sample(g0);

    rep.scale_candidate = Rational(rep.cleared.leading()) / Rational(rep.printed.leading());
    bool scaled_equal = true;
    for (int k = 0; k <= 6; ++k) {
        Rational delta = Rational(rep.cleared.coefficient(k)) -
                         rep.scale_candidate * Rational(rep.printed.coefficient(k));
        if (delta != 0) scaled_equal = false;
        rep.scaled_deltas.push_back(std::move(delta));
    }

    if (rep.any_sign_mismatch) rep.verdict = "inconsistent";
    else if (scaled_equal && rep.scale_candidate == 1) rep.verdict = "consistent";
    else if (scaled_equal) rep.verdict = "scaled-consistent";
    else rep.verdict = "inconsistent";
    return rep;
}

}  // namespace bistab
