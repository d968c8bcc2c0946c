#pragma once

// Exponent thresholds for the supercritical biharmonic problem. Ground
// truth is the rational function h(gamma) = E(gamma, p(gamma)); the
// printed sextic and quartic are reproduced verbatim so reports can
// compare them against recomputed values.

#include "bistab/polynomial.hpp"
#include "bistab/rational.hpp"
#include "bistab/sturm.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bistab {

// p(gamma) = (8*gamma + n - 4)/(n - 4)
Rational p_of_gamma(int n, const Rational& gamma);

// theta solving 2(1-theta) + (2*gamma+p-1)*theta = 2*gamma.
template <class T>
T theta_of(const T& gamma, const T& p) {
    T d = 2 * gamma + p - 3;
    if (d == 0) throw std::domain_error("theta_of: 2*gamma + p - 3 vanishes");
    return (2 * gamma - 2) / d;
}

// E = p(1-4(g-1)^2) - g^2/(2g-1) + 8 g^2 (g-1)^2 / ((4g-3+p)(p+1))
template <class T>
T E_value(const T& gamma, const T& p) {
    T q = 2 * gamma - 1;
    if (!(q > 0)) throw std::domain_error("E_value: requires 2*gamma - 1 > 0");
    T d = (4 * gamma - 3 + p) * (p + 1);
    if (d == 0) throw std::domain_error("E_value: (4*gamma-3+p)(p+1) vanishes");
    T gm1 = gamma - 1;
    return p * (1 - 4 * gm1 * gm1) - gamma * gamma / q + 8 * gamma * gamma * gm1 * gm1 / d;
}

// h(gamma) = E(gamma, p(gamma)), evaluated exactly.
Rational h_value(int n, const Rational& gamma);

// gamma0 = (n-4)/(n-8), the gamma at which p(gamma) = n/(n-8). n >= 9.
Rational gamma0_of(int n);

// The seven printed sextic coefficients instantiated at n (n >= 9),
// exactly as they appear in print. Index k = coefficient of x^k.
IntPolynomial printed_sextic(int n);

// n^4 - 18n^3 - 56n^2 + 384n - 512 (n >= 9)
BigInt printed_quartic(int n);

// h cleared of its denominators:
//   H(g) = h(g) * (2g-1) * (4g-3+p(g)) * (p(g)+1) * (n-4)^3.
// All clearing factors are positive on (1, 3/2), so sign(H) = sign(h)
// there. Degree 6 with integer coefficients; leading term -2048(n-2).
IntPolynomial cleared_h_polynomial(int n);

// Smallest sign-change location of h(n, .) in (gamma0, 3/2), as an exact
// bracket of width <= tol. Absent when the interval is empty or h has no
// sign change there (certified by a Sturm count on the cleared form).
std::optional<RootBracket> p_star(int n, const Rational& tol);

struct ExponentReport {
    int n = 0;
    Rational p_sobolev;                  // (n+4)/(n-4)
    std::optional<Rational> p_wy;        // n/(n-8), n >= 9
    std::optional<Rational> gamma0;      // (n-4)/(n-8), n >= 9
    std::optional<RootBracket> pstar;    // root bracket in gamma
    std::optional<Rational> p_max;       // 1 + 8*pstar.high/(n-4) (conservative)
    std::optional<Rational> epsilon_n;   // p_max - p_wy
};

ExponentReport exponent_report(int n, const Rational& tol);

struct FeasibilitySample {
    int n = 0;
    Rational gamma;
    Rational p;
    Rational q;        // 2*gamma - 1
    Rational theta;    // (2*gamma-2)/(2*gamma+p-3)
    Rational E;
    bool cond_E = false;   // E > 0
    bool cond_52 = false;  // p < (8*gamma + n - 4)/(n - 4)
    bool admissible = false;
};

FeasibilitySample feasibility_sample(int n, const Rational& gamma, const Rational& p);

// One sample per interior grid point of gamma in (1, 3/2) and p in
// (1, p_sobolev + 1), gamma-major row order. `workers` only partitions
// the work; the output is identical for any worker count.
std::vector<FeasibilitySample> feasibility_scan(int n, int gamma_steps, int p_steps,
                                                int workers = 1);

struct SignSample {
    Rational gamma;
    int printed_sign = 0;
    int h_sign = 0;
    bool mismatch = false;  // opposite nonzero signs
};

struct DiscrepancyReport {
    int n = 0;
    std::vector<SignSample> samples;
    IntPolynomial printed;            // sextic as printed
    IntPolynomial cleared;            // derived H
    IntPolynomial primitive_cleared;  // H divided by its content
    Rational scale_candidate;         // leading(H) / leading(printed)
    std::vector<Rational> scaled_deltas;  // H_k - scale * printed_k
    bool any_sign_mismatch = false;
    std::string verdict;  // consistent | scaled-consistent | inconsistent
};

// Audits the claim that the printed sextic is the cleared form of h.
DiscrepancyReport discrepancy_report(int n, int sample_count);

}  // namespace bistab
