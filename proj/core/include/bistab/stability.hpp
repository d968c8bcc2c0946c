#pragma once

// The explicit homogeneous solution u_s = L r^{-alpha} of Lap^2 u = u^p,
// its Hardy-Rellich stability comparison, and the Rayleigh-quotient
// machinery used to exhibit concrete unstable directions.

#include "bistab/quadrature.hpp"
#include "bistab/radial.hpp"
#include "bistab/rational.hpp"
#include "bistab/sturm.hpp"

#include <optional>
#include <vector>

namespace bistab {

struct SingularSolution {
    int n = 0;
    Rational p;
    Rational alpha;  // 4/(p-1), so alpha*(p-1) = 4 exactly
    Rational Q;      // alpha(alpha+2)(n-2-alpha)(n-4-alpha) = L^{p-1}
    double L = 0;    // Q^{1/(p-1)}
    double r_lo = 0, r_hi = 0;
    double max_residual = 0;  // construction self-check

    Profile profile() const;
};

// Requires p > n/(n-4) (equivalently alpha < n-4, which makes Q > 0).
// Construction verifies |Lap^2 u - u^p| / u^p <= 1e-10 at 32 log-spaced
// radii and throws if the check fails.
SingularSolution singular_solution(int n, const Rational& p, double r_lo = 1e-7,
                                   double r_hi = 1e7);

// n^2 (n-4)^2 / 16
Rational hardy_rellich_constant(int n);

struct StabilityVerdict {
    int n = 0;
    Rational p;
    Rational pQ;
    Rational hr;
    bool stable = false;  // pQ <= hr
    Rational margin;      // (hr - pQ)/hr
    std::optional<double> rayleigh_min;
};

StabilityVerdict singular_stability(int n, const Rational& p);

// Exact integer form of the p -> infinity comparison: the tail limit of
// p*Q is 8(n-2)(n-4), so a threshold exists iff 128(n-2) <= n^2(n-4).
bool jl_tail_exists(int n);

// Smallest p at which p*Q(alpha(p)) drops below the Hardy-Rellich
// constant for good, i.e. the crossing on the decreasing tail of p*Q.
// (p*Q also vanishes as p -> n/(n-4)+, so the literal smallest p with
// p*Q <= hr sits at the lower endpoint; the stability threshold of
// interest is the tail crossing.) Absent when the tail limit exceeds hr.
std::optional<RootBracket> jl_threshold(int n, const Rational& tol);

// ratio int |Lap phi|^2 r^{n-1} dr / int u^{p-1} phi^2 r^{n-1} dr,
// compared against p: the stability form is >= 0 iff quotient >= p.
// u^{p-1} is evaluated as Q r^{-4} (exact for the homogeneous solution).
// phi must be supported inside [u.r_lo, u.r_hi]; integration runs in
// log-radius to resolve annulus test functions.
double rayleigh_quotient(const SingularSolution& u, const Profile& phi,
                         const QuadratureSpec& spec = {});

struct RayleighScanRow {
    double T = 0;
    double s = 0;
    double quotient = 0;
};

struct RayleighScanResult {
    double min_quotient = 0;
    double best_T = 0;
    double best_s = 0;
    int below_p_count = 0;  // members with quotient < p
    std::vector<std::pair<double, double>> per_T_min;
    std::vector<RayleighScanRow> rows;  // T-major, s ascending
};

// Frozen witness family phi_{s,T} = r^{-(n-4)/2 + s} bump(log(r)/T) with
// s on a uniform grid over [-1/2, 1/2] and T in Ts. `workers` only
// partitions the work.
RayleighScanResult rayleigh_scan(const SingularSolution& u, const QuadratureSpec& spec = {},
                                 int offsets = 65, const std::vector<double>& Ts = {4, 8, 16},
                                 int workers = 1);

}  // namespace bistab
