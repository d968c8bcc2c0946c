#pragma once

// Sturm-chain root counting over exact rationals, plus generic bisection
// refinement for any sign-evaluable function.

#include "bistab/polynomial.hpp"
#include "bistab/rational.hpp"

#include <functional>
#include <stdexcept>

namespace bistab {

// Thrown when an interval endpoint still evaluates to zero after the
// documented nudge schedule ((high-low)/2^16 per attempt, 8 attempts).
struct EndpointRootError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact number of distinct real roots of `poly` in the open interval
// (low, high). Endpoints that are roots are nudged inward as above.
int sturm_count(const IntPolynomial& poly, Rational low, Rational high);

struct RootBracket {
    Rational low;
    Rational high;
    int sign_low = 0;   // sign of the bracketed function at `low`
    int sign_high = 0;  // and at `high`; the two must differ

    Rational width() const { return high - low; }
    Rational midpoint() const { return (low + high) / 2; }
};

using SignFn = std::function<int(const Rational&)>;

// Builds a bracket by evaluating `f` at the endpoints. Throws
// std::invalid_argument unless the signs differ.
RootBracket make_bracket(const SignFn& f, const Rational& low, const Rational& high);

// Plain bisection: halves the bracket until width <= tol. The result is
// contained in the input bracket and still straddles a sign change. An
// exact zero at a midpoint is resolved by shrinking symmetric collars
// around it until the endpoint signs differ.
RootBracket isolate_root(const SignFn& f, RootBracket bracket, const Rational& tol);

}  // namespace bistab
