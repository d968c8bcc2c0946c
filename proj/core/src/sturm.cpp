#include "bistab/sturm.hpp"

#include <utility>
#include <vector>

namespace bistab {

namespace {

using RatPoly = std::vector<Rational>;  // coeffs[k] multiplies x^k

void normalize(RatPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

Rational eval(const RatPoly& p, const Rational& x) {
    Rational acc(0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        acc *= x;
        acc += *it;
    }
    return acc;
}

RatPoly derivative(const RatPoly& p) {
    if (p.size() <= 1) return {};
    RatPoly d(p.size() - 1);
    for (size_t k = 1; k < p.size(); ++k) d[k - 1] = p[k] * Rational(BigInt(k));
    return d;
}

// Euclidean remainder of a by b, b nonzero.
RatPoly remainder(RatPoly a, const RatPoly& b) {
    normalize(a);
    while (a.size() >= b.size() && !a.empty()) {
        Rational factor = a.back() / b.back();
        size_t shift = a.size() - b.size();
        for (size_t k = 0; k < b.size(); ++k) a[k + shift] -= factor * b[k];
        a.pop_back();
        normalize(a);
    }
    return a;
}

std::vector<RatPoly> sturm_chain(const IntPolynomial& poly) {
    RatPoly p0(poly.coefficients().size());
    for (size_t k = 0; k < p0.size(); ++k) p0[k] = Rational(poly.coefficients()[k]);
    std::vector<RatPoly> chain;
    chain.push_back(std::move(p0));
    RatPoly p1 = derivative(chain[0]);
    normalize(p1);
    while (!p1.empty()) {
        chain.push_back(p1);
        RatPoly r = remainder(chain[chain.size() - 2], p1);
        for (auto& c : r) c = -c;
        p1 = std::move(r);
    }
    return chain;
}

int sign_variations(const std::vector<RatPoly>& chain, const Rational& x) {
    int count = 0;
    int prev = 0;
    for (const auto& p : chain) {
        int s = sign(eval(p, x));
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++count;
        prev = s;
    }
    return count;
}

// Nudge an endpoint off a root of `poly`. `dir` is +1 for the low end,
// -1 for the high end. The step is fixed from the original width.
Rational nudge_off_root(const IntPolynomial& poly, Rational x, const Rational& step, int dir) {
    for (int attempt = 0; attempt < 8; ++attempt) {
        if (poly.sign_at(x) != 0) return x;
        x += Rational(dir) * step;
    }
    if (poly.sign_at(x) != 0) return x;
    throw EndpointRootError("interval endpoint is still a root after 8 nudge attempts");
}

}  // namespace

int sturm_count(const IntPolynomial& poly, Rational low, Rational high) {
    if (poly.is_zero()) throw std::invalid_argument("sturm_count: zero polynomial");
    if (!(low < high)) throw std::invalid_argument("sturm_count: low must be < high");
    const Rational step = (high - low) / 65536;  // (high-low)/2^16
    low = nudge_off_root(poly, std::move(low), step, +1);
    high = nudge_off_root(poly, std::move(high), step, -1);
    if (!(low < high)) throw EndpointRootError("nudged endpoints collapsed the interval");
    auto chain = sturm_chain(poly);
    return sign_variations(chain, low) - sign_variations(chain, high);
}

RootBracket make_bracket(const SignFn& f, const Rational& low, const Rational& high) {
    if (!(low < high)) throw std::invalid_argument("make_bracket: low must be < high");
    RootBracket b{low, high, f(low), f(high)};
    if (b.sign_low == 0 || b.sign_high == 0 || b.sign_low == b.sign_high)
        throw std::invalid_argument("make_bracket: endpoint signs must be nonzero and differ");
    return b;
}

RootBracket isolate_root(const SignFn& f, RootBracket bracket, const Rational& tol) {
    if (tol <= 0) throw std::invalid_argument("isolate_root: tol must be positive");
    if (bracket.sign_low == 0 || bracket.sign_high == 0 || bracket.sign_low == bracket.sign_high)
        throw std::invalid_argument("isolate_root: bracket signs must be nonzero and differ");

    while (bracket.width() > tol) {
        Rational mid = bracket.midpoint();
        int s = f(mid);
        if (s == 0) {
            // mid is an exact root; close a collar around it
            Rational collar = tol / 4;
            for (int attempt = 0; attempt < 8; ++attempt) {
                Rational lo = mid - collar;
                Rational hi = mid + collar;
                if (lo < bracket.low) lo = bracket.low;
                if (hi > bracket.high) hi = bracket.high;
                int slo = f(lo);
                int shi = f(hi);
                if (slo != 0 && shi != 0 && slo != shi) return RootBracket{lo, hi, slo, shi};
                collar /= 2;
            }
            throw std::runtime_error("isolate_root: could not close a sign-changing collar");
        }
        if (s == bracket.sign_low) bracket.low = std::move(mid);
        else bracket.high = std::move(mid);
    }
    return bracket;
}

}  // namespace bistab
