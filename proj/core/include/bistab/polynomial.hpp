#pragma once

// Dense integer-coefficient polynomials. Degrees stay small here (the
// appendix audit tops out at degree 6 plus guard terms), so a plain
// coefficient vector with exact arithmetic is the right representation.

#include "bistab/rational.hpp"

#include <vector>

namespace bistab {

class IntPolynomial {
public:
    IntPolynomial() = default;
    // coeffs[k] multiplies x^k; trailing zeros are stripped.
    explicit IntPolynomial(std::vector<BigInt> coeffs);

    static IntPolynomial zero() { return IntPolynomial(); }
    static IntPolynomial constant(BigInt c);
    // c * x^k
    static IntPolynomial monomial(BigInt c, unsigned k);

    bool is_zero() const { return coeffs_.empty(); }
    // degree of the zero polynomial is reported as -1
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<BigInt>& coefficients() const { return coeffs_; }
    const BigInt& coefficient(unsigned k) const;
    const BigInt& leading() const;

    Rational eval(const Rational& x) const;
    BigInt eval_int(const BigInt& x) const;
    int sign_at(const Rational& x) const { return sign(eval(x)); }

    IntPolynomial derivative() const;

    // gcd of |coefficients| (0 for the zero polynomial)
    BigInt content() const;
    // polynomial divided by its content; zero stays zero
    IntPolynomial primitive() const;

    IntPolynomial operator-() const;
    IntPolynomial operator+(const IntPolynomial& o) const;
    IntPolynomial operator-(const IntPolynomial& o) const;
    IntPolynomial operator*(const IntPolynomial& o) const;
    IntPolynomial operator*(const BigInt& c) const;
    bool operator==(const IntPolynomial& o) const { return coeffs_ == o.coeffs_; }

    std::string str() const;

private:
    std::vector<BigInt> coeffs_;
    void normalize();
};

}  // namespace bistab
