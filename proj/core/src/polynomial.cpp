#include "bistab/polynomial.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <sstream>
#include <stdexcept>
#include <utility>

namespace bistab {

namespace {
const BigInt kZero(0);
}

IntPolynomial::IntPolynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) {
    normalize();
}

void IntPolynomial::normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

IntPolynomial IntPolynomial::constant(BigInt c) {
    return IntPolynomial(std::vector<BigInt>{std::move(c)});
}

IntPolynomial IntPolynomial::monomial(BigInt c, unsigned k) {
    std::vector<BigInt> v(k + 1, kZero);
    v[k] = std::move(c);
    return IntPolynomial(std::move(v));
}

const BigInt& IntPolynomial::coefficient(unsigned k) const {
    if (k >= coeffs_.size()) return kZero;
    return coeffs_[k];
}

const BigInt& IntPolynomial::leading() const {
    if (coeffs_.empty()) return kZero;
    return coeffs_.back();
}

Rational IntPolynomial::eval(const Rational& x) const {
    // Horner
    Rational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc *= x;
        acc += Rational(*it);
    }
    return acc;
}

BigInt IntPolynomial::eval_int(const BigInt& x) const {
    BigInt acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc *= x;
        acc += *it;
    }
    return acc;
}

IntPolynomial IntPolynomial::derivative() const {
    if (coeffs_.size() <= 1) return IntPolynomial();
    std::vector<BigInt> d(coeffs_.size() - 1);
    for (size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * BigInt(k);
    return IntPolynomial(std::move(d));
}

BigInt IntPolynomial::content() const {
    BigInt g(0);
    for (const auto& c : coeffs_) {
        g = boost::multiprecision::gcd(g, c);
        if (g == 1) break;
    }
    return g < 0 ? BigInt(-g) : g;
}

IntPolynomial IntPolynomial::primitive() const {
    BigInt g = content();
    if (g == 0 || g == 1) return *this;
    std::vector<BigInt> v(coeffs_.size());
    for (size_t k = 0; k < coeffs_.size(); ++k) v[k] = coeffs_[k] / g;
    return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::operator-() const {
    std::vector<BigInt> v(coeffs_.size());
    for (size_t k = 0; k < coeffs_.size(); ++k) v[k] = -coeffs_[k];
    return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::operator+(const IntPolynomial& o) const {
    std::vector<BigInt> v(std::max(coeffs_.size(), o.coeffs_.size()), kZero);
    for (size_t k = 0; k < coeffs_.size(); ++k) v[k] += coeffs_[k];
    for (size_t k = 0; k < o.coeffs_.size(); ++k) v[k] += o.coeffs_[k];
    return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::operator-(const IntPolynomial& o) const {
    return *this + (-o);
}

IntPolynomial IntPolynomial::operator*(const IntPolynomial& o) const {
    if (is_zero() || o.is_zero()) return IntPolynomial();
    std::vector<BigInt> v(coeffs_.size() + o.coeffs_.size() - 1, kZero);
    for (size_t i = 0; i < coeffs_.size(); ++i)
        for (size_t j = 0; j < o.coeffs_.size(); ++j) v[i + j] += coeffs_[i] * o.coeffs_[j];
    return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::operator*(const BigInt& c) const {
    std::vector<BigInt> v(coeffs_.size());
    for (size_t k = 0; k < coeffs_.size(); ++k) v[k] = coeffs_[k] * c;
    return IntPolynomial(std::move(v));
}

std::string IntPolynomial::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const BigInt& c = coefficient(static_cast<unsigned>(k));
        if (c == 0) continue;
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        BigInt a = c < 0 ? BigInt(-c) : c;
        if (a != 1 || k == 0) os << a.str();
        if (k > 0) os << "x";
        if (k > 1) os << "^" << k;
        first = false;
    }
    return os.str();
}

Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        BigInt n(text.substr(0, slash));
        BigInt d(text.substr(slash + 1));
        if (d == 0) throw std::domain_error("rational with zero denominator: " + text);
        return Rational(n, d);
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(BigInt(text));
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    size_t frac_len = text.size() - dot - 1;
    BigInt n(digits);
    BigInt d(1);
    for (size_t i = 0; i < frac_len; ++i) d *= 10;
    return Rational(n, d);
}

}  // namespace bistab
