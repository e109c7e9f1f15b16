#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace jamming {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Exact value of a finite double (every double is a dyadic rational).
Rational to_rational(double x);

// "3", "-0.25", "1e-3", "3/10". Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

// Dense polynomial in t with rational coefficients, coefficient i of t^i.
// Trailing zeros are trimmed so equality is structural.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coeffs);
    static Polynomial constant(const Rational& c);

    // sum_j weights[j] C(n, j) t^j (1-t)^{n-j}, n = weights.size() - 1.
    static Polynomial from_bernstein(const std::vector<Rational>& weights);

    const std::vector<Rational>& coefficients() const { return coeffs_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return coeffs_.empty(); }

    Rational operator()(const Rational& t) const;
    double operator()(double t) const;
    Polynomial derivative() const;

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Rational& c);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

private:
    void trim();
    std::vector<Rational> coeffs_;
};

BigInt binomial(unsigned n, unsigned k);

}  // namespace jamming
