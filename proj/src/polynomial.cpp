#include "jamming/polynomial.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace jamming {

Rational to_rational(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("to_rational: non-finite value");
    if (x == 0.0) return Rational(0);
    int exp = 0;
    const double mant = std::frexp(x, &exp);  // x = mant * 2^exp, 0.5 <= |mant| < 1
    const auto scaled = static_cast<long long>(std::ldexp(mant, 53));
    exp -= 53;
    Rational q(scaled);
    if (exp > 0) q *= Rational(BigInt(1) << exp);
    else if (exp < 0) q /= Rational(BigInt(1) << -exp);
    return q;
}

namespace {

BigInt parse_integer(std::string_view s, std::string_view whole) {
    if (s.empty()) throw std::invalid_argument("bad rational '" + std::string(whole) + "'");
    BigInt v = 0;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw std::invalid_argument("bad rational '" + std::string(whole) + "'");
        v = v * 10 + (c - '0');
    }
    return v;
}

BigInt pow10(int e) {
    BigInt p = 1;
    for (int i = 0; i < e; ++i) p *= 10;
    return p;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    Rational q;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        const BigInt den = parse_integer(s.substr(slash + 1), text);
        if (den == 0) throw std::invalid_argument("rational with zero denominator");
        q = Rational(parse_integer(s.substr(0, slash), text), den);
    } else {
        int exponent = 0;
        if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
            auto es = s.substr(e + 1);
            bool eneg = false;
            if (!es.empty() && (es.front() == '-' || es.front() == '+')) {
                eneg = es.front() == '-';
                es.remove_prefix(1);
            }
            if (es.size() > 6) throw std::invalid_argument("exponent too large in '" + std::string(text) + "'");
            exponent = static_cast<int>(parse_integer(es, text));
            if (eneg) exponent = -exponent;
            s = s.substr(0, e);
        }
        std::string digits;
        int frac_digits = 0;
        if (auto dot = s.find('.'); dot != std::string_view::npos) {
            digits = std::string(s.substr(0, dot)) + std::string(s.substr(dot + 1));
            frac_digits = static_cast<int>(s.size() - dot - 1);
            if (digits.empty()) throw std::invalid_argument("bad rational '" + std::string(text) + "'");
        } else {
            digits = std::string(s);
        }
        const BigInt mant = parse_integer(digits, text);
        const int shift = exponent - frac_digits;
        q = shift >= 0 ? Rational(mant * pow10(shift)) : Rational(mant, pow10(-shift));
    }
    return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) { return q.str(); }

// ---------------------------------------------------------------------------

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::constant(const Rational& c) { return Polynomial({c}); }

void Polynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigInt binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    BigInt r = 1;
    for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

Polynomial Polynomial::from_bernstein(const std::vector<Rational>& weights) {
    if (weights.empty()) return {};
    const unsigned n = static_cast<unsigned>(weights.size() - 1);
    std::vector<Rational> c(n + 1);
    for (unsigned j = 0; j <= n; ++j) {
        if (weights[j] == 0) continue;
        const Rational w = weights[j] * Rational(binomial(n, j));
        for (unsigned i = 0; i + j <= n; ++i) {
            Rational term = w * Rational(binomial(n - j, i));
            if (i % 2 == 1) term = -term;
            c[i + j] += term;
        }
    }
    return Polynomial(std::move(c));
}

Rational Polynomial::operator()(const Rational& t) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
    return acc;
}

double Polynomial::operator()(double t) const {
    return (*this)(to_rational(t)).convert_to<double>();
}

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Rational> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<long long>(i);
    return Polynomial(std::move(d));
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
    for (auto& x : coeffs_) x *= c;
    trim();
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(c));
}

}  // namespace jamming
