#pragma once

// Exact coefficients that depend polynomially or rationally on the spacetime
// dimension d.

#include <string>
#include <vector>

#include "hk/rational.hpp"

namespace hk {

class DimPoly {
public:
    DimPoly() = default;
    DimPoly(Rational c);  // NOLINT implicit constant
    DimPoly(std::int64_t c) : DimPoly(Rational(c)) {}  // NOLINT
    static DimPoly d() { return monomial(Rational(1), 1); }
    static DimPoly monomial(const Rational& c, int power);
    static DimPoly from_coeffs(std::vector<Rational> c);

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    Rational constant() const { return c_.empty() ? Rational(0) : c_[0]; }
    Rational coeff(int k) const { return k < static_cast<int>(c_.size()) ? c_[k] : Rational(0); }
    Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }
    const std::vector<Rational>& coeffs() const { return c_; }

    Rational eval(const Rational& x) const;
    long double eval(long double x) const;
    DimPoly derivative() const;

    DimPoly operator-() const;
    DimPoly& operator+=(const DimPoly& o);
    DimPoly& operator-=(const DimPoly& o);
    DimPoly& operator*=(const DimPoly& o);
    DimPoly& operator*=(const Rational& r);
    friend DimPoly operator+(DimPoly a, const DimPoly& b) { return a += b; }
    friend DimPoly operator-(DimPoly a, const DimPoly& b) { return a -= b; }
    friend DimPoly operator*(DimPoly a, const DimPoly& b) { return a *= b; }
    friend bool operator==(const DimPoly& a, const DimPoly& b) { return a.c_ == b.c_; }

    // Euclidean division over Q.
    static void divmod(const DimPoly& a, const DimPoly& b, DimPoly& q, DimPoly& r);
    static DimPoly gcd(DimPoly a, DimPoly b);

    // Text like "d^2-3*d+1/2".
    std::string str() const;
    static DimPoly parse(const std::string& s);

private:
    void trim();
    std::vector<Rational> c_;
};

class DimRational {
public:
    DimRational() : den_(1) {}
    DimRational(DimPoly n) : num_(std::move(n)), den_(1) {}  // NOLINT
    DimRational(Rational r) : num_(r), den_(1) {}            // NOLINT
    DimRational(std::int64_t r) : num_(r), den_(1) {}        // NOLINT
    DimRational(DimPoly n, DimPoly d);

    const DimPoly& num() const { return num_; }
    const DimPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }

    // Throws std::domain_error at a pole.
    Rational eval(const Rational& x) const;
    long double eval(long double x) const;
    DimRational derivative() const;
    // Limit d -> infinity; throws if divergent.
    Rational limit_infinity() const;

    DimRational operator-() const;
    DimRational& operator+=(const DimRational& o);
    DimRational& operator-=(const DimRational& o);
    DimRational& operator*=(const DimRational& o);
    DimRational& operator/=(const DimRational& o);
    friend DimRational operator+(DimRational a, const DimRational& b) { return a += b; }
    friend DimRational operator-(DimRational a, const DimRational& b) { return a -= b; }
    friend DimRational operator*(DimRational a, const DimRational& b) { return a *= b; }
    friend DimRational operator/(DimRational a, const DimRational& b) { return a /= b; }
    friend bool operator==(const DimRational& a, const DimRational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    // Integer-coefficient numerator and denominator, e.g. "(d^2-d-6)/(6*d)".
    std::string str() const;
    // Pair of integer coefficient lists (ascending powers), for JSON output.
    void integer_form(std::vector<Rational>& num, std::vector<Rational>& den) const;
    static DimRational parse(const std::string& s);

private:
    void normalize();
    DimPoly num_;
    DimPoly den_;
};

// Arithmetic expression in d with integers, + - * / ^ and parentheses,
// e.g. "-(d^2-8)/(d+4) + 1/30".
DimRational parse_dim_expression(const std::string& text);

}  // namespace hk
