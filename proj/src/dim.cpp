#include "hk/dim.hpp"

#include <cctype>
#include <numeric>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace hk {

DimPoly::DimPoly(Rational c) {
    if (!c.is_zero()) c_.push_back(c);
}

DimPoly DimPoly::monomial(const Rational& c, int power) {
    DimPoly p;
    if (c.is_zero()) return p;
    p.c_.assign(power + 1, Rational(0));
    p.c_[power] = c;
    return p;
}

DimPoly DimPoly::from_coeffs(std::vector<Rational> c) {
    DimPoly p;
    p.c_ = std::move(c);
    p.trim();
    return p;
}

void DimPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Rational DimPoly::eval(const Rational& x) const {
    Rational r(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
}

long double DimPoly::eval(long double x) const {
    long double r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + it->to_long_double();
    return r;
}

DimPoly DimPoly::derivative() const {
    DimPoly p;
    for (std::size_t k = 1; k < c_.size(); ++k) p.c_.push_back(c_[k] * Rational(static_cast<std::int64_t>(k)));
    p.trim();
    return p;
}

DimPoly DimPoly::operator-() const {
    DimPoly p = *this;
    for (auto& c : p.c_) c = -c;
    return p;
}

DimPoly& DimPoly::operator+=(const DimPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
}

DimPoly& DimPoly::operator-=(const DimPoly& o) { return *this += -o; }

DimPoly& DimPoly::operator*=(const DimPoly& o) {
    if (c_.empty() || o.c_.empty()) {
        c_.clear();
        return *this;
    }
    if (o.c_.size() == 1) return *this *= o.c_[0];
    std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    c_ = std::move(r);
    trim();
    return *this;
}

DimPoly& DimPoly::operator*=(const Rational& r) {
    if (r.is_zero()) {
        c_.clear();
        return *this;
    }
    for (auto& c : c_) c *= r;
    return *this;
}

void DimPoly::divmod(const DimPoly& a, const DimPoly& b, DimPoly& q, DimPoly& r) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    q = DimPoly();
    r = a;
    while (!r.is_zero() && r.degree() >= b.degree()) {
        DimPoly t = monomial(r.leading() / b.leading(), r.degree() - b.degree());
        q += t;
        r -= t * b;
    }
}

namespace {

using BigInt = boost::multiprecision::cpp_int;
using IntPoly = std::vector<BigInt>;  // low degree first, no trailing zeros

void make_primitive(IntPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    BigInt g = 0;
    for (const BigInt& c : p) g = boost::multiprecision::gcd(g, c);
    if (g > 1)
        for (BigInt& c : p) c /= g;
    if (!p.empty() && p.back() < 0)
        for (BigInt& c : p) c = -c;
}

IntPoly to_primitive(const DimPoly& p) {
    std::int64_t l = 1;
    for (const auto& c : p.coeffs()) l = std::lcm(l, c.den());
    IntPoly out;
    for (const auto& c : p.coeffs()) out.push_back(BigInt(c.num()) * (l / c.den()));
    make_primitive(out);
    return out;
}

// Pseudo-remainder of a by b, made primitive.
IntPoly primitive_prem(IntPoly a, const IntPoly& b) {
    const std::size_t db = b.size() - 1;
    while (a.size() >= b.size()) {
        const BigInt g = boost::multiprecision::gcd(a.back(), b.back());
        const BigInt fa = b.back() / g, fb = a.back() / g;
        const std::size_t shift = a.size() - 1 - db;
        for (BigInt& c : a) c *= fa;
        for (std::size_t i = 0; i <= db; ++i) a[i + shift] -= fb * b[i];
        make_primitive(a);
    }
    return a;
}

}  // namespace

DimPoly DimPoly::gcd(DimPoly a, DimPoly b) {
    // Primitive remainder sequence over Z keeps coefficients small.
    if (a.is_zero() && b.is_zero()) return DimPoly();
    IntPoly x = to_primitive(a), y = to_primitive(b);
    if (x.size() < y.size()) std::swap(x, y);
    while (!y.empty()) {
        IntPoly r = primitive_prem(x, y);
        x = std::move(y);
        y = std::move(r);
    }
    // The gcd divides both inputs, so its monic form has small coefficients.
    std::vector<Rational> c;
    for (const BigInt& v : x) {
        const BigInt g = boost::multiprecision::gcd(v, x.back());
        const BigInt n = v / g, d = x.back() / g;
        if (boost::multiprecision::abs(n) > INT64_MAX || d > INT64_MAX) throw std::overflow_error("polynomial gcd overflow");
        c.push_back(Rational(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d)));
    }
    return from_coeffs(std::move(c));
}

std::string DimPoly::str() const {
    if (c_.empty()) return "0";
    std::string out;
    for (int k = degree(); k >= 0; --k) {
        Rational c = c_[k];
        if (c.is_zero()) continue;
        bool neg = c.sign() < 0;
        Rational a = neg ? -c : c;
        if (out.empty()) {
            if (neg) out += "-";
        } else {
            out += neg ? "-" : "+";
        }
        if (k == 0) {
            out += a.str();
            continue;
        }
        if (!a.is_one()) out += a.str() + "*";
        out += "d";
        if (k > 1) out += "^" + std::to_string(k);
    }
    return out;
}

DimPoly DimPoly::parse(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw std::invalid_argument("empty polynomial");
    DimPoly out;
    std::size_t i = 0;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            if (s[i] == '-') sign = -1;
            ++i;
        }
        std::size_t j = i;
        while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
        std::string term = s.substr(i, j - i);
        if (term.empty()) throw std::invalid_argument("bad polynomial: " + text);
        Rational coef(1);
        int power = 0;
        auto dpos = term.find('d');
        if (dpos == std::string::npos) {
            coef = Rational::parse(term);
        } else {
            std::string pre = term.substr(0, dpos);
            std::string post = term.substr(dpos + 1);
            if (!pre.empty()) {
                if (pre.back() != '*') throw std::invalid_argument("bad polynomial term: " + term);
                pre.pop_back();
                coef = Rational::parse(pre);
            }
            power = 1;
            if (!post.empty()) {
                // "^k" optionally followed by "/q"
                std::size_t p = 0;
                if (post[0] == '^') {
                    std::size_t q = 1;
                    while (q < post.size() && std::isdigit(static_cast<unsigned char>(post[q]))) ++q;
                    power = std::stoi(post.substr(1, q - 1));
                    p = q;
                }
                if (p < post.size()) {
                    if (post[p] != '/') throw std::invalid_argument("bad polynomial term: " + term);
                    coef /= Rational::parse(post.substr(p + 1));
                }
            }
        }
        out += monomial(coef * Rational(sign), power);
        i = j;
    }
    return out;
}

// ---------------------------------------------------------------------------

DimRational::DimRational(DimPoly n, DimPoly d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
    normalize();
}

namespace {

std::int64_t lcm_den(const DimPoly& p) {
    std::int64_t l = 1;
    for (const auto& c : p.coeffs()) l = std::lcm(l, c.den());
    return l;
}

std::int64_t gcd_num(const DimPoly& p) {
    std::int64_t g = 0;
    for (const auto& c : p.coeffs()) g = std::gcd(g, c.num() < 0 ? -c.num() : c.num());
    return g;
}

}  // namespace

void DimRational::normalize() {
    if (num_.is_zero()) {
        den_ = DimPoly(Rational(1));
        return;
    }
    if (!den_.is_constant()) {
        DimPoly g = DimPoly::gcd(num_, den_);
        if (g.degree() > 0) {
            DimPoly q, r;
            DimPoly::divmod(num_, g, q, r);
            num_ = q;
            DimPoly::divmod(den_, g, q, r);
            den_ = q;
        }
    }
    // Denominator primitive with integer coefficients and positive leading term.
    Rational scale = Rational(lcm_den(den_));
    DimPoly dd = den_;
    dd *= scale;
    Rational content(gcd_num(dd));
    if (dd.leading().sign() < 0) content = -content;
    scale /= content;
    den_ *= scale;
    num_ *= scale;
}

Rational DimRational::eval(const Rational& x) const {
    Rational d = den_.eval(x);
    if (d.is_zero()) throw std::domain_error("pole of rational function at d=" + x.str());
    return num_.eval(x) / d;
}

long double DimRational::eval(long double x) const { return num_.eval(x) / den_.eval(x); }

DimRational DimRational::derivative() const {
    return DimRational(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

Rational DimRational::limit_infinity() const {
    if (num_.is_zero() || num_.degree() < den_.degree()) return Rational(0);
    if (num_.degree() == den_.degree()) return num_.leading() / den_.leading();
    throw std::domain_error("divergent as d -> infinity");
}

DimRational DimRational::operator-() const {
    DimRational r = *this;
    r.num_ = -r.num_;
    return r;
}

DimRational& DimRational::operator+=(const DimRational& o) {
    if (den_ == o.den_) {
        num_ += o.num_;
    } else {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ = den_ * o.den_;
    }
    normalize();
    return *this;
}

DimRational& DimRational::operator-=(const DimRational& o) { return *this += -o; }

DimRational& DimRational::operator*=(const DimRational& o) {
    num_ *= o.num_;
    den_ *= o.den_;
    normalize();
    return *this;
}

DimRational& DimRational::operator/=(const DimRational& o) {
    if (o.num_.is_zero()) throw std::domain_error("rational function division by zero");
    num_ *= o.den_;
    den_ *= o.num_;
    normalize();
    return *this;
}

void DimRational::integer_form(std::vector<Rational>& num, std::vector<Rational>& den) const {
    Rational s(std::lcm(lcm_den(num_), lcm_den(den_)));
    DimPoly n = num_, d = den_;
    n *= s;
    d *= s;
    Rational g(std::gcd(gcd_num(n), gcd_num(d)));
    n *= Rational(1) / g;
    d *= Rational(1) / g;
    num = n.coeffs();
    den = d.coeffs();
    if (num.empty()) num.push_back(Rational(0));
}

std::string DimRational::str() const {
    if (den_.is_constant()) {
        DimPoly p = num_;
        p *= Rational(1) / den_.constant();
        return p.str();
    }
    std::vector<Rational> n, d;
    integer_form(n, d);
    DimPoly np = DimPoly::from_coeffs(n), dp = DimPoly::from_coeffs(d);
    std::string ns = np.str();
    bool simple = ns.find_first_of("+-", 1) == std::string::npos && ns.find('*') == std::string::npos;
    return (simple ? ns : "(" + ns + ")") + "/(" + dp.str() + ")";
}

DimRational DimRational::parse(const std::string& text) {
    // "(num)/(den)", "num/(den)" or a plain polynomial.
    int depth = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char ch = text[i];
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == '/' && depth == 0 && i + 1 < text.size() && text[i + 1] == '(') {
            auto strip = [](std::string s) {
                while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
                while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
                if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
                return s;
            };
            return DimRational(DimPoly::parse(strip(text.substr(0, i))), DimPoly::parse(strip(text.substr(i + 1))));
        }
    }
    std::string s = text;
    if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
    return DimRational(DimPoly::parse(s));
}

namespace {

struct ExprParser {
    const std::string& s;
    std::size_t i = 0;

    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        skip();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("bad expression '" + s + "': " + what);
    }
    DimRational sum() {
        DimRational r;
        bool first = true;
        while (true) {
            skip();
            int sign = 1;
            if (eat('-')) sign = -1;
            else if (!first && !eat('+')) break;
            DimRational t = product();
            r += sign < 0 ? -t : t;
            first = false;
        }
        return r;
    }
    DimRational product() {
        DimRational r = power();
        while (true) {
            if (eat('*')) r *= power();
            else if (eat('/')) {
                DimRational q = power();
                if (q.is_zero()) fail("division by zero");
                r /= q;
            } else {
                skip();
                // Implicit multiplication: "2d", "3(d+1)".
                if (i < s.size() && (s[i] == '(' || s[i] == 'd')) r *= power();
                else break;
            }
        }
        return r;
    }
    DimRational power() {
        DimRational b = atom();
        if (eat('^')) {
            skip();
            std::size_t start = i;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            if (start == i) fail("exponent must be a non-negative integer");
            int e = std::stoi(s.substr(start, i - start));
            DimRational r(1);
            for (int k = 0; k < e; ++k) r *= b;
            return r;
        }
        return b;
    }
    DimRational atom() {
        skip();
        if (eat('(')) {
            DimRational r = sum();
            if (!eat(')')) fail("missing ')'");
            return r;
        }
        if (eat('d')) return DimRational(DimPoly::d());
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (start == i) fail("unexpected character at position " + std::to_string(i));
        return DimRational(Rational(std::stoll(s.substr(start, i - start))));
    }
};

}  // namespace

DimRational parse_dim_expression(const std::string& text) {
    ExprParser p{text};
    DimRational r = p.sum();
    p.skip();
    if (p.i != text.size()) p.fail("trailing input");
    return r;
}

}  // namespace hk
