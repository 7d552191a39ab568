#pragma once

// Abstract-index tensor monomials over a Riemannian manifold with a bundle
// connection. Free labels are small integers, dummies start at kFirstDummy.
// The special label kU stands for contraction with an auxiliary constant
// vector u and may occur any number of times.

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hk/dim.hpp"

namespace hk {

using Label = std::int16_t;
constexpr Label kU = 90;
constexpr Label kFirstDummy = 100;
inline bool is_dummy(Label l) { return l >= kFirstDummy; }

// C-number heads come first in canonical order; internal (endomorphism
// valued) heads keep their relative order and follow the c-numbers.
enum class Head : std::uint8_t {
    Scalar,    // Ricci scalar R
    Ricci,     // R_ab
    Riemann,   // R_abcd
    Sigma,     // world function sigma
    Metric,    // g_ab
    Field,     // test field Phi, rank = order (0 or 1)
    Strength,  // bundle curvature F_ab
    Endo,      // potential E
    Coeff,     // heat kernel coefficient A_n, n = order
};

inline bool is_internal(Head h) { return h >= Head::Strength; }
int own_rank(Head h, int order);

constexpr int kMaxSlots = 14;

struct Factor {
    Head head = Head::Scalar;
    std::int8_t order = 0;
    std::uint8_t size = 0;  // own + derivative indices
    std::array<Label, kMaxSlots> idx{};

    Factor() = default;
    Factor(Head h, int ord, std::initializer_list<Label> own_then_derivs);
    static Factor make(Head h, int ord, const std::vector<Label>& own, const std::vector<Label>& derivs);

    int n_own() const { return own_rank(head, order); }
    int n_deriv() const { return size - n_own(); }
    Label deriv(int k) const { return idx[n_own() + k]; }
    void push(Label l);

    friend bool operator==(const Factor& a, const Factor& b);
    friend bool operator<(const Factor& a, const Factor& b);
};

struct Monomial {
    std::vector<Factor> f;
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.f == b.f; }
    friend bool operator<(const Monomial& a, const Monomial& b) { return a.f < b.f; }
    Label max_label() const;
    // A label larger than every label present, for fresh dummies.
    Label fresh() const;
    int count(Head h) const;
    // Curvature weight: Riemann-type and F count 1, E counts 1, each
    // derivative counts 1/2 (returned doubled so it stays integral).
    int weight2() const;
};

// Brings a monomial to canonical form. Returns false if it vanishes
// identically; otherwise multiplies `coef` by the sign and powers of d picked
// up from symmetries and metric traces.
bool canonicalize(Monomial& m, DimPoly& coef);

// Sparse linear combination of canonical monomials.
class Polynomial {
public:
    using Map = std::map<Monomial, DimPoly>;
    Polynomial() = default;
    static Polynomial constant(const DimPoly& c);
    static Polynomial of(const Monomial& m, const DimPoly& c = DimPoly(1));

    void add(Monomial m, DimPoly c);        // canonicalizes
    void add_canonical(const Monomial& m, const DimPoly& c);
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const DimPoly& c);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const DimPoly& c) { return a *= c; }
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.t_ == b.t_; }

    bool is_zero() const { return t_.empty(); }
    std::size_t size() const { return t_.size(); }
    const Map& terms() const { return t_; }
    Map::const_iterator begin() const { return t_.begin(); }
    Map::const_iterator end() const { return t_.end(); }

    // Keep only terms whose weight2 <= max_w2.
    Polynomial truncated(int max_w2) const;
    // Replace d by a number.
    Polynomial at_dimension(const Rational& d) const;

    std::string str() const;
    static Polynomial parse(const std::string& text);

private:
    Map t_;
};

// Product of two polynomials; internal factors of `a` precede those of `b`.
Polynomial multiply(const Polynomial& a, const Polynomial& b);
Monomial concat(const Monomial& a, const Monomial& b);

// Relabel every occurrence of the given labels simultaneously. Dummies of the
// monomial that collide with targets are renamed first.
Monomial relabel(const Monomial& m, const std::map<Label, Label>& map);
Polynomial relabel(const Polynomial& p, const std::map<Label, Label>& map);

// Checks index balance: free labels (other than u) at most once, dummies
// exactly twice, and every term carries the same free labels.
void validate(const Polynomial& p);
std::vector<Label> free_labels(const Monomial& m);

// Index naming for printing and parsing.
std::string label_name(Label l);
Label free_label(const std::string& name);  // throws if not a known free name
std::string factor_str(const Factor& f);
std::string monomial_str(const Monomial& m);

}  // namespace hk
