#pragma once

// Linear identities among curvature monomials: Bianchi identities, derivative
// commutation and (optionally) integration by parts. For every monomial we
// generate the elementary relations it takes part in, close over all
// monomials that show up, and keep an exact echelon form of the relation
// space. A polynomial's normal form is its remainder after elimination;
// preferred monomials are eliminated last, so a complete set of them
// (a basis) is what remains.

#include <map>
#include <unordered_map>
#include <vector>

#include "hk/tensor.hpp"

namespace hk {

enum class IdentityMode { Pointwise, Integrated };

// Elementary relations of one canonical monomial, each a polynomial equal to
// zero.
std::vector<Polynomial> elementary_relations(const Monomial& m, IdentityMode mode);

class IdentityReducer {
public:
    explicit IdentityReducer(IdentityMode mode, const std::vector<Monomial>& preferred = {});

    Polynomial normal_form(const Polynomial& p);
    bool equivalent(const Polynomial& a, const Polynomial& b) { return normal_form(a - b).is_zero(); }

    IdentityMode mode() const { return mode_; }
    std::size_t monomial_count() const { return mono_.size(); }
    std::size_t rank() const { return rows_.size(); }

private:
    using Row = std::vector<std::pair<int, Rational>>;  // highest priority first

    struct Cmp {
        const IdentityReducer* self;
        bool operator()(int a, int b) const { return self->higher(a, b); }
    };

    int column(const Monomial& m);
    bool higher(int a, int b) const;
    void close(const Monomial& m);
    void add_relation(const Polynomial& rel);
    template <class T>
    void reduce(std::map<int, T, Cmp>& v) const;

    IdentityMode mode_;
    std::map<Monomial, int> col_;
    std::vector<Monomial> mono_;
    std::vector<char> preferred_;
    std::vector<char> closed_;
    std::vector<Row> rows_;
    std::unordered_map<int, int> pivot_;  // column -> row
};

}  // namespace hk
