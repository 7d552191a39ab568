#pragma once

// Nonlocal operators on scalar and vector fields built from covariant
// derivatives, curvature and inverse powers of Delta = -D^a D_a, in the
// normal-ordered form
//   X = sum_m L_m Delta^{-m},
// where L_m is local: a polynomial linear in the test field Phi (rank 0 or
// 1, derivatives in application order). Delta^{-m} acts on the input field;
// negative m are positive powers. For a vector-valued output the free index
// is label 0. Terms whose coefficient weight exceeds the budget are dropped,
// which is exact for traces truncated at that curvature order since weights
// never decrease under composition.

#include <map>

#include "hk/basis.hpp"
#include "hk/traces.hpp"

namespace hk {

struct Op {
    int in_rank = 0;
    int out_rank = 0;
    std::map<int, Polynomial> terms;

    bool is_zero() const { return terms.empty(); }
    std::size_t size() const;
};

// (4 pi s)^{-d/2} sum over basis elements of order o of s^{o - offset} c.
struct HeatSeries {
    int offset = 0;
    CoeffTable c{BasisKind::General};
};

class OpAlgebra {
public:
    // Keeps terms of coefficient weight <= max_weight.
    explicit OpAlgebra(const HFunctions& h);

    int max_weight() const { return h_.max_weight(); }
    const HFunctions& h_functions() const { return h_; }

    Op identity(int rank) const;
    Op local(const Polynomial& l, int in_rank, int out_rank) const;
    Op inverse_laplacian(int rank, int power = 1) const;

    Op add(const Op& a, const Op& b) const;
    Op scale(const Op& a, const DimPoly& c) const;
    Op compose(const Op& a, const Op& b) const;
    Op compose(const std::vector<const Op*>& ops) const;
    // [X, Delta] and [Delta, X].
    Op commutator(const Op& a) const;
    Op delta_commutator(const Op& a) const;

    // [L, Delta] for a local L, with the leading fourth-order parts cancelled
    // exactly.
    Polynomial local_commutator(const Polynomial& l) const;

    // Moves contracted derivative pairs on Phi inside and replaces them by
    // Delta; drops overweight terms.
    Op normalize(const Op& a) const;

    // Tr[X e^{-s Delta}] for X acting on a rank-1 (or rank-0) bundle.
    HeatSeries trace(const Op& a, BasisReducer& reducer) const;

private:
    Polynomial compose_local(const Polynomial& l1, int mid_rank, const Polynomial& l2) const;

    const HFunctions& h_;
};

// Gamma(d/2 - j - m) / Gamma(d/2 - j).
DimRational gamma_ratio(int j, int m);

// Locates the test field in a monomial; throws if absent.
std::size_t field_index(const Monomial& m);

}  // namespace hk
