#pragma once

// Covariant differentiation (Leibniz rule) and reordering of derivative
// indices with the curvature terms generated by each swap.
//
// Conventions: T_{;ab} = D_b D_a T, and
//   [D_c, D_d] T_{..a..} = R_{a b c d} T_{..b..}   on each spacetime index,
//   [D_c, D_d] psi       = F_{c d} psi              on bundle sections.

#include <functional>
#include <vector>

#include "hk/tensor.hpp"

namespace hk {

// D_a acting on every factor in turn. The metric is covariantly constant.
void differentiate(const Monomial& m, Label a, const DimPoly& c, Polynomial& out);
Polynomial differentiate(const Polynomial& p, Label a);
// Successive derivatives, labels[0] applied first.
Polynomial differentiate(const Polynomial& p, const std::vector<Label>& labels);

struct FactorTerm {
    Rational c;
    std::vector<Factor> f;
};

// f with derivative positions k and k+1 exchanged, as
//   f = f_swapped + sum of returned terms.
// Each term replaces f by a product of factors (order matters for internal
// heads). `fresh` is advanced past any new dummy labels.
std::vector<FactorTerm> swap_correction(const Factor& f, int k, Label& fresh);

struct Reordered {
    Monomial m;       // not canonicalized
    DimPoly c;
    Polynomial rest;  // curvature corrections, canonical
};

// Sorts the derivative labels of factor `fi` ascending, collecting the
// commutator corrections.
Reordered sort_derivatives(const Monomial& m, std::size_t fi, const DimPoly& c);

// Swap once at derivative position k of factor fi: returns m with the swap
// applied (uncanonicalized) plus the corrections.
Reordered swap_once(const Monomial& m, std::size_t fi, int k, const DimPoly& c);

}  // namespace hk
