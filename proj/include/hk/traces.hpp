#pragma once

// Coincidence limits of derivatives of the heat kernel and traced heat
// kernel expansions on the scalar, vector and symmetric rank-2 tensor bundles.
//
// H(x, y; u) = (4 pi u)^{-d/2} exp(-sigma/(2u)) sum_n u^n A_n(x, y). The
// series below drop the (4 pi u)^{-d/2} prefactor and map powers of u to
// coefficients.

#include <map>
#include <vector>

#include "hk/basis.hpp"
#include "hk/dewitt.hpp"

namespace hk {

using USeries = std::map<int, Polynomial>;

void add_series(USeries& a, const USeries& b);

enum class Bundle { Scalar, Vector, SymTensor };

DimPoly fiber_dimension(Bundle b);

// Internal trace with E = 0 and F acting as the bundle curvature:
// (F_{cd})_{ab} = R_{abcd} on vectors, and on symmetric tensors the
// Leibniz action on both indices.
Polynomial bundle_trace(const Polynomial& p, Bundle b);

// Matrix element (row, col) of an internal polynomial on the vector bundle,
// with E = 0. Monomials with E are dropped.
Polynomial vector_matrix_element(const Polynomial& p, Label row, Label col);

class HFunctions {
public:
    // Terms up to curvature weight max_weight (R counts 1, D counts 1/2).
    explicit HFunctions(const DeWittTable& table);

    int max_weight() const { return table_.max_weight(); }
    const DeWittTable& table() const { return table_; }

    // [H_{;labels}]: labels[0] is the innermost derivative, as in factor
    // notation. Internal heads F and E are kept.
    USeries ordered(const std::vector<Label>& labels) const;
    // All labels contracted with u.
    USeries symmetrized(int m) const { return ordered(std::vector<Label>(m, kU)); }

    // Vector bundle matrix elements [H_{row col; d_1 ... d_k}] for a section
    // index `row` at x and `col` at y, with placeholders row = 0,
    // d_i = i, col = k + 1. Terms of doubled weight above max_w2 (default:
    // the table's) are dropped.
    const USeries& vector_entry(int k, int max_w2 = -1) const;
    // Scalar bundle [H_{;d_1 ... d_k}] with placeholders d_i = i - 1.
    const USeries& scalar_entry(int k, int max_w2 = -1) const;

private:
    using Key = std::pair<int, int>;
    int budget(int max_w2) const;
    const USeries& placeholder_entry(int k, int max_w2) const;

    const DeWittTable& table_;
    mutable std::map<Key, USeries> raw_;
    mutable std::map<Key, USeries> vec_;
    mutable std::map<Key, USeries> scal_;
};

// Traced heat kernel coefficients: Tr e^{-s Delta} = (4 pi s)^{-d/2}
// sum_n s^n int tr A_n, with the result for order n stored at R-order n.
CoeffTable bundle_heat_coefficients(const HFunctions& h, Bundle b, BasisReducer& reducer);

}  // namespace hk
