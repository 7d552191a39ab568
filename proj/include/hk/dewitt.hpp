#pragma once

// Coincidence limits [A_{n;a1...am}] of the heat kernel coefficients of
// Delta = -D^a D_a + E, from the recursion
//   (n - d/2 + sigma_{;p p}/2) A_n + sigma_{;p} A_{n;p} - A_{n-1;p p} + E A_{n-1} = 0
// with A_0 = 1 on the diagonal. Every entry is stored for the identity index
// order; other orders follow by substituting labels.

#include <map>
#include <utility>
#include <vector>

#include "hk/sigma.hpp"
#include "hk/tensor.hpp"

namespace hk {

class DeWittTable {
public:
    // All entries with n + m/2 <= max_weight.
    explicit DeWittTable(int max_weight = 3);

    int max_weight() const { return max_weight_; }
    bool has(int n, int m) const { return table_.count({n, m}) != 0; }
    const Polynomial& entry(int n, int m) const;
    Polynomial at(int n, const std::vector<Label>& labels) const;
    Polynomial symmetrized(int n, int m) const;
    const SigmaTable& sigma() const { return sigma_; }

private:
    int max_weight_;
    SigmaTable sigma_;
    std::map<std::pair<int, int>, Polynomial> table_;
};

}  // namespace hk
