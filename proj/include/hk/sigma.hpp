#pragma once

// Coincidence limits [sigma_{;a1...an}] of the world function, for every
// index order, obtained from  sigma_{;p} sigma_{;p} = 2 sigma.

#include <vector>

#include "hk/tensor.hpp"

namespace hk {

class SigmaTable {
public:
    explicit SigmaTable(int max_order = 8);

    int max_order() const { return static_cast<int>(entries_.size()) - 1; }
    // Entry with placeholder labels 0..n-1 in identity order.
    const Polynomial& entry(int n) const { return entries_.at(n); }
    // [sigma_{;labels}] for arbitrary labels (free, u, or paired dummies).
    Polynomial at(const std::vector<Label>& labels) const;
    // Entry with all indices contracted with u (fully symmetrized).
    Polynomial symmetrized(int n) const;

private:
    std::vector<Polynomial> entries_;
};

}  // namespace hk
