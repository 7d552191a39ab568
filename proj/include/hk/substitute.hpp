#pragma once

// Replacing factors by tabulated polynomials. A table entry for a factor with
// k index slots (own indices first, then derivatives) is written with
// placeholder free labels 0..k-1 standing for those slots in order.

#include <functional>

#include "hk/tensor.hpp"

namespace hk {

// Returns the replacement for a factor, or nullptr to leave it alone.
using Rule = std::function<const Polynomial*(const Factor&)>;

// Recursively replaces every factor matched by `rule` and adds the result,
// canonicalized, to `out`.
void expand(const Monomial& m, const DimPoly& c, const Rule& rule, Polynomial& out);
Polynomial expand(const Polynomial& p, const Rule& rule);

// Replaces factor `fi` of m by `entry` with placeholder l bound to
// targets[l] (no recursion into the replacement) and adds the result to `out`.
void replace_factor(const Monomial& m, std::size_t fi, const Polynomial& entry, const std::vector<Label>& targets,
                    const DimPoly& c, Polynomial& out);

// The entry with placeholders bound to `labels`.
Polynomial instantiate(const Polynomial& entry, const std::vector<Label>& labels);

}  // namespace hk
