#include "hk/sigma.hpp"

#include <stdexcept>

#include "hk/derivatives.hpp"
#include "hk/substitute.hpp"

namespace hk {

namespace {

// Sorts the derivative indices of the (single) sigma factor with n
// derivatives, expanding lower orders through the table. Returns the
// coefficient of the identity-ordered unknown and adds everything else to
// `rest`.
DimPoly isolate(const Polynomial& p, int n, const Rule& lower, Polynomial& rest) {
    DimPoly coef;
    std::vector<std::pair<Monomial, DimPoly>> work(p.begin(), p.end());
    while (!work.empty()) {
        auto [m, c] = work.back();
        work.pop_back();
        std::size_t fi = m.f.size();
        for (std::size_t i = 0; i < m.f.size(); ++i)
            if (m.f[i].head == Head::Sigma && m.f[i].n_deriv() == n) fi = i;
        if (fi == m.f.size()) {
            rest.add(m, c);
            continue;
        }
        if (m.f.size() != 1) throw std::logic_error("unknown sigma entry multiplied by other factors");
        Reordered r = sort_derivatives(m, fi, c);
        coef += r.c;
        Polynomial low = expand(r.rest, lower);
        for (const auto& t : low) work.push_back(t);
    }
    return coef;
}

}  // namespace

SigmaTable::SigmaTable(int max_order) {
    if (max_order < 2) throw std::invalid_argument("sigma table needs order >= 2");
    entries_.resize(max_order + 1);
    entries_[2] = Polynomial::parse("g[mu nu]");
    for (int n = 3; n <= max_order; ++n) {
        // 1/2 sigma_{;p} sigma_{;p} - sigma, differentiated n times.
        Polynomial id = Polynomial::parse("(1/2) sigma[;p] sigma[;p] - sigma");
        std::vector<Label> labels;
        for (int k = 0; k < n; ++k) labels.push_back(static_cast<Label>(k));
        id = differentiate(id, labels);
        Rule lower = [&](const Factor& f) -> const Polynomial* {
            if (f.head != Head::Sigma) return nullptr;
            int k = f.n_deriv();
            if (k >= n) return nullptr;
            return &entries_[k];
        };
        Polynomial known = expand(id, lower);
        Polynomial rest;
        DimPoly c = isolate(known, n, lower, rest);
        if (c.is_zero() || !c.is_constant()) throw std::logic_error("sigma recursion is singular");
        rest *= DimPoly(Rational(-1) / c.constant());
        entries_[n] = rest;
    }
}

Polynomial SigmaTable::at(const std::vector<Label>& labels) const {
    int n = static_cast<int>(labels.size());
    if (n > max_order()) throw std::out_of_range("sigma table order exceeded");
    return instantiate(entries_[n], labels);
}

Polynomial SigmaTable::symmetrized(int n) const { return at(std::vector<Label>(n, kU)); }

}  // namespace hk
