#include "hk/derivatives.hpp"

#include <stdexcept>

namespace hk {

void differentiate(const Monomial& m, Label a, const DimPoly& c, Polynomial& out) {
    for (std::size_t i = 0; i < m.f.size(); ++i) {
        if (m.f[i].head == Head::Metric) continue;
        Monomial t = m;
        t.f[i].push(a);
        out.add(std::move(t), c);
    }
}

Polynomial differentiate(const Polynomial& p, Label a) {
    Polynomial out;
    for (const auto& [m, c] : p) differentiate(m, a, c, out);
    return out;
}

Polynomial differentiate(const Polynomial& p, const std::vector<Label>& labels) {
    Polynomial r = p;
    for (Label a : labels) r = differentiate(r, a);
    return r;
}

namespace {

using Product = std::vector<Factor>;

bool acts_on_bundle(Head h) { return h == Head::Coeff || h == Head::Endo || h == Head::Strength; }

}  // namespace

std::vector<FactorTerm> swap_correction(const Factor& f, int k, Label& fresh) {
    const int no = f.n_own();
    const int nd = f.n_deriv();
    if (k < 0 || k + 1 >= nd) throw std::out_of_range("swap position outside derivative list");
    const Label x = f.idx[no + k];
    const Label y = f.idx[no + k + 1];
    Factor base = f;
    base.size = static_cast<std::uint8_t>(no + k);  // X = f with derivatives before position k

    // [D_y, D_x] X
    std::vector<std::pair<Rational, Product>> terms;
    for (int s = 0; s < base.size; ++s) {
        Label b = fresh++;
        Factor r(Head::Riemann, 0, {base.idx[s], b, y, x});
        Factor xb = base;
        xb.idx[s] = b;
        terms.push_back({Rational(1), {r, xb}});
    }
    if (acts_on_bundle(f.head)) {
        Factor F(Head::Strength, 0, {y, x});
        terms.push_back({Rational(1), {F, base}});
        if (f.head != Head::Coeff) terms.push_back({Rational(-1), {base, F}});
    }
    // Tail derivatives, in application order.
    for (int t = k + 2; t < nd; ++t) {
        Label a = f.idx[no + t];
        std::vector<std::pair<Rational, Product>> next;
        for (auto& [c, prod] : terms)
            for (std::size_t i = 0; i < prod.size(); ++i) {
                Product q = prod;
                q[i].push(a);
                next.push_back({c, std::move(q)});
            }
        terms = std::move(next);
    }
    std::vector<FactorTerm> out;
    out.reserve(terms.size());
    for (auto& [c, prod] : terms) out.push_back({c, std::move(prod)});
    return out;
}

Reordered swap_once(const Monomial& m, std::size_t fi, int k, const DimPoly& c) {
    Reordered r;
    Label fresh = m.fresh();
    for (auto& t : swap_correction(m.f[fi], k, fresh)) {
        Monomial n;
        n.f.reserve(m.f.size() + t.f.size());
        for (std::size_t i = 0; i < m.f.size(); ++i) {
            if (i == fi) n.f.insert(n.f.end(), t.f.begin(), t.f.end());
            else n.f.push_back(m.f[i]);
        }
        DimPoly cc = c;
        cc *= t.c;
        r.rest.add(std::move(n), cc);
    }
    r.m = m;
    Factor& g = r.m.f[fi];
    int no = g.n_own();
    std::swap(g.idx[no + k], g.idx[no + k + 1]);
    r.c = c;
    return r;
}

Reordered sort_derivatives(const Monomial& m, std::size_t fi, const DimPoly& c) {
    Reordered out;
    out.m = m;
    out.c = c;
    while (true) {
        const Factor& g = out.m.f[fi];
        int no = g.n_own();
        int k = -1;
        for (int j = 0; j + 1 < g.n_deriv(); ++j)
            if (g.idx[no + j] > g.idx[no + j + 1]) {
                k = j;
                break;
            }
        if (k < 0) break;
        Reordered s = swap_once(out.m, fi, k, out.c);
        out.rest += s.rest;
        out.m = std::move(s.m);
    }
    return out;
}

}  // namespace hk
