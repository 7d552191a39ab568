#include "hk/dewitt.hpp"

#include <stdexcept>

#include "hk/derivatives.hpp"
#include "hk/substitute.hpp"

namespace hk {

DeWittTable::DeWittTable(int max_weight) : max_weight_(max_weight), sigma_(2 * max_weight + 2) {
    table_[{0, 0}] = Polynomial::constant(DimPoly(1));
    for (int n = 0; n <= max_weight; ++n) {
        for (int m = 0; n + m / 2.0 <= max_weight; ++m) {
            if (n == 0 && m == 0) continue;
            const std::string an = "A" + std::to_string(n);
            const DimPoly lead = DimPoly(n) - DimPoly::parse("1/2*d");
            Polynomial master = Polynomial::parse("(" + lead.str() + ") " + an + " + (1/2) sigma[;p p] " + an + " + sigma[;p] " + an + "[;p]");
            if (n > 0) {
                std::string prev = "A" + std::to_string(n - 1);
                master += Polynomial::parse("- " + prev + "[;p p] + E " + prev);
            }
            std::vector<Label> labels;
            for (int k = 0; k < m; ++k) labels.push_back(static_cast<Label>(k));
            Polynomial id = differentiate(master, labels);

            Rule known = [&](const Factor& f) -> const Polynomial* {
                if (f.head == Head::Sigma) {
                    if (f.n_deriv() > sigma_.max_order()) throw std::logic_error("sigma table too short");
                    return &sigma_.entry(f.n_deriv());
                }
                if (f.head == Head::Coeff) {
                    if (f.order == n && f.n_deriv() >= m) return nullptr;
                    auto it = table_.find({f.order, f.n_deriv()});
                    if (it == table_.end()) throw std::logic_error("missing heat kernel coefficient entry");
                    return &it->second;
                }
                return nullptr;
            };
            Polynomial known_part = expand(id, known);
            Polynomial rest;
            DimPoly coef;
            std::vector<std::pair<Monomial, DimPoly>> work(known_part.begin(), known_part.end());
            while (!work.empty()) {
                auto [mono, c] = work.back();
                work.pop_back();
                std::size_t fi = mono.f.size();
                for (std::size_t i = 0; i < mono.f.size(); ++i)
                    if (mono.f[i].head == Head::Coeff) {
                        if (mono.f[i].n_deriv() != m || mono.f[i].order != n) throw std::logic_error("unexpected coefficient factor");
                        fi = i;
                    }
                if (fi == mono.f.size()) {
                    rest.add(mono, c);
                    continue;
                }
                if (mono.f.size() != 1) throw std::logic_error("unknown coefficient multiplied by other factors");
                Reordered r = sort_derivatives(mono, fi, c);
                coef += r.c;
                for (const auto& t : expand(r.rest, known)) work.push_back(t);
            }
            if (coef.is_zero() || !coef.is_constant())
                throw std::logic_error("heat kernel recursion: coefficient of the unknown is " + coef.str());
            rest *= DimPoly(Rational(-1) / coef.constant());
            table_[{n, m}] = rest;
        }
    }
}

const Polynomial& DeWittTable::entry(int n, int m) const {
    auto it = table_.find({n, m});
    if (it == table_.end()) throw std::out_of_range("heat kernel coefficient entry not tabulated");
    return it->second;
}

Polynomial DeWittTable::at(int n, const std::vector<Label>& labels) const {
    const Polynomial& e = entry(n, static_cast<int>(labels.size()));
    Factor holder(Head::Coeff, n, {});
    for (Label l : labels) holder.push(l);
    Monomial m;
    m.f.push_back(holder);
    Rule rule = [&](const Factor& f) -> const Polynomial* { return f.head == Head::Coeff ? &e : nullptr; };
    Polynomial out;
    expand(m, DimPoly(1), rule, out);
    return out;
}

Polynomial DeWittTable::symmetrized(int n, int m) const { return at(n, std::vector<Label>(m, kU)); }

}  // namespace hk
