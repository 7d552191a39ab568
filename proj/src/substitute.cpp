#include "hk/substitute.hpp"

namespace hk {

namespace {

template <class Targets>
void splice(const Monomial& m, std::size_t fi, const Monomial& repl, const Targets& target, Label base, Monomial& out) {
    out.f.clear();
    out.f.reserve(m.f.size() + repl.f.size());
    for (std::size_t i = 0; i < m.f.size(); ++i) {
        if (i != fi) {
            out.f.push_back(m.f[i]);
            continue;
        }
        for (Factor x : repl.f) {
            for (int s = 0; s < x.size; ++s) {
                Label l = x.idx[s];
                if (is_dummy(l)) x.idx[s] = static_cast<Label>(base + (l - kFirstDummy));
                else if (l != kU) x.idx[s] = target[l];
            }
            out.f.push_back(x);
        }
    }
}

}  // namespace

void expand(const Monomial& m, const DimPoly& c, const Rule& rule, Polynomial& out) {
    for (std::size_t i = 0; i < m.f.size(); ++i) {
        const Polynomial* entry = rule(m.f[i]);
        if (!entry) continue;
        Label base = m.fresh();
        Monomial n;
        for (const auto& [rm, rc] : *entry) {
            splice(m, i, rm, m.f[i].idx, base, n);
            expand(n, c * rc, rule, out);
        }
        return;
    }
    out.add(m, c);
}

Polynomial expand(const Polynomial& p, const Rule& rule) {
    Polynomial out;
    for (const auto& [m, c] : p) expand(m, c, rule, out);
    return out;
}

void replace_factor(const Monomial& m, std::size_t fi, const Polynomial& entry, const std::vector<Label>& targets,
                    const DimPoly& c, Polynomial& out) {
    Label base = m.fresh();
    for (Label l : targets)
        if (l != kU && l >= base) base = static_cast<Label>(l + 1);
    Monomial n;
    for (const auto& [rm, rc] : entry) {
        splice(m, fi, rm, targets, base, n);
        out.add(n, c * rc);
    }
}

Polynomial instantiate(const Polynomial& entry, const std::vector<Label>& labels) {
    Factor holder(Head::Sigma, 0, {});
    for (Label l : labels) holder.push(l);
    Monomial m;
    m.f.push_back(holder);
    Rule rule = [&](const Factor& f) -> const Polynomial* { return f.head == Head::Sigma ? &entry : nullptr; };
    return expand(Polynomial::of(m), rule);
}

}  // namespace hk
