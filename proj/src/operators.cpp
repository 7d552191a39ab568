#include "hk/operators.hpp"

#include <stdexcept>

#include "hk/derivatives.hpp"
#include "hk/substitute.hpp"

namespace hk {

std::size_t Op::size() const {
    std::size_t n = 0;
    for (const auto& [m, l] : terms) n += l.size();
    return n;
}

std::size_t field_index(const Monomial& m) {
    for (std::size_t i = 0; i < m.f.size(); ++i)
        if (m.f[i].head == Head::Field) return i;
    throw std::invalid_argument("operator term without the test field: " + monomial_str(m));
}

DimRational gamma_ratio(int j, int m) {
    const DimPoly d = DimPoly::d();
    DimRational r(1);
    if (m >= 0) {
        for (int i = 1; i <= m; ++i) r *= DimRational(DimPoly(2), d - DimPoly(2 * (j + i)));
    } else {
        for (int i = 0; i < -m; ++i) r *= DimRational(d * DimPoly(Rational(1, 2)) - DimPoly(j - i));
    }
    return r;
}

namespace {

void add_term(Op& op, int m, const Polynomial& p) {
    if (p.is_zero()) return;
    Polynomial& t = op.terms[m];
    t += p;
    if (t.is_zero()) op.terms.erase(m);
}

}  // namespace

OpAlgebra::OpAlgebra(const HFunctions& h) : h_(h) {}

Op OpAlgebra::identity(int rank) const {
    return local(Polynomial::parse(rank == 0 ? "Phi" : "Phi[mu]"), rank, rank);
}

Op OpAlgebra::local(const Polynomial& l, int in_rank, int out_rank) const {
    if (in_rank < 0 || in_rank > 1 || out_rank < 0 || out_rank > 1) throw std::invalid_argument("operators act on scalars or vectors");
    validate(l);
    for (const auto& [m, c] : l) {
        const Factor& f = m.f[field_index(m)];
        if (f.order != in_rank) throw std::invalid_argument("test field of the wrong rank in " + monomial_str(m));
        auto fl = free_labels(m);
        if (static_cast<int>(fl.size()) != out_rank || (out_rank == 1 && fl[0] != 0))
            throw std::invalid_argument("output index must be label 0 in " + monomial_str(m));
    }
    Op op{in_rank, out_rank, {}};
    add_term(op, 0, l);
    return op;
}

Op OpAlgebra::inverse_laplacian(int rank, int power) const {
    Op op = identity(rank);
    Polynomial l = op.terms.at(0);
    op.terms.clear();
    op.terms[power] = l;
    return op;
}

Op OpAlgebra::add(const Op& a, const Op& b) const {
    if (a.in_rank != b.in_rank || a.out_rank != b.out_rank) throw std::invalid_argument("adding operators between different bundles");
    Op out = a;
    for (const auto& [m, l] : b.terms) add_term(out, m, l);
    return out;
}

Op OpAlgebra::scale(const Op& a, const DimPoly& c) const {
    Op out{a.in_rank, a.out_rank, {}};
    for (const auto& [m, l] : a.terms) add_term(out, m, l * c);
    return out;
}

Polynomial OpAlgebra::local_commutator(const Polynomial& l) const {
    // [c Phi_{;B}, Delta] = c_{;ee} Phi_{;B} + 2 c_{;e} Phi_{;Be} + c (Phi_{;Bee} - Phi_{;eeB})
    Polynomial out;
    const int max_w2 = 2 * max_weight();
    for (const auto& [m, c] : l) {
        const std::size_t fi = field_index(m);
        const Label e = m.fresh();
        const int base_w2 = m.weight2();
        if (base_w2 + 1 <= max_w2) {
            for (std::size_t i = 0; i < m.f.size(); ++i) {
                if (i == fi || m.f[i].head == Head::Metric) continue;
                Monomial t = m;
                t.f[i].push(e);
                t.f[fi].push(e);
                out.add(t, c * DimPoly(2));
                for (std::size_t j = 0; j < m.f.size(); ++j) {
                    if (j == fi || m.f[j].head == Head::Metric) continue;
                    Monomial u = m;
                    u.f[i].push(e);
                    u.f[j].push(e);
                    out.add(u, c);
                }
            }
        }
        if (base_w2 + 2 > max_w2) continue;
        Monomial x = m;
        x.f[fi].push(e);
        x.f[fi].push(e);
        const int k = m.f[fi].n_deriv();
        for (int p = k - 1; p >= 0; --p) {
            Reordered r = swap_once(x, fi, p, c);
            out += r.rest;
            x = std::move(r.m);
        }
        for (int p = k; p >= 1; --p) {
            Reordered r = swap_once(x, fi, p, c);
            out += r.rest;
            x = std::move(r.m);
        }
    }
    return out.truncated(max_w2);
}

Op OpAlgebra::normalize(const Op& a) const {
    const int max_w2 = 2 * max_weight();
    Op out{a.in_rank, a.out_rank, {}};
    struct Item {
        Monomial m;
        DimPoly c;
        int key;
    };
    std::vector<Item> work;
    for (const auto& [key, l] : a.terms)
        for (const auto& [m, c] : l) work.push_back({m, c, key});
    std::map<int, Polynomial> acc;
    while (!work.empty()) {
        Item it = std::move(work.back());
        work.pop_back();
        if (it.m.weight2() > max_w2) continue;
        const std::size_t fi = field_index(it.m);
        const Factor& f = it.m.f[fi];
        const int nd = f.n_deriv();
        int pi = -1, pj = -1;
        for (int i = 0; i < nd && pi < 0; ++i)
            for (int j = i + 1; j < nd; ++j)
                if (f.deriv(i) == f.deriv(j)) {
                    pi = i;
                    pj = j;
                    break;
                }
        if (pi < 0) {
            acc[it.key].add(it.m, it.c);
            continue;
        }
        auto push_rest = [&](const Polynomial& rest) {
            for (const auto& [m, c] : rest) work.push_back({m, c, it.key});
        };
        Monomial x = it.m;
        for (int p = pj - 1; p > pi; --p) {
            Reordered r = swap_once(x, fi, p, it.c);
            push_rest(r.rest);
            x = std::move(r.m);
        }
        for (int p = pi - 1; p >= 0; --p) {
            Reordered r = swap_once(x, fi, p, it.c);
            push_rest(r.rest);
            x = std::move(r.m);
        }
        for (int p = pi; p >= 1; --p) {
            Reordered r = swap_once(x, fi, p, it.c);
            push_rest(r.rest);
            x = std::move(r.m);
        }
        // Phi_{;ee B} = -(Delta Phi)_{;B}
        Factor& g = x.f[fi];
        const int no = g.n_own();
        for (int s = no; s + 2 < g.size; ++s) g.idx[s] = g.idx[s + 2];
        g.size = static_cast<std::uint8_t>(g.size - 2);
        work.push_back({x, -it.c, it.key - 1});
    }
    for (auto& [key, l] : acc) add_term(out, key, l);
    return out;
}

Polynomial OpAlgebra::compose_local(const Polynomial& l1, int mid_rank, const Polynomial& l2) const {
    const int max_w2 = 2 * max_weight();
    int min_w2 = max_w2 + 1;
    for (const auto& [m, c] : l2) min_w2 = std::min(min_w2, m.weight2());
    std::map<int, Polynomial> entries;  // by number of derivatives
    Polynomial out;
    for (const auto& [m, c] : l1) {
        const int w2 = m.weight2();
        if (w2 + min_w2 > max_w2) continue;
        const std::size_t fi = field_index(m);
        const Factor& f = m.f[fi];
        const int k = f.n_deriv();
        auto it = entries.find(k);
        if (it == entries.end()) {
            Polynomial e = l2;
            for (int i = 0; i < k; ++i) e = differentiate(e, static_cast<Label>(mid_rank + i)).truncated(max_w2);
            it = entries.emplace(k, std::move(e)).first;
        }
        std::vector<Label> targets(f.idx.begin(), f.idx.begin() + f.size);
        Polynomial part;
        replace_factor(m, fi, it->second, targets, c, part);
        out += part.truncated(max_w2);
    }
    return out;
}

Op OpAlgebra::compose(const Op& a, const Op& b) const {
    if (a.in_rank != b.out_rank) throw std::invalid_argument("composing operators between different bundles");
    Op out{b.in_rank, a.out_rank, {}};
    for (const auto& [m2, l2] : b.terms) {
        std::vector<Polynomial> comm{l2};  // [l2, Delta]_n
        for (const auto& [m1, l1] : a.terms) {
            Rational binom(1);
            for (int n = 0;; ++n) {
                if (binom == Rational(0)) break;
                while (static_cast<int>(comm.size()) <= n) comm.push_back(local_commutator(comm.back()));
                if (comm[n].is_zero()) break;
                add_term(out, m1 + m2 + n, compose_local(l1, b.out_rank, comm[n]) * DimPoly(binom));
                binom = binom * Rational(m1 + n) / Rational(n + 1);
            }
        }
    }
    return normalize(out);
}

Op OpAlgebra::compose(const std::vector<const Op*>& ops) const {
    if (ops.empty()) throw std::invalid_argument("empty product");
    Op r = *ops.back();
    for (std::size_t i = ops.size() - 1; i-- > 0;) r = compose(*ops[i], r);
    return r;
}

Op OpAlgebra::commutator(const Op& a) const {
    Op out{a.in_rank, a.out_rank, {}};
    for (const auto& [m, l] : a.terms) add_term(out, m, local_commutator(l));
    return normalize(out);
}

Op OpAlgebra::delta_commutator(const Op& a) const { return scale(commutator(a), DimPoly(-1)); }

HeatSeries OpAlgebra::trace(const Op& a, BasisReducer& reducer) const {
    if (a.in_rank != a.out_rank) throw std::invalid_argument("trace of an operator between different bundles");
    const int max_w2 = 2 * max_weight();
    std::map<std::pair<int, int>, Polynomial> groups;  // (power of u in H, m)
    for (const auto& [m, l] : a.terms) {
        for (const auto& [mono, c] : l) {
            const int left = max_w2 - mono.weight2();
            if (left < 0) continue;
            Monomial r = mono;
            const std::size_t fi = field_index(r);
            std::vector<Label> targets;
            const USeries* entries;
            if (a.in_rank == 1) {
                const Label col = r.fresh();
                for (auto& f : r.f)
                    for (int s = 0; s < f.size; ++s)
                        if (f.idx[s] == 0) f.idx[s] = col;
                const Factor& f = r.f[fi];
                targets.assign(f.idx.begin(), f.idx.begin() + f.size);
                targets.push_back(col);
                entries = &h_.vector_entry(f.n_deriv(), left);
            } else {
                const Factor& f = r.f[fi];
                targets.assign(f.idx.begin(), f.idx.begin() + f.size);
                entries = &h_.scalar_entry(f.n_deriv(), left);
            }
            for (const auto& [j, p] : *entries) replace_factor(r, fi, p, targets, c, groups[{j, m}]);
        }
    }
    HeatSeries out;
    bool have_offset = false;
    for (const auto& [key, p] : groups) {
        if (p.is_zero()) continue;
        CoeffTable t = reducer.reduce(p, true);
        const int power = key.first + key.second;
        for (auto& b : general_basis()) {
            if (t.get(b.id).is_zero()) continue;
            const int offset = b.order - power;
            if (!have_offset) {
                out.offset = offset;
                have_offset = true;
            } else if (offset != out.offset) {
                throw std::logic_error("trace terms with different scaling dimensions");
            }
        }
        t *= gamma_ratio(key.first, key.second);
        out.c += t;
    }
    return out;
}

}  // namespace hk
