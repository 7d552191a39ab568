#include "hk/identities.hpp"

#include <deque>
#include <stdexcept>

#include "hk/derivatives.hpp"

namespace hk {

namespace {

Monomial with_factor(const Monomial& m, std::size_t i, const Factor& f) {
    Monomial r = m;
    r.f[i] = f;
    return r;
}

Factor riemann(Label a, Label b, Label c, Label d, const Factor& derivs_from, int first_deriv) {
    Factor r(Head::Riemann, 0, {a, b, c, d});
    for (int k = first_deriv; k < derivs_from.size; ++k) r.push(derivs_from.idx[k]);
    return r;
}

// Bianchi identities for a Riemann factor written as R_{abcd;T}, possibly
// sitting inside a raw (uncanonicalized) monomial.
void riemann_bianchi(const Monomial& m, std::size_t i, std::vector<Polynomial>& out) {
    const Factor& x = m.f[i];
    Label a = x.idx[0], b = x.idx[1], c = x.idx[2], d = x.idx[3];
    {
        Polynomial p;
        p.add(with_factor(m, i, riemann(a, b, c, d, x, 4)), DimPoly(1));
        p.add(with_factor(m, i, riemann(a, c, d, b, x, 4)), DimPoly(1));
        p.add(with_factor(m, i, riemann(a, d, b, c, x, 4)), DimPoly(1));
        if (!p.is_zero()) out.push_back(p);
    }
    if (x.n_deriv() == 0) return;
    Label e = x.idx[4];
    auto second = [&](Label p0, Label p1, Label q0, Label q1) {
        // R_{p0 p1 q0 q1;e T} + R_{p0 p1 q1 e;q0 T} + R_{p0 p1 e q0;q1 T}
        Polynomial p;
        auto put = [&](Label r2, Label r3, Label dv) {
            Factor f(Head::Riemann, 0, {p0, p1, r2, r3, dv});
            for (int k = 5; k < x.size; ++k) f.push(x.idx[k]);
            p.add(with_factor(m, i, f), DimPoly(1));
        };
        put(q0, q1, e);
        put(q1, e, q0);
        put(e, q0, q1);
        if (!p.is_zero()) out.push_back(p);
    };
    second(a, b, c, d);
    second(c, d, a, b);
}

void strength_bianchi(const Monomial& m, std::size_t i, std::vector<Polynomial>& out) {
    const Factor& x = m.f[i];
    if (x.n_deriv() == 0) return;
    Label a = x.idx[0], b = x.idx[1], c = x.idx[2];
    Polynomial p;
    auto put = [&](Label p0, Label p1, Label dv) {
        Factor f(Head::Strength, 0, {p0, p1, dv});
        for (int k = 3; k < x.size; ++k) f.push(x.idx[k]);
        p.add(with_factor(m, i, f), DimPoly(1));
    };
    put(a, b, c);
    put(b, c, a);
    put(c, a, b);
    if (!p.is_zero()) out.push_back(p);
}

}  // namespace

std::vector<Polynomial> elementary_relations(const Monomial& m, IdentityMode mode) {
    std::vector<Polynomial> out;
    for (std::size_t i = 0; i < m.f.size(); ++i) {
        const Factor& x = m.f[i];
        // Derivative commutation.
        for (int k = 0; k + 1 < x.n_deriv(); ++k) {
            if (x.deriv(k) == x.deriv(k + 1)) continue;
            Reordered r = swap_once(m, i, k, DimPoly(1));
            Polynomial p;
            p.add(m, DimPoly(1));
            p.add(r.m, DimPoly(-1));
            p -= r.rest;
            if (!p.is_zero()) out.push_back(p);
        }
        switch (x.head) {
            case Head::Riemann: riemann_bianchi(m, i, out); break;
            case Head::Ricci: {
                Label c = m.fresh();
                Factor r(Head::Riemann, 0, {c, x.idx[0], c, x.idx[1]});
                for (int k = 2; k < x.size; ++k) r.push(x.idx[k]);
                riemann_bianchi(with_factor(m, i, r), i, out);
                Factor s(Head::Riemann, 0, {c, x.idx[1], c, x.idx[0]});
                for (int k = 2; k < x.size; ++k) s.push(x.idx[k]);
                riemann_bianchi(with_factor(m, i, s), i, out);
                break;
            }
            case Head::Scalar: {
                Label c = m.fresh();
                Label d = static_cast<Label>(c + 1);
                Factor r(Head::Riemann, 0, {c, d, c, d});
                for (int k = 0; k < x.size; ++k) r.push(x.idx[k]);
                riemann_bianchi(with_factor(m, i, r), i, out);
                break;
            }
            case Head::Strength: strength_bianchi(m, i, out); break;
            default: break;
        }
        // Integration by parts: peel the outermost derivative of factor i.
        if (mode == IdentityMode::Integrated && x.n_deriv() > 0 && !is_internal(x.head)) {
            Label e = x.idx[x.size - 1];
            if (!is_dummy(e)) continue;
            Monomial base = m;
            base.f[i].size--;
            Polynomial p;
            p.add(m, DimPoly(1));
            for (std::size_t j = 0; j < m.f.size(); ++j) {
                if (j == i || m.f[j].head == Head::Metric) continue;
                Monomial t = base;
                t.f[j].push(e);
                p.add(t, DimPoly(1));
            }
            out.push_back(p);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

IdentityReducer::IdentityReducer(IdentityMode mode, const std::vector<Monomial>& preferred) : mode_(mode) {
    for (Monomial m : preferred) {
        DimPoly c(1);
        if (!canonicalize(m, c)) throw std::invalid_argument("preferred monomial vanishes identically");
        int id = column(m);
        preferred_[id] = 1;
    }
}

int IdentityReducer::column(const Monomial& m) {
    auto it = col_.find(m);
    if (it != col_.end()) return it->second;
    int id = static_cast<int>(mono_.size());
    col_.emplace(m, id);
    mono_.push_back(m);
    preferred_.push_back(0);
    closed_.push_back(0);
    return id;
}

bool IdentityReducer::higher(int a, int b) const {
    if (preferred_[a] != preferred_[b]) return preferred_[a] < preferred_[b];
    if (a == b) return false;
    return mono_[b] < mono_[a];
}

template <class T>
void IdentityReducer::reduce(std::map<int, T, Cmp>& v) const {
    auto it = v.begin();
    while (it != v.end()) {
        auto pv = pivot_.find(it->first);
        if (pv == pivot_.end()) {
            ++it;
            continue;
        }
        int col = it->first;
        T c = it->second;
        v.erase(it);
        const Row& row = rows_[pv->second];
        for (std::size_t k = 1; k < row.size(); ++k) {
            T t = c;
            t *= -row[k].second;
            auto jt = v.find(row[k].first);
            if (jt == v.end()) {
                v.emplace(row[k].first, t);
            } else {
                jt->second += t;
                if (jt->second.is_zero()) v.erase(jt);
            }
        }
        it = v.upper_bound(col);
    }
}

void IdentityReducer::add_relation(const Polynomial& rel) {
    std::map<int, Rational, Cmp> v(Cmp{this});
    for (const auto& [m, c] : rel) {
        if (!c.is_constant()) throw std::logic_error("relation with d-dependent coefficient");
        v[column(m)] += c.constant();
    }
    for (auto it = v.begin(); it != v.end();) it = it->second.is_zero() ? v.erase(it) : std::next(it);
    reduce(v);
    if (v.empty()) return;
    Row row(v.begin(), v.end());
    Rational lead = row.front().second;
    for (auto& [col, c] : row) c /= lead;
    pivot_[row.front().first] = static_cast<int>(rows_.size());
    rows_.push_back(std::move(row));
}

void IdentityReducer::close(const Monomial& start) {
    int sid = column(start);
    if (closed_[sid]) return;
    std::deque<int> queue{sid};
    closed_[sid] = 1;
    std::vector<Polynomial> pending;
    while (!queue.empty()) {
        int id = queue.front();
        queue.pop_front();
        Monomial m = mono_[id];
        for (auto& rel : elementary_relations(m, mode_)) {
            for (const auto& [t, c] : rel) {
                int tid = column(t);
                if (!closed_[tid]) {
                    closed_[tid] = 1;
                    queue.push_back(tid);
                }
            }
            pending.push_back(std::move(rel));
        }
    }
    for (auto& rel : pending) add_relation(rel);
}

Polynomial IdentityReducer::normal_form(const Polynomial& p) {
    for (const auto& [m, c] : p) close(m);
    std::map<int, DimPoly, Cmp> v(Cmp{this});
    for (const auto& [m, c] : p) v[column(m)] += c;
    for (auto it = v.begin(); it != v.end();) it = it->second.is_zero() ? v.erase(it) : std::next(it);
    reduce(v);
    Polynomial out;
    for (auto& [col, c] : v) out.add_canonical(mono_[col], c);
    return out;
}

}  // namespace hk
