#pragma once

// Random fully or partially contracted monomials for property tests.

#include <algorithm>
#include <random>

#include "hk/tensor.hpp"

namespace hk::testing {

inline Monomial random_monomial(std::mt19937& rng, int n_free = 0, bool with_internal = false) {
    std::uniform_int_distribution<int> pick(0, with_internal ? 7 : 4);
    std::uniform_int_distribution<int> nder(0, 2);
    std::uniform_int_distribution<int> nfac(1, 3);
    Monomial m;
    int total = 0;
    int k = nfac(rng);
    for (int i = 0; i < k; ++i) {
        Factor f;
        switch (pick(rng)) {
            case 0: f.head = Head::Riemann; break;
            case 1: f.head = Head::Ricci; break;
            case 2: f.head = Head::Scalar; break;
            case 3: f.head = Head::Riemann; break;
            case 4: f.head = Head::Sigma; break;
            case 5: f.head = Head::Strength; break;
            case 6: f.head = Head::Endo; break;
            default: f.head = Head::Coeff; f.order = 1; break;
        }
        int n = f.n_own() + nder(rng);
        if (f.head == Head::Sigma) n += 2;
        for (int s = 0; s < n; ++s) f.push(0);
        total += n;
        m.f.push_back(f);
    }
    if ((total - n_free) % 2 != 0) {
        // make the count even by adding a derivative to the first factor
        m.f[0].push(0);
        ++total;
    }
    if (n_free > total) n_free = total;
    std::vector<Label> labels;
    for (int i = 0; i < n_free; ++i) labels.push_back(static_cast<Label>(i));
    Label next = 1000;
    while (static_cast<int>(labels.size()) < total) {
        labels.push_back(next);
        labels.push_back(next);
        ++next;
    }
    std::shuffle(labels.begin(), labels.end(), rng);
    int p = 0;
    for (auto& f : m.f)
        for (int s = 0; s < f.size; ++s) f.idx[s] = labels[p++];
    return m;
}

// Same tensor written differently: dummies renamed, commuting factors
// shuffled, and a random symmetry image applied to each factor.
inline Monomial random_rewrite(const Monomial& m, std::mt19937& rng, int& sign) {
    Monomial r = m;
    std::vector<Label> dummies;
    for (auto& f : r.f)
        for (int s = 0; s < f.size; ++s)
            if (is_dummy(f.idx[s]) && std::find(dummies.begin(), dummies.end(), f.idx[s]) == dummies.end())
                dummies.push_back(f.idx[s]);
    std::vector<Label> targets;
    for (std::size_t i = 0; i < dummies.size(); ++i) targets.push_back(static_cast<Label>(2000 + 7 * i));
    std::shuffle(targets.begin(), targets.end(), rng);
    for (auto& f : r.f)
        for (int s = 0; s < f.size; ++s)
            if (is_dummy(f.idx[s]))
                f.idx[s] = targets[std::find(dummies.begin(), dummies.end(), f.idx[s]) - dummies.begin()];
    std::vector<Factor> c, in;
    for (auto& f : r.f) (is_internal(f.head) ? in : c).push_back(f);
    std::shuffle(c.begin(), c.end(), rng);
    sign = 1;
    std::uniform_int_distribution<int> coin(0, 1);
    auto apply = [&](Factor& f) {
        if (f.head == Head::Riemann) {
            if (coin(rng)) std::swap(f.idx[0], f.idx[1]), sign = -sign;
            if (coin(rng)) std::swap(f.idx[2], f.idx[3]), sign = -sign;
            if (coin(rng)) std::swap(f.idx[0], f.idx[2]), std::swap(f.idx[1], f.idx[3]);
        } else if (f.head == Head::Ricci || f.head == Head::Metric) {
            if (coin(rng)) std::swap(f.idx[0], f.idx[1]);
        } else if (f.head == Head::Strength) {
            if (coin(rng)) std::swap(f.idx[0], f.idx[1]), sign = -sign;
        }
    };
    for (auto& f : c) apply(f);
    for (auto& f : in) apply(f);
    r.f = c;
    r.f.insert(r.f.end(), in.begin(), in.end());
    return r;
}

}  // namespace hk::testing
