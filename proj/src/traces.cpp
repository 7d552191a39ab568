#include "hk/traces.hpp"

#include <bit>
#include <stdexcept>

#include "hk/substitute.hpp"

namespace hk {

void add_series(USeries& a, const USeries& b) {
    for (const auto& [j, p] : b) {
        a[j] += p;
        if (a[j].is_zero()) a.erase(j);
    }
}

DimPoly fiber_dimension(Bundle b) {
    const DimPoly d = DimPoly::d();
    switch (b) {
        case Bundle::Scalar: return DimPoly(1);
        case Bundle::Vector: return d;
        case Bundle::SymTensor: return d * (d + DimPoly(1)) * DimPoly(Rational(1, 2));
    }
    return DimPoly(1);
}

namespace {

struct Split {
    Monomial outer;               // c-number factors
    std::vector<Factor> strength;  // F factors in matrix order
    bool has_endo = false;
};

Split split(const Monomial& m) {
    Split s;
    for (const auto& f : m.f) {
        if (f.head == Head::Strength) s.strength.push_back(f);
        else if (f.head == Head::Endo) s.has_endo = true;
        else if (f.head == Head::Coeff) throw std::invalid_argument("unexpanded heat kernel coefficient in a trace");
        else s.outer.f.push_back(f);
    }
    return s;
}

// Appends the Riemann chain for the ordered product of F's between `row` and
// `col`; an empty product is the metric.
void append_chain(const std::vector<Factor>& fs, Label row, Label col, Label& fresh, Monomial& out) {
    if (fs.empty()) {
        out.f.push_back(Factor(Head::Metric, 0, {row, col}));
        return;
    }
    Label prev = row;
    for (std::size_t i = 0; i < fs.size(); ++i) {
        Label next = i + 1 == fs.size() ? col : fresh++;
        Factor r(Head::Riemann, 0, {prev, next, fs[i].idx[0], fs[i].idx[1]});
        for (int k = 2; k < fs[i].size; ++k) r.push(fs[i].idx[k]);
        out.f.push_back(r);
        prev = next;
    }
}

Label fresh_after(const Monomial& m, std::initializer_list<Label> extra) {
    Label f = m.fresh();
    for (Label l : extra)
        if (l != kU && l >= f) f = static_cast<Label>(l + 1);
    return f;
}

// tr of an ordered product on the vector bundle, appended to `out`; the
// identity contributes a factor d to `c`.
void append_trace(const std::vector<Factor>& fs, Label& fresh, Monomial& out, DimPoly& c) {
    if (fs.empty()) {
        c *= DimPoly::d();
        return;
    }
    Label a = fresh++;
    append_chain(fs, a, a, fresh, out);
}

}  // namespace

Polynomial vector_matrix_element(const Polynomial& p, Label row, Label col) {
    Polynomial out;
    for (const auto& [m, c] : p) {
        Split s = split(m);
        if (s.has_endo) continue;
        Label fresh = fresh_after(m, {row, col});
        append_chain(s.strength, row, col, fresh, s.outer);
        out.add(s.outer, c);
    }
    return out;
}

Polynomial bundle_trace(const Polynomial& p, Bundle b) {
    Polynomial out;
    for (const auto& [m, c] : p) {
        Split s = split(m);
        if (s.has_endo) continue;
        switch (b) {
            case Bundle::Scalar:
                if (s.strength.empty()) out.add(s.outer, c);
                break;
            case Bundle::Vector: {
                Label fresh = m.fresh();
                DimPoly cc = c;
                append_trace(s.strength, fresh, s.outer, cc);
                out.add(s.outer, cc);
                break;
            }
            case Bundle::SymTensor: {
                // F acts as A (x) 1 + 1 (x) A; the trace over symmetric
                // tensors is (tr X + tr(P X))/2 with P the swap.
                const std::size_t q = s.strength.size();
                if (q > 20) throw std::invalid_argument("too many curvature factors");
                for (std::uint32_t mask = 0; mask < (1u << q); ++mask) {
                    std::vector<Factor> in, rest;
                    for (std::size_t i = 0; i < q; ++i) ((mask >> i) & 1 ? in : rest).push_back(s.strength[i]);
                    Label fresh = m.fresh();
                    Monomial a = s.outer;
                    DimPoly ca = c * DimPoly(Rational(1, 2));
                    append_trace(rest, fresh, a, ca);
                    append_trace(in, fresh, a, ca);
                    out.add(a, ca);
                    std::vector<Factor> both = rest;
                    both.insert(both.end(), in.begin(), in.end());
                    Monomial b2 = s.outer;
                    DimPoly cb = c * DimPoly(Rational(1, 2));
                    append_trace(both, fresh, b2, cb);
                    out.add(b2, cb);
                }
                break;
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

HFunctions::HFunctions(const DeWittTable& table) : table_(table) {}

namespace {

// Set partitions of `items` into blocks of size >= 2, each block in
// ascending order, with total excess sum(|B| - 2) at most `excess`.
void partitions(const std::vector<int>& items, int excess, std::vector<std::vector<int>>& current,
                std::vector<std::vector<std::vector<int>>>& out) {
    if (items.empty()) {
        out.push_back(current);
        return;
    }
    const int first = items[0];
    const std::vector<int> others(items.begin() + 1, items.end());
    const std::size_t n = others.size();
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        const int size = 1 + std::popcount(mask);
        if (size - 2 > excess) continue;
        std::vector<int> block{first}, rest;
        for (std::size_t i = 0; i < n; ++i) ((mask >> i) & 1 ? block : rest).push_back(others[i]);
        current.push_back(block);
        partitions(rest, excess - (size - 2), current, out);
        current.pop_back();
    }
}

}  // namespace

int HFunctions::budget(int max_w2) const {
    const int full = 2 * table_.max_weight();
    return max_w2 < 0 || max_w2 > full ? full : max_w2;
}

const USeries& HFunctions::placeholder_entry(int k, int max_w2) const {
    max_w2 = budget(max_w2);
    auto it = raw_.find({k, max_w2});
    if (it != raw_.end()) return it->second;
    if (k > kMaxSlots - 1) throw std::out_of_range("too many derivatives on the heat kernel");
    const SigmaTable& sigma = table_.sigma();
    USeries out;
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
        std::vector<Label> j_labels;
        std::vector<int> rest;
        for (int i = 0; i < k; ++i) {
            if ((mask >> i) & 1) j_labels.push_back(static_cast<Label>(i));
            else rest.push_back(i);
        }
        const int nj = static_cast<int>(j_labels.size());
        if (nj > max_w2) continue;
        std::vector<std::vector<int>> cur;
        std::vector<std::vector<std::vector<int>>> parts;
        partitions(rest, max_w2 - nj, cur, parts);
        for (const auto& part : parts) {
            int sigma_w2 = 0;
            for (const auto& b : part) sigma_w2 += static_cast<int>(b.size()) - 2;
            if (sigma_w2 + nj > max_w2) continue;
            Polynomial sp = Polynomial::constant(DimPoly(1));
            for (const auto& b : part) {
                if (static_cast<int>(b.size()) > sigma.max_order()) throw std::out_of_range("world function table too short");
                std::vector<Label> bl(b.begin(), b.end());
                sp = multiply(sp, sigma.at(bl) * DimPoly(Rational(-1, 2)));
            }
            for (int n = 0; 2 * n + nj + sigma_w2 <= max_w2; ++n) {
                if (!table_.has(n, nj)) throw std::logic_error("heat kernel coefficient table too short");
                Polynomial t = multiply(sp, table_.at(n, j_labels)).truncated(max_w2);
                if (t.is_zero()) continue;
                out[n - static_cast<int>(part.size())] += t;
            }
        }
    }
    for (auto i = out.begin(); i != out.end();) i = i->second.is_zero() ? out.erase(i) : std::next(i);
    return raw_.emplace(Key{k, max_w2}, std::move(out)).first->second;
}

namespace {

USeries bind_labels(const USeries& e, const std::vector<Label>& labels) {
    Factor holder(Head::Sigma, 0, {});
    for (Label l : labels) holder.push(l);
    Monomial m;
    m.f.push_back(holder);
    USeries out;
    for (const auto& [j, p] : e) {
        Polynomial r;
        replace_factor(m, 0, p, labels, DimPoly(1), r);
        if (!r.is_zero()) out[j] = r;
    }
    return out;
}

}  // namespace

USeries HFunctions::ordered(const std::vector<Label>& labels) const {
    return bind_labels(placeholder_entry(static_cast<int>(labels.size()), -1), labels);
}

const USeries& HFunctions::vector_entry(int k, int max_w2) const {
    max_w2 = budget(max_w2);
    auto it = vec_.find({k, max_w2});
    if (it != vec_.end()) return it->second;
    std::vector<Label> labels;
    for (int i = 1; i <= k; ++i) labels.push_back(static_cast<Label>(i));
    USeries out;
    for (const auto& [j, p] : bind_labels(placeholder_entry(k, max_w2), labels)) {
        Polynomial r = vector_matrix_element(p, 0, static_cast<Label>(k + 1));
        if (!r.is_zero()) out[j] = r;
    }
    return vec_.emplace(Key{k, max_w2}, std::move(out)).first->second;
}

const USeries& HFunctions::scalar_entry(int k, int max_w2) const {
    max_w2 = budget(max_w2);
    auto it = scal_.find({k, max_w2});
    if (it != scal_.end()) return it->second;
    USeries out;
    for (const auto& [j, p] : placeholder_entry(k, max_w2)) {
        Polynomial r = bundle_trace(p, Bundle::Scalar);
        if (!r.is_zero()) out[j] = r;
    }
    return scal_.emplace(Key{k, max_w2}, std::move(out)).first->second;
}

CoeffTable bundle_heat_coefficients(const HFunctions& h, Bundle b, BasisReducer& reducer) {
    Polynomial all;
    for (int n = 0; n <= h.max_weight(); ++n) all += bundle_trace(h.table().entry(n, 0), b);
    return reducer.reduce(all, true);
}

}  // namespace hk
