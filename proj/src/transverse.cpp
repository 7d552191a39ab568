#include "hk/transverse.hpp"

#include <stdexcept>

namespace hk {

namespace {

Polynomial P(const char* s) { return Polynomial::parse(s); }

int order_of(const std::string& id, BasisKind kind) {
    for (auto& b : basis(kind))
        if (b.id == id) return b.order;
    throw std::invalid_argument("unknown basis element " + id);
}

HeatSeries sum(const std::vector<HeatSeries>& parts) {
    HeatSeries out;
    bool have = false;
    for (const auto& p : parts) {
        if (p.c == CoeffTable(BasisKind::General)) continue;
        if (have && p.offset != out.offset) throw std::logic_error("adding traces of different scaling dimension");
        out.offset = p.offset;
        have = true;
        out.c += p.c;
    }
    return out;
}

HeatSeries scaled(HeatSeries h, const DimRational& c) {
    h.c *= c;
    return h;
}

}  // namespace

CommutatorLibrary build_commutators(const OpAlgebra& a, int max_n) {
    CommutatorLibrary lib;
    lib.scalar.push_back(P("Phi[;mu]"));
    lib.vector.push_back(P("Phi[a;a]"));
    for (int n = 1; n <= max_n; ++n) {
        lib.scalar.push_back(a.local_commutator(lib.scalar.back()));
        lib.vector.push_back(a.local_commutator(lib.vector.back()));
    }
    lib.scalar_aux = a.local_commutator(P("Phi[;alpha beta]"));
    lib.vector_aux = a.local_commutator(P("Phi[nu;mu alpha]"));
    const Op ric = a.local(P("Ric[mu a] Phi[a]"), 1, 1);
    const Op inv = a.inverse_laplacian(1);
    lib.shift = a.add(a.compose(inv, ric), a.scale(a.compose(ric, inv), DimPoly(-1)));
    return lib;
}

Rational AuxIntegral::at(const Rational& d) const {
    for (int i = 1; i <= n; ++i)
        if (d == Rational(2 * (k + i)))
            throw PoleError("auxiliary integral I(" + std::to_string(n) + ", " + std::to_string(k) + ") has a pole at d = " + d.str(), d);
    return value.eval(d);
}

AuxIntegral eval_aux_integral(int n, int k) {
    if (n < 1) throw std::invalid_argument("auxiliary integral needs a positive power of the inverse Laplacian");
    return AuxIntegral{n, k, gamma_ratio(k, n)};
}

// ---------------------------------------------------------------------------

TransverseEngine::TransverseEngine(const OpAlgebra& a, BasisReducer& reducer) : a_(a), reducer_(reducer) {}

const Op& TransverseEngine::projector_longitudinal() {
    if (!pl_) {
        const Op grad = a_.local(P("Phi[;mu]"), 0, 1);
        const Op inv = a_.inverse_laplacian(0);
        const Op div = a_.local(P("Phi[a;a]"), 1, 0);
        pl_ = std::make_unique<Op>(a_.scale(a_.compose({&grad, &inv, &div}), DimPoly(-1)));
    }
    return *pl_;
}

const Op& TransverseEngine::projector_transverse() {
    if (!pt_) pt_ = std::make_unique<Op>(a_.add(a_.identity(1), a_.scale(projector_longitudinal(), DimPoly(-1))));
    return *pt_;
}

const Op& TransverseEngine::nested_commutator(int k) {
    if (nested_.empty()) nested_.push_back(projector_transverse());
    while (static_cast<int>(nested_.size()) <= k) nested_.push_back(a_.delta_commutator(nested_.back()));
    return nested_[k];
}

const HeatSeries& TransverseEngine::t_series(int n) {
    auto it = t_.find(n);
    if (it != t_.end()) return it->second;
    Op x = a_.local(P("Phi[;mu]"), 0, 1);
    for (int i = 0; i < n; ++i) x = a_.commutator(x);
    const Op div = a_.local(P("Phi[a;a]"), 1, 0);
    return t_.emplace(n, a_.trace(a_.compose(x, div), reducer_)).first->second;
}

const std::vector<Subtrace>& TransverseEngine::subtraces(int n) {
    auto it = sub_.find(n);
    if (it != sub_.end()) return it->second;
    static const std::map<int, std::vector<std::pair<int, std::vector<int>>>> words = {
        {0, {{1, {}}}},
        {1, {{1, {1}}}},
        {2, {{1, {1, 1}}, {1, {2}}}},
        {3, {{2, {1, 2}}, {1, {2, 1}}, {1, {3}}, {1, {1, 1, 1}}}},
        {4, {{3, {1, 3}}, {3, {2, 2}}, {1, {3, 1}}, {1, {4}}}},
    };
    auto w = words.find(n);
    if (w == words.end()) throw std::out_of_range("partial traces are defined for n = 0..4");
    std::vector<Subtrace> out;
    for (const auto& [mult, word] : w->second) {
        std::vector<const Op*> ops{&nested_commutator(0)};
        std::string name = "PT";
        for (int k : word) {
            ops.push_back(&nested_commutator(k));
            name += " C" + std::to_string(k);
        }
        Subtrace s{name, mult, word, a_.trace(a_.compose(ops), reducer_)};
        s.value.c *= DimRational(mult);
        out.push_back(std::move(s));
    }
    return sub_.emplace(n, std::move(out)).first->second;
}

HeatSeries TransverseEngine::partial(int n) {
    std::vector<HeatSeries> parts;
    for (const auto& s : subtraces(n)) parts.push_back(s.value);
    HeatSeries h = sum(parts);
    if (!(h.c == CoeffTable(BasisKind::General)) && h.offset != n)
        throw std::logic_error("partial trace " + std::to_string(n) + " has the wrong scaling dimension");
    h.offset = n;
    return h;
}

HeatSeries TransverseEngine::partial0_via_t() {
    HeatSeries out;
    out.c = bundle_heat_coefficients(a_.h_functions(), Bundle::Vector, reducer_);
    // int dt (-t)^n/n! T^(n)(s + t)
    for (int n = 0; n <= 4; ++n) {
        const HeatSeries& t = t_series(n);
        for (auto& [id, v] : t.c.entries()) {
            if (v.is_zero()) continue;
            const int p = order_of(id, BasisKind::General) - t.offset;
            DimRational c = v * eval_aux_integral(n + 1, p).value;
            if (n % 2) c = -c;
            out.c.add(id, c);
        }
    }
    return out;
}

HeatSeries TransverseEngine::c1() { return scaled(subtraces(3).at(1).value, DimRational(-1)); }
HeatSeries TransverseEngine::c2() { return scaled(subtraces(3).at(2).value, DimRational(-1)); }

CoeffTable assemble(const std::vector<HeatSeries>& partials) {
    CoeffTable out(BasisKind::General);
    Rational fact(1);
    for (std::size_t n = 0; n < partials.size(); ++n) {
        if (n > 0) fact = fact * Rational(static_cast<std::int64_t>(n));
        const HeatSeries& p = partials[n];
        if (!(p.c == CoeffTable(BasisKind::General)) && p.offset != static_cast<int>(n))
            throw std::logic_error("partial trace " + std::to_string(n) + " has the wrong scaling dimension");
        CoeffTable t = p.c;
        t *= DimRational(Rational(n % 2 ? -1 : 1) / fact);
        out += t;
    }
    return out;
}

CoeffTable TransverseEngine::general() {
    if (!general_) {
        std::vector<HeatSeries> parts;
        for (int n = 0; n <= 4; ++n) parts.push_back(partial(n));
        general_ = std::make_unique<CoeffTable>(assemble(parts));
    }
    return *general_;
}

CoeffTable TransverseEngine::einstein() { return specialize_einstein(general()); }

CoeffTable times_scalar_curvature(const CoeffTable& e) {
    if (e.kind() != BasisKind::Einstein) throw std::invalid_argument("multiplication by R needs an Einstein-basis table");
    static const std::map<std::string, std::string> next = {{"E0", "E1"}, {"E1", "E2_1"}, {"E2_1", "E3_1"}, {"E2_2", "E3_2"}};
    CoeffTable out(BasisKind::Einstein);
    for (auto& [id, v] : e.entries()) {
        auto it = next.find(id);
        if (it != next.end()) out.add(it->second, v);
    }
    return out;
}

CoeffTable TransverseEngine::einstein_direct() {
    // On Einstein spaces D_mu f(Delta_0) = f(Delta_1 + R/d) D_mu, so the
    // longitudinal part is int dt e^{-t R/d} Tr[D_mu D^nu e^{-(s+t) Delta}].
    CoeffTable out = specialize_einstein(bundle_heat_coefficients(a_.h_functions(), Bundle::Vector, reducer_));
    const HeatSeries& t0 = t_series(0);
    CoeffTable term = specialize_einstein(t0.c);
    const DimRational minus_inv_d(DimPoly(-1), DimPoly::d());
    DimRational pref(1);  // (-1/d)^k
    for (int k = 0; k <= 3; ++k) {
        for (auto& [id, v] : term.entries()) {
            if (v.is_zero()) continue;
            const int p = order_of(id, BasisKind::Einstein) - k - t0.offset;
            out.add(id, v * pref * eval_aux_integral(k + 1, p).value);
        }
        term = times_scalar_curvature(term);
        pref *= minus_inv_d;
    }
    return out;
}

CoeffTable TransverseEngine::sphere() { return specialize_sphere(einstein()); }

std::array<Rational, 4> TransverseEngine::sphere_d4(bool primed) {
    CoeffTable s = sphere();
    std::array<Rational, 4> out;
    for (int k = 0; k < 4; ++k) out[k] = s.get(sphere_basis()[k].id).eval(Rational(4));
    if (primed) {
        // Adding back the constant scalar mode e^{sR/4}; on S^4,
        // (4 pi s)^2 / Vol = s^2 R^2 / 24.
        out[2] = out[2] + Rational(1, 24);
        out[3] = out[3] + Rational(1, 24) * Rational(1, 4);
    }
    return out;
}

std::map<std::string, Regularized> d4_regularize(const CoeffTable& general) {
    if (general.kind() != BasisKind::General) throw std::invalid_argument("regularization needs a general-basis table");
    std::map<std::string, Regularized> out;
    const DimRational dm4(DimPoly::d() - DimPoly(4));
    for (auto& [id, c] : general.entries()) {
        DimRational f = c * dm4;
        Rational f4;
        try {
            f4 = f.eval(Rational(4));
        } catch (const std::domain_error&) {
            throw std::domain_error("double pole at d = 4 in " + id);
        }
        out[id] = Regularized{f.derivative().eval(Rational(4)), Rational(-1, 2) * f4};
    }
    return out;
}

}  // namespace hk
