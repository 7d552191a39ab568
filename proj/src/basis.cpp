#include "hk/basis.hpp"

#include <stdexcept>

#include "hk/substitute.hpp"

namespace hk {

namespace {

std::vector<BasisElement> make(const std::vector<std::tuple<std::string, int, std::string>>& spec) {
    std::vector<BasisElement> v;
    for (auto& [id, order, text] : spec) v.push_back({id, order, Polynomial::parse(text)});
    return v;
}

}  // namespace

const std::vector<BasisElement>& general_basis() {
    static const std::vector<BasisElement> b = make({
        {"R0", 0, "1"},
        {"R1", 1, "R"},
        {"R2_1", 2, "R R"},
        {"R2_2", 2, "Ric[a b] Ric[a b]"},
        {"R2_3", 2, "Riem[a b c e] Riem[a b c e]"},
        {"R3_1", 3, "R R[;a a]"},
        {"R3_2", 3, "Ric[a b] Ric[a b;c c]"},
        {"R3_3", 3, "R R R"},
        {"R3_4", 3, "R Ric[a b] Ric[a b]"},
        {"R3_5", 3, "Ric[a b] Ric[b c] Ric[c a]"},
        {"R3_6", 3, "Ric[a b] Ric[c e] Riem[a c b e]"},
        {"R3_7", 3, "R Riem[a b c e] Riem[a b c e]"},
        {"R3_8", 3, "Ric[a b] Riem[a c e f] Riem[b c e f]"},
        {"R3_9", 3, "Riem[a b c e] Riem[c e f h] Riem[f h a b]"},
        {"R3_10", 3, "Riem[a m b n] Riem[m r n s] Riem[r a s b]"},
    });
    return b;
}

const std::vector<BasisElement>& einstein_basis() {
    static const std::vector<BasisElement> b = make({
        {"E0", 0, "1"},
        {"E1", 1, "R"},
        {"E2_1", 2, "R R"},
        {"E2_2", 2, "Riem[a b c e] Riem[a b c e]"},
        {"E3_1", 3, "R R R"},
        {"E3_2", 3, "R Riem[a b c e] Riem[a b c e]"},
        {"E3_3", 3, "Riem[a b c e] Riem[c e f h] Riem[f h a b]"},
        {"E3_4", 3, "Riem[a m b n] Riem[m r n s] Riem[r a s b]"},
    });
    return b;
}

const std::vector<BasisElement>& sphere_basis() {
    static const std::vector<BasisElement> b = make({
        {"S0", 0, "1"},
        {"S1", 1, "R"},
        {"S2", 2, "R R"},
        {"S3", 3, "R R R"},
    });
    return b;
}

const std::vector<BasisElement>& basis(BasisKind kind) {
    switch (kind) {
        case BasisKind::General: return general_basis();
        case BasisKind::Einstein: return einstein_basis();
        case BasisKind::Sphere: return sphere_basis();
    }
    return general_basis();
}

std::string coeff_name(const std::string& id) { return "c" + id.substr(1); }

// ---------------------------------------------------------------------------

void CoeffTable::check(const std::string& id) const {
    for (auto& b : basis(kind_))
        if (b.id == id) return;
    throw std::invalid_argument("'" + id + "' is not an element of this basis");
}

DimRational CoeffTable::get(const std::string& id) const {
    check(id);
    auto it = v_.find(id);
    return it == v_.end() ? DimRational() : it->second;
}

void CoeffTable::set(const std::string& id, const DimRational& v) {
    check(id);
    if (v.is_zero()) v_.erase(id);
    else v_[id] = v;
}

void CoeffTable::add(const std::string& id, const DimRational& v) { set(id, get(id) + v); }

CoeffTable& CoeffTable::operator+=(const CoeffTable& o) {
    if (o.kind_ != kind_) throw std::invalid_argument("adding tables over different bases");
    for (auto& [id, v] : o.v_) add(id, v);
    return *this;
}

CoeffTable& CoeffTable::operator*=(const DimRational& c) {
    for (auto& b : basis(kind_)) set(b.id, get(b.id) * c);
    return *this;
}

bool CoeffTable::operator==(const CoeffTable& o) const { return kind_ == o.kind_ && v_ == o.v_; }

std::vector<std::pair<std::string, DimRational>> CoeffTable::entries() const {
    std::vector<std::pair<std::string, DimRational>> out;
    for (auto& b : basis(kind_)) out.emplace_back(b.id, get(b.id));
    return out;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<Monomial> basis_monomials(const std::vector<BasisElement>& b) {
    std::vector<Monomial> v;
    for (auto& e : b) v.push_back(e.expr.begin()->first);
    return v;
}

}  // namespace

BasisReducer::BasisReducer()
    : pointwise_(IdentityMode::Pointwise, basis_monomials(general_basis())),
      integrated_(IdentityMode::Integrated, basis_monomials(general_basis())) {
    for (auto& e : general_basis()) {
        if (e.expr.size() != 1 || !(e.expr.begin()->second == DimPoly(1)))
            throw std::logic_error("basis element " + e.id + " is not a unit monomial");
        id_of_[e.expr.begin()->first] = e.id;
    }
}

Polynomial BasisReducer::normal_form(const Polynomial& p, bool integrated) {
    return (integrated ? integrated_ : pointwise_).normal_form(p);
}

CoeffTable BasisReducer::reduce(const Polynomial& p, bool integrated) {
    for (const auto& [m, c] : p)
        for (auto& f : m.f)
            if (f.head != Head::Scalar && f.head != Head::Ricci && f.head != Head::Riemann && f.head != Head::Metric)
                throw std::invalid_argument("basis reduction needs a pure curvature polynomial: " + monomial_str(m));
    validate(p);
    if (!p.is_zero() && !free_labels(p.begin()->first).empty())
        throw std::invalid_argument("basis reduction needs a scalar polynomial");
    Polynomial nf = normal_form(p, integrated);
    CoeffTable t(BasisKind::General);
    for (const auto& [m, c] : nf) {
        auto it = id_of_.find(m);
        if (it == id_of_.end())
            throw std::domain_error(std::string("monomial not reducible to the basis") + (integrated ? "" : " pointwise") + ": " + monomial_str(m));
        t.add(it->second, DimRational(c));
    }
    return t;
}

// ---------------------------------------------------------------------------

CoeffTable specialize_einstein(const CoeffTable& g) {
    if (g.kind() != BasisKind::General) throw std::invalid_argument("Einstein specialization needs a general-basis table");
    const DimRational inv_d(DimPoly(1), DimPoly::d());
    const DimRational inv_d2 = inv_d * inv_d;
    CoeffTable e(BasisKind::Einstein);
    e.add("E0", g.get("R0"));
    e.add("E1", g.get("R1"));
    e.add("E2_1", g.get("R2_1") + g.get("R2_2") * inv_d);
    e.add("E2_2", g.get("R2_3"));
    // R3_1 and R3_2 vanish.
    e.add("E3_1", g.get("R3_3") + g.get("R3_4") * inv_d + g.get("R3_5") * inv_d2 + g.get("R3_6") * inv_d2);
    e.add("E3_2", g.get("R3_7") + g.get("R3_8") * inv_d);
    e.add("E3_3", g.get("R3_9"));
    e.add("E3_4", g.get("R3_10"));
    return e;
}

CoeffTable specialize_sphere(const CoeffTable& e) {
    if (e.kind() != BasisKind::Einstein) throw std::invalid_argument("sphere specialization needs an Einstein-basis table");
    const DimPoly d = DimPoly::d();
    const DimPoly dm1 = d - DimPoly(1);
    const DimRational two_over(DimPoly(2), d * dm1);
    const DimRational e33(DimPoly(4), d * d * dm1 * dm1);
    const DimRational e34(d - DimPoly(2), d * d * dm1 * dm1);
    CoeffTable s(BasisKind::Sphere);
    s.add("S0", e.get("E0"));
    s.add("S1", e.get("E1"));
    s.add("S2", e.get("E2_1") + e.get("E2_2") * two_over);
    s.add("S3", e.get("E3_1") + e.get("E3_2") * two_over + e.get("E3_3") * e33 + e.get("E3_4") * e34);
    return s;
}

// ---------------------------------------------------------------------------

namespace {

// Replaces Riemann by (g g - g g) R and Ricci by g R; the normalizations
// 1/(d(d-1)) and 1/d are returned separately.
struct MaxSym {
    Polynomial riem = Polynomial::parse("g[mu rho] g[nu sigma] R - g[mu sigma] g[nu rho] R");
    Polynomial ric = Polynomial::parse("g[mu nu] R");
};

}  // namespace

std::map<int, DimRational> evaluate_on_sphere(const Polynomial& p) {
    static const MaxSym ms;
    const DimPoly d = DimPoly::d();
    std::map<int, DimRational> out;
    for (const auto& [m, c] : p) {
        int n_riem = 0, n_ric = 0;
        bool deriv = false;
        for (auto& f : m.f) {
            if (f.n_deriv() > 0) deriv = true;
            n_riem += f.head == Head::Riemann;
            n_ric += f.head == Head::Ricci;
        }
        if (deriv) continue;
        Rule rule = [&](const Factor& f) -> const Polynomial* {
            if (f.head == Head::Riemann) return &ms.riem;
            if (f.head == Head::Ricci) return &ms.ric;
            return nullptr;
        };
        Polynomial r;
        expand(m, c, rule, r);
        DimPoly den(1);
        for (int k = 0; k < n_riem; ++k) den *= d * (d - DimPoly(1));
        for (int k = 0; k < n_ric; ++k) den *= d;
        for (const auto& [rm, rc] : r) {
            for (auto& f : rm.f)
                if (f.head != Head::Scalar) throw std::logic_error("sphere evaluation left a tensor factor");
            int k = static_cast<int>(rm.f.size());
            out[k] += DimRational(rc, den);
        }
    }
    for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

CoeffTable evaluate_on_einstein(const Polynomial& p) {
    static const MaxSym ms;
    static IdentityReducer reducer(IdentityMode::Pointwise, basis_monomials(einstein_basis()));
    static const std::map<Monomial, std::string> ids = [] {
        std::map<Monomial, std::string> v;
        for (auto& e : einstein_basis()) v[e.expr.begin()->first] = e.id;
        return v;
    }();
    const DimPoly d = DimPoly::d();
    CoeffTable out(BasisKind::Einstein);
    for (const auto& [m, c] : p) {
        int n_ric = 0;
        bool vanish = false;
        for (auto& f : m.f) {
            if ((f.head == Head::Scalar || f.head == Head::Ricci) && f.n_deriv() > 0) vanish = true;
            if (f.head == Head::Riemann && f.n_deriv() > 0) throw std::domain_error("derivative of Riemann on an Einstein space: " + monomial_str(m));
            n_ric += f.head == Head::Ricci;
        }
        if (vanish) continue;
        Rule rule = [&](const Factor& f) -> const Polynomial* { return f.head == Head::Ricci ? &ms.ric : nullptr; };
        Polynomial r;
        expand(m, c, rule, r);
        DimPoly den(1);
        for (int k = 0; k < n_ric; ++k) den *= d;
        for (const auto& [rm, rc] : reducer.normal_form(r)) {
            auto it = ids.find(rm);
            if (it == ids.end()) throw std::domain_error("not reducible to the Einstein basis: " + monomial_str(rm));
            out.add(it->second, DimRational(rc, den));
        }
    }
    return out;
}

}  // namespace hk
