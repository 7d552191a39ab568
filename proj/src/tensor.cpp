#include "hk/tensor.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hk {

int own_rank(Head h, int order) {
    switch (h) {
        case Head::Riemann: return 4;
        case Head::Ricci:
        case Head::Metric:
        case Head::Strength: return 2;
        case Head::Field: return order;
        default: return 0;
    }
}

Factor::Factor(Head h, int ord, std::initializer_list<Label> own_then_derivs) : head(h), order(static_cast<std::int8_t>(ord)) {
    for (Label l : own_then_derivs) push(l);
}

Factor Factor::make(Head h, int ord, const std::vector<Label>& own, const std::vector<Label>& derivs) {
    Factor f;
    f.head = h;
    f.order = static_cast<std::int8_t>(ord);
    if (static_cast<int>(own.size()) != own_rank(h, ord)) throw std::invalid_argument("wrong number of indices on factor");
    for (Label l : own) f.push(l);
    for (Label l : derivs) f.push(l);
    return f;
}

void Factor::push(Label l) {
    if (size >= kMaxSlots) throw std::length_error("too many indices on one factor");
    idx[size++] = l;
}

bool operator==(const Factor& a, const Factor& b) {
    return a.head == b.head && a.order == b.order && a.size == b.size &&
           std::equal(a.idx.begin(), a.idx.begin() + a.size, b.idx.begin());
}

bool operator<(const Factor& a, const Factor& b) {
    if (a.head != b.head) return a.head < b.head;
    if (a.order != b.order) return a.order < b.order;
    if (a.size != b.size) return a.size < b.size;
    return std::lexicographical_compare(a.idx.begin(), a.idx.begin() + a.size, b.idx.begin(), b.idx.begin() + b.size);
}

Label Monomial::max_label() const {
    Label m = kFirstDummy - 1;
    for (const auto& x : f)
        for (int i = 0; i < x.size; ++i) m = std::max(m, x.idx[i]);
    return m;
}

Label Monomial::fresh() const { return std::max<Label>(max_label() + 1, 1000); }

int Monomial::count(Head h) const {
    int n = 0;
    for (const auto& x : f) n += x.head == h;
    return n;
}

int Monomial::weight2() const {
    int w = 0;
    for (const auto& x : f) {
        switch (x.head) {
            case Head::Scalar:
            case Head::Ricci:
            case Head::Riemann:
            case Head::Strength:
            case Head::Endo: w += 2 + x.n_deriv(); break;
            case Head::Coeff: w += 2 * x.order + x.n_deriv(); break;
            case Head::Sigma: w += x.n_deriv() - 2; break;
            default: break;
        }
    }
    return w;
}

// ---------------------------------------------------------------------------
// Canonicalization

namespace {

struct Image {
    std::array<std::int8_t, 4> perm;
    int sign;
};

const std::vector<Image>& images(Head h, int n_own) {
    static const std::vector<Image> riem = {
        {{0, 1, 2, 3}, 1},  {{1, 0, 2, 3}, -1}, {{0, 1, 3, 2}, -1}, {{1, 0, 3, 2}, 1},
        {{2, 3, 0, 1}, 1},  {{3, 2, 0, 1}, -1}, {{2, 3, 1, 0}, -1}, {{3, 2, 1, 0}, 1},
    };
    static const std::vector<Image> sym = {{{0, 1, 0, 0}, 1}, {{1, 0, 0, 0}, 1}};
    static const std::vector<Image> anti = {{{0, 1, 0, 0}, 1}, {{1, 0, 0, 0}, -1}};
    static const std::vector<Image> id = {{{0, 1, 2, 3}, 1}};
    switch (h) {
        case Head::Riemann: return riem;
        case Head::Ricci:
        case Head::Metric: return sym;
        case Head::Strength: return anti;
        default: (void)n_own; return id;
    }
}

bool find_other(std::vector<Factor>& fs, std::size_t skip_factor, Label l, std::size_t& fi, int& si) {
    for (std::size_t i = 0; i < fs.size(); ++i) {
        if (i == skip_factor) continue;
        for (int s = 0; s < fs[i].size; ++s)
            if (fs[i].idx[s] == l) {
                fi = i;
                si = s;
                return true;
            }
    }
    return false;
}

// Removes metrics contracted with anything; converts self-traces of Riemann
// and Ricci. Returns false if the monomial vanishes.
bool contract(std::vector<Factor>& fs, int& sign, int& dpow) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < fs.size() && !changed; ++i) {
            Factor& x = fs[i];
            if (x.head == Head::Metric) {
                if (x.n_deriv() > 0) return false;
                Label a = x.idx[0], b = x.idx[1];
                if (a == b && is_dummy(a)) {
                    ++dpow;
                    fs.erase(fs.begin() + i);
                    changed = true;
                    break;
                }
                std::size_t fi;
                int si;
                if (is_dummy(a) && find_other(fs, i, a, fi, si)) {
                    fs[fi].idx[si] = b;
                } else if (is_dummy(b) && find_other(fs, i, b, fi, si)) {
                    fs[fi].idx[si] = a;
                } else {
                    continue;
                }
                fs.erase(fs.begin() + i);
                changed = true;
                break;
            }
            if (x.head == Head::Riemann) {
                auto& v = x.idx;
                auto eq = [&](int p, int q) { return v[p] == v[q] && is_dummy(v[p]); };
                if (eq(0, 1) || eq(2, 3)) return false;
                int keep0 = -1, keep1 = -1, s = 1;
                if (eq(0, 2)) keep0 = 1, keep1 = 3;
                else if (eq(1, 3)) keep0 = 0, keep1 = 2;
                else if (eq(0, 3)) keep0 = 1, keep1 = 2, s = -1;
                else if (eq(1, 2)) keep0 = 0, keep1 = 3, s = -1;
                if (keep0 >= 0) {
                    Factor r;
                    r.head = Head::Ricci;
                    r.push(v[keep0]);
                    r.push(v[keep1]);
                    for (int k = 4; k < x.size; ++k) r.push(v[k]);
                    x = r;
                    sign *= s;
                    changed = true;
                }
            } else if (x.head == Head::Ricci) {
                if (x.idx[0] == x.idx[1] && is_dummy(x.idx[0])) {
                    Factor r;
                    r.head = Head::Scalar;
                    for (int k = 2; k < x.size; ++k) r.push(x.idx[k]);
                    x = r;
                    changed = true;
                }
            } else if (x.head == Head::Strength) {
                if (x.idx[0] == x.idx[1] && is_dummy(x.idx[0])) return false;
            }
        }
    }
    return true;
}

struct Search {
    std::vector<Factor> fac;
    std::vector<std::vector<int>> cand;  // candidates per output position
    std::vector<int> offset;
    int n = 0;

    std::vector<Label> key, best_key;
    std::vector<std::pair<int, int>> choice, best_choice;
    int sign = 1, best_sign = 1;
    bool have_best = false, conflict = false;
    long version = 0;  // bumped whenever best_key changes
    std::vector<bool> used;
    std::vector<std::pair<Label, Label>> dmap;  // dummy label -> code
    Label next_code = kFirstDummy;

    Label code_of(Label l, bool& fresh) {
        fresh = false;
        if (!is_dummy(l)) return l;
        for (auto& [a, c] : dmap)
            if (a == l) return c;
        fresh = true;
        dmap.emplace_back(l, next_code);
        return next_code++;
    }

    void rec(int pos, int state) {
        if (pos == n) {
            if (!have_best || state < 0) {
                best_key = key;
                best_choice = choice;
                best_sign = sign;
                have_best = true;
                ++version;
                conflict = false;
            } else if (sign != best_sign) {
                conflict = true;
            }
            return;
        }
        for (std::size_t ci = 0; ci < cand[pos].size(); ++ci) {
            int fi = cand[pos][ci];
            if (used[fi]) continue;
            bool dup = false;
            for (std::size_t cj = 0; cj < ci; ++cj) {
                int fj = cand[pos][cj];
                if (!used[fj] && fac[fj] == fac[fi]) {
                    dup = true;
                    break;
                }
            }
            if (dup) continue;
            const Factor& x = fac[fi];
            int no = x.n_own();
            const auto& ims = images(x.head, no);
            for (std::size_t ii = 0; ii < ims.size(); ++ii) {
                const Image& im = ims[ii];
                std::size_t dsize = dmap.size();
                Label saved_next = next_code;
                int st = have_best ? state : -1;
                bool pruned = false;
                int off = offset[pos];
                for (int s = 0; s < x.size; ++s) {
                    Label l = s < no ? x.idx[im.perm[s]] : x.idx[s];
                    bool fr;
                    Label c = code_of(l, fr);
                    key[off + s] = c;
                    if (st == 0 && have_best) {
                        if (c > best_key[off + s]) {
                            pruned = true;
                            break;
                        }
                        if (c < best_key[off + s]) st = -1;
                    }
                }
                if (!pruned) {
                    used[fi] = true;
                    choice[pos] = {fi, static_cast<int>(ii)};
                    sign *= im.sign;
                    long v = version;
                    rec(pos + 1, st);
                    sign *= im.sign;
                    // A new best found below shares this prefix.
                    if (version != v) state = 0;
                    used[fi] = false;
                }
                dmap.resize(dsize);
                next_code = saved_next;
            }
        }
    }
};

int group_rank(const Factor& a) { return static_cast<int>(a.head) * 4096 + a.order * 64 + a.size; }

}  // namespace

bool canonicalize(Monomial& m, DimPoly& coef) {
    int sign = 1, dpow = 0;
    if (!contract(m.f, sign, dpow)) return false;

    Search s;
    std::vector<Factor> cnum, internal;
    for (auto& x : m.f) (is_internal(x.head) ? internal : cnum).push_back(x);
    std::stable_sort(cnum.begin(), cnum.end(), [](const Factor& a, const Factor& b) { return group_rank(a) < group_rank(b); });
    s.fac = cnum;
    s.fac.insert(s.fac.end(), internal.begin(), internal.end());
    s.n = static_cast<int>(s.fac.size());
    s.cand.resize(s.n);
    s.offset.resize(s.n);
    int total = 0;
    for (int p = 0; p < s.n; ++p) {
        s.offset[p] = total;
        total += s.fac[p].size;
        if (p < static_cast<int>(cnum.size())) {
            for (int q = 0; q < static_cast<int>(cnum.size()); ++q)
                if (group_rank(cnum[q]) == group_rank(cnum[p])) s.cand[p].push_back(q);
        } else {
            s.cand[p].push_back(p);
        }
    }
    s.key.assign(total, 0);
    s.choice.assign(s.n, {0, 0});
    s.used.assign(s.n, false);
    s.rec(0, 0);
    if (s.conflict) return false;

    std::vector<Factor> out;
    out.reserve(s.n);
    for (int p = 0; p < s.n; ++p) {
        const Factor& x = s.fac[s.best_choice[p].first];
        Factor y = x;
        for (int k = 0; k < x.size; ++k) y.idx[k] = s.best_key[s.offset[p] + k];
        out.push_back(y);
    }
    m.f = std::move(out);
    if (sign * s.best_sign < 0) coef = -coef;
    for (int k = 0; k < dpow; ++k) coef *= DimPoly::d();
    return true;
}

// ---------------------------------------------------------------------------

Polynomial Polynomial::constant(const DimPoly& c) {
    Polynomial p;
    if (!c.is_zero()) p.t_[Monomial{}] = c;
    return p;
}

Polynomial Polynomial::of(const Monomial& m, const DimPoly& c) {
    Polynomial p;
    p.add(m, c);
    return p;
}

void Polynomial::add(Monomial m, DimPoly c) {
    if (c.is_zero()) return;
    if (!canonicalize(m, c)) return;
    add_canonical(m, c);
}

void Polynomial::add_canonical(const Monomial& m, const DimPoly& c) {
    if (c.is_zero()) return;
    auto it = t_.find(m);
    if (it == t_.end()) {
        t_.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    for (const auto& [m, c] : o.t_) add_canonical(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    for (const auto& [m, c] : o.t_) add_canonical(m, -c);
    return *this;
}

Polynomial& Polynomial::operator*=(const DimPoly& c) {
    if (c.is_zero()) {
        t_.clear();
        return *this;
    }
    for (auto& [m, v] : t_) v *= c;
    return *this;
}

Polynomial Polynomial::truncated(int max_w2) const {
    Polynomial p;
    for (const auto& [m, c] : t_)
        if (m.weight2() <= max_w2) p.t_.emplace(m, c);
    return p;
}

Polynomial Polynomial::at_dimension(const Rational& d) const {
    Polynomial p;
    for (const auto& [m, c] : t_) p.add_canonical(m, DimPoly(c.eval(d)));
    return p;
}

Monomial concat(const Monomial& a, const Monomial& b) {
    // Rename dummies of b away from those of a.
    Monomial bb = b;
    Label base = a.fresh();
    std::map<Label, Label> ren;
    for (auto& x : bb.f)
        for (int s = 0; s < x.size; ++s) {
            Label l = x.idx[s];
            if (!is_dummy(l)) continue;
            auto it = ren.find(l);
            if (it == ren.end()) it = ren.emplace(l, static_cast<Label>(base + ren.size())).first;
            x.idx[s] = it->second;
        }
    Monomial r = a;
    r.f.insert(r.f.end(), bb.f.begin(), bb.f.end());
    return r;
}

Polynomial multiply(const Polynomial& a, const Polynomial& b) {
    Polynomial r;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) r.add(concat(ma, mb), ca * cb);
    return r;
}

Monomial relabel(const Monomial& m, const std::map<Label, Label>& map) {
    Label base = m.fresh();
    for (auto& [k, v] : map) base = std::max<Label>(base, static_cast<Label>(std::max(k, v) + 1));
    std::map<Label, Label> ren;
    Monomial r = m;
    for (auto& x : r.f)
        for (int s = 0; s < x.size; ++s) {
            Label l = x.idx[s];
            auto it = map.find(l);
            if (it != map.end()) {
                x.idx[s] = it->second;
            } else if (is_dummy(l)) {
                auto jt = ren.find(l);
                if (jt == ren.end()) jt = ren.emplace(l, static_cast<Label>(base + ren.size())).first;
                x.idx[s] = jt->second;
            }
        }
    return r;
}

Polynomial relabel(const Polynomial& p, const std::map<Label, Label>& map) {
    Polynomial r;
    for (const auto& [m, c] : p) r.add(relabel(m, map), c);
    return r;
}

std::vector<Label> free_labels(const Monomial& m) {
    std::vector<Label> out;
    for (const auto& x : m.f)
        for (int s = 0; s < x.size; ++s)
            if (!is_dummy(x.idx[s]) && x.idx[s] != kU) out.push_back(x.idx[s]);
    std::sort(out.begin(), out.end());
    return out;
}

void validate(const Polynomial& p) {
    bool first = true;
    std::vector<Label> ref;
    for (const auto& [m, c] : p) {
        std::map<Label, int> cnt;
        for (const auto& x : m.f)
            for (int s = 0; s < x.size; ++s) ++cnt[x.idx[s]];
        for (auto& [l, n] : cnt) {
            if (l == kU) continue;
            if (is_dummy(l) && n != 2) throw std::invalid_argument("dummy index not paired in " + monomial_str(m));
            if (!is_dummy(l) && n != 1) throw std::invalid_argument("free index repeated in " + monomial_str(m));
        }
        auto fl = free_labels(m);
        if (first) ref = fl, first = false;
        else if (fl != ref) throw std::invalid_argument("inconsistent free indices in " + monomial_str(m));
    }
}

// ---------------------------------------------------------------------------
// Printing and parsing

namespace {

const std::vector<std::string>& free_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v = {"mu", "nu", "rho", "sigma", "alpha", "beta", "gamma", "delta",
                                      "lambda", "kappa", "tau", "theta", "eta", "zeta", "xi", "chi",
                                      "psi", "omega", "epsilon", "iota"};
        while (v.size() < kU) v.push_back("a" + std::to_string(v.size()));
        return v;
    }();
    return names;
}

const std::vector<std::string> kDummyNames = {"i", "j", "k", "l", "m", "n", "p", "q",
                                              "r", "s", "t", "v", "w", "x", "y", "z"};

std::string head_name(const Factor& f) {
    switch (f.head) {
        case Head::Scalar: return "R";
        case Head::Ricci: return "Ric";
        case Head::Riemann: return "Riem";
        case Head::Sigma: return "sigma";
        case Head::Metric: return "g";
        case Head::Field: return "Phi";
        case Head::Strength: return "F";
        case Head::Endo: return "E";
        case Head::Coeff: return "A" + std::to_string(f.order);
    }
    return "?";
}

}  // namespace

std::string label_name(Label l) {
    if (l == kU) return "u";
    if (l >= 0 && l < kU) return free_names()[l];
    if (l >= kFirstDummy && l < kFirstDummy + 160) {
        int k = l - kFirstDummy;
        std::string s = kDummyNames[k % kDummyNames.size()];
        if (k >= static_cast<int>(kDummyNames.size())) s += std::to_string(k / kDummyNames.size());
        return s;
    }
    return "x" + std::to_string(l);
}

Label free_label(const std::string& name) {
    if (name == "u") return kU;
    const auto& v = free_names();
    auto it = std::find(v.begin(), v.end(), name);
    if (it == v.end()) throw std::invalid_argument("unknown free index name '" + name + "'");
    return static_cast<Label>(it - v.begin());
}

std::string factor_str(const Factor& f) {
    std::string s = head_name(f);
    if (f.size == 0) return s;
    s += "[";
    int no = f.n_own();
    for (int k = 0; k < no; ++k) {
        if (k) s += " ";
        s += label_name(f.idx[k]);
    }
    if (f.n_deriv() > 0) {
        s += ";";
        for (int k = no; k < f.size; ++k) {
            if (k > no) s += " ";
            s += label_name(f.idx[k]);
        }
    }
    return s + "]";
}

std::string monomial_str(const Monomial& m) {
    if (m.f.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < m.f.size(); ++i) {
        if (i) s += " ";
        s += factor_str(m.f[i]);
    }
    return s;
}

std::string Polynomial::str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : t_) {
        if (!first) os << "\n";
        first = false;
        os << "(" << c.str() << ")";
        if (!m.f.empty()) os << " " << monomial_str(m);
    }
    return os.str();
}

namespace {

struct RawFactor {
    std::string head;
    std::vector<std::string> own, der;
};

Factor build_factor(const RawFactor& r, const std::map<std::string, Label>& labels) {
    Head h;
    int order = 0;
    if (r.head == "R") h = Head::Scalar;
    else if (r.head == "Ric") h = Head::Ricci;
    else if (r.head == "Riem") h = Head::Riemann;
    else if (r.head == "sigma") h = Head::Sigma;
    else if (r.head == "g") h = Head::Metric;
    else if (r.head == "Phi") h = Head::Field, order = static_cast<int>(r.own.size());
    else if (r.head == "F") h = Head::Strength;
    else if (r.head == "E") h = Head::Endo;
    else if (r.head.size() >= 2 && r.head[0] == 'A' && std::isdigit(static_cast<unsigned char>(r.head[1])))
        h = Head::Coeff, order = std::stoi(r.head.substr(1));
    else throw std::invalid_argument("unknown tensor head '" + r.head + "'");
    std::vector<Label> own, der;
    for (auto& n : r.own) own.push_back(labels.at(n));
    for (auto& n : r.der) der.push_back(labels.at(n));
    return Factor::make(h, order, own, der);
}

}  // namespace

Polynomial Polynomial::parse(const std::string& text) {
    Polynomial out;
    std::size_t i = 0;
    const std::size_t n = text.size();
    auto skip = [&] {
        while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip();
    if (text.substr(i) == "0") return out;
    while (true) {
        skip();
        if (i >= n) break;
        DimPoly coef(1);
        if (text[i] == '+' || text[i] == '-') {
            if (text[i] == '-') coef = DimPoly(-1);
            ++i;
            skip();
        }
        if (i < n && text[i] == '(') {
            int depth = 0;
            std::size_t j = i;
            for (; j < n; ++j) {
                if (text[j] == '(') ++depth;
                if (text[j] == ')' && --depth == 0) break;
            }
            if (j >= n) throw std::invalid_argument("unbalanced parenthesis in expression");
            DimRational c = DimRational::parse(text.substr(i + 1, j - i - 1));
            if (!c.is_polynomial()) throw std::invalid_argument("coefficient must be polynomial in d");
            coef *= c.num() * DimPoly(Rational(1) / c.den().constant());
            i = j + 1;
        } else if (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
            std::size_t j = i;
            while (j < n && (std::isdigit(static_cast<unsigned char>(text[j])) || text[j] == '/')) ++j;
            coef *= DimPoly(Rational::parse(text.substr(i, j - i)));
            i = j;
        }
        std::vector<RawFactor> raw;
        while (true) {
            skip();
            if (i >= n || text[i] == '+' || text[i] == '-' || text[i] == '(') break;
            if (text[i] == '*') {
                ++i;
                continue;
            }
            RawFactor r;
            std::size_t j = i;
            while (j < n && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
            if (j == i) throw std::invalid_argument(std::string("unexpected character '") + text[i] + "'");
            r.head = text.substr(i, j - i);
            i = j;
            if (i < n && text[i] == '[') {
                std::size_t close = text.find(']', i);
                if (close == std::string::npos) throw std::invalid_argument("missing ']'");
                std::string inside = text.substr(i + 1, close - i - 1);
                i = close + 1;
                auto semi = inside.find(';');
                auto split = [](const std::string& s) {
                    std::vector<std::string> v;
                    std::istringstream is(s);
                    std::string w;
                    while (is >> w) v.push_back(w);
                    return v;
                };
                if (semi == std::string::npos) {
                    r.own = split(inside);
                } else {
                    r.own = split(inside.substr(0, semi));
                    r.der = split(inside.substr(semi + 1));
                }
            }
            raw.push_back(r);
        }
        std::map<std::string, int> cnt;
        for (auto& r : raw) {
            for (auto& s : r.own) ++cnt[s];
            for (auto& s : r.der) ++cnt[s];
        }
        std::map<std::string, Label> labels;
        Label next = 1000;
        for (auto& [name, c] : cnt) {
            if (name == "u") labels[name] = kU;
            else if (c == 2) labels[name] = next++;
            else if (c == 1) labels[name] = free_label(name);
            else throw std::invalid_argument("index '" + name + "' appears more than twice");
        }
        Monomial m;
        for (auto& r : raw) m.f.push_back(build_factor(r, labels));
        out.add(m, coef);
    }
    return out;
}

}  // namespace hk
