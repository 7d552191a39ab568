// Acceptance checker: one PASS/FAIL line per criterion with the reason and
// the runtime. Reference values come from tests/reference.hpp and
// tests/data; nothing here adjusts a reference to make a check pass.

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "hk/oracle.hpp"
#include "hk/transverse.hpp"
#include "random_tensors.hpp"
#include "reference.hpp"

using namespace hk;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void check(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            notes.push_back("mismatch: " + what);
        }
    }
    void note(const std::string& s) { notes.push_back(s); }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double x, int prec = 3) {
    std::ostringstream os;
    os.precision(prec);
    os << x;
    return os.str();
}

// Ids where two tables differ.
std::vector<std::string> differing(const CoeffTable& got, const CoeffTable& want) {
    std::vector<std::string> out;
    for (auto& [id, v] : want.entries())
        if (!(got.get(id) == v)) out.push_back(id);
    return out;
}

std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
    return s;
}

struct Pipeline {
    DeWittTable table{3};
    HFunctions h{table};
    OpAlgebra a{h};
    BasisReducer r;
    TransverseEngine e{a, r};
};

Pipeline& pipeline() {
    static Pipeline p;
    return p;
}

// 1. World function limits.
Outcome sigma_table() {
    Outcome o;
    const auto t0 = Clock::now();
    const SigmaTable t(8);
    IdentityReducer id(IdentityMode::Pointwise);
    const double build = seconds_since(t0);
    o.check(t.entry(1).is_zero(), "n = 1");
    o.check(t.entry(2) == Polynomial::parse("g[mu nu]"), "n = 2");
    o.check(t.entry(3).is_zero(), "n = 3");
    o.check(id.equivalent(t.entry(4), Polynomial::parse(reference::kSigma4)), "n = 4");
    const bool five = id.equivalent(t.entry(5), Polynomial::parse(reference::kSigma5));
    o.check(five, "n = 5");
    if (!five) {
        const Polynomial published = Polynomial::parse(reference::kSigma5);
        const bool printed_symmetric = id.equivalent(published, relabel(published, {{0, 1}, {1, 0}}));
        const bool fixed = id.equivalent(t.entry(5), Polynomial::parse(reference::kSigma5Fixed));
        o.note(std::string("the published n = 5 form is ") + (printed_symmetric ? "" : "not ") +
               "symmetric in its first two slots; with nu and rho exchanged in its first three terms it " +
               (fixed ? "equals" : "still differs from") + " the computed entry");
    }
    const Polynomial six = t.at({free_label("alpha"), free_label("beta"), kU, kU, kU, kU});
    o.check(id.equivalent(six, Polynomial::parse(reference::kSigma6)), "symmetrized n = 6");
    const double total = seconds_since(t0);
    o.check(total < 1.0, "runtime " + fmt(total) + " s >= 1 s");
    o.note("table to n = 8 built in " + fmt(build) + " s");
    return o;
}

// 2. Off-diagonal coefficients.
Outcome offdiag(const std::string& data) {
    Outcome o;
    const auto t0 = Clock::now();
    const DeWittTable t(3);
    const double build = seconds_since(t0);
    IdentityReducer id(IdentityMode::Pointwise);
    auto contracted = [&](int n, int m) { return t.at(n, std::vector<Label>(m, kU)); };
    auto same = [&](const Polynomial& got, const std::string& file) {
        return id.normal_form(got - reference::load(data, file)).is_zero();
    };
    o.check(same(t.entry(1, 0), "ref_A1.txt"), "A1");
    o.check(same(t.entry(2, 0), "ref_A2.txt"), "A2");
    o.check(same(t.entry(1, 1), "ref_dA1_1.txt"), "D A1");
    o.check(same(contracted(0, 2), "ref_dA0_2.txt"), "D^2 A0");
    o.check(same(contracted(0, 3), "ref_dA0_3.txt"), "D^3 A0");
    o.check(same(contracted(0, 4), "ref_dA0_4.txt"), "D^4 A0");
    o.check(same(contracted(1, 2), "ref_dA1_2.txt"), "D^2 A1");
    o.check(same(contracted(0, 5), "ref_dA0_5.txt"), "D^5 A0");
    o.check(same(contracted(0, 6), "ref_dA0_6.txt"), "D^6 A0");
    o.check(same(contracted(1, 3), "ref_dA1_3.txt"), "D^3 A1");
    o.check(same(t.entry(2, 1), "ref_dA2_1.txt"), "D A2");
    o.note("D A2 is compared with its published (Delta R)_{;a} read as (Delta R)_{;mu}, the only index-consistent reading");
    const Polynomial a3_reference = reference::load(data, "ref_A3.txt");
    const Polynomial diff = id.normal_form(t.entry(3, 0) - a3_reference);
    o.check(diff.is_zero(), "A3");
    if (!diff.is_zero()) {
        const bool explained = id.normal_form(t.entry(3, 0) - a3_reference - reference::load(data, "ref_A3_corrections.txt")).is_zero();
        o.note("A3 differs from the published form in " + std::to_string(diff.size()) + " normal-form terms (R Delta R, F^3, Ric F F, Riem F F, E F F order); " +
               (explained ? "the difference is exactly the correction file, each term cross-checked against the standard a6 and self-adjointness"
                          : "the difference is NOT the recorded correction"));
    }
    const double total = seconds_since(t0);
    o.check(total < 300, "runtime " + fmt(total) + " s >= 5 min");
    o.note("weight-3 table built in " + fmt(build) + " s");
    return o;
}

// 3. Traced coefficients on four bundles.
Outcome bundle_tables() {
    Outcome o;
    Pipeline& p = pipeline();
    const CoeffTable scalar = bundle_heat_coefficients(p.h, Bundle::Scalar, p.r);
    const CoeffTable vector = bundle_heat_coefficients(p.h, Bundle::Vector, p.r);
    const CoeffTable tensor = bundle_heat_coefficients(p.h, Bundle::SymTensor, p.r);
    const CoeffTable transverse = p.e.general();
    for (auto [name, got, want] : {std::tuple{"scalar", &scalar, reference::scalar_table()},
                                   std::tuple{"vector", &vector, reference::vector_table()},
                                   std::tuple{"tensor", &tensor, reference::tensor_table()},
                                   std::tuple{"transverse", &transverse, reference::transverse_table()}}) {
        const auto bad = differing(*got, want);
        o.check(bad.empty(), std::string(name) + " column at " + join(bad));
    }
    const CoeffTable shifted = reference::transverse_table() + p.e.c2().c * DimRational(Rational(-1, 6));
    if (differing(transverse, reference::transverse_table()).size() > 0)
        o.note(std::string("computed transverse column ") + (differing(transverse, shifted).empty() ? "equals" : "does NOT equal") +
               " the published one minus C2/6: the quadruple commutator subtrace is -2 C2 by cyclicity, published +2 C2");
    return o;
}

// 4. Partial traces and intermediate results.
Outcome partial_traces() {
    Outcome o;
    TransverseEngine& e = pipeline().e;
    auto series = [&](const HeatSeries& got, int offset, const CoeffTable& want, const std::string& what) {
        const auto bad = differing(got.c, want);
        o.check(got.offset == offset && bad.empty(), what + (bad.empty() ? "" : " at " + join(bad)));
    };
    series(e.partial(0), 0, reference::partial0(), "S^(0)");
    series(e.partial0_via_t(), 0, reference::partial0(), "S^(0) via T^(n)");
    series(e.partial(1), 1, reference::partial1(), "S^(1)");
    series(e.subtraces(2).at(0).value, 2, reference::partial2a(), "S^(2) single commutators");
    series(e.subtraces(2).at(1).value, 2, reference::partial2b(), "S^(2) double commutator");
    series(e.partial(2), 2, reference::partial2(), "S^(2)");
    for (int n = 0; n <= 4; ++n) {
        const auto [offset, want] = reference::t_series(n);
        series(e.t_series(n), offset, want, "T^(" + std::to_string(n) + ")");
    }
    series(e.c1(), 3, reference::c1(), "C1");
    series(e.c2(), 3, reference::c2(), "C2");
    o.check(specialize_einstein(e.c1().c) == CoeffTable(BasisKind::Einstein), "C1 on Einstein spaces");
    o.check(specialize_einstein(e.c2().c) == CoeffTable(BasisKind::Einstein), "C2 on Einstein spaces");
    const auto& s3 = e.subtraces(3);
    for (std::size_t i = 0; i < s3.size(); ++i) {
        const auto [k1, k2] = reference::kSubtraces3.at(i);
        series(s3[i].value, 3, reference::c1() * DimRational(k1) + reference::c2() * DimRational(k2), "third order subtrace " + s3[i].name);
    }
    series(e.partial(3), 3, reference::c1() + reference::c2() * DimRational(-1), "S^(3) = C1 - C2");
    const auto& s4 = e.subtraces(4);
    for (std::size_t i = 0; i < s4.size(); ++i)
        series(s4[i].value, 4, reference::c2() * DimRational(reference::kSubtraces4C2.at(i)), "fourth order subtrace " + s4[i].name);
    series(e.partial(4), 4, reference::c2() * DimRational(3), "S^(4) = 3 C2");
    if (!(e.partial(4).c == reference::c2() * DimRational(3)))
        o.note("computed quadruple commutator subtrace is -2 C2 (Tr N4 = 0, Tr N1 N3 = 2 C2 and cyclicity force it), so S^(4) = -C2");
    return o;
}

// 5. Einstein spaces.
Outcome einstein() {
    Outcome o;
    TransverseEngine& e = pipeline().e;
    const CoeffTable via = e.einstein();
    const CoeffTable direct = e.einstein_direct();
    o.check(differing(via, reference::einstein_table()).empty(), "substitution path at " + join(differing(via, reference::einstein_table())));
    o.check(differing(direct, reference::einstein_table()).empty(), "direct path at " + join(differing(direct, reference::einstein_table())));
    for (const CoeffTable* t : {&via, &direct})
        for (int d : {2, 4, 6})
            for (auto& [id, c] : t->entries()) {
                try {
                    c.eval(Rational(d));
                } catch (const std::exception&) {
                    o.check(false, id + " has a pole at d = " + std::to_string(d));
                }
            }
    return o;
}

// 6. Spheres.
Outcome sphere() {
    Outcome o;
    TransverseEngine& e = pipeline().e;
    o.check(differing(e.sphere(), reference::sphere_table()).empty(), "general d at " + join(differing(e.sphere(), reference::sphere_table())));
    o.check(e.sphere_d4(false) == reference::kSphere4, "d = 4 unprimed");
    o.check(e.sphere_d4(true) == reference::kSphere4Primed, "d = 4 primed");
    return o;
}

// 7. Regularization at d = 4.
Outcome regularization() {
    Outcome o;
    TransverseEngine& e = pipeline().e;
    const auto reg = d4_regularize(e.general());
    std::vector<std::string> finite_bad, log_bad;
    int logs = 0;
    for (auto& [id, finite, log] : reference::kD4) {
        if (!(reg.at(id).finite == finite)) finite_bad.push_back(id + " (" + reg.at(id).finite.str() + " vs " + finite.str() + ")");
        if (id.rfind("R3_", 0) == 0) ++logs;
        if (!(reg.at(id).log == log)) log_bad.push_back(id);
    }
    o.check(finite_bad.empty(), "finite parts " + join(finite_bad));
    o.check(log_bad.empty(), "log parts " + join(log_bad));
    if (log_bad.empty()) o.note("all " + std::to_string(logs) + " third-order log parts match");
    if (!finite_bad.empty()) o.note("finite parts differ by -C2(4)/6, the quadruple commutator sign; log parts are independent of it");
    return o;
}

// 8. Property suites.
Outcome properties() {
    Outcome o;
    std::mt19937 rng(20240611);
    int checked = 0, failures = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        const Monomial m = testing::random_monomial(rng, trial % 5, trial % 2 == 0);
        Monomial c0 = m;
        DimPoly k0(1);
        const bool nz0 = canonicalize(c0, k0);
        int sign = 1;
        Monomial c1 = testing::random_rewrite(m, rng, sign);
        DimPoly k1(sign);
        const bool nz1 = canonicalize(c1, k1);
        ++checked;
        if (nz0 != nz1 || (nz0 && (!(c0 == c1) || !(k0 == k1)))) ++failures;
        if (!nz0) continue;
        Monomial c2 = c0;
        DimPoly k2(1);
        if (!canonicalize(c2, k2) || !(c2 == c0) || !(k2 == DimPoly(1))) ++failures;
    }
    o.check(failures == 0, std::to_string(failures) + " canonicalizer failures");
    o.note(std::to_string(checked) + " random monomials: relabeling invariance and idempotence");

    Pipeline& p = pipeline();
    int entries = 0;
    for (int n = 0; n <= 3; ++n)
        for (int m = 0; 2 * n + m <= 6; ++m)
            for (const auto& [mono, c] : p.table.entry(n, m)) {
                ++entries;
                o.check(c.is_constant(), "d in entry (" + std::to_string(n) + ", " + std::to_string(m) + ")");
                o.check(mono.weight2() == 2 * n + m, "weight of entry (" + std::to_string(n) + ", " + std::to_string(m) + ")");
            }
    o.note(std::to_string(entries) + " coefficient terms free of d and weight homogeneous");

    const CoeffTable g = p.e.general();
    const CoeffTable v = bundle_heat_coefficients(p.h, Bundle::Vector, p.r);
    const CoeffTable s = bundle_heat_coefficients(p.h, Bundle::Scalar, p.r);
    for (auto& [id, c] : g.entries()) {
        o.check((c - v.get(id) + s.get(id)).limit_infinity() == Rational(0), "large-d decoupling of " + id);
        for (int d : {3, 5, 7}) {
            try {
                c.eval(Rational(d));
            } catch (const std::exception&) {
                o.check(false, id + " singular at d = " + std::to_string(d));
            }
        }
    }
    o.note("15 transverse entries decouple at large d and are finite at d = 3, 5, 7");
    return o;
}

// 9. Numeric oracle.
Outcome oracle() {
    Outcome o;
    const auto t0 = Clock::now();
    TransverseEngine& e = pipeline().e;
    const std::array<double, 4> tol{1e-3, 1e-3, 5e-2, 5e-2};
    auto compare = [&](const SpectrumModel& m, const std::array<Rational, 4>& exact, const std::string& what) {
        const long double r = m.scalar_curvature();
        const FitResult fit = fit_early_time(m, log_grid(0.01L / r, 1.0L / r, 40), 3, 5);
        double worst = 0;
        for (int k = 0; k < 4; ++k) {
            const double x = exact[k].to_double();
            const double dev = std::fabs(static_cast<double>(fit.c[k]) - x) / (x != 0 ? std::fabs(x) : 1.0);
            worst = std::max(worst, dev);
            o.check(dev < tol[k], what + " c" + std::to_string(k) + " relative deviation " + fmt(dev));
        }
        o.note(what + ": largest relative deviation " + fmt(worst) + ", condition " + fmt(static_cast<double>(fit.condition)));
    };
    const CoeffTable s = e.sphere();
    std::array<Rational, 4> s3;
    for (int k = 0; k < 4; ++k) s3[k] = s.get(sphere_basis()[k].id).eval(Rational(3));
    compare(SpectrumModel{3, FieldType::Transverse}, s3, "S^3");
    compare(SpectrumModel{4, FieldType::Transverse, 1.0L, true}, reference::kSphere4Primed, "S^4 primed");
    const double total = seconds_since(t0);
    o.check(total < 30, "runtime " + fmt(total) + " s >= 30 s");
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria"};
    std::string data = "tests/data";
    std::string expect;
    app.add_option("--data-dir", data, "reference polynomial directory");
    app.add_option("--expect-fail", expect, "comma-separated criteria documented as failing; exit 0 iff exactly these fail");
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"world function coincidence limits", sigma_table},
        {"off-diagonal heat kernel coefficients", [&] { return offdiag(data); }},
        {"traced coefficients, four bundles", bundle_tables},
        {"partial traces and intermediate results", partial_traces},
        {"Einstein spaces, both paths", einstein},
        {"round spheres", sphere},
        {"regularization at d = 4", regularization},
        {"property suites", properties},
        {"numeric sphere oracle", oracle},
    };
    std::set<int> failed;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& ex) {
            o.pass = false;
            o.note(std::string("exception: ") + ex.what());
        }
        const double dt = seconds_since(t0);
        if (!o.pass) failed.insert(static_cast<int>(i + 1));
        std::cout << (o.pass ? "PASS" : "FAIL") << "  " << i + 1 << ". " << criteria[i].first << "  (" << fmt(dt, 2) << " s)\n";
        for (const auto& n : o.notes) std::cout << "        " << n << "\n";
    }
    std::cout << (criteria.size() - failed.size()) << "/" << criteria.size() << " criteria pass\n";
    if (expect.empty()) return failed.empty() ? 0 : 1;
    std::set<int> expected;
    std::stringstream ss(expect);
    for (std::string tok; std::getline(ss, tok, ',');) expected.insert(std::stoi(tok));
    if (expected != failed) {
        std::cout << "failing set differs from the documented one\n";
        return 1;
    }
    return 0;
}
