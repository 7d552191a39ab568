#include <fstream>
#include <sstream>

#include "doctest.h"
#include "hk/dewitt.hpp"
#include "hk/identities.hpp"

using namespace hk;

namespace {

Polynomial load(const std::string& name) {
    std::ifstream in("tests/data/" + name);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return Polynomial::parse(ss.str());
}

const DeWittTable& table() {
    static const DeWittTable t(3);
    return t;
}

IdentityReducer& identities() {
    static IdentityReducer r(IdentityMode::Pointwise);
    return r;
}

// Entry (n, m) with every index contracted with u, which determines the
// symmetrized tensor.
Polynomial contracted(int n, int m) { return table().at(n, std::vector<Label>(m, kU)); }

DimPoly coefficient(const Polynomial& p, const std::string& text) {
    Monomial m = Polynomial::parse(text).begin()->first;
    for (const auto& [q, c] : p)
        if (q == m) return c;
    return DimPoly();
}

// Hermitian conjugate for hermitian E and antihermitian F: reverses the
// matrix order and flips the sign of every F.
Polynomial adjoint(const Polynomial& p) {
    Polynomial out;
    for (const auto& [m, c] : p) {
        Monomial r;
        std::vector<Factor> internal;
        int sign = 1;
        for (auto& f : m.f) {
            if (is_internal(f.head)) internal.insert(internal.begin(), f);
            else r.f.push_back(f);
            if (f.head == Head::Strength) sign = -sign;
        }
        r.f.insert(r.f.end(), internal.begin(), internal.end());
        out.add(r, c * DimPoly(sign));
    }
    return out;
}

void check_reference(const Polynomial& got, const std::string& file) {
    Polynomial want = load(file);
    Polynomial diff = identities().normal_form(got - want);
    INFO(file << " differs by\n" << diff.str());
    CHECK(diff.is_zero());
}

}  // namespace

TEST_CASE("lowest entries") {
    CHECK(table().entry(0, 0) == Polynomial::parse("1"));
    CHECK(table().entry(0, 1).is_zero());
    CHECK(table().entry(0, 2) == Polynomial::parse("1/6 Ric[mu nu] + 1/2 F[nu mu]"));
    CHECK(table().entry(1, 0) == load("ref_A1.txt"));
}

TEST_CASE("entries through second order") {
    check_reference(table().entry(1, 1), "ref_dA1_1.txt");
    check_reference(contracted(0, 2), "ref_dA0_2.txt");
    check_reference(contracted(0, 3), "ref_dA0_3.txt");
    check_reference(contracted(0, 4), "ref_dA0_4.txt");
    check_reference(contracted(1, 2), "ref_dA1_2.txt");
    check_reference(table().entry(2, 0), "ref_A2.txt");
}

TEST_CASE("third order coefficient") {
    const Polynomial& a3 = table().entry(3, 0);
    check_reference(a3 - load("ref_A3_corrections.txt"), "ref_A3.txt");
    CHECK_FALSE(identities().normal_form(a3 - load("ref_A3.txt")).is_zero());
    // Matrix order is kept: (Delta E) E and E (Delta E) are separate terms.
    Polynomial nf = identities().normal_form(a3);
    CHECK(coefficient(nf, ("E E E")) == DimPoly(Rational(-1, 6)));
    CHECK(coefficient(nf, ("E[;a a] E")) == DimPoly(Rational(1, 12)));
    CHECK(coefficient(nf, ("E E[;a a]")) == DimPoly(Rational(1, 12)));
}

TEST_CASE("additional derivative entries") {
    check_reference(contracted(0, 5), "ref_dA0_5.txt");
    check_reference(contracted(0, 6), "ref_dA0_6.txt");
    check_reference(contracted(1, 3), "ref_dA1_3.txt");
    check_reference(table().entry(2, 1), "ref_dA2_1.txt");
}

TEST_CASE("coincidence limits are self-adjoint") {
    // Derivative entries are not: they act at one point only.
    for (auto [n, m] : {std::pair{1, 0}, {2, 0}, {3, 0}, {0, 4}}) {
        CAPTURE(n);
        CAPTURE(m);
        Polynomial a = table().at(n, std::vector<Label>(m, kU));
        CHECK(identities().equivalent(a, adjoint(a)));
    }
}

TEST_CASE("entries are dimension free and weight homogeneous") {
    for (int n = 0; n <= 3; ++n)
        for (int m = 0; 2 * n + m <= 6; ++m) {
            CAPTURE(n);
            CAPTURE(m);
            REQUIRE(table().has(n, m));
            for (const auto& [mono, c] : table().entry(n, m)) {
                CHECK(c.is_constant());
                CHECK(mono.weight2() == 2 * n + m);
            }
        }
}

TEST_CASE("antisymmetric parts are bundle commutators") {
    // A_{n;mu nu} - A_{n;nu mu} = F_{nu mu} A_n: the coefficients transform
    // as sections at the first point only.
    auto& r = identities();
    for (int n = 0; n <= 2; ++n) {
        CAPTURE(n);
        Polynomial lhs = table().at(n, {Label(0), Label(1)}) - table().at(n, {Label(1), Label(0)});
        Polynomial rhs = multiply(Polynomial::parse("F[nu mu]"), table().entry(n, 0));
        CHECK(r.equivalent(lhs, rhs));
    }
}
