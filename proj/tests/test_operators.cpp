#include "doctest.h"
#include "hk/operators.hpp"
#include "reference.hpp"

using namespace hk;

namespace {

Polynomial P(const std::string& s) { return Polynomial::parse(s); }

const OpAlgebra& alg() {
    static const DeWittTable t(3);
    static const HFunctions h(t);
    static const OpAlgebra a(h);
    return a;
}

BasisReducer& reducer() {
    static BasisReducer r;
    return r;
}

void check_series(const HeatSeries& got, int offset, const CoeffTable& want) {
    CHECK(got.offset == offset);
    for (auto& [id, v] : want.entries()) {
        CAPTURE(id);
        CHECK(got.c.get(id).str() == v.str());
    }
}

// Tr[[D_mu, Delta]_n D^nu e^{-u Delta}] on vectors.
HeatSeries t_series(int n) {
    const OpAlgebra& a = alg();
    Op d = a.local(P("Phi[;mu]"), 0, 1);
    for (int i = 0; i < n; ++i) d = a.commutator(d);
    Op div = a.local(P("Phi[a;a]"), 1, 0);
    return a.trace(a.compose(d, div), reducer());
}

}  // namespace

TEST_CASE("expression parser") {
    CHECK(parse_dim_expression("-(d^2-8)/(d+4) + 1/30").str() == (DimRational(Rational(1, 30)) - DimRational(DimPoly::d() * DimPoly::d() - DimPoly(8), DimPoly::d() + DimPoly(4))).str());
    CHECK(parse_dim_expression("2d") == DimRational(DimPoly::d() * DimPoly(2)));
    CHECK_THROWS(parse_dim_expression("1/(d-d)"));
}

TEST_CASE("gamma ratios") {
    CHECK(gamma_ratio(0, 0) == DimRational(1));
    CHECK(gamma_ratio(1, 2).str() == parse_dim_expression("4/((d-4)(d-6))").str());
    CHECK(gamma_ratio(1, -2).str() == parse_dim_expression("(d/2-1)(d/2)").str());
}

TEST_CASE("commutators with the Laplacian") {
    const OpAlgebra& a = alg();
    // [D_mu, Delta] phi = R_mu^a D_a phi
    CHECK(a.local_commutator(P("Phi[;mu]")) == P("Ric[mu a] Phi[;a]"));
    // [Phi, Delta] = 0 on any bundle.
    CHECK(a.local_commutator(P("Phi[mu]")).is_zero());
    CHECK(a.local_commutator(P("Phi")).is_zero());
    // A contracted pair becomes a power of Delta.
    Op x = a.normalize(a.local(P("Phi[;a a]"), 0, 0));
    CHECK(x.terms.size() == 1);
    CHECK(x.terms.at(-1) == P("-Phi"));
    // Delta^{-1} Delta = 1.
    Op lap = a.local(P("-Phi[;a a]"), 0, 0);
    Op one = a.compose(a.inverse_laplacian(0), lap);
    CHECK(one.terms.size() == 1);
    CHECK(one.terms.at(0) == P("Phi"));
}

TEST_CASE("heat traces with derivative insertions") {
    for (int n = 0; n <= 4; ++n) {
        CAPTURE(n);
        const auto [offset, want] = reference::t_series(n);
        check_series(t_series(n), offset, want);
    }
}
