#include "doctest.h"
#include "hk/derivatives.hpp"
#include "hk/identities.hpp"
#include "hk/sigma.hpp"
#include "reference.hpp"

using namespace hk;

namespace {
Polynomial P(const std::string& s) { return Polynomial::parse(s); }
}

TEST_CASE("scalar commutator with the Laplacian") {
    // phi_{;p mu p} = phi_{;p p mu} + Ric_{b mu} phi_{;b}
    Monomial m = P("Phi[;p mu p]").begin()->first;
    Reordered r = swap_once(m, 0, 1, DimPoly(1));
    CHECK(Polynomial::of(r.m) == P("Phi[;p p mu]"));
    CHECK(r.rest == P("Ric[mu b] Phi[;b]"));
}

TEST_CASE("bundle commutators") {
    Monomial a = P("A1[;mu nu]").begin()->first;
    CHECK(swap_once(a, 0, 0, DimPoly(1)).rest == P("F[nu mu] A1"));
    Monomial e = P("E[;mu nu]").begin()->first;
    CHECK(swap_once(e, 0, 0, DimPoly(1)).rest == P("F[nu mu] E - E F[nu mu]"));
    Monomial s = P("R[;mu nu]").begin()->first;
    CHECK(swap_once(s, 0, 0, DimPoly(1)).rest.is_zero());
}

TEST_CASE("swapping twice cancels the corrections") {
    for (const char* text : {"Riem[mu nu rho sigma;alpha beta gamma]", "F[mu nu;alpha beta gamma]", "Phi[mu;alpha beta gamma]",
                             "A2[;mu nu rho sigma]"}) {
        Monomial m = P(text).begin()->first;
        for (int k = 0; k + 1 < m.f[0].n_deriv(); ++k) {
            Reordered a = swap_once(m, 0, k, DimPoly(1));
            Reordered b = swap_once(a.m, 0, k, DimPoly(1));
            CHECK(Polynomial::of(b.m) == Polynomial::of(m));
            CHECK((a.rest + b.rest).is_zero());
        }
    }
}

TEST_CASE("low order world function limits") {
    SigmaTable t(5);
    CHECK(t.entry(2) == P("g[mu nu]"));
    CHECK(t.entry(3).is_zero());
    CHECK(t.at({kU, kU}) == P("g[u u]"));
    CHECK(t.symmetrized(4).is_zero());
}

TEST_CASE("world function limits against the closed forms") {
    static const SigmaTable t(6);
    IdentityReducer id(IdentityMode::Pointwise);
    CHECK(t.entry(1).is_zero());
    CHECK(id.equivalent(t.entry(4), P(reference::kSigma4)));
    // The closed form for five derivatives in its usual published form has nu and rho
    // exchanged in its first three terms. That version is not symmetric in
    // the first two slots, which commute on a scalar.
    const Polynomial five_reference = P(reference::kSigma5);
    const Polynomial five_fixed = P(reference::kSigma5Fixed);
    auto swap01 = [](const Polynomial& p) { return relabel(p, {{0, 1}, {1, 0}}); };
    CHECK(id.equivalent(t.entry(5), five_fixed));
    CHECK(id.equivalent(t.entry(5), swap01(t.entry(5))));
    CHECK_FALSE(id.equivalent(five_reference, swap01(five_reference)));
    CHECK_FALSE(id.equivalent(t.entry(5), five_reference));
    // Six derivatives, symmetrized in the last four: every reference term is
    // kept, including those that vanish by pair antisymmetry.
    const Polynomial six = t.at({free_label("alpha"), free_label("beta"), kU, kU, kU, kU});
    CHECK(id.equivalent(six, P(reference::kSigma6)));
    CHECK_FALSE(six.is_zero());
}
