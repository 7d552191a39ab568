#pragma once

// Heat trace on transverse vector fields, Tr[Pi_T e^{-s Delta}] with
// Pi_T = 1 - Pi_L and Pi_L = -D_mu Delta^{-1} D^nu, expanded as
//   S_1T = sum_n (-s)^n / n! S^(n),
// where S^(n) are traces of products of multi-commutators [Delta, Pi_T].

#include <array>
#include <deque>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "hk/operators.hpp"

namespace hk {

// Multi-commutators of covariant derivatives with the Laplacian, kept to
// coefficient weight 3. Index 0 holds the derivative itself.
struct CommutatorLibrary {
    std::vector<Polynomial> scalar;  // [D_mu, Delta]_n phi
    std::vector<Polynomial> vector;  // [D^a, Delta]_n phi_a
    Polynomial scalar_aux;           // [D_beta D_alpha, Delta] phi
    Polynomial vector_aux;           // [D_alpha D_mu, Delta] phi_nu
    Op shift;                        // [Delta^{-1}, R_mu^nu] v_nu
};

CommutatorLibrary build_commutators(const OpAlgebra& a, int max_n = 4);

// int_0^inf dt t^{n-1}/(n-1)! (s+t)^{k-d/2} = Gamma(d/2-k-n)/Gamma(d/2-k) s^{n+k-d/2}.
struct AuxIntegral {
    int n = 1;
    int k = 0;
    DimRational value;
    int s_power() const { return n + k; }  // relative to s^{-d/2}
    // Numeric value at a given dimension; throws PoleError at a pole.
    Rational at(const Rational& d) const;
};

class PoleError : public std::domain_error {
public:
    PoleError(const std::string& what, Rational d) : std::domain_error(what), d_(d) {}
    const Rational& dimension() const { return d_; }

private:
    Rational d_;
};

AuxIntegral eval_aux_integral(int n, int k);

struct Subtrace {
    std::string name;
    int multiplicity = 1;
    std::vector<int> word;  // nested commutator depths, left to right
    HeatSeries value;       // includes the multiplicity
};

// Coefficient of s^{n-2} (4 pi s)^{-2} near d = 4: finite + log * log(s/s0).
struct Regularized {
    Rational finite;
    Rational log;
};

class TransverseEngine {
public:
    TransverseEngine(const OpAlgebra& a, BasisReducer& reducer);

    const OpAlgebra& algebra() const { return a_; }

    const Op& projector_longitudinal();
    const Op& projector_transverse();
    // [Delta, [Delta, ..., Pi_T]] with k commutators; k = 0 is Pi_T.
    const Op& nested_commutator(int k);

    // T^(n) = Tr[[D_mu, Delta]_n D^nu e^{-u Delta}].
    const HeatSeries& t_series(int n);

    const std::vector<Subtrace>& subtraces(int n);  // n = 0..4
    HeatSeries partial(int n);
    // S^(0) from the unconstrained vector trace and the T^(n).
    HeatSeries partial0_via_t();
    // C_1 and C_2 of the third-order partial trace.
    HeatSeries c1();
    HeatSeries c2();

    CoeffTable general();
    CoeffTable einstein();
    CoeffTable einstein_direct();
    CoeffTable sphere();
    // Sphere coefficients at d = 4; primed drops the constant scalar mode.
    std::array<Rational, 4> sphere_d4(bool primed);

private:
    const OpAlgebra& a_;
    BasisReducer& reducer_;
    std::unique_ptr<Op> pl_, pt_;
    std::deque<Op> nested_;  // stable references
    std::map<int, HeatSeries> t_;
    std::map<int, std::vector<Subtrace>> sub_;
    std::unique_ptr<CoeffTable> general_;
};

// Expansion of pole terms 1/(d-4) around d = 4; throws on double poles.
std::map<std::string, Regularized> d4_regularize(const CoeffTable& general);

// Multiplies an Einstein-basis table of integrated invariants by R,
// dropping terms beyond third order.
CoeffTable times_scalar_curvature(const CoeffTable& einstein);

// S_1T partial sums: sum_n (-1)^n / n! S^(n).c.
CoeffTable assemble(const std::vector<HeatSeries>& partials);

}  // namespace hk
