#pragma once

// Curvature bases up to third order: the 15-element general basis, the
// 8-element Einstein basis and the sphere basis {1, R, R^2, R^3}.

#include <map>
#include <string>
#include <vector>

#include "hk/identities.hpp"

namespace hk {

enum class BasisKind { General, Einstein, Sphere };

struct BasisElement {
    std::string id;  // e.g. "R3_5"
    int order;
    Polynomial expr;
};

const std::vector<BasisElement>& general_basis();
const std::vector<BasisElement>& einstein_basis();
const std::vector<BasisElement>& sphere_basis();
const std::vector<BasisElement>& basis(BasisKind kind);

// Coefficient name for a basis id: "R3_5" -> "c3_5", "E2_1" -> "c2_1".
std::string coeff_name(const std::string& basis_id);

// Basis id -> coefficient. Ids absent from the map are zero.
class CoeffTable {
public:
    CoeffTable() = default;
    explicit CoeffTable(BasisKind kind) : kind_(kind) {}

    BasisKind kind() const { return kind_; }
    DimRational get(const std::string& id) const;
    void set(const std::string& id, const DimRational& v);
    void add(const std::string& id, const DimRational& v);
    CoeffTable& operator+=(const CoeffTable& o);
    CoeffTable& operator*=(const DimRational& c);
    friend CoeffTable operator+(CoeffTable a, const CoeffTable& b) { return a += b; }
    friend CoeffTable operator*(CoeffTable a, const DimRational& c) { return a *= c; }
    bool operator==(const CoeffTable& o) const;
    // Entries in basis order (zeros included).
    std::vector<std::pair<std::string, DimRational>> entries() const;

private:
    void check(const std::string& id) const;
    BasisKind kind_ = BasisKind::General;
    std::map<std::string, DimRational> v_;
};

// Expresses curvature polynomials (no free indices, no internal factors) in
// the general basis.
class BasisReducer {
public:
    BasisReducer();
    // Throws std::domain_error naming the first monomial that is not reducible
    // to the basis.
    CoeffTable reduce(const Polynomial& p, bool integrated);
    Polynomial normal_form(const Polynomial& p, bool integrated);

private:
    IdentityReducer pointwise_;
    IdentityReducer integrated_;
    std::map<Monomial, std::string> id_of_;
};

CoeffTable specialize_einstein(const CoeffTable& general);
CoeffTable specialize_sphere(const CoeffTable& einstein);

// Evaluates a scalar curvature polynomial on a round sphere: covariant
// derivatives of curvature vanish and R_abcd = (g g - g g) R/(d(d-1)).
// Returns coefficients of R^k.
std::map<int, DimRational> evaluate_on_sphere(const Polynomial& p);
// Same on an Einstein space: R_ab = g_ab R/d and derivatives of R and
// Ricci vanish. Returns an Einstein-basis table; throws if a Riemann
// contraction outside the basis survives.
CoeffTable evaluate_on_einstein(const Polynomial& p);

}  // namespace hk
