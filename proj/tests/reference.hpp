#pragma once

// Published reference values, shared by the unit tests and the acceptance
// checker. Values are transcribed as published; where a published value is
// wrong the correction is applied by the caller, never here.

#include <array>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hk/basis.hpp"

namespace hk::reference {

using Entries = std::vector<std::pair<std::string, std::string>>;

inline CoeffTable table(BasisKind kind, const Entries& v, const std::string& scale = "1") {
    CoeffTable t(kind);
    const DimRational s = parse_dim_expression(scale);
    for (auto& [id, e] : v) t.add(id, parse_dim_expression(e) * s);
    return t;
}

inline CoeffTable general(const Entries& v, const std::string& scale = "1") { return table(BasisKind::General, v, scale); }

// Reference polynomial files under tests/data.
inline Polynomial load(const std::string& dir, const std::string& name) {
    std::ifstream in(dir + "/" + name);
    if (!in) throw std::runtime_error("cannot read " + dir + "/" + name);
    std::stringstream ss;
    ss << in.rdbuf();
    return Polynomial::parse(ss.str());
}

// World function limits in identity order (placeholders mu nu rho sigma
// alpha), and the six-derivative one with the last four slots contracted
// with u.
inline const std::string kSigma4 = "(-1/3) Riem[mu rho nu sigma] + (-1/3) Riem[mu sigma nu rho]";
inline const std::string kSigma5 =
    "(-1/4) Riem[mu nu rho sigma;alpha] + (-1/4) Riem[mu nu rho alpha;sigma]"
    " + (-1/4) Riem[mu sigma rho nu;alpha] + (-1/4) Riem[mu sigma nu alpha;rho]"
    " + (-1/4) Riem[mu alpha nu rho;sigma] + (-1/4) Riem[mu alpha nu sigma;rho]";
inline const std::string kSigma5Fixed =
    "(-1/4) Riem[mu rho nu sigma;alpha] + (-1/4) Riem[mu rho nu alpha;sigma]"
    " + (-1/4) Riem[mu sigma nu rho;alpha] + (-1/4) Riem[mu sigma nu alpha;rho]"
    " + (-1/4) Riem[mu alpha nu rho;sigma] + (-1/4) Riem[mu alpha nu sigma;rho]";
inline const std::string kSigma6 =
    "(-12/5) Riem[u alpha u beta;u u] + (-4/5) Riem[u u alpha g] Riem[u beta u g]"
    " + (-4/5) Riem[g u u alpha] Riem[u u beta g] + (8/15) Riem[g u u alpha] Riem[u beta u g]"
    " + (16/45) Riem[g u u u] Riem[u alpha beta g] + (-8/15) Riem[g u u u] Riem[u beta alpha g]"
    " + (4/9) Riem[g u u u] Riem[u g alpha beta]";

// Traced coefficients on scalars.
inline const Entries kScalar = {
    {"R0", "1"},          {"R1", "1/6"},       {"R2_1", "1/72"},   {"R2_2", "-1/180"},  {"R2_3", "1/180"},
    {"R3_1", "1/336"},    {"R3_2", "1/840"},   {"R3_3", "1/1296"}, {"R3_4", "-1/1080"}, {"R3_5", "-4/2835"},
    {"R3_6", "1/945"},    {"R3_7", "1/1080"},  {"R3_8", "1/7560"}, {"R3_9", "17/45360"}, {"R3_10", "-1/1620"},
};

// Curvature terms of vector fields beyond d times the scalar ones.
inline const Entries kVectorExtra = {
    {"R2_3", "-1/12"}, {"R3_1", "1/120"}, {"R3_2", "-1/30"}, {"R3_5", "1/30"},   {"R3_6", "-1/30"},
    {"R3_7", "-1/72"}, {"R3_8", "-1/90"}, {"R3_9", "-1/180"}, {"R3_10", "1/90"},
};

// Scalar column times `dim` plus the vector extra terms times `extra`.
inline CoeffTable bundle_column(const std::string& dim, const std::string& extra) {
    return general(kScalar, dim) + general(kVectorExtra, extra);
}
inline CoeffTable scalar_table() { return bundle_column("1", "0"); }
inline CoeffTable vector_table() { return bundle_column("d", "1"); }
inline CoeffTable tensor_table() { return bundle_column("d(d+1)/2", "d+2"); }

// Transverse vectors, general basis.
inline CoeffTable transverse_table() {
    return general({
        {"R0", "d-1"},
        {"R1", "(d-1)/6-1/d"},
        {"R2_1", "(d-1)/72-(d^2-d+6)/(6(d-2)d(d+2))"},
        {"R2_2", "-(d-1)/180-(2d^2-5d-6)/(3(d-2)d(d+2))"},
        {"R2_3", "(d-1)/180-1/12"},
        {"R3_1", "(d-1)/336+1/120+(8d^4-73d^3+208d^2-428d+240)/(30(d-4)(d-2)d(d+2)(d+4))"},
        {"R3_2", "(d-1)/840-1/30+(2d^4-17d^3+42d^2+88d-320)/(10(d-4)(d-2)d(d+2)(d+4))"},
        {"R3_3", "(d-1)/1296-(d^4-2d^3-4d^2+8d+288)/(72(d-4)(d-2)d(d+2)(d+4))"},
        {"R3_4", "-(d-1)/1080-(19d^3-82d^2+148d-1200)/(180(d-4)(d-2)d(d+4))"},
        {"R3_5", "-4(d-1)/2835+1/30+(41d^4-136d^3-44d^2-896d+960)/(90(d-4)(d-2)d(d+2)(d+4))"},
        {"R3_6", "(d-1)/945-1/30-(29d^4-139d^3-86d^2+376d+960)/(45(d-4)(d-2)d(d+2)(d+4))"},
        {"R3_7", "(d-1)/1080-1/72-1/(180(d-4))"},
        {"R3_8", "(d-1)/7560-1/90+1/(45(d-4))"},
        {"R3_9", "17(d-1)/45360-1/180"},
        {"R3_10", "-(d-1)/1620+1/90"},
    });
}

// Partial traces S^(n) as coefficient tables with their s offsets.
inline CoeffTable partial0() {
    return general({
        {"R0", "d-1"},
        {"R1", "d/6-(d+6)/(6d)"},
        {"R2_1", "d/72-(d+10)/(72(d-2))"},
        {"R2_2", "-d/180+(d^2-32d+180)/(180d(d-2))"},
        {"R2_3", "(d-1)/180-1/12"},
        {"R3_1", "d/336+1/120-(5d^2+32d+464)/(1680(d-4)(d+2))"},
        {"R3_2", "d/840-1/30-(d^3+40d^2-64d-1120)/(840(d-4)d(d+2))"},
        {"R3_3", "d/1296-(d+14)/(1296(d-4))"},
        {"R3_4", "-d/1080+(d^2-30d+236)/(1080(d-4)(d-2))"},
        {"R3_5", "-4d/2835+1/30+(16d^4+377d^3-1954d^2+2272d-30240)/(11340(d-4)(d-2)d(d+2))"},
        {"R3_6", "d/945-1/30-(4d^2+223d-1460)/(3780(d-4)(d+2))"},
        {"R3_7", "d/1080-1/72-(d+2)/(1080(d-4))"},
        {"R3_8", "d/7560-1/90-(d-172)/(7560(d-4))"},
        {"R3_9", "17(d-1)/45360-1/180"},
        {"R3_10", "-(d-1)/1620+1/90"},
    });
}

inline CoeffTable partial1() {
    return general({{"R2_1", "-1/(d(d+2))"},
                    {"R2_2", "1/(d+2)"},
                    {"R3_1", "-(d^3+4d^2+24d-24)/(6(d-2)d(d+2)(d+4))"},
                    {"R3_2", "(d^2+4d-24)/(6(d-2)d(d+4))"},
                    {"R3_3", "-1/(6(d-2)d)"},
                    {"R3_4", "(d^2+d+10)/(6(d-2)d(d+2))"},
                    {"R3_5", "-(d^2+8d+32)/(6d(d+2)(d+4))"},
                    {"R3_6", "(d^3-12d-32)/(3(d-2)d(d+2)(d+4))"}});
}

// Tr[Pi_T [Delta, Pi_T] [Delta, Pi_T] e] and Tr[Pi_T [Delta, [Delta, Pi_T]] e].
inline CoeffTable partial2a() {
    return general({{"R2_1", "1/(d(d+2))"},
                    {"R2_2", "-1/(d+2)"},
                    {"R3_1", "(d^3+d^2+6d-8)/(2(d+4)(d-2)d(d+2))"},
                    {"R3_2", "-2(d^2-8)/((d+4)(d-2)d(d+2))"},
                    {"R3_3", "(d^2+20)/(6(d+4)(d-2)d(d+2))"},
                    {"R3_4", "-(d^3-4d^2+32d+40)/(6(d+4)(d-2)d(d+2))"},
                    {"R3_5", "(d^3+8d^2-4d-32)/(3(d+4)(d-2)d(d+2))"},
                    {"R3_6", "-(3d^3+2d^2-24d-32)/(3(d+4)(d-2)d(d+2))"}});
}

inline CoeffTable partial2b() {
    return general({{"R2_1", "-2/(d(d+2))"},
                    {"R2_2", "2/(d+2)"},
                    {"R3_1", "-3(d^3+20d-16)/(6(d+4)(d-2)d(d+2))"},
                    {"R3_2", "12(d-4)(d+2)/(6(d+4)(d-2)d(d+2))"},
                    {"R3_3", "-2(d+2)/(6(d-2)d(d+2))"},
                    {"R3_4", "2(d^2+d+10)/(6(d-2)d(d+2))"},
                    {"R3_5", "-4(d-2)(d^2+4d+16)/(6(d+4)(d-2)d(d+2))"},
                    {"R3_6", "2(d-4)(3d^2+10d+16)/(6(d+4)(d-2)d(d+2))"}});
}

inline CoeffTable partial2() {
    return general({{"R2_1", "-1/(d(d+2))"},
                    {"R2_2", "1/(d+2)"},
                    {"R3_1", "(d^2-14d+8)/(2(d-2)d(d+2)(d+4))"},
                    {"R3_2", "-4/((d-2)(d+2)(d+4))"},
                    {"R3_3", "-(d^2+12d-4)/(6(d-2)d(d+2)(d+4))"},
                    {"R3_4", "(d^3+14d^2-4d+40)/(6(d-2)d(d+2)(d+4))"},
                    {"R3_5", "-(d^2-2d+16)/(3d(d+2)(d+4))"},
                    {"R3_6", "-4(d^2+8)/(3(d-2)d(d+2)(d+4))"}});
}

inline CoeffTable c1() {
    return general({{"R3_1", "d(d-1)"}, {"R3_2", "d^2-8"}, {"R3_3", "-2"}, {"R3_4", "3d"}, {"R3_5", "d(d+4)"}, {"R3_6", "-2d(d+2)"}},
                   "1/(d(d+2)(d+4))");
}

inline CoeffTable c2() { return general({{"R3_1", "d-6"}, {"R3_2", "2(d+2)"}, {"R3_5", "2d"}, {"R3_6", "-2d"}}, "1/((d+2)(d+4))"); }

// Published multiples of C1, C2 for the third and fourth order subtraces, in
// the engine's subtrace order.
inline const std::vector<std::pair<int, int>> kSubtraces3 = {{2, 0}, {-1, 0}, {0, -1}, {0, 0}};
inline const std::vector<int> kSubtraces4C2 = {3, -3, 1, 2};

// T^(n) = Tr[[D_mu, Delta]_n D^nu e^{-u Delta}]: offset and table.
inline std::pair<int, CoeffTable> t_series(int n) {
    switch (n) {
        case 0:
            return {1, general({{"R0", "-d/2"},
                                {"R1", "-(4+d)/12"},
                                {"R2_1", "-(d+8)/144"},
                                {"R2_2", "(d-34)/360"},
                                {"R2_3", "-(d-4)/360"},
                                {"R3_1", "-(5d+12)/140/24"},
                                {"R3_2", "-(d+36)/70/24"},
                                {"R3_3", "-(d+12)/108/24"},
                                {"R3_4", "(d-30)/90/24"},
                                {"R3_5", "(16d+345)/945/24"},
                                {"R3_6", "-(4d+207)/315/24"},
                                {"R3_7", "-d/90/24"},
                                {"R3_8", "-(d-174)/630/24"},
                                {"R3_9", "-(17d-102)/3780/24"},
                                {"R3_10", "(d-6)/135/24"}})};
        case 1:
            return {2, general({{"R1", "1/2"},
                                {"R2_1", "1/12"},
                                {"R2_2", "1/3"},
                                {"R3_1", "-6/5/24"},
                                {"R3_2", "8/5/24"},
                                {"R3_3", "1/6/24"},
                                {"R3_4", "19/15/24"},
                                {"R3_5", "-22/15/24"},
                                {"R3_6", "56/15/24"},
                                {"R3_7", "1/15/24"},
                                {"R3_8", "-4/15/24"}},
                               "-1")};
        case 2: return {3, general({{"R2_2", "-1/2"}, {"R3_1", "3/12"}, {"R3_4", "-1/12"}, {"R3_5", "2/12"}, {"R3_6", "-6/12"}})};
        case 3: return {4, general({{"R3_1", "1/2"}, {"R3_2", "1/2"}, {"R3_5", "1/2"}, {"R3_6", "-1"}})};
        case 4: return {5, general({{"R3_1", "1/2"}, {"R3_2", "1"}, {"R3_5", "1"}, {"R3_6", "-1"}})};
    }
    throw std::out_of_range("T^(n) is tabulated for n = 0..4");
}

inline CoeffTable einstein_table() {
    return table(BasisKind::Einstein, {{"E0", "d-1"},
                                       {"E1", "(d-3)(d+2)/(6d)"},
                                       {"E2_1", "(5d^3-7d^2-58d-180)/(360d^2)"},
                                       {"E2_2", "(d-16)/180"},
                                       {"E3_1", "(35d^4-77d^3-604d^2-3512d-7560)/(45360d^3)"},
                                       {"E3_2", "(7d^2-111d-127)/(7560d)"},
                                       {"E3_3", "(17d-269)/45360"},
                                       {"E3_4", "-(d-19)/1620"}});
}

inline CoeffTable sphere_table() {
    return table(BasisKind::Sphere, {{"S0", "d-1"},
                                     {"S1", "(d-3)(d+2)/(6d)"},
                                     {"S2", "(5d^4-12d^3-47d^2-186d+180)/(360d^2(d-1))"},
                                     {"S3", "(35d^6-147d^5-331d^4-3825d^3-676d^2+10992d-7560)/(45360d^3(d-1)^2)"}});
}

inline const std::array<Rational, 4> kSphere4 = {Rational(3), Rational(1, 4), Rational(-67, 1440), Rational(-4321, 362880)};
inline const std::array<Rational, 4> kSphere4Primed = {Rational(3), Rational(1, 4), Rational(-7, 1440), Rational(-541, 362880)};

// Finite part and log coefficient at d = 4.
inline const std::vector<std::tuple<std::string, Rational, Rational>> kD4 = {
    {"R0", Rational(3), Rational(0)},
    {"R1", Rational(1, 4), Rational(0)},
    {"R2_1", Rational(-1, 48), Rational(0)},
    {"R2_2", Rational(-7, 120), Rational(0)},
    {"R2_3", Rational(-1, 15), Rational(0)},
    {"R3_1", Rational(1363, 20160), Rational(1, 30)},
    {"R3_2", Rational(-67, 2016), Rational(-1, 60)},
    {"R3_3", Rational(41, 3456), Rational(1, 144)},
    {"R3_4", Rational(-263, 2880), Rational(-11, 360)},
    {"R3_5", Rational(233, 1512), Rational(1, 45)},
    {"R3_6", Rational(-397, 5040), Rational(-1, 90)},
    {"R3_7", Rational(-1, 90), Rational(1, 360)},
    {"R3_8", Rational(-3, 280), Rational(-1, 90)},
    {"R3_9", Rational(-67, 15120), Rational(0)},
    {"R3_10", Rational(1, 108), Rational(0)},
};

}  // namespace hk::reference
