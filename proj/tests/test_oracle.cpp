#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hk/oracle.hpp"

using namespace hk;

namespace {

std::vector<long double> grid_for(const SpectrumModel& m, long double lo = 0.01L, long double hi = 1.0L, int n = 40) {
    return log_grid(lo / m.scalar_curvature(), hi / m.scalar_curvature(), n);
}

}  // namespace

TEST_CASE("circle heat trace against the Poisson dual sum") {
    const SpectrumModel circle{1, FieldType::Scalar};
    const long double pi = std::numbers::pi_v<long double>;
    for (long double s : {0.3L, 1.0L, 2.5L}) {
        long double dual = 0;
        for (int n = -20; n <= 20; ++n) dual += std::exp(-pi * pi * n * n / s);
        dual *= std::sqrt(pi / s);
        CHECK(static_cast<double>(heat_trace(circle, s)) == doctest::Approx(static_cast<double>(dual)).epsilon(1e-13));
    }
    CHECK(static_cast<double>(heat_trace(circle, 1)) == doctest::Approx(1.7726372048).epsilon(1e-10));
}

TEST_CASE("sphere spectra") {
    SUBCASE("scalar degeneracies") {
        const SpectrumModel s2{2, FieldType::Scalar};
        for (int l = 0; l < 10; ++l) CHECK(s2.degeneracy(l) == 2 * l + 1);
        const SpectrumModel s3{3, FieldType::Scalar};
        for (int l = 0; l < 10; ++l) CHECK(s3.degeneracy(l) == (l + 1) * (l + 1));
    }
    SUBCASE("transverse vectors") {
        // The lowest modes are the Killing vectors, with eigenvalue Ric = (d-1)/a^2.
        for (int d = 2; d <= 6; ++d) {
            const SpectrumModel m{d, FieldType::Transverse};
            CHECK(m.degeneracy(0) == 0);
            CHECK(m.degeneracy(1) == d * (d + 1) / 2);
            CHECK(static_cast<double>(m.eigenvalue(1)) == doctest::Approx(d - 1));
            for (int l = 1; l < 30; ++l) {
                const long double g = m.degeneracy(l);
                CHECK(g > 0);
                CHECK(g == std::round(g));
            }
        }
        const SpectrumModel s4{4, FieldType::Transverse};
        for (int l = 1; l < 10; ++l) CHECK(s4.degeneracy(l) == l * (l + 3) * (2 * l + 3) / 2);
    }
    SUBCASE("invalid input") {
        CHECK_THROWS(heat_trace(SpectrumModel{3, FieldType::Scalar}, 0));
        CHECK_THROWS(heat_trace(SpectrumModel{3, FieldType::Scalar}, -1));
        CHECK_THROWS(heat_trace(SpectrumModel{1, FieldType::Transverse}, 1));
        CHECK_THROWS(heat_trace(SpectrumModel{3, FieldType::Scalar, 1, true}, 1));
        CHECK_THROWS(log_grid(0.1L, 0.01L, 10));
    }
}

TEST_CASE("heat traces decrease with s") {
    for (const SpectrumModel& m : {SpectrumModel{3, FieldType::Scalar}, SpectrumModel{4, FieldType::Transverse, 1, true}}) {
        long double prev = heat_trace(m, 0.001L);
        for (long double s = 0.002L; s < 3; s *= 1.3L) {
            const long double t = heat_trace(m, s);
            CHECK(t < prev);
            prev = t;
        }
    }
}

TEST_CASE("leading early-time coefficient is the fiber dimension") {
    for (int d = 2; d <= 6; ++d) {
        for (FieldType f : {FieldType::Scalar, FieldType::Transverse}) {
            const SpectrumModel m{d, f};
            const FitResult r = fit_early_time(m, grid_for(m), 3);
            CAPTURE(d);
            CHECK(std::fabs(static_cast<double>(r.c[0]) - m.fiber_dimension()) < 1e-5);
        }
    }
    const SpectrumModel s3{3, FieldType::Scalar};
    const FitResult r = fit_early_time(s3, grid_for(s3), 3);
    CHECK(std::fabs(static_cast<double>(r.c[0]) - 1) < 1e-6);
    CHECK(static_cast<double>(r.c[1]) == doctest::Approx(1.0 / 6).epsilon(1e-6));
}

TEST_CASE("fit residuals shrink with the grid") {
    for (const SpectrumModel& m : {SpectrumModel{3, FieldType::Transverse}, SpectrumModel{4, FieldType::Transverse, 1, true}}) {
        long double prev = INFINITY;
        for (long double hi : {2.0L, 1.0L, 0.5L, 0.25L}) {
            const FitResult r = fit_early_time(m, grid_for(m, 0.01L, hi, 30), 3, 1);
            CHECK(r.rms_residual < prev);
            prev = r.rms_residual;
        }
    }
}

TEST_CASE("fit diagnostics") {
    const SpectrumModel m{3, FieldType::Scalar};
    CHECK_THROWS_AS(fit_early_time(m, log_grid(1e-3L, 1.000001e-3L, 30), 3, 6), IllConditionedFit);
    CHECK_THROWS(fit_early_time(m, log_grid(1e-3L, 1e-1L, 5), 3, 4));
    const FitResult r = fit_early_time(m, grid_for(m), 3);
    CHECK(r.degree == 7);
    CHECK(r.error.size() == 4);
    CHECK(r.refinement.size() == 4);
    CHECK(r.condition > 1);
}
