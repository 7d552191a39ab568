#pragma once

// Numeric heat traces on round spheres from closed-form spectra, and fits
// of their early-time expansion. Floating point only.

#include <stdexcept>
#include <string>
#include <vector>

namespace hk {

enum class FieldType { Scalar, Transverse };

struct SpectrumModel {
    int d = 3;
    FieldType field = FieldType::Scalar;
    long double radius = 1;
    // Transverse only. The projector-based trace also removes the constant
    // scalar mode, which on the longitudinal side has eigenvalue -R/d; the
    // unprimed model reproduces that by subtracting e^{sR/d}, the primed
    // model is the bare transverse spectrum.
    bool primed = false;

    int first_mode() const { return field == FieldType::Scalar ? 0 : 1; }
    long double eigenvalue(int l) const;
    long double degeneracy(int l) const;
    long double scalar_curvature() const;
    long double volume() const;
    int fiber_dimension() const { return field == FieldType::Scalar ? 1 : d - 1; }
    void validate() const;  // throws std::invalid_argument
};

// Sum over the spectrum, cut once the tail is below 1e-14 of the partial sum.
long double heat_trace(const SpectrumModel& m, long double s);
// (4 pi s)^{d/2} / Vol * Tr.
long double normalized_trace(const SpectrumModel& m, long double s);

std::vector<long double> log_grid(long double lo, long double hi, int n);

struct FitResult {
    std::vector<long double> c;          // coefficients of (sR)^k, k = 0..order
    std::vector<long double> error;      // jackknife standard errors
    std::vector<long double> refinement; // change when the fit degree grows by one
    long double condition = 0;           // of the column-scaled design matrix
    long double rms_residual = 0;
    int degree = 0;                      // polynomial degree actually fitted
};

// Least-squares fit of the normalized trace as a polynomial in x = sR of
// degree order + extra; the extra powers absorb the truncation of the series.
FitResult fit_early_time(const SpectrumModel& m, const std::vector<long double>& s_grid, int order, int extra = 4);

class IllConditionedFit : public std::runtime_error {
public:
    IllConditionedFit(const std::string& what, long double condition) : std::runtime_error(what), condition_(condition) {}
    long double condition() const { return condition_; }

private:
    long double condition_;
};

}  // namespace hk
