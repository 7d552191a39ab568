#include "hk/oracle.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

namespace hk {

namespace {

using Matrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
using Vector = Eigen::Matrix<long double, Eigen::Dynamic, 1>;

long double binomial(int n, int k) {
    if (k < 0 || n < k) return 0;
    long double r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return std::round(r);
}

}  // namespace

void SpectrumModel::validate() const {
    if (d < 1) throw std::invalid_argument("sphere dimension must be positive");
    if (field == FieldType::Transverse && d < 2) throw std::invalid_argument("transverse vectors need d >= 2");
    if (!(radius > 0)) throw std::invalid_argument("radius must be positive");
    if (primed && field != FieldType::Transverse) throw std::invalid_argument("the primed trace is defined for transverse vectors only");
}

long double SpectrumModel::eigenvalue(int l) const {
    const long double ll = static_cast<long double>(l) * (l + d - 1);
    return (field == FieldType::Scalar ? ll : ll - 1) / (radius * radius);
}

long double SpectrumModel::degeneracy(int l) const {
    if (l < first_mode()) return 0;
    if (field == FieldType::Scalar) return binomial(l + d, d) - binomial(l + d - 2, d);
    // l (l+d-1) (2l+d-1) (l+d-3)! / ((d-2)! (l+1)!)
    return std::round(static_cast<long double>(l + d - 1) * (2 * l + d - 1) * binomial(l + d - 3, d - 2) / (l + 1));
}

long double SpectrumModel::scalar_curvature() const { return static_cast<long double>(d) * (d - 1) / (radius * radius); }

long double SpectrumModel::volume() const {
    const long double pi = std::numbers::pi_v<long double>;
    return 2 * std::pow(pi, (d + 1) / 2.0L) / std::tgamma((d + 1) / 2.0L) * std::pow(radius, static_cast<long double>(d));
}

long double heat_trace(const SpectrumModel& m, long double s) {
    m.validate();
    if (!(s > 0)) throw std::invalid_argument("heat trace needs s > 0");
    long double sum = 0;
    long double prev = 0;
    for (int l = m.first_mode();; ++l) {
        const long double term = m.degeneracy(l) * std::exp(-s * m.eigenvalue(l));
        sum += term;
        // Past the maximum the terms fall faster than geometrically, so
        // term * ratio / (1 - ratio) bounds the tail.
        if (l > m.first_mode() && term < prev) {
            const long double ratio = term / prev;
            if (ratio < 1 && term * ratio / (1 - ratio) < 1e-14L * std::fabs(sum)) break;
        }
        prev = term;
        if (l > 10000000) throw std::runtime_error("heat trace sum did not converge");
    }
    if (m.field == FieldType::Transverse && !m.primed) sum -= std::exp(s * m.scalar_curvature() / m.d);
    return sum;
}

long double normalized_trace(const SpectrumModel& m, long double s) {
    const long double pi = std::numbers::pi_v<long double>;
    return std::pow(4 * pi * s, m.d / 2.0L) / m.volume() * heat_trace(m, s);
}

std::vector<long double> log_grid(long double lo, long double hi, int n) {
    if (!(lo > 0) || !(hi > lo) || n < 2) throw std::invalid_argument("log grid needs 0 < lo < hi and at least two points");
    std::vector<long double> g;
    for (int i = 0; i < n; ++i) g.push_back(lo * std::pow(hi / lo, static_cast<long double>(i) / (n - 1)));
    return g;
}

namespace {

struct Solve {
    Vector b;
    long double condition;
    long double rms;
};

Solve polyfit(const std::vector<long double>& x, const std::vector<long double>& y, int degree) {
    const int n = static_cast<int>(x.size());
    Matrix a(n, degree + 1);
    Vector rhs(n);
    for (int i = 0; i < n; ++i) {
        long double p = 1;
        for (int k = 0; k <= degree; ++k) {
            a(i, k) = p;
            p *= x[i];
        }
        rhs(i) = y[i];
    }
    // Column scaling keeps the condition number meaningful.
    Vector scale(degree + 1);
    for (int k = 0; k <= degree; ++k) {
        scale(k) = a.col(k).norm();
        a.col(k) /= scale(k);
    }
    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const long double cond = sv(0) / sv(sv.size() - 1);
    Vector b = svd.solve(rhs);
    const long double rms = std::sqrt((a * b - rhs).squaredNorm() / n);
    for (int k = 0; k <= degree; ++k) b(k) /= scale(k);
    return {b, cond, rms};
}

}  // namespace

FitResult fit_early_time(const SpectrumModel& m, const std::vector<long double>& s_grid, int order, int extra) {
    if (order < 0 || extra < 0) throw std::invalid_argument("fit order must be non-negative");
    const int degree = order + extra;
    if (static_cast<int>(s_grid.size()) < degree + 3) throw std::invalid_argument("too few grid points for the fit degree");
    const long double r = m.scalar_curvature();
    std::vector<long double> x, y;
    for (long double s : s_grid) {
        x.push_back(s * r);
        y.push_back(normalized_trace(m, s));
    }
    const Solve full = polyfit(x, y, degree);
    if (full.condition > 1e15L)
        throw IllConditionedFit("early-time fit is ill-conditioned (condition number " + std::to_string(static_cast<double>(full.condition)) + ")",
                                full.condition);
    FitResult out;
    out.degree = degree;
    out.condition = full.condition;
    out.rms_residual = full.rms;
    for (int k = 0; k <= order; ++k) out.c.push_back(full.b(k));

    // Jackknife over grid points.
    const int n = static_cast<int>(x.size());
    std::vector<std::vector<long double>> jack(order + 1);
    for (int i = 0; i < n; ++i) {
        std::vector<long double> xi, yi;
        for (int j = 0; j < n; ++j)
            if (j != i) {
                xi.push_back(x[j]);
                yi.push_back(y[j]);
            }
        const Solve s = polyfit(xi, yi, degree);
        for (int k = 0; k <= order; ++k) jack[k].push_back(s.b(k));
    }
    for (int k = 0; k <= order; ++k) {
        long double mean = 0;
        for (long double v : jack[k]) mean += v;
        mean /= n;
        long double var = 0;
        for (long double v : jack[k]) var += (v - mean) * (v - mean);
        out.error.push_back(std::sqrt(var * (n - 1) / n));
    }
    const Solve more = polyfit(x, y, degree + 1);
    for (int k = 0; k <= order; ++k) out.refinement.push_back(more.b(k) - full.b(k));
    return out;
}

}  // namespace hk
