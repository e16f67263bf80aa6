#include "s2b/rearrangement.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "s2b/quadrature.hpp"

namespace s2b {

double RadialProfile::value_at(double r) const {
    if (radii.empty() || r >= radii.back()) return 0.0;
    const auto it = std::upper_bound(radii.begin(), radii.end(), r);
    return values[static_cast<size_t>(it - radii.begin())];
}

RadialProfile rearrange(const SampledField& field) {
    const int m = field.grid.size();
    if (static_cast<int>(field.values.size()) != m)
        throw std::invalid_argument("rearrange: field size mismatch");
    RadialProfile p;
    p.cell_area = field.grid.cell_weight();
    p.values = field.values;
    std::sort(p.values.begin(), p.values.end(), std::greater<double>());
    p.radii.resize(m);
    for (int k = 0; k < m; ++k)
        p.radii[k] = std::sqrt((k + 1) * p.cell_area / M_PI);
    return p;
}

std::vector<double> rearrange_on_grid(const SampledField& field) {
    const int m = field.grid.size();
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> radius(m);
    for (int i = 0; i < m; ++i) radius[i] = norm(field.grid.node(i));
    std::stable_sort(order.begin(), order.end(),
                     [&radius](int a, int b) { return radius[a] < radius[b]; });
    std::vector<double> sorted = field.values;
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());
    std::vector<double> out(m);
    for (int k = 0; k < m; ++k) out[order[k]] = sorted[k];
    return out;
}

std::vector<MeasureMismatch> equimeasure_check(const SampledField& field,
                                               const RadialProfile& profile,
                                               const std::vector<double>& levels) {
    if (field.values.size() != profile.values.size())
        throw std::invalid_argument("equimeasure_check: profile/field size mismatch");
    const double w = field.grid.cell_weight();
    std::vector<MeasureMismatch> out;
    out.reserve(levels.size());
    for (double A : levels) {
        MeasureMismatch m;
        m.level = A;
        long field_cells = 0;
        for (double v : field.values)
            if (v > A) ++field_cells;
        long annuli = 0;
        for (double v : profile.values)
            if (v > A) ++annuli;
        m.field_measure = field_cells * w;
        m.profile_measure = annuli * profile.cell_area;
        out.push_back(m);
    }
    return out;
}

LuttingerPair luttinger_check(const SampledField& A, const RadialKernel& B,
                              const SampledField& C) {
    if (A.grid.n != C.grid.n || A.grid.L != C.grid.L)
        throw std::invalid_argument("luttinger_check: fields on different grids");
    // Sampled monotonicity check of the kernel on (0, diameter].
    const double diam = 2.0 * std::sqrt(2.0) * A.grid.L;
    double prev = B.diag_mean;
    for (int k = 1; k <= 64; ++k) {
        const double r = diam * k / 64.0;
        const double v = B.f(r);
        if (v < 0.0 || v > prev * (1.0 + 1e-12) + 1e-12)
            throw std::invalid_argument(
                "luttinger_check: kernel must be non-negative and non-increasing");
        prev = v;
    }

    LuttingerPair out;
    out.lhs = pair_integral_kernel(A, C, B.f, B.diag_mean);
    SampledField AR = A;
    AR.values = rearrange_on_grid(A);
    SampledField CR = C;
    CR.values = rearrange_on_grid(C);
    out.rhs = pair_integral_kernel(AR, CR, B.f, B.diag_mean);
    return out;
}

}  // namespace s2b
