#pragma once

#include <functional>
#include <vector>

#include "s2b/potential.hpp"

namespace s2b {

/// Circular decreasing rearrangement of a sampled field: the sorted cell
/// values placed on equal-area annuli, pi r_k^2 = k h^2. Every annulus has
/// measure exactly h^2, so the discrete multiset is equimeasurable with the
/// field by construction.
struct RadialProfile {
    std::vector<double> radii;   // outer radii r_k, ascending
    std::vector<double> values;  // non-increasing
    double cell_area = 0.0;      // h^2

    /// Step-function value at radius r (0 beyond the support).
    double value_at(double r) const;
    double outer_radius() const { return radii.empty() ? 0.0 : radii.back(); }
};

/// Sorts the full cell-value multiset (zeros included, ties by node index)
/// onto equal-area annuli.
RadialProfile rearrange(const SampledField& field);

/// The rearranged field put back on the grid: nodes ordered by radius (ties
/// by index) receive the sorted values. For a field that is already radial
/// decreasing about the origin this reproduces the field exactly.
std::vector<double> rearrange_on_grid(const SampledField& field);

struct MeasureMismatch {
    double level = 0.0;
    double field_measure = 0.0;    // w * #{cells with value > level}
    double profile_measure = 0.0;  // total annulus area with value > level
};

/// Per-level comparison of {V^- > A} and {V_R > A} measures; exact zeros
/// are expected because both sides count the same multiset.
std::vector<MeasureMismatch> equimeasure_check(const SampledField& field,
                                               const RadialProfile& profile,
                                               const std::vector<double>& levels);

/// Non-negative decreasing kernel of |x - y| together with its diagonal-cell
/// mean (needed because e.g. (ln^-)^2 is singular at zero distance).
struct RadialKernel {
    std::function<double(double)> f;
    double diag_mean = 0.0;
};

struct LuttingerPair {
    double lhs = 0.0;  // Int A B C
    double rhs = 0.0;  // Int A_R B C_R
};

/// Both sides of the rearrangement inequality on the grid quadrature.
/// Throws invalid_argument if B fails a sampled monotonicity check.
LuttingerPair luttinger_check(const SampledField& A, const RadialKernel& B,
                              const SampledField& C);

}  // namespace s2b
