#pragma once

#include <vector>

#include "s2b/potential.hpp"
#include "s2b/rearrangement.hpp"

namespace s2b {

/// Integrability diagnostics for one sampled potential:
///   I       = Int V^-(x) ln^2|x-y| V^-(y)          (the non-linear condition)
///   I_plus  = same with (ln^+)^2, I_minus with (ln^-)^2, I = I_plus + I_minus
///   L1      = Int (ln(2+|x|))^2 V^-(x)
///   L2      = Int V_R(|x|) ln^-|x|
///   rhs_A8  = 4 (Int V^-) L1                        bound on I_plus
///   rhs_A14 = 16 pi^2 L2^2 + 32 pi^2 (Int V^-) L1 + (4 pi^4 / 3)(Int V^-)^2
struct ConditionReport {
    double I = 0.0;
    double I_plus = 0.0;
    double I_minus = 0.0;
    double L1 = 0.0;
    double L2 = 0.0;
    double rhs_A8 = 0.0;
    double rhs_A14 = 0.0;
    bool finite = true;  // false if any quantity overflowed; reported, not thrown
};

ConditionReport condition_integrals(const SampledField& field,
                                    const RadialProfile& profile);

/// (rhs_A8, rhs_A14) alone.
std::pair<double, double> appendix_bounds(const SampledField& field,
                                          const RadialProfile& profile);

/// Closed form of the angular average of [ln(rx^2 + ry^2 - 2 rx ry cos t)]^2:
/// 4 ln^2(rx) + 2 Li2((ry/rx)^2), valid for rx > ry >= 0.
double angular_log_closed_form(double rx, double ry);

enum class Verdict { convergent, divergent };

struct ScanRow {
    double cutoff_u = 0.0;  // u = ln|ln(delta)| for inner radius delta
    double I_partial = 0.0;
    double A3_partial = 0.0;
};

struct A17Classification {
    double gamma = 0.0;
    Verdict I_verdict = Verdict::convergent;
    Verdict A3_verdict = Verdict::convergent;
    std::vector<ScanRow> rows;
};

/// Default cutoff scan u_j in {1.5, 3, 6, 12, 24} (doubling windows).
std::vector<double> default_a17_cutoffs_u();

/// Numerical verdict on conditions (A.1) and (A.3) for the a17 family:
/// both integrals are reduced to 1D in r (the potential is central), the
/// inner cutoff is scanned, and the tail decay of the increments decides.
/// Inner radii delta are addressed as u = ln ln(1/delta) because the radii
/// themselves (down to exp(-exp(25))) underflow any float format; cutoffs
/// must satisfy u > ln ln(2e), i.e. delta < 1/(2e). Fewer than 4 cutoffs is
/// a configuration error.
A17Classification classify_a17(double gamma, const std::vector<double>& cutoffs_u);

}  // namespace s2b
