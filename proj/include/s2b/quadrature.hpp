#pragma once

#include <functional>

#include "s2b/potential.hpp"

namespace s2b {

/// Exact means of ln(k0 r) and ln^2(k0 r) over the disk of the same area as
/// a grid cell (radius rho = h/sqrt(pi)). Forced by the closed forms
///   diag_ln   = ln(k0 rho) - 1/2
///   diag_lnsq = ln^2(k0 rho) - ln(k0 rho) + 1/2
/// so diag_lnsq - diag_ln^2 = 1/4 for every h, k0.
struct CellRule {
    double h = 0.0;
    double k0 = 0.0;
    double diag_ln = 0.0;
    double diag_lnsq = 0.0;
};

CellRule cell_log_averages(double h, double k0);

/// sum_{ij} A_i B_j w^2 ln^2(k0 |x_i - x_j|), with the cell-mean value on the
/// diagonal. Symmetric in A and B; deterministic for any thread count.
double pair_integral_logsq(const SampledField& A, const SampledField& B, double k0);

/// Same pairing with a single ln(k0 |x-y|) weight (diagonal: diag_ln).
double pair_integral_log(const SampledField& A, const SampledField& B, double k0);

struct PairSplit {
    double i_plus = 0.0;   // (ln^+ |x-y|)^2 part
    double i_minus = 0.0;  // (ln^- |x-y|)^2 part
};

/// Splits the k0 = 1 pairing by the sign of ln|x-y|. Off-diagonal pairs land
/// on exactly one side; the diagonal cell (|x-y| < h/sqrt(pi) < 1) is ln^-.
PairSplit pair_integral_logsq_split(const SampledField& A, const SampledField& B);

/// Generic non-negative radial kernel pairing used by the rearrangement
/// checks: sum_{ij} A_i B(|x_i-x_j|) C_j w^2 with a caller-supplied diagonal
/// cell mean.
double pair_integral_kernel(const SampledField& A, const SampledField& C,
                            const std::function<double(double)>& B,
                            double diag_mean);

struct Integral1D {
    double value = 0.0;
    bool diverged = false;
};

/// Adaptive Gauss-Kronrod 7-15 with deterministic panel bisection. Open
/// nodes, so integrable endpoint singularities are never sampled exactly.
Integral1D integrate_adaptive(const std::function<double(double)>& f, double a,
                              double b, double rel_tol = 1e-10);

enum class RadialWeight { one, ln_minus, ln_plus_sq, ln_two_plus_sq };

double radial_weight_value(RadialWeight w, double r);

/// 2 pi Int r f(r) weight(r) dr over [r_lo, r_hi], adaptive, requested
/// relative tolerance 1e-8 by default. Non-finite samples or failure to
/// converge set the diverged flag instead of throwing.
Integral1D radial_integral(const std::function<double(double)>& f, RadialWeight w,
                           double r_lo, double r_hi, double rel_tol = 1e-8);

}  // namespace s2b
