#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "s2b/potential.hpp"

namespace s2b {

/// Nystrom discretization of the symmetrized zero-energy kernel
///   K(x,y) = -(1/2pi) sqrt(V^-(x)) ln(k0 |x-y|) sqrt(V^-(y))
/// restricted to the active cells (V^- > 0), quadrature weights absorbed
/// symmetrically: s_i = sqrt(w V^-_i) and
///   K_ij = -(1/2pi) s_i s_j ln(k0 |x_i-x_j|),
/// the diagonal using the equal-area-disk mean of the log. Entries satisfy
/// K(k0) = K(1) - (ln k0 / 2pi) s s^T exactly, by construction.
struct KernelMatrix {
    std::vector<int> active;          // node indices with V^- > 0
    std::vector<Vec2> points;         // coordinates of the active nodes
    Eigen::MatrixXd entries;          // M x M, exactly symmetric
    Eigen::VectorXd s;                // sqrt(w V^-) on active nodes
    double k0 = 1.0;
    double h = 0.0;

    int size() const { return static_cast<int>(entries.rows()); }
    double frobenius() const { return entries.norm(); }
};

/// Unit vector along sqrt(V^-): a_i = s_i / |s|.
struct AVector {
    Eigen::VectorXd a;
    double norm_sq_s = 0.0;  // |s|^2 = sum w V^-
};

/// Throws invalid_argument if the field has no strictly positive value
/// (epsilon-regularize first when V^- vanishes on regions).
KernelMatrix build_K(const SampledField& field, double k0);

AVector build_a(const SampledField& field);

/// K' = K - |b><a| - |a><b| + C |a><a| with b = K a and C = <a|K|a>,
/// so that K' a = 0. Hermitian like K; spectrum independent of k0.
KernelMatrix build_Kprime(const KernelMatrix& K, const AVector& a);

/// Full real spectrum, descending. Throws on non-finite entries.
std::vector<double> symmetric_eigenvalues(const Eigen::MatrixXd& m);

struct SymmetricEigen {
    std::vector<double> values;  // descending
    Eigen::MatrixXd vectors;     // columns match values
};

SymmetricEigen symmetric_eigenpairs(const Eigen::MatrixXd& m);

/// Debug dump: header (int64 M, double k0, double h) then M^2 row-major
/// doubles. Not a stability-guaranteed format.
void dump_kernel(const KernelMatrix& K, const std::string& path);

}  // namespace s2b
