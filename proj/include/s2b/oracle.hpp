#pragma once

#include <utility>
#include <vector>

#include "s2b/bskernel.hpp"
#include "s2b/potential.hpp"

namespace s2b {

/// Ground-truth spectral count from the 5-point Dirichlet finite-difference
/// Hamiltonian H = -Lap_h + g V on the interior of [-L_box, L_box]^2.
struct SpectralCount {
    int count = 0;                    // eigenvalues < -tol_E
    std::vector<double> eigenvalues;  // ascending; filled when requested
    int n_box = 0;
    double L_box = 0.0;
    double g = 1.0;
    double tol_E = 0.0;
    bool converged = false;  // counts agree at (n, L) and (1.5 n, 1.25 L)
};

struct FdOptions {
    bool want_eigenvalues = false;
    bool convergence_scan = true;
    double tol_E = -1.0;  // < 0: default 10x the h^2-scaled error floor
};

/// Counting uses Sylvester inertia of a banded LDL^T, so no dense
/// eigensolve is ever needed; eigenvalues, when requested, come from
/// multi-interval bisection on the same inertia function.
SpectralCount fd_negative_count(const PotentialSpec& spec, double L_box, int n_box,
                                double g, const FdOptions& opt = {});

struct RadialCountResult {
    int count = 0;
    std::vector<int> per_channel;    // node counts per |m| channel
    bool channels_exhausted = true;  // false: raise m_max
};

/// Bound states of a central potential by Sturm node counting of the
/// zero-energy radial solutions, channel by channel. Counts nodes inside
/// the support by outward integration and adds the possible far-field node
/// from the analytic log/power tail (the weakly bound m = 0 node can sit at
/// exp(large) radii, far beyond any integration range).
RadialCountResult radial_count(const PotentialSpec& spec, int m_max);

struct TrajectoryBranch {
    int id = 0;
    double g_first = 0.0;  // first coupling in the scan where the branch exists
    std::vector<double> g;
    std::vector<double> E;
};

struct FhSample {
    int branch = 0;
    double g = 0.0;
    double fd_dEdg = 0.0;  // centered finite difference along the branch
    double fh_dEdg = 0.0;  // <psi| dH/dg |psi> = Int V psi^2 (normalized)
};

struct TrajectorySet {
    std::vector<TrajectoryBranch> branches;
    std::vector<FhSample> fh;
    bool monotone = true;
    std::vector<std::pair<double, double>> ambiguous;  // flagged g intervals
};

/// E_i(g) branches matched by eigenvector overlap continuation.
TrajectorySet trajectories(const PotentialSpec& spec, const std::vector<double>& g_list,
                           double L_box, int n_box);

/// Candidate coupling thresholds g_i = 1/lambda_i for the positive
/// eigenvalues of K' (capped); diagnostic only.
std::vector<double> bs_coupling_diagnostic(const KernelMatrix& Kprime,
                                           double g_cap = 100.0);

struct BsComparison {
    int bs_count = 0;  // #{lambda(K') >= 1} + 1
    int fd_count = 0;
    int discrepancy = 0;  // bs_count - fd_count, reported, not asserted
};

BsComparison bs_vs_fd(const KernelMatrix& Kprime, const SpectralCount& fd);

}  // namespace s2b
