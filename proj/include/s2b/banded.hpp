#pragma once

#include <vector>

namespace s2b {

/// Symmetric banded matrix, lower storage: band(j, d) = A(j+d, j) for
/// d = 0..bw. Used for the 5-point finite-difference Hamiltonian, whose
/// bandwidth equals the number of grid columns.
class BandedSym {
  public:
    BandedSym(int n, int bw) : n_(n), bw_(bw), a_(static_cast<size_t>(n) * (bw + 1), 0.0) {}

    int size() const { return n_; }
    int bandwidth() const { return bw_; }

    double& at(int j, int d) { return a_[static_cast<size_t>(j) * (bw_ + 1) + d]; }
    double at(int j, int d) const { return a_[static_cast<size_t>(j) * (bw_ + 1) + d]; }

    /// Eigenvalue count below `shift` by Sylvester inertia of LDL^T of
    /// A - shift I (no pivoting; near-breakdown nudges the shift slightly,
    /// which cannot change the count away from eigenvalues).
    int count_below(double shift) const;

    /// LDL^T factorization of A - shift I kept for solves (inverse iteration).
    struct Factor {
        int n = 0, bw = 0;
        std::vector<double> l;  // unit lower band, same layout as BandedSym
        std::vector<double> d;
        void solve_inplace(std::vector<double>& x) const;
    };
    Factor factor(double shift) const;

    std::vector<double> multiply(const std::vector<double>& x) const;

  private:
    // Returns false on pivot breakdown (|pivot| below tiny * scale).
    bool try_ldlt(double shift, std::vector<double>& band, std::vector<double>& d,
                  int* negatives) const;

    int n_, bw_;
    std::vector<double> a_;
};

}  // namespace s2b
