#include "s2b/bskernel.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>

#include "s2b/parallel.hpp"
#include "s2b/quadrature.hpp"

namespace s2b {

KernelMatrix build_K(const SampledField& field, double k0) {
    if (!(k0 > 0.0)) throw std::invalid_argument("build_K: k0 must be > 0");
    KernelMatrix K;
    K.k0 = k0;
    K.h = field.grid.h();
    for (int i = 0; i < field.grid.size(); ++i)
        if (field.values[i] > 0.0) K.active.push_back(i);
    const int m = static_cast<int>(K.active.size());
    if (m == 0)
        throw std::invalid_argument(
            "build_K: field has no strictly positive value (empty active set)");

    K.points.resize(m);
    K.s.resize(m);
    const double w = field.grid.cell_weight();
    for (int i = 0; i < m; ++i) {
        K.points[i] = field.grid.node(K.active[i]);
        K.s[i] = std::sqrt(w * field.values[K.active[i]]);
    }

    const double inv2pi = 1.0 / (2.0 * M_PI);
    const double cshift = std::log(k0) * inv2pi;  // exactly 0 for k0 = 1
    const double diag_ln1 = std::log(K.h / std::sqrt(M_PI)) - 0.5;

    // Upper triangle assembled in parallel, then mirrored, so the matrix is
    // exactly symmetric. Each entry is the k0 = 1 value minus the rank-one
    // shift, which keeps K(k0) = K(1) - (ln k0/2pi) s s^T bit-exact.
    K.entries.resize(m, m);
    parallel_for(m, [&](int i) {
        const Vec2 pi_ = K.points[i];
        const double si = K.s[i];
        K.entries(i, i) = -inv2pi * (si * si) * diag_ln1 - cshift * (si * si);
        for (int j = i + 1; j < m; ++j) {
            const double dx = pi_.x - K.points[j].x;
            const double dy = pi_.y - K.points[j].y;
            const double r = std::sqrt(dx * dx + dy * dy);
            const double ss = si * K.s[j];
            K.entries(i, j) = -inv2pi * ss * std::log(r) - cshift * ss;
        }
    });
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) K.entries(j, i) = K.entries(i, j);
    return K;
}

AVector build_a(const SampledField& field) {
    const double w = field.grid.cell_weight();
    int m = 0;
    for (double v : field.values)
        if (v > 0.0) ++m;
    if (m == 0) throw std::invalid_argument("build_a: zero mass field");
    AVector out;
    out.a.resize(m);
    int k = 0;
    double nsq = 0.0;
    for (double v : field.values) {
        if (v <= 0.0) continue;
        const double s = std::sqrt(w * v);
        out.a[k++] = s;
        nsq += s * s;
    }
    out.norm_sq_s = nsq;
    out.a /= std::sqrt(nsq);
    return out;
}

KernelMatrix build_Kprime(const KernelMatrix& K, const AVector& av) {
    const int m = K.size();
    if (av.a.size() != m) throw std::invalid_argument("build_Kprime: dimension mismatch");
    const Eigen::VectorXd& a = av.a;
    const Eigen::VectorXd b = K.entries * a;
    const double C = a.dot(b);

    KernelMatrix Kp = K;
    for (int i = 0; i < m; ++i) {
        for (int j = i; j < m; ++j) {
            const double v =
                K.entries(i, j) - b[i] * a[j] - a[i] * b[j] + C * a[i] * a[j];
            Kp.entries(i, j) = v;
            Kp.entries(j, i) = v;
        }
    }
    return Kp;
}

std::vector<double> symmetric_eigenvalues(const Eigen::MatrixXd& m) {
    if (!m.allFinite()) throw std::invalid_argument("symmetric_eigenvalues: non-finite entries");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("symmetric_eigenvalues: solver failed");
    std::vector<double> out(m.rows());
    for (int i = 0; i < m.rows(); ++i) out[i] = solver.eigenvalues()[m.rows() - 1 - i];
    return out;
}

SymmetricEigen symmetric_eigenpairs(const Eigen::MatrixXd& m) {
    if (!m.allFinite()) throw std::invalid_argument("symmetric_eigenpairs: non-finite entries");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("symmetric_eigenpairs: solver failed");
    SymmetricEigen out;
    const int n = static_cast<int>(m.rows());
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (int i = 0; i < n; ++i) {
        out.values[i] = solver.eigenvalues()[n - 1 - i];
        out.vectors.col(i) = solver.eigenvectors().col(n - 1 - i);
    }
    return out;
}

void dump_kernel(const KernelMatrix& K, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("dump_kernel: cannot open " + path);
    const std::int64_t m = K.size();
    f.write(reinterpret_cast<const char*>(&m), sizeof(m));
    f.write(reinterpret_cast<const char*>(&K.k0), sizeof(double));
    f.write(reinterpret_cast<const char*>(&K.h), sizeof(double));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const double v = K.entries(i, j);
            f.write(reinterpret_cast<const char*>(&v), sizeof(double));
        }
    if (!f) throw std::runtime_error("dump_kernel: write failed for " + path);
}

}  // namespace s2b
