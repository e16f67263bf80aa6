#include "s2b/bound.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "s2b/summation.hpp"

namespace s2b {

namespace {

double sum_of_squares(const Eigen::MatrixXd& m) {
    KahanSum s;
    const int n = static_cast<int>(m.rows());
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) s.add(m(i, j) * m(i, j));
    return s.value();
}

}  // namespace

BoundTerms bound_terms(const KernelMatrix& K, const AVector& av) {
    if (av.a.size() != K.size())
        throw std::invalid_argument("bound_terms: K and a are inconsistent");
    BoundTerms t;
    t.T1 = sum_of_squares(K.entries);
    const Eigen::VectorXd Ka = K.entries * av.a;
    t.T2 = Ka.squaredNorm();
    t.T3 = av.a.dot(Ka);
    if (!std::isfinite(t.T1) || !std::isfinite(t.T2) || !std::isfinite(t.T3))
        throw std::runtime_error("bound_terms: non-finite trace");
    return t;
}

double trace_square(const KernelMatrix& K) { return sum_of_squares(K.entries); }

BoundReport assemble_bounds(const BoundTerms& terms, double g) {
    BoundReport r;
    const double g2 = g * g;
    r.T1 = g2 * terms.T1;
    r.T2 = g2 * terms.T2;
    r.T3 = g * terms.T3;
    r.g = g;
    r.N_I_bound = r.T1 - r.T2;
    // The excess keeps (N-1)/g^2 meaningful for small g without the +1
    // round trip eating significant bits.
    r.bound_excess = g2 * (terms.T1 - 2.0 * terms.T2) + r.T3 * r.T3;
    r.N_total_bound = 1.0 + r.bound_excess;
    return r;
}

namespace {

// 1 + g^2 T1(k0) over ln k0 by golden section. T1(k0) follows from the exact
// shift identity: T1(k0) = T1 - 2 c sigma T3 + c^2 sigma^2, c = ln k0 / 2pi,
// sigma = |s|^2.
ScaleMinimum minimize_truncated_bound(const BoundTerms& t, double sigma, double g) {
    auto value = [&](double lnk0) {
        const double c = lnk0 / (2.0 * M_PI);
        const double t1 = t.T1 - 2.0 * c * sigma * t.T3 + c * c * sigma * sigma;
        return 1.0 + g * g * t1;
    };
    double lo = -16.0, hi = 16.0;
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
    double f1 = value(x1), f2 = value(x2);
    for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = value(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = value(x2);
        }
    }
    const double lnk0 = 0.5 * (lo + hi);
    return ScaleMinimum{std::exp(lnk0), value(lnk0)};
}

}  // namespace

BoundReport compute_bound(const PotentialSpec& spec, const Grid2D& grid,
                          const KernelOptions& opt) {
    SampledField field = sample_negative_part(spec, grid);
    const double int_vminus = field.mass();
    double vmax = 0.0;
    for (double v : field.values) vmax = std::max(vmax, v);

    double eps = 0.0;
    double mu = opt.mu > 0.0 ? opt.mu : 1.0 / grid.L;
    if (opt.eps_rel > 0.0 && vmax > 0.0) {
        eps = opt.eps_rel * vmax;
        field = epsilon_regularize(field, eps, mu);
    }

    BoundReport r;
    bool empty = true;
    for (double v : field.values)
        if (v > 0.0) empty = false;
    if (!empty) {
        const KernelMatrix K = build_K(field, opt.k0);
        const AVector a = build_a(field);
        const BoundTerms t = bound_terms(K, a);
        r = assemble_bounds(t, 1.0);  // spec.g is already inside the sample
        r.scale_opt = minimize_truncated_bound(t, a.norm_sq_s, 1.0);
    } else {
        r.scale_opt = ScaleMinimum{opt.k0, 1.0};
    }
    r.g = spec.g;
    r.k0 = opt.k0;
    r.n = grid.n;
    r.L = grid.L;
    r.eps = eps;
    r.mu = eps > 0.0 ? mu : 0.0;
    r.int_V = integral_of_potential(spec, grid);
    r.int_Vminus = int_vminus;
    return r;
}

double k0_invariance_scan(const SampledField& field, const std::vector<double>& k0s) {
    if (k0s.size() < 3)
        throw std::invalid_argument("k0_invariance_scan: need at least 3 scales");
    std::vector<double> combo;
    const AVector a = build_a(field);
    for (double k0 : k0s) {
        const KernelMatrix K = build_K(field, k0);
        const BoundTerms t = bound_terms(K, a);
        combo.push_back(t.T1 - 2.0 * t.T2 + t.T3 * t.T3);
    }
    const double ref = combo.front();
    double dev = 0.0;
    for (double c : combo) dev = std::max(dev, std::abs(c - ref));
    return dev / std::abs(ref);
}

GScalingReport g_scaling_check(const SampledField& unit_field,
                               const std::vector<double>& g_list) {
    GScalingReport rep;
    for (double g : g_list) {
        if (!(g > 0.0))
            throw std::invalid_argument("g_scaling_check: couplings must be > 0");
        SampledField scaled = unit_field;
        for (double& v : scaled.values) v *= g;
        const KernelMatrix K = build_K(scaled, 1.0);
        const AVector a = build_a(scaled);
        const BoundTerms t = bound_terms(K, a);
        // The rebuilt terms already carry g^2 through the scaled field.
        const double excess = t.T1 - 2.0 * t.T2 + t.T3 * t.T3;
        rep.g.push_back(g);
        rep.excess_over_g2.push_back(excess / (g * g));
    }
    const double ref = rep.excess_over_g2.front();
    for (double v : rep.excess_over_g2)
        rep.max_rel_spread = std::max(rep.max_rel_spread, std::abs(v - ref) / std::abs(ref));
    return rep;
}

}  // namespace s2b
