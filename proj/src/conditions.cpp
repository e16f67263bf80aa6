#include "s2b/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "s2b/quadrature.hpp"
#include "s2b/special.hpp"
#include "s2b/summation.hpp"

namespace s2b {

namespace {

double l1_weighted_mass(const SampledField& field) {
    KahanSum s;
    for (int i = 0; i < field.grid.size(); ++i) {
        if (field.values[i] == 0.0) continue;
        const double l = std::log(2.0 + norm(field.grid.node(i)));
        s.add(field.values[i] * l * l);
    }
    return s.value() * field.grid.cell_weight();
}

double l2_profile(const RadialProfile& profile) {
    KahanSum s;
    for (size_t k = 0; k < profile.values.size(); ++k) {
        if (profile.values[k] == 0.0) continue;
        const double w = ln_minus(profile.radii[k]);
        if (w == 0.0) continue;
        s.add(profile.values[k] * w);
    }
    return s.value() * profile.cell_area;
}

}  // namespace

std::pair<double, double> appendix_bounds(const SampledField& field,
                                          const RadialProfile& profile) {
    const double mass = field.mass();
    const double L1 = l1_weighted_mass(field);
    const double L2 = l2_profile(profile);
    const double pi2 = M_PI * M_PI;
    const double rhs_a8 = 4.0 * mass * L1;
    const double rhs_a14 =
        16.0 * pi2 * L2 * L2 + 32.0 * pi2 * mass * L1 + (4.0 * pi2 * pi2 / 3.0) * mass * mass;
    return {rhs_a8, rhs_a14};
}

ConditionReport condition_integrals(const SampledField& field,
                                    const RadialProfile& profile) {
    if (field.values.size() != profile.values.size())
        throw std::invalid_argument("condition_integrals: profile not from this field");
    ConditionReport r;
    r.I = pair_integral_logsq(field, field, 1.0);
    const PairSplit split = pair_integral_logsq_split(field, field);
    r.I_plus = split.i_plus;
    r.I_minus = split.i_minus;
    r.L1 = l1_weighted_mass(field);
    r.L2 = l2_profile(profile);
    const auto rhs = appendix_bounds(field, profile);
    r.rhs_A8 = rhs.first;
    r.rhs_A14 = rhs.second;
    r.finite = std::isfinite(r.I) && std::isfinite(r.I_plus) && std::isfinite(r.I_minus) &&
               std::isfinite(r.L1) && std::isfinite(r.L2) && std::isfinite(r.rhs_A8) &&
               std::isfinite(r.rhs_A14);
    return r;
}

double angular_log_closed_form(double rx, double ry) {
    if (!(rx > 0.0) || ry < 0.0 || !(rx > ry))
        throw std::domain_error("angular_log_closed_form: need rx > ry >= 0");
    const double l = std::log(rx);
    const double q = ry / rx;
    return 4.0 * l * l + 2.0 * dilog(q * q);
}

// ---------------------------------------------------------------------------
// a17 classification.
//
// With t = -ln r and u = ln t the two radial reductions become
//   A3(delta) = 2 pi Int_{u0}^{U} u^-gamma du
//   I(delta)  = 8 pi^2 Int Int_{t0 <= tx < ty <= T} g(tx) g(ty)
//                 [tx^2 + Li2(exp(-2(ty - tx))) / 2] dtx dty,
//   g(t) = 1 / (t^2 (ln t)^gamma),  t0 = ln(2e),  T = exp(U),  U = ln|ln delta|.
// The tx^2 part is the angular 4 ln^2 |x| term, the Li2 part the pi^2/3-type
// remainder of the closed form. Everything is integrated in u, where the
// integrands are smooth and the scan to u = 25 is cheap.

namespace {

const double kGl7x[7] = {-0.949107912342759, -0.741531185599394, -0.405845151377397,
                         0.0, 0.405845151377397, 0.741531185599394, 0.949107912342759};
const double kGl7w[7] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                         0.417959183673469, 0.381830050505119, 0.279705391489277,
                         0.129484966168870};

template <class F>
double gl7(F&& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double hl = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < 7; ++i) s += kGl7w[i] * f(c + hl * kGl7x[i]);
    return s * hl;
}

struct A17Integrand {
    double gamma;

    double phi(double u) const { return std::exp(-u) * std::pow(u, -gamma); }
    double psi(double u) const { return std::exp(u) * std::pow(u, -gamma); }
    double g_of_t(double t) const { return 1.0 / (t * t * std::pow(std::log(t), gamma)); }

    // Int_0^{s_cap} g(tx + s) Li2(exp(-2s))/2 ds; the Li2 factor dies like
    // exp(-2s), so panels stop at s = 20.
    double li2_tail(double tx, double s_cap) const {
        static const double edges[6] = {0.0, 0.5, 1.0, 2.0, 5.0, 20.0};
        double total = 0.0;
        for (int p = 0; p < 5; ++p) {
            const double a = std::min(edges[p], s_cap);
            const double b = std::min(edges[p + 1], s_cap);
            if (!(b > a)) break;
            total += gl7(
                [this, tx](double s) {
                    return g_of_t(tx + s) * 0.5 * dilog(std::exp(-2.0 * s));
                },
                a, b);
        }
        return total;
    }
};

}  // namespace

std::vector<double> default_a17_cutoffs_u() { return {1.5, 3.0, 6.0, 12.0, 24.0}; }

A17Classification classify_a17(double gamma, const std::vector<double>& cutoffs_u) {
    if (!(gamma > 0.0)) throw std::invalid_argument("classify_a17: gamma must be > 0");
    if (cutoffs_u.size() < 4)
        throw std::invalid_argument("classify_a17: need at least 4 cutoffs");
    const double u0 = std::log(std::log(2.0 * M_E));
    std::vector<double> us = cutoffs_u;
    for (double u : us)
        if (!(u > u0))
            throw std::invalid_argument(
                "classify_a17: cutoffs must satisfy u > ln ln(2e), i.e. delta < 1/(2e)");
    std::sort(us.begin(), us.end());
    const A17Integrand F{gamma};

    // Panel grid over [u0, max u] with every cutoff on a boundary.
    std::vector<double> edges;
    {
        const double du = 1.0 / 64.0;
        std::vector<double> marks = us;
        marks.push_back(u0);
        std::sort(marks.begin(), marks.end());
        for (size_t m = 0; m + 1 < marks.size(); ++m) {
            const double a = marks[m], b = marks[m + 1];
            if (!(b > a)) continue;
            const int np = std::max(1, static_cast<int>(std::ceil((b - a) / du)));
            for (int p = 0; p < np; ++p) edges.push_back(a + (b - a) * p / np);
        }
        edges.push_back(us.back());
    }

    const int np = static_cast<int>(edges.size()) - 1;
    // Cumulative D(u) = Int psi, then the prefix integrals of the three
    // u-space integrands that the partial values are assembled from.
    std::vector<double> D(np + 1, 0.0);
    for (int p = 0; p < np; ++p)
        D[p + 1] = D[p] + gl7([&F](double u) { return F.psi(u); }, edges[p], edges[p + 1]);

    std::vector<double> term1_prefix(np + 1, 0.0), a3_prefix(np + 1, 0.0);
    for (int p = 0; p < np; ++p) {
        const double a = edges[p], b = edges[p + 1];
        term1_prefix[p + 1] =
            term1_prefix[p] +
            gl7(
                [&](double u) {
                    const double Du = D[p] + gl7([&F](double v) { return F.psi(v); }, a, u);
                    return F.phi(u) * Du;
                },
                a, b);
        a3_prefix[p + 1] =
            a3_prefix[p] + gl7([gamma](double u) { return std::pow(u, -gamma); }, a, b);
    }

    A17Classification out;
    out.gamma = gamma;
    const double eight_pi2 = 8.0 * M_PI * M_PI;
    for (double uj : us) {
        const auto it = std::lower_bound(edges.begin(), edges.end(), uj - 1e-12);
        const int pj = static_cast<int>(it - edges.begin());
        const double Tj = std::exp(uj);
        // Li2 cross term recomputed per cutoff; its window depends on T.
        double term2 = 0.0;
        for (int p = 0; p < pj; ++p) {
            term2 += gl7(
                [&](double u) {
                    const double tx = std::exp(u);
                    const double cap = std::min(20.0, Tj - tx);
                    if (!(cap > 0.0)) return 0.0;
                    // dt = t du turns g(t) dt into phi(u) du.
                    return F.phi(u) * F.li2_tail(tx, cap);
                },
                edges[p], edges[p + 1]);
        }
        ScanRow row;
        row.cutoff_u = uj;
        row.I_partial = eight_pi2 * (term1_prefix[pj] + term2);
        row.A3_partial = 2.0 * M_PI * a3_prefix[pj];
        out.rows.push_back(row);
    }

    // Verdict: effective exponent q of the increment decay (integrand ~ u^-q);
    // the integral converges iff q > 1. Estimated from the last increments.
    auto verdict = [&us](const std::vector<double>& vals) {
        const size_t m = vals.size();
        std::vector<double> inc, width, mid;
        for (size_t j = 0; j + 1 < m; ++j) {
            inc.push_back(vals[j + 1] - vals[j]);
            width.push_back(us[j + 1] - us[j]);
            mid.push_back(0.5 * (us[j] + us[j + 1]));
        }
        const double total = std::abs(vals.back());
        if (inc.back() <= 1e-12 * total) return Verdict::convergent;
        std::vector<double> q;
        for (size_t j = 0; j + 1 < inc.size(); ++j) {
            if (inc[j] <= 0.0 || inc[j + 1] <= 0.0) continue;
            q.push_back((std::log(inc[j] / inc[j + 1]) + std::log(width[j + 1] / width[j])) /
                        std::log(mid[j + 1] / mid[j]));
        }
        if (q.empty()) return Verdict::convergent;
        double qhat = q.back();
        if (q.size() >= 2) qhat = 0.5 * (q[q.size() - 1] + q[q.size() - 2]);
        return qhat > 1.05 ? Verdict::convergent : Verdict::divergent;
    };

    std::vector<double> ivals, avals;
    for (const auto& row : out.rows) {
        ivals.push_back(row.I_partial);
        avals.push_back(row.A3_partial);
    }
    out.I_verdict = verdict(ivals);
    out.A3_verdict = verdict(avals);
    return out;
}

}  // namespace s2b
