#include "s2b/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "s2b/parallel.hpp"
#include "s2b/summation.hpp"

namespace s2b {

CellRule cell_log_averages(double h, double k0) {
    if (!(h > 0.0) || !(k0 > 0.0))
        throw std::invalid_argument("cell_log_averages: h and k0 must be > 0");
    const double rho = h / std::sqrt(M_PI);
    // ln(k0 rho) assembled as ln k0 + ln rho so the whole rule is an exact
    // polynomial in ln k0; the kernel scale-shift identity depends on that.
    const double lnr = std::log(k0) + std::log(rho);
    CellRule rule;
    rule.h = h;
    rule.k0 = k0;
    rule.diag_ln = lnr - 0.5;
    rule.diag_lnsq = lnr * lnr - lnr + 0.5;
    return rule;
}

namespace {

void check_same_grid(const SampledField& A, const SampledField& B) {
    if (A.grid.n != B.grid.n || A.grid.L != B.grid.L)
        throw std::invalid_argument("pair integral: fields on different grids");
    if (static_cast<int>(A.values.size()) != A.grid.size() ||
        static_cast<int>(B.values.size()) != B.grid.size())
        throw std::invalid_argument("pair integral: field size mismatch");
}

// Shared double loop over unordered active pairs: row i covers j > i with
// the symmetrized summand (A_i B_j + A_j B_i) f(r_ij), plus the diagonal.
// IEEE addition and multiplication commute, so swapping A and B runs the
// bit-identical reduction; rows are parallel, per-row sums are Kahan, and
// the row array is pairwise-reduced in fixed index order.
template <class PairWeight, class DiagWeight>
double pair_sum(const SampledField& A, const SampledField& B, PairWeight&& wfun,
                DiagWeight&& dfun) {
    check_same_grid(A, B);
    std::vector<int> act;
    act.reserve(A.values.size());
    for (int i = 0; i < static_cast<int>(A.values.size()); ++i)
        if (A.values[i] != 0.0 || B.values[i] != 0.0) act.push_back(i);
    if (act.empty()) return 0.0;

    const Grid2D grid = A.grid;
    std::vector<Vec2> pts(act.size());
    for (size_t k = 0; k < act.size(); ++k) pts[k] = grid.node(act[k]);

    std::vector<double> row_sums(act.size(), 0.0);
    parallel_for(static_cast<int>(act.size()), [&](int r) {
        const int i = act[r];
        const double ai = A.values[i];
        const double bi = B.values[i];
        const Vec2 pi = pts[r];
        KahanSum acc;
        acc.add(ai * bi * dfun());
        for (size_t c = r + 1; c < act.size(); ++c) {
            const int j = act[c];
            const double cross = ai * B.values[j] + A.values[j] * bi;
            if (cross == 0.0) continue;
            const double dx = pi.x - pts[c].x;
            const double dy = pi.y - pts[c].y;
            acc.add(cross * wfun(std::sqrt(dx * dx + dy * dy)));
        }
        row_sums[r] = acc.value();
    });

    const double w = grid.cell_weight();
    return pairwise_sum(row_sums) * (w * w);
}

}  // namespace

double pair_integral_logsq(const SampledField& A, const SampledField& B, double k0) {
    if (!(k0 > 0.0)) throw std::invalid_argument("pair_integral_logsq: k0 must be > 0");
    const CellRule rule = cell_log_averages(A.grid.h(), k0);
    const double lk = std::log(k0);
    return pair_sum(
        A, B,
        [lk](double r) {
            const double l = std::log(r) + lk;
            return l * l;
        },
        [&rule] { return rule.diag_lnsq; });
}

double pair_integral_log(const SampledField& A, const SampledField& B, double k0) {
    if (!(k0 > 0.0)) throw std::invalid_argument("pair_integral_log: k0 must be > 0");
    const CellRule rule = cell_log_averages(A.grid.h(), k0);
    const double lk = std::log(k0);
    return pair_sum(
        A, B, [lk](double r) { return std::log(r) + lk; },
        [&rule] { return rule.diag_ln; });
}

PairSplit pair_integral_logsq_split(const SampledField& A, const SampledField& B) {
    const double rho = A.grid.h() / std::sqrt(M_PI);
    if (!(rho < 1.0))
        throw std::invalid_argument(
            "pair_integral_logsq_split: cell radius must be < 1 so the diagonal "
            "cell lies entirely in the ln^- region");
    const CellRule rule = cell_log_averages(A.grid.h(), 1.0);
    PairSplit out;
    out.i_plus = pair_sum(
        A, B,
        [](double r) {
            if (r < 1.0) return 0.0;
            const double l = std::log(r);
            return l * l;
        },
        [] { return 0.0; });
    out.i_minus = pair_sum(
        A, B,
        [](double r) {
            if (r >= 1.0) return 0.0;
            const double l = std::log(r);
            return l * l;
        },
        [&rule] { return rule.diag_lnsq; });
    return out;
}

double pair_integral_kernel(const SampledField& A, const SampledField& C,
                            const std::function<double(double)>& B,
                            double diag_mean) {
    return pair_sum(
        A, C, [&B](double r) { return B(r); }, [diag_mean] { return diag_mean; });
}

// ---------------------------------------------------------------------------
// 1D adaptive quadrature (Gauss-Kronrod 7-15)

namespace {

// Kronrod 15 abscissae (positive half) and weights; embedded Gauss 7 weights.
const double kXgk[8] = {0.991455371120813, 0.949107912342759, 0.864864423359769,
                        0.741531185599394, 0.586087235467691, 0.405845151377397,
                        0.207784955007898, 0.0};
const double kWgk[8] = {0.022935322010529, 0.063092092629979, 0.104790010322250,
                        0.140653259715525, 0.169004726639267, 0.190350578064785,
                        0.204432940075298, 0.209482141084728};
const double kWg[4] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                       0.417959183673469};

struct GkEstimate {
    double value = 0.0;
    double err = 0.0;
    bool finite = true;
};

GkEstimate gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double hl = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - hl * kXgk[i]);
        fv[14 - i] = f(c + hl * kXgk[i]);
    }
    fv[7] = f(c);
    GkEstimate e;
    double gk = 0.0, g = 0.0;
    for (int i = 0; i < 7; ++i) {
        gk += kWgk[i] * (fv[i] + fv[14 - i]);
        if (i % 2 == 1) g += kWg[i / 2] * (fv[i] + fv[14 - i]);
    }
    gk += kWgk[7] * fv[7];
    g += kWg[3] * fv[7];
    e.value = gk * hl;
    e.err = std::abs((gk - g) * hl);
    for (double v : fv)
        if (!std::isfinite(v)) e.finite = false;
    return e;
}

}  // namespace

Integral1D integrate_adaptive(const std::function<double(double)>& f, double a,
                              double b, double rel_tol) {
    Integral1D out;
    if (a == b) return out;

    // Scale pass: a coarse composite sweep fixes the absolute error budget.
    double scale = 0.0;
    {
        const int np = 16;
        const double dw = (b - a) / np;
        for (int i = 0; i < np; ++i) {
            const GkEstimate e = gk15(f, a + i * dw, a + (i + 1) * dw);
            if (!e.finite) out.diverged = true;
            scale += std::abs(e.value);
        }
    }
    const double tol_abs = std::max(rel_tol * scale, 1e-300);

    struct Seg {
        double a, b;
        GkEstimate e;
        int depth;
    };
    std::vector<Seg> stack;
    stack.push_back({a, b, gk15(f, a, b), 0});
    KahanSum total;
    const int max_depth = 48;
    while (!stack.empty()) {
        const Seg s = stack.back();
        stack.pop_back();
        if (!s.e.finite || !std::isfinite(s.e.err)) {
            // refining cannot recover a non-finite sample; flag and move on
            out.diverged = true;
            continue;
        }
        const double budget = tol_abs * std::abs(s.b - s.a) / std::abs(b - a);
        if (s.e.err <= budget || s.depth >= max_depth) {
            if (s.depth >= max_depth && s.e.err > 1e3 * budget) out.diverged = true;
            total.add(s.e.value);
            continue;
        }
        const double m = 0.5 * (s.a + s.b);
        stack.push_back({m, s.b, gk15(f, m, s.b), s.depth + 1});
        stack.push_back({s.a, m, gk15(f, s.a, m), s.depth + 1});
    }
    out.value = total.value();
    if (!std::isfinite(out.value)) out.diverged = true;
    return out;
}

double radial_weight_value(RadialWeight w, double r) {
    switch (w) {
        case RadialWeight::one:
            return 1.0;
        case RadialWeight::ln_minus:
            return r < 1.0 ? -std::log(r) : 0.0;
        case RadialWeight::ln_plus_sq: {
            if (r < 1.0) return 0.0;
            const double l = std::log(r);
            return l * l;
        }
        case RadialWeight::ln_two_plus_sq: {
            const double l = std::log(2.0 + r);
            return l * l;
        }
    }
    throw std::invalid_argument("radial_weight_value: bad enumerator");
}

Integral1D radial_integral(const std::function<double(double)>& f, RadialWeight w,
                           double r_lo, double r_hi, double rel_tol) {
    if (!(r_hi > r_lo) || r_lo < 0.0)
        throw std::invalid_argument("radial_integral: bad range");
    auto integrand = [&f, w](double r) {
        return 2.0 * M_PI * r * f(r) * radial_weight_value(w, r);
    };
    // ln^- and ln^+ have a kink at r = 1; split there so each piece is smooth.
    if ((w == RadialWeight::ln_minus || w == RadialWeight::ln_plus_sq) &&
        r_lo < 1.0 && r_hi > 1.0) {
        Integral1D a = integrate_adaptive(integrand, r_lo, 1.0, rel_tol);
        Integral1D b = integrate_adaptive(integrand, 1.0, r_hi, rel_tol);
        return Integral1D{a.value + b.value, a.diverged || b.diverged};
    }
    return integrate_adaptive(integrand, r_lo, r_hi, rel_tol);
}

}  // namespace s2b
