#include "s2b/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "s2b/banded.hpp"

namespace s2b {

namespace {

struct FdGrid {
    int n = 0;
    double L = 0.0;
    double h() const { return 2.0 * L / (n + 1); }  // interior nodes only
    Vec2 node(int idx) const {
        const int ix = idx % n;
        const int iy = idx / n;
        const double step = h();
        return Vec2{-L + (ix + 1) * step, -L + (iy + 1) * step};
    }
};

struct FdProblem {
    FdGrid grid;
    BandedSym H;
    double vminus_max = 0.0;  // max of g * V^-
};

FdProblem build_fd(const PotentialSpec& spec, double L_box, int n_box, double g) {
    if (n_box < 32) throw std::invalid_argument("fd_negative_count: n_box must be >= 32");
    if (!(L_box > 0.0)) throw std::invalid_argument("fd_negative_count: L_box must be > 0");
    FdGrid grid{n_box, L_box};
    const int N = n_box * n_box;
    const double h = grid.h();
    const double inv_h2 = 1.0 / (h * h);
    FdProblem p{grid, BandedSym(N, n_box), 0.0};
    for (int idx = 0; idx < N; ++idx) {
        const double v = g * evaluate(spec, grid.node(idx));
        p.H.at(idx, 0) = 4.0 * inv_h2 + v;
        p.vminus_max = std::max(p.vminus_max, -v);
        const int ix = idx % n_box;
        if (ix < n_box - 1) p.H.at(idx, 1) = -inv_h2;
        if (idx + n_box < N) p.H.at(idx, n_box) = -inv_h2;
    }
    return p;
}

double default_tol_E(double h, double vminus_max) {
    // 10x the h^2-scaled spectral error floor (h^2/120) (g Vmax)^2; states
    // inside this shell around zero are below discretization resolution.
    const double tol = (h * h / 12.0) * vminus_max * vminus_max;
    return std::max(tol, 1e-12);
}

// All eigenvalues strictly below `upper`, ascending, to absolute accuracy
// `acc`, found by multi-interval inertia bisection.
std::vector<double> eigenvalues_below(const BandedSym& H, double lower, double upper,
                                      double acc) {
    struct Seg {
        double lo, hi;
        int clo, chi;
    };
    const int clo0 = H.count_below(lower);
    const int chi0 = H.count_below(upper);
    std::vector<double> out;
    if (chi0 == clo0) return out;
    std::vector<Seg> stack{{lower, upper, clo0, chi0}};
    while (!stack.empty()) {
        const Seg s = stack.back();
        stack.pop_back();
        if (s.chi == s.clo) continue;
        if (s.hi - s.lo <= acc) {
            const double mid = 0.5 * (s.lo + s.hi);
            for (int k = 0; k < s.chi - s.clo; ++k) out.push_back(mid);
            continue;
        }
        const double mid = 0.5 * (s.lo + s.hi);
        const int cmid = H.count_below(mid);
        stack.push_back({mid, s.hi, cmid, s.chi});
        stack.push_back({s.lo, mid, s.clo, cmid});
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

SpectralCount fd_negative_count(const PotentialSpec& spec, double L_box, int n_box,
                                double g, const FdOptions& opt) {
    const FdProblem p = build_fd(spec, L_box, n_box, g);
    SpectralCount out;
    out.n_box = n_box;
    out.L_box = L_box;
    out.g = g;
    out.tol_E = opt.tol_E >= 0.0 ? opt.tol_E : default_tol_E(p.grid.h(), p.vminus_max);
    out.count = p.H.count_below(-out.tol_E);

    if (opt.want_eigenvalues && out.count > 0) {
        const double lower = -1.0001 * p.vminus_max - 1e-9;
        const double acc = std::max(1e-10, 1e-10 * std::max(1.0, p.vminus_max));
        out.eigenvalues = eigenvalues_below(p.H, lower, -out.tol_E, acc);
    }

    if (opt.convergence_scan) {
        const int n2 = (3 * n_box) / 2;
        const FdProblem p2 = build_fd(spec, 1.25 * L_box, n2, g);
        // Same energy tolerance on both resolutions so the counts compare
        // the same definition of "bound".
        const int count2 = p2.H.count_below(-out.tol_E);
        out.converged = (count2 == out.count);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Radial Sturm oscillation oracle.

namespace {

struct RadialPotential {
    const PotentialSpec* spec;
    double vminus(double r) const {
        const double v = evaluate(*spec, Vec2{r, 0.0});
        return v < 0.0 ? -v : 0.0;
    }
};

// Support radius and interior discontinuity radii for the central families.
void radial_support(const PotentialSpec& spec, double* r_out,
                    std::vector<double>* jumps) {
    double R = 0.0;
    switch (spec.family) {
        case Family::circular_well:
            R = spec.disk.radius;
            jumps->push_back(spec.disk.radius);
            break;
        case Family::gaussian_wells:
            for (const auto& w : spec.wells) R = std::max(R, 8.5 * w.width);
            break;
        case Family::a17_family:
            R = kA17SupportRadius;
            break;
        case Family::sum_of_terms:
            for (const auto& t : spec.terms) {
                if (t.kind == TermKind::gaussian)
                    R = std::max(R, 8.5 * t.gaussian.width);
                else if (t.kind == TermKind::disk) {
                    R = std::max(R, t.disk.radius);
                    jumps->push_back(t.disk.radius);
                } else if (t.constant.value != 0.0) {
                    throw std::invalid_argument(
                        "radial_count: constant terms have unbounded support");
                }
            }
            break;
    }
    if (!(R > 0.0)) R = 1.0;
    std::sort(jumps->begin(), jumps->end());
    *r_out = R;
}

// Zero-energy radial equation in s = ln r for u(r) = sqrt(r) f(r):
//   u_ss = u_s + [(m^2 - 1/4) - r^2 V^-(r)] u.
// Returns interior node count and (f, f') at r = R for the tail analysis.
struct ShootResult {
    int nodes = 0;
    double f = 0.0;
    double fp = 0.0;
};

ShootResult shoot_channel(const RadialPotential& V, int m, double r_out,
                          const std::vector<double>& jumps) {
    const double r_min = r_out * 1e-7;
    std::vector<double> breaks{r_min};
    for (double rj : jumps)
        if (rj > r_min && rj < r_out) breaks.push_back(rj);
    breaks.push_back(r_out);

    const double mm = m * m - 0.25;
    double u = 1.0, v = std::abs(m) + 0.5;
    int nodes = 0;
    auto rhs = [&](double s, double uu, double vv, double* du, double* dv) {
        const double r = std::exp(s);
        const double q = mm - r * r * V.vminus(r);
        *du = vv;
        *dv = vv + q * uu;
    };
    const double ds = 5e-4;
    for (size_t seg = 0; seg + 1 < breaks.size(); ++seg) {
        const double s0 = std::log(breaks[seg]);
        const double s1 = std::log(breaks[seg + 1]);
        const int steps = std::max(16, static_cast<int>(std::ceil((s1 - s0) / ds)));
        const double step = (s1 - s0) / steps;
        double s = s0;
        for (int k = 0; k < steps; ++k) {
            double k1u, k1v, k2u, k2v, k3u, k3v, k4u, k4v;
            rhs(s, u, v, &k1u, &k1v);
            rhs(s + 0.5 * step, u + 0.5 * step * k1u, v + 0.5 * step * k1v, &k2u, &k2v);
            rhs(s + 0.5 * step, u + 0.5 * step * k2u, v + 0.5 * step * k2v, &k3u, &k3v);
            rhs(s + step, u + step * k3u, v + step * k3v, &k4u, &k4v);
            const double un = u + step / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
            const double vn = v + step / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
            if (un == 0.0 || un * u < 0.0) ++nodes;
            u = un;
            v = vn;
            s += step;
            if (std::abs(u) > 1e100 || std::abs(v) > 1e100) {
                u *= 1e-100;
                v *= 1e-100;
            }
        }
    }
    ShootResult res;
    res.nodes = nodes;
    const double R = r_out;
    res.f = u / std::sqrt(R);
    res.fp = (v - 0.5 * u) / (R * std::sqrt(R));
    return res;
}

// One more node beyond the support? For m = 0 the free solution is
// a + b ln r, for m >= 1 it is alpha r^-m + beta r^m; in both cases the
// crossing location follows from (f, f') at R in closed form.
bool tail_node(int m, double R, double f, double fp) {
    if (f == 0.0) return false;
    if (m == 0) {
        const double b = R * fp;
        return f * b < 0.0;
    }
    const double beta_sign = m * f + R * fp;
    return f * beta_sign < 0.0;
}

}  // namespace

RadialCountResult radial_count(const PotentialSpec& spec, int m_max) {
    if (!is_central(spec))
        throw std::invalid_argument("radial_count: spec must be a central family");
    if (m_max < 0) throw std::invalid_argument("radial_count: m_max must be >= 0");
    double r_out = 0.0;
    std::vector<double> jumps;
    radial_support(spec, &r_out, &jumps);
    const RadialPotential V{&spec};

    RadialCountResult out;
    int consecutive_zero = 0;
    for (int m = 0; m <= m_max; ++m) {
        const ShootResult sr = shoot_channel(V, m, r_out, jumps);
        int c = sr.nodes;
        if (tail_node(m, r_out, sr.f, sr.fp)) ++c;
        out.per_channel.push_back(c);
        out.count += (m == 0) ? c : 2 * c;
        consecutive_zero = (c == 0) ? consecutive_zero + 1 : 0;
        if (consecutive_zero >= 2) return out;
    }
    out.channels_exhausted = (consecutive_zero >= 2 || out.per_channel.back() == 0);
    return out;
}

// ---------------------------------------------------------------------------
// Coupling-constant trajectories.

namespace {

// Eigenvectors by inverse iteration on the bisection eigenvalues, clusters
// orthogonalized internally (grid-split degenerate pairs land here).
std::vector<std::vector<double>> eigenvectors_at(const BandedSym& H,
                                                 const std::vector<double>& eigs,
                                                 double scale) {
    std::vector<std::vector<double>> vecs;
    const int N = H.size();
    size_t i = 0;
    int cluster_index = 0;
    while (i < eigs.size()) {
        size_t j = i + 1;
        const double cluster_tol = std::max(1e-7 * scale, 1e-9);
        while (j < eigs.size() && eigs[j] - eigs[j - 1] < cluster_tol) ++j;
        const size_t mult = j - i;
        const double lambda = eigs[i + (mult - 1) / 2];
        const BandedSym::Factor F = H.factor(lambda);
        for (size_t c = 0; c < mult; ++c) {
            std::mt19937_64 rng(0x5b2dULL + 977ULL * cluster_index + c);
            std::uniform_real_distribution<double> uni(-1.0, 1.0);
            std::vector<double> x(N);
            for (double& xi : x) xi = uni(rng);
            for (int it = 0; it < 8; ++it) {
                // project out the already-found cluster vectors
                for (size_t p = vecs.size() - (c), pe = vecs.size(); p < pe; ++p) {
                    const auto& w = vecs[p];
                    double dot = 0.0;
                    for (int k = 0; k < N; ++k) dot += w[k] * x[k];
                    for (int k = 0; k < N; ++k) x[k] -= dot * w[k];
                }
                F.solve_inplace(x);
                double nrm = 0.0;
                for (double xi : x) nrm += xi * xi;
                nrm = std::sqrt(nrm);
                for (double& xi : x) xi /= nrm;
                // residual check
                const std::vector<double> Hx = H.multiply(x);
                double res = 0.0;
                for (int k = 0; k < N; ++k) {
                    const double r = Hx[k] - eigs[i + c] * x[k];
                    res += r * r;
                }
                if (std::sqrt(res) < 1e-6 * scale && it >= 1) break;
            }
            vecs.push_back(std::move(x));
        }
        i = j;
        ++cluster_index;
    }
    return vecs;
}

}  // namespace

TrajectorySet trajectories(const PotentialSpec& spec, const std::vector<double>& g_list,
                           double L_box, int n_box) {
    if (g_list.size() < 4)
        throw std::invalid_argument("trajectories: need at least 4 couplings");
    for (size_t k = 1; k < g_list.size(); ++k)
        if (!(g_list[k] > g_list[k - 1]))
            throw std::invalid_argument("trajectories: g_list must be ascending");

    TrajectorySet set;
    std::vector<std::vector<double>> prev_vecs;
    std::vector<int> prev_branch;  // branch id per previous eigenvector
    int next_branch = 0;

    const FdGrid grid{n_box, L_box};
    const int N = n_box * n_box;
    std::vector<double> v_unit(N);  // dH/dg = V at the spec's own coupling
    for (int idx = 0; idx < N; ++idx) v_unit[idx] = evaluate(spec, grid.node(idx));

    for (double g : g_list) {
        const FdProblem p = build_fd(spec, L_box, n_box, g);
        const double tol = default_tol_E(p.grid.h(), p.vminus_max);
        const double lower = -1.0001 * p.vminus_max - 1e-9;
        const double scale = 8.0 / (p.grid.h() * p.grid.h()) + p.vminus_max;
        const std::vector<double> eigs =
            eigenvalues_below(p.H, lower, -tol, std::max(1e-10, 1e-12 * scale));
        const auto vecs = eigenvectors_at(p.H, eigs, scale);

        std::vector<int> branch_of(eigs.size(), -1);
        std::vector<char> prev_used(prev_vecs.size(), 0);
        // Greedy overlap continuation, strongest overlap first.
        struct Cand {
            double overlap;
            size_t prev, cur;
        };
        std::vector<Cand> cands;
        for (size_t pv = 0; pv < prev_vecs.size(); ++pv)
            for (size_t cv = 0; cv < vecs.size(); ++cv) {
                double dot = 0.0;
                for (int k = 0; k < N; ++k) dot += prev_vecs[pv][k] * vecs[cv][k];
                cands.push_back({std::abs(dot), pv, cv});
            }
        std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
            if (a.overlap != b.overlap) return a.overlap > b.overlap;
            if (a.prev != b.prev) return a.prev < b.prev;
            return a.cur < b.cur;
        });
        std::vector<double> best_for_prev(prev_vecs.size(), 0.0),
            second_for_prev(prev_vecs.size(), 0.0);
        for (const Cand& c : cands) {
            if (c.overlap > best_for_prev[c.prev]) {
                second_for_prev[c.prev] = best_for_prev[c.prev];
                best_for_prev[c.prev] = c.overlap;
            } else if (c.overlap > second_for_prev[c.prev]) {
                second_for_prev[c.prev] = c.overlap;
            }
        }
        for (const Cand& c : cands) {
            if (prev_used[c.prev] || branch_of[c.cur] != -1) continue;
            if (c.overlap < 0.4) continue;  // lost track; treat as new branch
            prev_used[c.prev] = 1;
            branch_of[c.cur] = prev_branch[c.prev];
            if (second_for_prev[c.prev] > 0.95 * best_for_prev[c.prev]) {
                const auto& b = set.branches[prev_branch[c.prev]];
                if (!b.g.empty()) set.ambiguous.emplace_back(b.g.back(), g);
            }
        }
        for (size_t cv = 0; cv < vecs.size(); ++cv) {
            if (branch_of[cv] == -1) {
                branch_of[cv] = next_branch++;
                TrajectoryBranch nb;
                nb.id = branch_of[cv];
                nb.g_first = g;
                set.branches.push_back(nb);
            }
            TrajectoryBranch& b = set.branches[branch_of[cv]];
            if (!b.E.empty() && !(eigs[cv] < b.E.back())) set.monotone = false;
            b.g.push_back(g);
            b.E.push_back(eigs[cv]);
        }

        // Feynman-Hellmann samples at this coupling.
        for (size_t cv = 0; cv < vecs.size(); ++cv) {
            double num = 0.0, den = 0.0;
            for (int k = 0; k < N; ++k) {
                const double p2 = vecs[cv][k] * vecs[cv][k];
                num += v_unit[k] * p2;
                den += p2;
            }
            FhSample s;
            s.branch = branch_of[cv];
            s.g = g;
            s.fh_dEdg = num / den;
            s.fd_dEdg = 0.0;  // filled from the branch below
            set.fh.push_back(s);
        }

        prev_vecs = vecs;
        prev_branch = branch_of;
    }

    // Centered finite differences along each branch.
    for (FhSample& s : set.fh) {
        const TrajectoryBranch& b = set.branches[s.branch];
        for (size_t k = 0; k < b.g.size(); ++k) {
            if (b.g[k] != s.g) continue;
            if (k == 0 || k + 1 >= b.g.size()) {
                s.fd_dEdg = std::numeric_limits<double>::quiet_NaN();
            } else {
                s.fd_dEdg = (b.E[k + 1] - b.E[k - 1]) / (b.g[k + 1] - b.g[k - 1]);
            }
            break;
        }
    }
    return set;
}

std::vector<double> bs_coupling_diagnostic(const KernelMatrix& Kprime, double g_cap) {
    if (!(g_cap > 0.0))
        throw std::invalid_argument("bs_coupling_diagnostic: cap must be > 0");
    const std::vector<double> lam = symmetric_eigenvalues(Kprime.entries);
    std::vector<double> gi;
    for (double l : lam) {
        if (l <= 1.0 / g_cap) break;  // descending list
        gi.push_back(1.0 / l);
    }
    return gi;
}

BsComparison bs_vs_fd(const KernelMatrix& Kprime, const SpectralCount& fd) {
    BsComparison out;
    const std::vector<double> gi = bs_coupling_diagnostic(Kprime, 1e6);
    int ge1 = 0;
    for (double g : gi)
        if (g <= 1.0) ++ge1;
    out.bs_count = ge1 + 1;  // the evanescent state never crosses zero energy
    out.fd_count = fd.count;
    out.discrepancy = out.bs_count - out.fd_count;
    return out;
}

}  // namespace s2b
