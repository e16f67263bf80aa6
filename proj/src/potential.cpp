#include "s2b/potential.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "s2b/summation.hpp"

namespace s2b {

std::string family_name(Family f) {
    switch (f) {
        case Family::gaussian_wells: return "gaussian_wells";
        case Family::circular_well: return "circular_well";
        case Family::a17_family: return "a17_family";
        case Family::sum_of_terms: return "sum_of_terms";
    }
    throw std::invalid_argument("family_name: bad enumerator");
}

Family family_from_name(const std::string& name) {
    if (name == "gaussian_wells") return Family::gaussian_wells;
    if (name == "circular_well") return Family::circular_well;
    if (name == "a17_family") return Family::a17_family;
    if (name == "sum_of_terms") return Family::sum_of_terms;
    throw std::invalid_argument("unknown potential family: " + name);
}

PotentialSpec make_gaussian_wells(std::vector<GaussianTerm> wells, double g) {
    if (wells.empty())
        throw std::invalid_argument("gaussian_wells: at least one well required");
    for (const auto& w : wells)
        if (!(w.width > 0.0))
            throw std::invalid_argument("gaussian_wells: width must be > 0");
    PotentialSpec s;
    s.family = Family::gaussian_wells;
    s.wells = std::move(wells);
    s.g = g;
    return s;
}

PotentialSpec make_circular_well(double depth, double radius, Vec2 center, double g) {
    if (!(radius > 0.0))
        throw std::invalid_argument("circular_well: radius must be > 0");
    PotentialSpec s;
    s.family = Family::circular_well;
    s.disk = DiskTerm{depth, radius, center};
    s.g = g;
    return s;
}

PotentialSpec make_a17(double gamma, double g) {
    if (!(gamma > 0.0))
        throw std::invalid_argument("a17_family: gamma must be > 0");
    PotentialSpec s;
    s.family = Family::a17_family;
    s.gamma = gamma;
    s.g = g;
    return s;
}

PotentialSpec make_sum_of_terms(std::vector<Term> terms, double g) {
    for (const auto& t : terms) {
        if (t.kind == TermKind::gaussian && !(t.gaussian.width > 0.0))
            throw std::invalid_argument("sum_of_terms: gaussian width must be > 0");
        if (t.kind == TermKind::disk && !(t.disk.radius > 0.0))
            throw std::invalid_argument("sum_of_terms: disk radius must be > 0");
    }
    PotentialSpec s;
    s.family = Family::sum_of_terms;
    s.terms = std::move(terms);
    s.g = g;
    return s;
}

namespace {

double gaussian_value(const GaussianTerm& t, const Vec2& p) {
    const double dx = p.x - t.center.x;
    const double dy = p.y - t.center.y;
    const double r2 = dx * dx + dy * dy;
    return -t.depth * std::exp(-r2 / (t.width * t.width));
}

double disk_value(const DiskTerm& t, const Vec2& p) {
    return distance(p, t.center) <= t.radius ? -t.depth : 0.0;
}

// -1 / (r^2 (ln r)^2 (ln|ln r|)^gamma) inside the support disk r < 1/(2e).
double a17_value(double gamma, const Vec2& p) {
    const double r = norm(p);
    if (r == 0.0)
        throw std::domain_error("a17_family: value undefined at r = 0");
    if (r >= kA17SupportRadius) return 0.0;
    const double t = -std::log(r);          // > ln(2e) > 1
    const double u = std::log(t);           // ln|ln r| > 0
    return -1.0 / (r * r * t * t * std::pow(u, gamma));
}

}  // namespace

double evaluate(const PotentialSpec& spec, const Vec2& point) {
    double v = 0.0;
    switch (spec.family) {
        case Family::gaussian_wells:
            for (const auto& w : spec.wells) v += gaussian_value(w, point);
            break;
        case Family::circular_well:
            v = disk_value(spec.disk, point);
            break;
        case Family::a17_family:
            v = a17_value(spec.gamma, point);
            break;
        case Family::sum_of_terms:
            for (const auto& t : spec.terms) {
                switch (t.kind) {
                    case TermKind::gaussian: v += gaussian_value(t.gaussian, point); break;
                    case TermKind::disk: v += disk_value(t.disk, point); break;
                    case TermKind::constant: v += t.constant.value; break;
                }
            }
            break;
    }
    return spec.g * v;
}

bool is_central(const PotentialSpec& spec) {
    switch (spec.family) {
        case Family::a17_family:
            return true;
        case Family::circular_well:
            return spec.disk.center.x == 0.0 && spec.disk.center.y == 0.0;
        case Family::gaussian_wells:
            for (const auto& w : spec.wells)
                if (w.center.x != 0.0 || w.center.y != 0.0) return false;
            return true;
        case Family::sum_of_terms:
            for (const auto& t : spec.terms) {
                if (t.kind == TermKind::gaussian &&
                    (t.gaussian.center.x != 0.0 || t.gaussian.center.y != 0.0))
                    return false;
                if (t.kind == TermKind::disk &&
                    (t.disk.center.x != 0.0 || t.disk.center.y != 0.0))
                    return false;
            }
            return true;
    }
    return false;
}

double SampledField::mass() const {
    KahanSum s;
    for (double v : values) s.add(v);
    return s.value() * grid.cell_weight();
}

SampledField sample_negative_part(const PotentialSpec& spec, const Grid2D& grid) {
    SampledField f;
    f.grid = grid;
    f.values.resize(grid.size());
    for (int i = 0; i < grid.size(); ++i) {
        const double v = evaluate(spec, grid.node(i));
        f.values[i] = v < 0.0 ? -v : 0.0;
    }
    return f;
}

SampledField epsilon_regularize(const SampledField& field, double eps, double mu) {
    if (!(eps > 0.0) || !(mu > 0.0))
        throw std::invalid_argument("epsilon_regularize: eps and mu must be > 0");
    SampledField f = field;
    for (int i = 0; i < f.grid.size(); ++i)
        f.values[i] += eps * std::exp(-mu * norm(f.grid.node(i)));
    f.epsilon_floor = EpsilonFloor{eps, mu};
    return f;
}

double integral_of_potential(const PotentialSpec& spec, const Grid2D& grid) {
    KahanSum s;
    for (int i = 0; i < grid.size(); ++i) s.add(evaluate(spec, grid.node(i)));
    return s.value() * grid.cell_weight();
}

}  // namespace s2b
