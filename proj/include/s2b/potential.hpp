#pragma once

#include <optional>
#include <string>
#include <vector>

#include "s2b/geometry.hpp"

namespace s2b {

// Unit convention: hbar^2/2m = 1, so the Hamiltonian is exactly -Lap + V
// and all energies are inverse squared lengths.

enum class Family { gaussian_wells, circular_well, a17_family, sum_of_terms };

std::string family_name(Family f);
Family family_from_name(const std::string& name);  // throws invalid_argument

struct GaussianTerm {
    double depth = 0.0;  // > 0 means an attractive well, < 0 a repulsive bump
    double width = 1.0;
    Vec2 center;
};

struct DiskTerm {
    double depth = 0.0;  // value inside is -depth
    double radius = 1.0;
    Vec2 center;
};

struct ConstantTerm {
    double value = 0.0;  // added verbatim
};

enum class TermKind { gaussian, disk, constant };

struct Term {
    TermKind kind = TermKind::constant;
    GaussianTerm gaussian;
    DiskTerm disk;
    ConstantTerm constant;
};

/// Support radius of the a17 family, 1/(2e), kept in closed form.
inline const double kA17SupportRadius = 1.0 / (2.0 * M_E);

/// Declarative description of a 2D potential: a named family plus its
/// parameters and a dimensionless coupling g (default 1). Specs are
/// immutable values; evaluation is pure.
struct PotentialSpec {
    Family family = Family::sum_of_terms;
    double g = 1.0;

    std::vector<GaussianTerm> wells;  // gaussian_wells
    DiskTerm disk;                    // circular_well
    double gamma = 0.0;               // a17_family
    std::vector<Term> terms;          // sum_of_terms

    PotentialSpec with_g(double new_g) const {
        PotentialSpec s = *this;
        s.g = new_g;
        return s;
    }
};

PotentialSpec make_gaussian_wells(std::vector<GaussianTerm> wells, double g = 1.0);
PotentialSpec make_circular_well(double depth, double radius, Vec2 center = {},
                                 double g = 1.0);
PotentialSpec make_a17(double gamma, double g = 1.0);
PotentialSpec make_sum_of_terms(std::vector<Term> terms, double g = 1.0);

/// g * V_family(point). Throws domain_error on the a17 singular locus r = 0.
double evaluate(const PotentialSpec& spec, const Vec2& point);

/// True for families that are radially symmetric about the origin.
bool is_central(const PotentialSpec& spec);

struct EpsilonFloor {
    double eps = 0.0;
    double mu = 0.0;
};

/// V^- of a potential sampled at the cell centers of a grid. Values are
/// always >= 0; this type never stores V itself.
struct SampledField {
    Grid2D grid;
    std::vector<double> values;
    std::optional<EpsilonFloor> epsilon_floor;

    double mass() const;  // sum of values * cell weight
};

SampledField sample_negative_part(const PotentialSpec& spec, const Grid2D& grid);

/// Adds eps * exp(-mu |x|) to every cell, making the field strictly positive.
SampledField epsilon_regularize(const SampledField& field, double eps, double mu);

/// Plain grid sum of the full potential, sum_i V(x_i) w. Used by reports to
/// record whether the potential is attractive in the mean.
double integral_of_potential(const PotentialSpec& spec, const Grid2D& grid);

}  // namespace s2b
