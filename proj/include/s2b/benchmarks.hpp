#pragma once

#include <string>
#include <vector>

#include "s2b/potential.hpp"

namespace s2b {

/// A named potential together with grid and oracle settings that resolve it:
/// the grid box keeps the V^- mass outside below 1e-6 of the total, the
/// oracle box holds the bound-state tails of the couplings we scan.
struct Benchmark {
    std::string name;
    PotentialSpec spec;
    double grid_L = 4.0;
    int grid_n = 64;
    double oracle_L = 8.0;
    int oracle_n = 120;
};

/// The verification corpus: deep and shallow Gaussian wells, an asymmetric
/// double well, a circular well, a ring well, and a sign-indefinite
/// well-plus-bump.
std::vector<Benchmark> benchmark_corpus();

Benchmark benchmark_by_name(const std::string& name);

/// Moderate-depth well whose single weakly bound state still fits the
/// oracle box; used for the "a 2D attractive well always binds" check.
Benchmark shallow_binding_benchmark();

/// Central well with well-separated channel thresholds; radial and
/// finite-difference oracles agree exactly on it.
Benchmark central_cross_check_benchmark();

}  // namespace s2b
