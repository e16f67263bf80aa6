#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "s2b/bound.hpp"
#include "s2b/conditions.hpp"
#include "s2b/oracle.hpp"
#include "s2b/potential.hpp"
#include "s2b/rearrangement.hpp"

namespace s2b {

inline const char* kVersion = "0.1.0";

using Json = nlohmann::ordered_json;

/// Run configuration; a run is reproducible from this alone. Parsing is
/// strict: unknown keys are configuration errors, not warnings.
struct OracleConfig {
    double L_box = 8.0;
    int n_box = 120;
    std::vector<double> g_list{0.5, 1.0, 2.0, 4.0};
    double tol_E = -1.0;
};

struct RunConfig {
    PotentialSpec potential;
    Grid2D grid{4.0, 64};
    KernelOptions kernel;
    OracleConfig oracle;
};

Json potential_to_json(const PotentialSpec& spec);
PotentialSpec potential_from_json(const nlohmann::json& j);

Json config_to_json(const RunConfig& cfg);
RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

/// FNV-1a 64 of the canonical compact dump, as hex.
std::string config_hash(const RunConfig& cfg);

Json bound_report_to_json(const BoundReport& r, const std::string& cfg_hash);
std::string bound_report_to_csv(const BoundReport& r, const std::string& cfg_hash);

Json condition_report_to_json(const ConditionReport& r, const std::string& cfg_hash);

std::string classification_to_csv(const A17Classification& c);
std::string trajectories_to_csv(const TrajectorySet& t);
std::string profile_to_csv(const RadialProfile& p);

/// Shortest round-trip decimal for CSV cells (JSON emission already uses it).
std::string format_double(double v);

/// Byte-stable file write; throws runtime_error on I/O failure.
void write_text(const std::string& path, const std::string& content);

}  // namespace s2b
