#include "s2b/io.hpp"

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace s2b {

namespace {

using nlohmann::json;

void require_keys(const json& j, const std::set<std::string>& allowed,
                  const std::string& where) {
    if (!j.is_object()) throw std::invalid_argument(where + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw std::invalid_argument(where + ": unknown key '" + it.key() + "'");
}

double get_num(const json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key) || !j[key].is_number())
        throw std::invalid_argument(where + ": missing numeric '" + key + "'");
    return j[key].get<double>();
}

Vec2 center_from_json(const json& j, const std::string& where) {
    if (!j.contains("center")) return Vec2{};
    const auto& c = j["center"];
    if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number())
        throw std::invalid_argument(where + ": 'center' must be [x, y]");
    return Vec2{c[0].get<double>(), c[1].get<double>()};
}

Json center_to_json(const Vec2& c) { return Json::array({c.x, c.y}); }

}  // namespace

Json potential_to_json(const PotentialSpec& spec) {
    Json j;
    j["family"] = family_name(spec.family);
    Json params = Json::object();
    switch (spec.family) {
        case Family::gaussian_wells: {
            Json wells = Json::array();
            for (const auto& w : spec.wells) {
                Json jw;
                jw["depth"] = w.depth;
                jw["width"] = w.width;
                jw["center"] = center_to_json(w.center);
                wells.push_back(jw);
            }
            params["wells"] = wells;
            break;
        }
        case Family::circular_well:
            params["depth"] = spec.disk.depth;
            params["radius"] = spec.disk.radius;
            params["center"] = center_to_json(spec.disk.center);
            break;
        case Family::a17_family:
            params["gamma"] = spec.gamma;
            break;
        case Family::sum_of_terms: {
            Json terms = Json::array();
            for (const auto& t : spec.terms) {
                Json jt;
                switch (t.kind) {
                    case TermKind::gaussian:
                        jt["type"] = "gaussian";
                        jt["depth"] = t.gaussian.depth;
                        jt["width"] = t.gaussian.width;
                        jt["center"] = center_to_json(t.gaussian.center);
                        break;
                    case TermKind::disk:
                        jt["type"] = "disk";
                        jt["depth"] = t.disk.depth;
                        jt["radius"] = t.disk.radius;
                        jt["center"] = center_to_json(t.disk.center);
                        break;
                    case TermKind::constant:
                        jt["type"] = "constant";
                        jt["value"] = t.constant.value;
                        break;
                }
                terms.push_back(jt);
            }
            params["terms"] = terms;
            break;
        }
    }
    j["params"] = params;
    j["g"] = spec.g;
    return j;
}

PotentialSpec potential_from_json(const json& j) {
    require_keys(j, {"family", "params", "g"}, "potential");
    if (!j.contains("family") || !j["family"].is_string())
        throw std::invalid_argument("potential: missing string 'family'");
    const Family fam = family_from_name(j["family"].get<std::string>());
    const double g = j.contains("g") ? get_num(j, "g", "potential") : 1.0;
    const json params = j.contains("params") ? j["params"] : json::object();

    switch (fam) {
        case Family::gaussian_wells: {
            require_keys(params, {"wells"}, "gaussian_wells params");
            if (!params.contains("wells") || !params["wells"].is_array())
                throw std::invalid_argument("gaussian_wells: missing 'wells' array");
            std::vector<GaussianTerm> wells;
            for (const auto& jw : params["wells"]) {
                require_keys(jw, {"depth", "width", "center"}, "gaussian well");
                GaussianTerm w;
                w.depth = get_num(jw, "depth", "gaussian well");
                w.width = get_num(jw, "width", "gaussian well");
                w.center = center_from_json(jw, "gaussian well");
                wells.push_back(w);
            }
            return make_gaussian_wells(std::move(wells), g);
        }
        case Family::circular_well: {
            require_keys(params, {"depth", "radius", "center"}, "circular_well params");
            return make_circular_well(get_num(params, "depth", "circular_well"),
                                      get_num(params, "radius", "circular_well"),
                                      center_from_json(params, "circular_well"), g);
        }
        case Family::a17_family: {
            require_keys(params, {"gamma"}, "a17_family params");
            return make_a17(get_num(params, "gamma", "a17_family"), g);
        }
        case Family::sum_of_terms: {
            require_keys(params, {"terms"}, "sum_of_terms params");
            if (!params.contains("terms") || !params["terms"].is_array())
                throw std::invalid_argument("sum_of_terms: missing 'terms' array");
            std::vector<Term> terms;
            for (const auto& jt : params["terms"]) {
                if (!jt.contains("type") || !jt["type"].is_string())
                    throw std::invalid_argument("sum_of_terms: term needs a 'type'");
                const std::string type = jt["type"].get<std::string>();
                Term t;
                if (type == "gaussian") {
                    require_keys(jt, {"type", "depth", "width", "center"}, "gaussian term");
                    t.kind = TermKind::gaussian;
                    t.gaussian.depth = get_num(jt, "depth", "gaussian term");
                    t.gaussian.width = get_num(jt, "width", "gaussian term");
                    t.gaussian.center = center_from_json(jt, "gaussian term");
                } else if (type == "disk") {
                    require_keys(jt, {"type", "depth", "radius", "center"}, "disk term");
                    t.kind = TermKind::disk;
                    t.disk.depth = get_num(jt, "depth", "disk term");
                    t.disk.radius = get_num(jt, "radius", "disk term");
                    t.disk.center = center_from_json(jt, "disk term");
                } else if (type == "constant") {
                    require_keys(jt, {"type", "value"}, "constant term");
                    t.kind = TermKind::constant;
                    t.constant.value = get_num(jt, "value", "constant term");
                } else {
                    throw std::invalid_argument("sum_of_terms: unknown term type '" + type + "'");
                }
                terms.push_back(t);
            }
            return make_sum_of_terms(std::move(terms), g);
        }
    }
    throw std::invalid_argument("potential: bad family");
}

Json config_to_json(const RunConfig& cfg) {
    Json j;
    j["potential"] = potential_to_json(cfg.potential);
    j["grid"] = Json{{"n", cfg.grid.n}, {"L", cfg.grid.L}};
    j["kernel"] = Json{{"k0", cfg.kernel.k0}, {"eps_rel", cfg.kernel.eps_rel},
                       {"mu", cfg.kernel.mu}};
    Json go;
    go["L_box"] = cfg.oracle.L_box;
    go["n_box"] = cfg.oracle.n_box;
    go["g_list"] = cfg.oracle.g_list;
    go["tol_E"] = cfg.oracle.tol_E;
    j["oracle"] = go;
    return j;
}

RunConfig config_from_json(const json& j) {
    require_keys(j, {"potential", "grid", "kernel", "oracle"}, "config");
    if (!j.contains("potential"))
        throw std::invalid_argument("config: missing 'potential'");
    RunConfig cfg;
    cfg.potential = potential_from_json(j["potential"]);
    if (j.contains("grid")) {
        require_keys(j["grid"], {"n", "L"}, "grid");
        cfg.grid = Grid2D::make(get_num(j["grid"], "L", "grid"),
                                static_cast<int>(get_num(j["grid"], "n", "grid")));
    }
    if (j.contains("kernel")) {
        require_keys(j["kernel"], {"k0", "eps_rel", "mu"}, "kernel");
        const auto& k = j["kernel"];
        if (k.contains("k0")) cfg.kernel.k0 = get_num(k, "k0", "kernel");
        if (k.contains("eps_rel")) cfg.kernel.eps_rel = get_num(k, "eps_rel", "kernel");
        if (k.contains("mu")) cfg.kernel.mu = get_num(k, "mu", "kernel");
        if (!(cfg.kernel.k0 > 0.0))
            throw std::invalid_argument("kernel: k0 must be > 0");
    }
    if (j.contains("oracle")) {
        require_keys(j["oracle"], {"L_box", "n_box", "g_list", "tol_E"}, "oracle");
        const auto& o = j["oracle"];
        if (o.contains("L_box")) cfg.oracle.L_box = get_num(o, "L_box", "oracle");
        if (o.contains("n_box"))
            cfg.oracle.n_box = static_cast<int>(get_num(o, "n_box", "oracle"));
        if (o.contains("tol_E")) cfg.oracle.tol_E = get_num(o, "tol_E", "oracle");
        if (o.contains("g_list")) {
            if (!o["g_list"].is_array())
                throw std::invalid_argument("oracle: 'g_list' must be an array");
            cfg.oracle.g_list.clear();
            for (const auto& v : o["g_list"]) {
                if (!v.is_number())
                    throw std::invalid_argument("oracle: 'g_list' must hold numbers");
                cfg.oracle.g_list.push_back(v.get<double>());
            }
        }
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open config file: " + path);
    json j;
    try {
        f >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("config parse error in " + path + ": " + e.what());
    }
    return config_from_json(j);
}

std::string config_hash(const RunConfig& cfg) {
    const std::string dump = config_to_json(cfg).dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

Json bound_report_to_json(const BoundReport& r, const std::string& cfg_hash) {
    Json j;
    j["T1"] = r.T1;
    j["T2"] = r.T2;
    j["T3"] = r.T3;
    j["N_I_bound"] = r.N_I_bound;
    j["N_total_bound"] = r.N_total_bound;
    j["k0"] = r.k0;
    j["n"] = r.n;
    j["L"] = r.L;
    j["eps"] = r.eps;
    j["mu"] = r.mu;
    j["g"] = r.g;
    j["int_V"] = r.int_V;
    j["int_Vminus"] = r.int_Vminus;
    j["scale_opt"] = Json{{"k0_star", r.scale_opt.k0_star}, {"value", r.scale_opt.value}};
    j["config_hash"] = cfg_hash;
    j["version"] = kVersion;
    return j;
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string bound_report_to_csv(const BoundReport& r, const std::string& cfg_hash) {
    std::ostringstream out;
    out << "T1,T2,T3,N_I_bound,N_total_bound,k0,n,L,eps,mu,g,int_V,int_Vminus,"
           "scale_opt_k0_star,scale_opt_value,config_hash,version\n";
    out << format_double(r.T1) << ',' << format_double(r.T2) << ',' << format_double(r.T3)
        << ',' << format_double(r.N_I_bound) << ',' << format_double(r.N_total_bound) << ','
        << format_double(r.k0) << ',' << r.n << ',' << format_double(r.L) << ','
        << format_double(r.eps) << ',' << format_double(r.mu) << ',' << format_double(r.g)
        << ',' << format_double(r.int_V) << ',' << format_double(r.int_Vminus) << ','
        << format_double(r.scale_opt.k0_star) << ',' << format_double(r.scale_opt.value)
        << ',' << cfg_hash << ',' << kVersion << '\n';
    return out.str();
}

Json condition_report_to_json(const ConditionReport& r, const std::string& cfg_hash) {
    Json j;
    j["I"] = r.I;
    j["I_plus"] = r.I_plus;
    j["I_minus"] = r.I_minus;
    j["L1"] = r.L1;
    j["L2"] = r.L2;
    j["rhs_A8"] = r.rhs_A8;
    j["rhs_A14"] = r.rhs_A14;
    j["flags"] = Json{{"I", r.finite ? "convergent" : "divergent"},
                      {"A3", r.finite ? "convergent" : "divergent"}};
    j["config_hash"] = cfg_hash;
    j["version"] = kVersion;
    return j;
}

namespace {
const char* verdict_name(Verdict v) {
    return v == Verdict::convergent ? "convergent" : "divergent";
}
}  // namespace

std::string classification_to_csv(const A17Classification& c) {
    std::ostringstream out;
    out << "gamma,cutoff_u,I_partial,A3_partial,I_verdict,A3_verdict\n";
    for (const auto& row : c.rows) {
        out << format_double(c.gamma) << ',' << format_double(row.cutoff_u) << ','
            << format_double(row.I_partial) << ',' << format_double(row.A3_partial) << ','
            << verdict_name(c.I_verdict) << ',' << verdict_name(c.A3_verdict) << '\n';
    }
    return out.str();
}

std::string trajectories_to_csv(const TrajectorySet& t) {
    std::ostringstream out;
    out << "g,branch_id,E\n";
    for (const auto& b : t.branches)
        for (size_t k = 0; k < b.g.size(); ++k)
            out << format_double(b.g[k]) << ',' << b.id << ',' << format_double(b.E[k])
                << '\n';
    return out.str();
}

std::string profile_to_csv(const RadialProfile& p) {
    std::ostringstream out;
    out << "r_outer,value\n";
    for (size_t k = 0; k < p.radii.size(); ++k)
        out << format_double(p.radii[k]) << ',' << format_double(p.values[k]) << '\n';
    return out.str();
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << content;
    if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace s2b
