#include "s2b/benchmarks.hpp"

#include <stdexcept>

namespace s2b {

std::vector<Benchmark> benchmark_corpus() {
    std::vector<Benchmark> out;

    out.push_back({"deep_gaussian",
                   make_gaussian_wells({{5.0, 1.0, {0.0, 0.0}}}),
                   4.0, 64, 8.0, 128});

    out.push_back({"shallow_gaussian",
                   make_gaussian_wells({{0.3, 1.5, {0.0, 0.0}}}),
                   6.0, 64, 10.0, 128});

    out.push_back({"double_well_asym",
                   make_gaussian_wells({{4.0, 0.8, {-1.2, -0.4}}, {2.5, 1.1, {1.2, 0.4}}}),
                   6.0, 64, 9.0, 128});

    out.push_back({"circular_well",
                   make_circular_well(2.0, 1.5),
                   2.0, 64, 7.0, 128});

    {
        std::vector<Term> terms(2);
        terms[0].kind = TermKind::disk;
        terms[0].disk = DiskTerm{1.5, 2.0, {0.0, 0.0}};
        terms[1].kind = TermKind::disk;
        terms[1].disk = DiskTerm{-1.5, 1.0, {0.0, 0.0}};
        out.push_back({"ring_well", make_sum_of_terms(std::move(terms)), 2.5, 64, 7.0, 128});
    }

    out.push_back({"well_plus_bump",
                   make_gaussian_wells({{3.0, 1.2, {0.0, 0.0}}, {-1.5, 0.6, {0.8, 0.5}}}),
                   5.0, 64, 8.0, 128});

    return out;
}

Benchmark benchmark_by_name(const std::string& name) {
    for (auto& b : benchmark_corpus())
        if (b.name == name) return b;
    if (name == "shallow_binding") return shallow_binding_benchmark();
    if (name == "central_cross_check") return central_cross_check_benchmark();
    throw std::invalid_argument("unknown benchmark: " + name);
}

Benchmark shallow_binding_benchmark() {
    return {"shallow_binding",
            make_gaussian_wells({{1.2, 1.5, {0.0, 0.0}}}),
            6.0, 64, 10.0, 128};
}

Benchmark central_cross_check_benchmark() {
    return {"central_cross_check",
            make_circular_well(9.0, 1.5),
            2.0, 64, 7.0, 144};
}

}  // namespace s2b
