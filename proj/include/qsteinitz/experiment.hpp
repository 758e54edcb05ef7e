#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <vector>

#include "gen.hpp"
#include "io.hpp"
#include "oracle.hpp"
#include "steinitz.hpp"

namespace qst {

struct ExperimentConfig {
    std::vector<int> dims;
    int instances_per_d = 10;
    std::uint64_t seed = 42;
    bool oracle_when_small = true; // float oracle on d <= 3 with few vertices
};

/// Per-instance seed: decorrelates (d, index) pairs deterministically.
inline std::uint64_t instance_seed(std::uint64_t seed, int d, int index) {
    SplitMix64 mix(seed ^ (static_cast<std::uint64_t>(d) << 32) ^ static_cast<std::uint64_t>(index));
    return mix.next();
}

/// Deterministic batch: rows ordered by (d, instance index); identical seeds
/// reproduce identical records. Tangent instances up to d = 3 (vertex count
/// stays at desk scale there), sphere-point instances beyond.
inline std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& cfg) {
    std::vector<int> dims = cfg.dims;
    std::sort(dims.begin(), dims.end());
    dims.erase(std::unique(dims.begin(), dims.end()), dims.end());

    std::vector<ExperimentRecord> out;
    for (int d : dims) {
        for (int i = 0; i < cfg.instances_per_d; ++i) {
            const std::uint64_t iseed = instance_seed(cfg.seed, d, i);
            SplitMix64 pick(iseed);
            GeneratedPolytope g = d <= 3 ? gen_tangent(d, pick.uniform_int(d + 2, 20), iseed)
                                         : gen_sphere_points(d, 20, iseed);
            if (!check_contains_unit_ball(g.poly).ok)
                throw GenerationFailed("run_experiment: generated instance lacks the unit ball");

            const auto t0 = std::chrono::steady_clock::now();
            const Selection<double> sel = select_vertices(g.poly);
            const auto t1 = std::chrono::steady_clock::now();

            ExperimentRecord rec;
            rec.seed = iseed;
            rec.d = d;
            rec.vertex_count = static_cast<int>(g.poly.points.size());
            rec.selection_size = static_cast<int>(sel.indices.size());
            rec.certified_radius = sel.certified_radius;
            rec.bound = sel.bound;
            rec.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
            if (cfg.oracle_when_small && d <= 3 && rec.vertex_count <= 14)
                rec.oracle_radius = best_subset_radius(g.poly, 2 * d).best_radius;
            out.push_back(std::move(rec));
        }
    }
    return out;
}

} // namespace qst
