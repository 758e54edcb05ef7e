#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace qst {

/// splitmix64 generator. Update constants (documented so ports can reproduce
/// streams bit-exactly):
///   state += 0x9E3779B97F4A7C15
///   z = state; z ^= z >> 30; z *= 0xBF58476D1CE4E5B9
///   z ^= z >> 27;            z *= 0x94D049BB133111EB
///   z ^= z >> 31
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed), have_spare_(false), spare_(0.0) {}

    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// uniform in [0, 1), 53-bit resolution
    double uniform01() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

    /// integer in [lo, hi] inclusive
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    /// standard normal via Box-Muller (cached pair member)
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform01(), u2 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    /// uniform direction on the unit sphere in R^d
    std::vector<double> unit_vector(int dim) {
        std::vector<double> v(static_cast<std::size_t>(dim));
        double nrm = 0.0;
        do {
            nrm = 0.0;
            for (auto& x : v) {
                x = gaussian();
                nrm += x * x;
            }
        } while (nrm < 1e-12);
        nrm = std::sqrt(nrm);
        for (auto& x : v) x /= nrm;
        return v;
    }

private:
    bool have_spare_;
    double spare_;
};

} // namespace qst
