#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

#include <Eigen/Dense>

namespace netinfer {

// splitmix64 step; used both as a stand-alone mixer and for seed derivation.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Derives an independent substream seed from (master_seed, run_index, purpose).
// Purpose tags keep graph/mask/noise streams decoupled, so adding draws to one
// stream never shifts another. Deterministic across platforms.
inline std::uint64_t derive_seed(std::uint64_t master_seed,
                                 std::uint64_t run_index,
                                 std::string_view purpose) {
    std::uint64_t h = master_seed;
    splitmix64(h);
    h ^= run_index + 0x9e3779b97f4a7c15ULL;
    splitmix64(h);
    for (char c : purpose) {
        h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
        splitmix64(h);
    }
    std::uint64_t state = h;
    return splitmix64(state);
}

// Deterministic stream of i.i.d. standard normal variates. Two sources with
// equal seeds emit identical sequences. Box-Muller on explicit 53-bit
// uniforms instead of std::normal_distribution, whose output sequence is
// implementation-defined.
class NoiseSource {
public:
    explicit NoiseSource(std::uint64_t seed) : engine_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        // u1 in (0,1], u2 in [0,1)
        double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1p-53;
        double u2 = static_cast<double>(engine_() >> 11) * 0x1p-53;
        double radius = std::sqrt(-2.0 * std::log(u1));
        double angle = 2.0 * M_PI * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

    Eigen::VectorXd next_vector(Eigen::Index n) {
        Eigen::VectorXd v(n);
        for (Eigen::Index k = 0; k < n; ++k) v[k] = next();
        return v;
    }

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace netinfer
