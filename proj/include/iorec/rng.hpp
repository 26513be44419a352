#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace iorec::rng {

/// splitmix64 step; combines a seed with a stream index so that per-index
/// streams are independent and order-free.
std::uint64_t mix(std::uint64_t seed, std::uint64_t index);

/// Deterministic random source. The generator is std::mt19937_64 (bit-exact
/// across platforms); the distributions are implemented here because the
/// standard library leaves their algorithms implementation-defined.
class Engine {
public:
    explicit Engine(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    /// Uniform double in [0, 1).
    double uniform();

    /// Uniform integer in [0, bound).
    std::uint64_t below(std::uint64_t bound);

    /// Normal draw via Box-Muller.
    double normal(double mean, double stddev);

    /// Gamma draw (shape, scale) via Marsaglia-Tsang.
    double gamma(double shape, double scale);

private:
    std::mt19937_64 gen_;
};

/// In-place Fisher-Yates shuffle driven by the engine above.
template <typename T>
void shuffle(std::vector<T>& values, Engine& engine) {
    for (std::size_t i = values.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(engine.below(i));
        std::swap(values[i - 1], values[j]);
    }
}

} // namespace iorec::rng
