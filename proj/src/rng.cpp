#include "iorec/rng.hpp"

#include <cmath>
#include <numbers>

#include "iorec/errors.hpp"

namespace iorec::rng {

std::uint64_t mix(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Engine::uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

std::uint64_t Engine::below(std::uint64_t bound) {
    if (bound == 0) {
        throw ArgumentError("rng: bound must be positive");
    }
    // Rejection sampling keeps the draw unbiased.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x = gen_();
    while (x >= limit) {
        x = gen_();
    }
    return x % bound;
}

double Engine::normal(double mean, double stddev) {
    double u1 = uniform();
    if (u1 <= 0.0) {
        u1 = 0x1.0p-53;
    }
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    return mean + stddev * radius * std::cos(2.0 * std::numbers::pi * u2);
}

double Engine::gamma(double shape, double scale) {
    if (shape <= 0.0 || scale <= 0.0) {
        throw ArgumentError("rng: gamma shape and scale must be positive");
    }
    if (shape < 1.0) {
        // Boost to shape+1 and correct with a power of a uniform draw.
        const double u = std::max(uniform(), 0x1.0p-53);
        return gamma(shape + 1.0, scale) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x = normal(0.0, 1.0);
        double v = 1.0 + c * x;
        if (v <= 0.0) {
            continue;
        }
        v = v * v * v;
        const double u = uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x) {
            return d * v * scale;
        }
        if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) {
            return d * v * scale;
        }
    }
}

} // namespace iorec::rng
