#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <random>
#include <vector>

namespace bench {

// Two tones plus white noise; fixed seed so runs are comparable.
inline std::vector<double> noisy_two_tone(std::size_t n) {
    std::mt19937_64 g(42);
    std::normal_distribution<double> z;
    std::vector<double> x(n);
    const double w = 2.0 * std::numbers::pi;
    for (std::size_t t = 0; t < n; ++t) {
        const double s = static_cast<double>(t);
        x[t] = std::sin(w * s / 10.0) + 2.0 * std::sin(w * s / 97.0) + 0.2 * z(g);
    }
    return x;
}

}  // namespace bench
