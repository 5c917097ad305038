#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace avc {

/// One processing period worth of time-domain samples.
struct SampleBlock {
    std::vector<double> samples; // unitless amplitudes, nominal full scale +-1.0
    double rate = 0.0;           // samples/second

    std::size_t size() const { return samples.size(); }
};

inline bool is_power_of_two(std::size_t n) {
    return n >= 1 && (n & (n - 1)) == 0;
}

inline bool block_is_finite(const SampleBlock& b) {
    for (double v : b.samples)
        if (!std::isfinite(v)) return false;
    return true;
}

inline double block_energy(const SampleBlock& b) {
    double e = 0.0;
    for (double v : b.samples) e += v * v;
    return e;
}

} // namespace avc
