#pragma once

#include <array>
#include <cstdint>

#include "avc/spectral.hpp"

namespace avc {

// The three PSIL octave bands: 354-707, 707-1414, 1414-2828 Hz.
// The lowest band is closed on both edges, the upper two are half-open on
// the left, which reproduces the reference bin assignment (705.5 Hz in
// band 1, 749.6 Hz in band 2).
inline constexpr double kBandEdges[4] = {354.0, 707.0, 1414.0, 2828.0};

inline constexpr double kMeterFloorDb = -120.0;

/// Inclusive spectrum-bin index ranges for the three octave bands.
struct BandPartition {
    struct Range {
        int first = 0;
        int last = -1; // inclusive; empty when last < first
        int count() const { return last < first ? 0 : last - first + 1; }
    };
    std::array<Range, 3> bands;
};

BandPartition band_partition(const FftDesign& d);

double band_level(const Spectrum& spec, const BandPartition::Range& range,
                  double floor_db = kMeterFloorDb);

/// One PSIL reading: the three octave-band levels and their arithmetic mean.
struct PsilSample {
    std::array<double, 3> band_db{};
    double psil_db = 0.0;
    std::int64_t period = 0;
    double time_s = 0.0;
};

PsilSample psil(const Spectrum& spec, const BandPartition& part,
                double floor_db = kMeterFloorDb);

} // namespace avc
