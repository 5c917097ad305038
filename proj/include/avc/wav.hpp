#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace avc {

struct WavData {
    std::vector<double> samples; // scaled to [-1, 1)
    double rate = 0.0;
};

/// Reads a mono 16-bit PCM WAV. Throws ProcessingError on anything else or
/// on a truncated file.
WavData read_wav_mono16(const std::string& path);

/// Writes mono 16-bit PCM; samples are clipped to [-1, 1).
void write_wav_mono16(const std::string& path, const std::vector<double>& samples,
                      double rate);

} // namespace avc
