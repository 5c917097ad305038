#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "avc/block.hpp"

namespace avc {

/// Derived timing/resolution figures for an N-sample FFT at rate s.
struct FftDesign {
    int n_samples = 0;         // N, power of two
    double sample_rate = 0.0;  // s, Hz
    double period_span = 0.0;  // T = (N-1)/s, first to last sample
    double resolution = 0.0;   // df = s/(N-1)
    double max_freq = 0.0;     // f_m = [N/(N-1)] * s/2
    double cycle_period = 0.0; // N/s, inter-block cadence (the solver timestep)

    double bin_freq(std::size_t j) const { return resolution * static_cast<double>(j); }
    std::size_t bin_count() const { return static_cast<std::size_t>(n_samples) / 2 + 1; }
};

FftDesign design_fft(int n_samples, double sample_rate);

enum class Verdict { pass, marginal, fail };

const char* to_string(Verdict v);

/// One row of the design check: measured value vs. preferred limit.
struct GuidelineCheck {
    Verdict verdict = Verdict::fail;
    double value = 0.0;
    double limit = 0.0;
    std::string detail;
};

struct GuidelineReport {
    GuidelineCheck resolution; // df <= 40 Hz
    GuidelineCheck period;     // T <= 25 ms
    GuidelineCheck max_freq;   // f_m >= 2800 Hz

    bool any_fail() const {
        return resolution.verdict == Verdict::fail || period.verdict == Verdict::fail ||
               max_freq.verdict == Verdict::fail;
    }
};

// tolerance is a soft-limit multiplier (>= 1) absorbing the word "about":
// strictly inside the limit -> pass, inside limit*tolerance -> marginal.
GuidelineReport validate_design(const FftDesign& d, double tolerance);

/// One-sided power spectrum of a sample block, conjugate bins folded.
/// Bin powers are scaled so a unit-amplitude sine at an exact bin frequency
/// carries total power 0.5, all of it in that bin; the bin sum equals the
/// mean square of the time block.
struct Spectrum {
    std::vector<double> power; // N/2+1 non-negative bin powers
    double bin_hz = 0.0;

    double bin_freq(std::size_t j) const { return bin_hz * static_cast<double>(j); }
    double total_power() const {
        double t = 0.0;
        for (double p : power) t += p;
        return t;
    }
};

enum class WindowKind { rectangular, hann };

Spectrum compute_spectrum(const SampleBlock& block, const FftDesign& design,
                          WindowKind window = WindowKind::rectangular);

} // namespace avc
