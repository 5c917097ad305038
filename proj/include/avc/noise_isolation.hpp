#pragma once

#include "avc/block.hpp"

namespace avc {

enum class CalibrationMode { startup_only, continuous };

/// Lag/gain alignment of the output reference against the microphone feed.
struct Calibration {
    int lag = 0;        // samples; positive = reference delayed into the mic
    double gain = 1.0;  // scale applied to the reference before subtraction
    CalibrationMode mode = CalibrationMode::startup_only;
    bool degenerate = false; // last gain estimate fell back to the factory value

    // smoothed per-block estimates (multi-period correlation)
    double lag_avg = 0.0;
    double gain_avg = 1.0;
    bool seeded = false;
};

struct IsolationParams {
    int max_lag = 8;
    double gain_lo = 0.25;
    double gain_hi = 4.0;
    double smoothing = 0.2; // history weight of the estimate average
};

/// Lag in [-max_lag, +max_lag] maximizing the cross-correlation of mic
/// against the shifted reference. Ties break toward small |lag|, then
/// toward negative lags.
int phase_correlate(const SampleBlock& mic, const SampleBlock& ref, int max_lag);

struct GainEstimate {
    double gain = 1.0;
    bool degenerate = false;
};

/// Least-squares gain <mic,ref>/<ref,ref> clamped to [gain_lo, gain_hi];
/// a zero-energy reference yields the factory value 1.0, flagged degenerate.
GainEstimate amplitude_correlate(const SampleBlock& mic, const SampleBlock& aligned_ref,
                                 double gain_lo, double gain_hi);

/// noise[i] = mic[i] - gain * ref[i - lag]; shifted-out reference samples are
/// zero, blocks being stream windows rather than periodic signals.
SampleBlock subtract_reference(const SampleBlock& mic, const SampleBlock& ref,
                               const Calibration& cal);

SampleBlock shift_block(const SampleBlock& b, int lag);

/// One correlation pass (phase, then amplitude) folded into the stored
/// calibration average. Used per block in continuous mode and once at
/// stream start-up otherwise.
Calibration calibrate(const SampleBlock& mic, const SampleBlock& ref,
                      const Calibration& cal, const IsolationParams& params);

struct IsolationResult {
    SampleBlock noise;
    Calibration cal;
};

/// Runs the phase correlator, then the amplitude correlator, then the
/// subtraction. In continuous mode both correlators re-run on every block
/// and their estimates are folded into the calibration average; in
/// startup_only mode the stored calibration is reused. An empty reference
/// bypasses subtraction entirely (two-microphone configurations).
IsolationResult isolate_noise(const SampleBlock& mic, const SampleBlock& ref,
                              const Calibration& cal, const IsolationParams& params);

} // namespace avc
