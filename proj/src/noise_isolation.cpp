#include "avc/noise_isolation.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "avc/errors.hpp"

namespace avc {

namespace {

void require_matched(const SampleBlock& mic, const SampleBlock& ref) {
    if (mic.samples.size() != ref.samples.size()) {
        std::ostringstream os;
        os << "correlate: block lengths differ (" << mic.samples.size() << " vs "
           << ref.samples.size() << ")";
        throw ConfigError(os.str());
    }
    if (mic.rate != ref.rate) {
        std::ostringstream os;
        os << "correlate: block rates differ (" << mic.rate << " vs " << ref.rate << ")";
        throw ConfigError(os.str());
    }
}

// sum_i mic[i] * ref[i - lag], shifted-out reference samples read as zero
double cross_correlation(const SampleBlock& mic, const SampleBlock& ref, int lag) {
    const int n = static_cast<int>(mic.samples.size());
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const int j = i - lag;
        if (j < 0 || j >= n) continue;
        sum += mic.samples[static_cast<std::size_t>(i)] * ref.samples[static_cast<std::size_t>(j)];
    }
    return sum;
}

} // namespace

int phase_correlate(const SampleBlock& mic, const SampleBlock& ref, int max_lag) {
    require_matched(mic, ref);
    const int n = static_cast<int>(mic.samples.size());
    if (max_lag < 0 || max_lag >= n / 4) {
        std::ostringstream os;
        os << "phase correlate: max_lag " << max_lag << " out of range [0, N/4) for N=" << n;
        throw ConfigError(os.str());
    }
    // visit lags in tie-break preference order: 0, -1, +1, -2, +2, ...
    int best_lag = 0;
    double best = cross_correlation(mic, ref, 0);
    for (int k = 1; k <= max_lag; ++k) {
        for (int lag : {-k, k}) {
            const double c = cross_correlation(mic, ref, lag);
            if (c > best) {
                best = c;
                best_lag = lag;
            }
        }
    }
    return best_lag;
}

GainEstimate amplitude_correlate(const SampleBlock& mic, const SampleBlock& aligned_ref,
                                 double gain_lo, double gain_hi) {
    require_matched(mic, aligned_ref);
    if (!(gain_lo > 0.0 && gain_lo <= 1.0 && gain_hi >= 1.0)) {
        throw ConfigError("amplitude correlate: gain range must satisfy 0 < lo <= 1 <= hi");
    }
    double rr = 0.0, mr = 0.0;
    const std::size_t n = mic.samples.size();
    for (std::size_t i = 0; i < n; ++i) {
        rr += aligned_ref.samples[i] * aligned_ref.samples[i];
        mr += mic.samples[i] * aligned_ref.samples[i];
    }
    if (rr <= 0.0) {
        return {1.0, true}; // factory value
    }
    double g = mr / rr; // least-squares minimizer of |mic - g*ref|^2
    if (g < gain_lo) g = gain_lo;
    if (g > gain_hi) g = gain_hi;
    return {g, false};
}

SampleBlock shift_block(const SampleBlock& b, int lag) {
    SampleBlock out;
    out.rate = b.rate;
    const int n = static_cast<int>(b.samples.size());
    out.samples.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        const int j = i - lag;
        if (j >= 0 && j < n) out.samples[static_cast<std::size_t>(i)] = b.samples[static_cast<std::size_t>(j)];
    }
    return out;
}

SampleBlock subtract_reference(const SampleBlock& mic, const SampleBlock& ref,
                               const Calibration& cal) {
    require_matched(mic, ref);
    SampleBlock noise;
    noise.rate = mic.rate;
    const int n = static_cast<int>(mic.samples.size());
    noise.samples.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const int j = i - cal.lag;
        const double r = (j >= 0 && j < n) ? ref.samples[static_cast<std::size_t>(j)] : 0.0;
        noise.samples[static_cast<std::size_t>(i)] = mic.samples[static_cast<std::size_t>(i)] - cal.gain * r;
    }
    return noise;
}

Calibration calibrate(const SampleBlock& mic, const SampleBlock& ref,
                      const Calibration& cal, const IsolationParams& params) {
    // phase first, then amplitude on the lag-aligned reference
    const int lag_est = phase_correlate(mic, ref, params.max_lag);
    const SampleBlock aligned = shift_block(ref, lag_est);
    const GainEstimate ge = amplitude_correlate(mic, aligned, params.gain_lo, params.gain_hi);

    Calibration next = cal;
    next.degenerate = ge.degenerate;
    if (ge.degenerate) {
        return next; // nothing usable in this block; keep the stored values
    }
    if (!next.seeded) {
        next.lag_avg = lag_est;
        next.gain_avg = ge.gain;
        next.seeded = true;
    } else {
        // multi-period correlation: history keeps `smoothing` weight
        const double a = params.smoothing;
        next.lag_avg = (1.0 - a) * lag_est + a * next.lag_avg;
        next.gain_avg = (1.0 - a) * ge.gain + a * next.gain_avg;
    }
    next.lag = static_cast<int>(std::lround(next.lag_avg));
    if (next.lag > params.max_lag) next.lag = params.max_lag;
    if (next.lag < -params.max_lag) next.lag = -params.max_lag;
    next.gain = next.gain_avg;
    if (next.gain < params.gain_lo) next.gain = params.gain_lo;
    if (next.gain > params.gain_hi) next.gain = params.gain_hi;
    return next;
}

IsolationResult isolate_noise(const SampleBlock& mic, const SampleBlock& ref,
                              const Calibration& cal, const IsolationParams& params) {
    // no reference stream: pass the mic through untouched
    if (ref.samples.empty()) {
        return {mic, cal};
    }
    Calibration next = cal;
    if (cal.mode == CalibrationMode::continuous) {
        next = calibrate(mic, ref, cal, params);
    }
    return {subtract_reference(mic, ref, next), next};
}

} // namespace avc
