#pragma once

#include <cstdint>
#include <string>

#include "avc/gain_solver.hpp"
#include "avc/listener_prefs.hpp"
#include "avc/noise_isolation.hpp"
#include "avc/spectral.hpp"

namespace avc {

enum class IsolationMode { startup_only, continuous, bypass };

/// Every tunable in one place. Defaults are the published point design and
/// Fig. 3 constants.
struct Config {
    // FFT front end
    int fft_n = 128;
    double fft_rate = 5600.0;
    bool hann_window = false;

    // solver
    double omega0 = 8.0;
    double damping = 4.0;
    double deadband_db = 1.0;
    double floor_db = 2.5; // factory A_min
    bool adaptive_deadband = false;
    double deadband_k = 1.5;
    int deadband_window = 22;
    // "auto" = startup level + 40 dB; may be a number or "inf"
    std::string ceiling = "auto";

    // listener prefs
    int prefs_window = 11; // m
    double latency_s = 10.0;
    double sil_threshold_db = std::numeric_limits<double>::infinity();
    double r0_db = 0.0; // factory preferred signal-to-SIL ratio

    // meter
    double meter_floor_db = -120.0;

    // noise isolation
    int max_lag = 8;
    double gain_lo = 0.25;
    double gain_hi = 4.0;
    IsolationMode isolation_mode = IsolationMode::startup_only;
    double isolation_smoothing = 0.2;

    std::uint32_t seed = 1;
    int threads = 1; // block-metering worker count; 0 = all cores

    FftDesign make_design() const;
    SolverParams make_solver_params() const;
    ListenerPrefs make_prefs() const;
    IsolationParams make_isolation_params() const;

    /// Throws ConfigError naming the offending key.
    void validate() const;

    void set(const std::string& key, const std::string& value);
};

/// key=value file, '#' comments. Unknown keys are an error.
Config load_config_file(const std::string& path, Config base = Config{});

} // namespace avc
