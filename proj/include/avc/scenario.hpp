#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "avc/config.hpp"
#include "avc/listener_prefs.hpp"
#include "avc/sil_meter.hpp"

namespace avc {

/// Synthetic SIL script: stepped background, uniform fluctuation, and
/// triangular spikes.
struct Scenario {
    struct Segment {
        double level_db;
        double duration_s;
    };
    struct Spike {
        double start_s;
        double duration_s;
        double peak_db; // added to the background at the spike midpoint
    };

    std::vector<Segment> segments;
    double fluctuation_db = 0.0;
    std::vector<Spike> spikes;
    std::uint32_t seed = 1;

    double total_duration() const;
    void validate() const; // throws ConfigError
};

/// The canonical two-spike scenario: stepped background, +-1 dB fluctuation,
/// a half-second and a quarter-second +20 dB triangular spike.
Scenario fig3_scenario();

/// Background level + spike contribution at time t, fluctuation excluded.
double scenario_level_at(const Scenario& sc, double t);

/// One SIL value per period of length dt; deterministic under sc.seed.
std::vector<double> generate_sil_trace(const Scenario& sc, double dt);

/// Band-limited noise block whose analytic PSIL equals the scenario SIL at
/// the block's start time. Deterministic per (seed, block index).
SampleBlock synthesize_noise_block(const Scenario& sc, const FftDesign& design,
                                   const BandPartition& part, std::int64_t block_index);

/// Whole-stream synthesis covering the scenario duration.
std::vector<double> synthesize_noise_audio(const Scenario& sc, const FftDesign& design);

/// One row per processing period of the full pipeline.
struct TraceRecord {
    std::int64_t period = 0;
    double time_s = 0.0;
    double sil_db = 0.0;       // S
    double norm_gain_db = 0.0; // A
    double out_gain_db = 0.0;  // a = A + R0
    std::array<double, 3> band_db{};
};

/// A raw volume-knob sample from an events file.
struct VolumeEvent {
    double time_s = 0.0;
    double volume_db = 0.0;
};

/// Collapses knob movements separated by less than min_gap into single
/// adjustments ending at the last movement.
std::vector<VolumeEvent> coalesce_events(std::vector<VolumeEvent> events,
                                         double min_gap_s = 1.0);

struct PipelineResult {
    std::vector<TraceRecord> trace;
    ListenerPrefs final_prefs;
    Calibration final_cal;
    std::vector<std::string> warnings;
};

enum class SimMode { sil, audio };

/// Scenario-driven run: SIL mode feeds the generated trace straight to the
/// solver; audio mode synthesizes noise blocks and meters them first.
PipelineResult run_pipeline(const Scenario& sc, const Config& cfg, SimMode mode,
                            const std::vector<VolumeEvent>& events = {});

/// Stream-driven run (microphone + device reference): isolation, metering,
/// solver. An empty reference bypasses subtraction.
PipelineResult run_stream_pipeline(const std::vector<double>& mic,
                                   const std::vector<double>& ref, const Config& cfg,
                                   const std::vector<VolumeEvent>& events = {});

// file formats -------------------------------------------------------------

/// Plain-text scenario: key=value with repeated segment= / spike= lines.
/// Throws ConfigError naming the line number on malformed input.
Scenario parse_scenario(std::istream& in);
Scenario load_scenario_file(const std::string& path);

/// One event per line: `t=<seconds> volume=<dB>`.
std::vector<VolumeEvent> parse_events(std::istream& in);
std::vector<VolumeEvent> load_events_file(const std::string& path);

std::string trace_csv_header();
std::string trace_csv_row(const TraceRecord& r);
void write_trace_csv(std::ostream& out, const std::vector<TraceRecord>& trace);

} // namespace avc
