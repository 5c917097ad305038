#include "avc/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "avc/batch.hpp"
#include "avc/errors.hpp"
#include "avc/gain_solver.hpp"
#include "avc/noise_isolation.hpp"

namespace avc {

double Scenario::total_duration() const {
    double t = 0.0;
    for (const auto& s : segments) t += s.duration_s;
    return t;
}

void Scenario::validate() const {
    if (segments.empty()) throw ConfigError("scenario: needs at least one segment");
    for (const auto& s : segments)
        if (!(s.duration_s > 0.0)) throw ConfigError("scenario: segment durations must be positive");
    if (!(fluctuation_db >= 0.0)) throw ConfigError("scenario: fluctuation_db must be >= 0");
    const double total = total_duration();
    for (const auto& sp : spikes) {
        if (!(sp.duration_s > 0.0)) throw ConfigError("scenario: spike durations must be positive");
        if (sp.start_s < 0.0 || sp.start_s + sp.duration_s > total)
            throw ConfigError("scenario: spike extends outside the scenario duration");
    }
}

Scenario fig3_scenario() {
    Scenario sc;
    // The background staircase is a stand-in; only the spikes, the
    // fluctuation amplitude, and the solver constants are published.
    sc.segments = {{35.0, 4.0}, {45.0, 6.0}, {38.0, 6.0}, {42.0, 4.0}};
    sc.fluctuation_db = 1.0;
    sc.spikes = {{8.0, 0.5, 20.0}, {14.0, 0.25, 20.0}};
    sc.seed = 7;
    return sc;
}

double scenario_level_at(const Scenario& sc, double t) {
    double level = sc.segments.back().level_db;
    double acc = 0.0;
    for (const auto& seg : sc.segments) {
        if (t < acc + seg.duration_s) {
            level = seg.level_db;
            break;
        }
        acc += seg.duration_s;
    }
    for (const auto& sp : sc.spikes) {
        if (t >= sp.start_s && t <= sp.start_s + sp.duration_s) {
            const double frac = (t - sp.start_s) / sp.duration_s;
            level += sp.peak_db * (1.0 - std::fabs(2.0 * frac - 1.0));
        }
    }
    return level;
}

namespace {

// mt19937 output mapped to [0,1) by hand; std distributions are
// implementation-defined and the traces must be reproducible byte for byte.
inline double uniform01(std::mt19937& rng) {
    return static_cast<double>(rng()) * (1.0 / 4294967296.0);
}

} // namespace

std::vector<double> generate_sil_trace(const Scenario& sc, double dt) {
    sc.validate();
    if (!(dt > 0.0)) throw ConfigError("scenario: dt must be positive");
    const double total = sc.total_duration();
    std::mt19937 rng(sc.seed);
    std::vector<double> trace;
    for (std::int64_t k = 0; static_cast<double>(k) * dt < total; ++k) {
        const double t = static_cast<double>(k) * dt;
        const double fluct =
            sc.fluctuation_db > 0.0
                ? -sc.fluctuation_db + 2.0 * sc.fluctuation_db * uniform01(rng)
                : 0.0;
        trace.push_back(scenario_level_at(sc, t) + fluct);
    }
    return trace;
}

SampleBlock synthesize_noise_block(const Scenario& sc, const FftDesign& design,
                                   const BandPartition& part, std::int64_t block_index) {
    const std::vector<double> trace = generate_sil_trace(sc, design.cycle_period);
    if (block_index < 0 || static_cast<std::size_t>(block_index) >= trace.size()) {
        throw ProcessingError("synthesize: block index outside the scenario");
    }
    const double target_sil = trace[static_cast<std::size_t>(block_index)];

    SampleBlock block;
    block.rate = design.sample_rate;
    block.samples.assign(static_cast<std::size_t>(design.n_samples), 0.0);
    if (target_sil <= kMeterFloorDb) {
        return block; // silence
    }

    // flat per-bin power across all three bands puts the analytic PSIL at
    // 10*log10(p) + (10/3)*log10(n1*n2*n3)
    const double n1 = part.bands[0].count();
    const double n2 = part.bands[1].count();
    const double n3 = part.bands[2].count();
    const double offset_db = (10.0 / 3.0) * std::log10(n1 * n2 * n3);
    const double p = std::pow(10.0, (target_sil - offset_db) / 10.0);
    const double amp = std::sqrt(2.0 * p); // bin power a^2/2

    std::seed_seq seq{sc.seed, static_cast<std::uint32_t>(block_index),
                      static_cast<std::uint32_t>(0x9e3779b9u)};
    std::mt19937 rng(seq);

    const std::size_t n = block.samples.size();
    for (int j = part.bands[0].first; j <= part.bands[2].last; ++j) {
        const double phase = 2.0 * std::numbers::pi * uniform01(rng);
        const double w = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) {
            block.samples[i] += amp * std::cos(w * static_cast<double>(i) + phase);
        }
    }
    return block;
}

std::vector<double> synthesize_noise_audio(const Scenario& sc, const FftDesign& design) {
    const BandPartition part = band_partition(design);
    const std::vector<double> trace = generate_sil_trace(sc, design.cycle_period);
    std::vector<double> samples;
    samples.reserve(trace.size() * static_cast<std::size_t>(design.n_samples));
    for (std::size_t k = 0; k < trace.size(); ++k) {
        const SampleBlock b =
            synthesize_noise_block(sc, design, part, static_cast<std::int64_t>(k));
        samples.insert(samples.end(), b.samples.begin(), b.samples.end());
    }
    return samples;
}

std::vector<VolumeEvent> coalesce_events(std::vector<VolumeEvent> events,
                                         double min_gap_s) {
    std::stable_sort(events.begin(), events.end(),
                     [](const VolumeEvent& a, const VolumeEvent& b) { return a.time_s < b.time_s; });
    std::vector<VolumeEvent> out;
    for (std::size_t i = 0; i < events.size(); ++i) {
        // a group ends at the last movement followed by >= min_gap of quiet
        while (i + 1 < events.size() && events[i + 1].time_s - events[i].time_s < min_gap_s)
            ++i;
        out.push_back(events[i]);
    }
    return out;
}

// --------------------------------------------------------------------------
// control loop shared by all pipeline modes

namespace {

class ControlLoop {
public:
    ControlLoop(const Config& cfg, std::vector<VolumeEvent> events)
        : cfg_(cfg),
          params_(cfg.make_solver_params()),
          prefs_(cfg.make_prefs()),
          history_(cfg.prefs_window),
          adapt_(cfg.deadband_db, cfg.deadband_k, cfg.deadband_window),
          events_(coalesce_events(std::move(events))) {}

    void feed(const PsilSample& ps) {
        const double s = ps.psil_db;
        history_.push(ps);
        if (cfg_.adaptive_deadband) {
            adapt_.push(s);
            params_.deadband_db = adapt_.effective();
        }
        if (!started_) {
            state_ = init_solver(s, params_);
            state_.period = ps.period;
            started_ = true;
        } else {
            const SolverState next = step(state_, s, prev_sil_, params_);
            state_ = next;
            state_.period = ps.period;
        }
        prev_sil_ = s;

        while (next_event_ < events_.size() && events_[next_event_].time_s <= ps.time_s) {
            apply_event(events_[next_event_]);
            ++next_event_;
        }
        prefs_ = update_sil_threshold(history_, prefs_, ps.time_s);

        TraceRecord rec;
        rec.period = ps.period;
        rec.time_s = ps.time_s;
        rec.sil_db = s;
        rec.norm_gain_db = state_.gain_db;
        rec.out_gain_db = gain_signal(state_, prefs_.r0_db);
        rec.band_db = ps.band_db;
        trace_.push_back(rec);
    }

    std::vector<TraceRecord> take_trace() { return std::move(trace_); }
    const ListenerPrefs& prefs() const { return prefs_; }

private:
    void apply_event(const VolumeEvent& ev) {
        AdjustEvent adj;
        adj.end_time_s = ev.time_s;
        adj.final_gain_db = ev.volume_db;
        adj.is_startup = ev.time_s <= 0.0;
        adj.upward = ev.volume_db > gain_signal(state_, prefs_.r0_db);
        // the manually established normalized gain at the adjustment end
        const double manual_norm = ev.volume_db - prefs_.r0_db;
        prefs_ = on_manual_adjust(adj, history_, prefs_, manual_norm);
        history_.note_adjustment(ev.time_s);
        params_.floor_db = prefs_.floor_db;
        // new constraints re-initialize the solver at the current SIL
        const std::int64_t period = state_.period;
        state_ = init_solver(prev_sil_, params_);
        state_.period = period;
    }

    Config cfg_;
    SolverParams params_;
    ListenerPrefs prefs_;
    SilHistory history_;
    AdaptiveDeadband adapt_;
    std::vector<VolumeEvent> events_;
    std::size_t next_event_ = 0;
    SolverState state_;
    bool started_ = false;
    double prev_sil_ = 0.0;
    std::vector<TraceRecord> trace_;
};

} // namespace

PipelineResult run_pipeline(const Scenario& sc, const Config& cfg, SimMode mode,
                            const std::vector<VolumeEvent>& events) {
    cfg.validate();
    sc.validate();
    const FftDesign design = cfg.make_design();
    const double dt = design.cycle_period;

    PipelineResult result;
    ControlLoop loop(cfg, events);

    if (mode == SimMode::sil) {
        const std::vector<double> trace = generate_sil_trace(sc, dt);
        for (std::size_t k = 0; k < trace.size(); ++k) {
            PsilSample ps;
            ps.period = static_cast<std::int64_t>(k);
            ps.time_s = static_cast<double>(k) * dt;
            ps.psil_db = trace[k];
            ps.band_db = {trace[k], trace[k], trace[k]};
            loop.feed(ps);
        }
    } else {
        const BandPartition part = band_partition(design);
        const std::size_t periods = generate_sil_trace(sc, dt).size();
        const WindowKind window = cfg.hann_window ? WindowKind::hann : WindowKind::rectangular;
        for (std::size_t k = 0; k < periods; ++k) {
            const SampleBlock block =
                synthesize_noise_block(sc, design, part, static_cast<std::int64_t>(k));
            const Spectrum spec = compute_spectrum(block, design, window);
            PsilSample ps = psil(spec, part, cfg.meter_floor_db);
            ps.period = static_cast<std::int64_t>(k);
            ps.time_s = static_cast<double>(k) * dt;
            loop.feed(ps);
        }
    }

    result.trace = loop.take_trace();
    result.final_prefs = loop.prefs();
    return result;
}

PipelineResult run_stream_pipeline(const std::vector<double>& mic,
                                   const std::vector<double>& ref, const Config& cfg,
                                   const std::vector<VolumeEvent>& events) {
    cfg.validate();
    const FftDesign design = cfg.make_design();
    const BandPartition part = band_partition(design);
    const WindowKind window = cfg.hann_window ? WindowKind::hann : WindowKind::rectangular;
    const IsolationParams iso = cfg.make_isolation_params();

    PipelineResult result;

    const bool bypass = cfg.isolation_mode == IsolationMode::bypass || ref.empty();
    std::vector<SampleBlock> mic_blocks = stream_to_blocks(mic, design);
    std::vector<SampleBlock> ref_blocks =
        bypass ? std::vector<SampleBlock>{} : stream_to_blocks(ref, design);

    std::size_t periods = mic_blocks.size();
    if (!bypass && ref_blocks.size() != mic_blocks.size()) {
        periods = std::min(mic_blocks.size(), ref_blocks.size());
        std::ostringstream os;
        os << "stream lengths differ (" << mic_blocks.size() << " vs " << ref_blocks.size()
           << " blocks); processing the common prefix";
        result.warnings.push_back(os.str());
    }
    if (periods == 0) {
        result.warnings.push_back("input shorter than one processing period; empty trace");
        result.final_prefs = cfg.make_prefs();
        return result;
    }

    Calibration cal;
    cal.mode = cfg.isolation_mode == IsolationMode::continuous ? CalibrationMode::continuous
                                                               : CalibrationMode::startup_only;
    if (!bypass && cal.mode == CalibrationMode::startup_only) {
        cal = calibrate(mic_blocks[0], ref_blocks[0], cal, iso);
    }

    ControlLoop loop(cfg, events);
    const SampleBlock empty_ref;
    for (std::size_t k = 0; k < periods; ++k) {
        IsolationResult ir =
            isolate_noise(mic_blocks[k], bypass ? empty_ref : ref_blocks[k], cal, iso);
        cal = ir.cal;
        const Spectrum spec = compute_spectrum(ir.noise, design, window);
        PsilSample ps = psil(spec, part, cfg.meter_floor_db);
        ps.period = static_cast<std::int64_t>(k);
        ps.time_s = static_cast<double>(k) * design.cycle_period;
        loop.feed(ps);
    }

    result.trace = loop.take_trace();
    result.final_prefs = loop.prefs();
    result.final_cal = cal;
    return result;
}

// --------------------------------------------------------------------------
// file formats

Scenario parse_scenario(std::istream& in) {
    Scenario sc;
    sc.fluctuation_db = 0.0;
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& why) {
        std::ostringstream os;
        os << "scenario line " << lineno << ": " << why;
        throw ConfigError(os.str());
    };
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        const auto e = line.find_last_not_of(" \t\r");
        line = line.substr(b, e - b + 1);
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail("expected key=value");
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);

        auto numbers = [&](int want) {
            std::vector<double> vs;
            std::stringstream ss(value);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                const auto tb = tok.find_first_not_of(" \t");
                const auto te = tok.find_last_not_of(" \t");
                if (tb == std::string::npos) fail("bad number ''");
                tok = tok.substr(tb, te - tb + 1);
                try {
                    std::size_t pos = 0;
                    vs.push_back(std::stod(tok, &pos));
                    if (pos != tok.size()) throw std::invalid_argument(tok);
                } catch (const std::exception&) {
                    fail("bad number '" + tok + "'");
                }
            }
            if (static_cast<int>(vs.size()) != want) fail("expected " + std::to_string(want) + " comma-separated values");
            return vs;
        };

        if (key == "segment") {
            const auto v = numbers(2);
            sc.segments.push_back({v[0], v[1]});
        } else if (key == "spike") {
            const auto v = numbers(3);
            sc.spikes.push_back({v[0], v[1], v[2]});
        } else if (key == "fluctuation_db") {
            sc.fluctuation_db = numbers(1)[0];
        } else if (key == "seed") {
            sc.seed = static_cast<std::uint32_t>(numbers(1)[0]);
        } else {
            fail("unknown key '" + key + "'");
        }
    }
    sc.validate();
    return sc;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scenario file: " + path);
    return parse_scenario(in);
}

std::vector<VolumeEvent> parse_events(std::istream& in) {
    std::vector<VolumeEvent> events;
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& why) {
        std::ostringstream os;
        os << "events line " << lineno << ": " << why;
        throw ConfigError(os.str());
    };
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::stringstream ss(line);
        std::string tok;
        VolumeEvent ev;
        bool has_t = false, has_v = false;
        while (ss >> tok) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos) fail("expected t=<s> volume=<dB>");
            const std::string key = tok.substr(0, eq);
            double val = 0.0;
            try {
                std::size_t pos = 0;
                val = std::stod(tok.substr(eq + 1), &pos);
                if (pos != tok.size() - eq - 1) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                fail("bad number in '" + tok + "'");
            }
            if (key == "t") {
                ev.time_s = val;
                has_t = true;
            } else if (key == "volume") {
                ev.volume_db = val;
                has_v = true;
            } else {
                fail("unknown field '" + key + "'");
            }
        }
        if (!has_t && !has_v) continue; // blank or comment
        if (!has_t || !has_v) fail("needs both t= and volume=");
        events.push_back(ev);
    }
    return events;
}

std::vector<VolumeEvent> load_events_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open events file: " + path);
    return parse_events(in);
}

std::string trace_csv_header() {
    return "period,time_s,sil_db,A_db,gain_db,band1_db,band2_db,band3_db";
}

std::string trace_csv_row(const TraceRecord& r) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%lld,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f",
                  static_cast<long long>(r.period), r.time_s, r.sil_db, r.norm_gain_db,
                  r.out_gain_db, r.band_db[0], r.band_db[1], r.band_db[2]);
    return buf;
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRecord>& trace) {
    out << trace_csv_header() << '\n';
    for (const auto& r : trace) out << trace_csv_row(r) << '\n';
}

} // namespace avc
