// avc: PSIL-based automatic volume control pipeline
//
// subcommands:
//   design    check an (N, s) FFT design against the PSIL guidelines
//   analyze   WAV -> per-period octave band levels and PSIL (CSV)
//   simulate  scenario -> solver trace (CSV), SIL or synthesized-audio mode
//   process   mic WAV + reference WAV -> isolated-noise gain trace (CSV)

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "avc/batch.hpp"
#include "avc/config.hpp"
#include "avc/errors.hpp"
#include "avc/report.hpp"
#include "avc/scenario.hpp"
#include "avc/wav.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::vector<std::string> sets;
    int n = 0;
    double s = 0.0;
    long seed = -1;
    int threads = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "key=value config file");
    cmd->add_option("--set", o.sets, "override a config key, e.g. --set solver.omega0=9")
        ->take_all();
    cmd->add_option("--n", o.n, "samples per processing period (power of 2)");
    cmd->add_option("--s", o.s, "sample rate, Hz");
    cmd->add_option("--seed", o.seed, "random seed");
    cmd->add_option("--threads", o.threads, "block metering threads (0 = all cores)");
}

avc::Config build_config(const CommonOpts& o) {
    avc::Config cfg;
    if (!o.config_path.empty()) cfg = avc::load_config_file(o.config_path, cfg);
    for (const auto& kv : o.sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw avc::ConfigError("--set expects key=value, got '" + kv + "'");
        cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (o.n) cfg.fft_n = o.n;
    if (o.s > 0.0) cfg.fft_rate = o.s;
    if (o.seed >= 0) cfg.seed = static_cast<std::uint32_t>(o.seed);
    if (o.threads > 0) cfg.threads = o.threads;
    cfg.validate();
    return cfg;
}

std::ostream& open_out(const std::string& path, std::ofstream& file) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw avc::ProcessingError("cannot create output file: " + path);
    return file;
}

void print_summary(const avc::PipelineResult& result) {
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
    std::cerr << "final prefs: r0_db=" << result.final_prefs.r0_db
              << " floor_db=" << result.final_prefs.floor_db << " sil_threshold_db=";
    if (std::isfinite(result.final_prefs.sil_threshold_db))
        std::cerr << result.final_prefs.sil_threshold_db;
    else
        std::cerr << "inf";
    std::cerr << "\n";
}

int cmd_design(int n, double s, double tolerance, const std::string& out_path) {
    const avc::FftDesign d = avc::design_fft(n, s);
    const avc::GuidelineReport r = avc::validate_design(d, tolerance);
    std::ofstream file;
    std::ostream& out = open_out(out_path, file);
    avc::print_design_report(out, d, r);
    out << "\n";
    avc::print_design_csv(out, d, r);
    return r.any_fail() ? 2 : 0;
}

int cmd_analyze(const std::string& wav_path, const CommonOpts& opts,
                const std::string& out_path) {
    const avc::Config cfg = build_config(opts);
    const avc::WavData wav = avc::read_wav_mono16(wav_path);
    if (wav.rate != cfg.fft_rate) {
        std::ostringstream os;
        os << wav_path << ": WAV sample rate " << wav.rate
           << " Hz does not match configured rate " << cfg.fft_rate
           << " Hz (resample offline)";
        throw avc::ConfigError(os.str());
    }
    const avc::FftDesign design = cfg.make_design();
    const avc::BandPartition part = avc::band_partition(design);
    const auto blocks = avc::stream_to_blocks(wav.samples, design);
    if (blocks.empty()) {
        std::cerr << "warning: input shorter than one processing period; empty output\n";
    }
    const avc::WindowKind window =
        cfg.hann_window ? avc::WindowKind::hann : avc::WindowKind::rectangular;
    const auto readings =
        avc::meter_blocks(blocks, design, part, cfg.meter_floor_db, window, cfg.threads);

    std::ofstream file;
    std::ostream& out = open_out(out_path, file);
    out << "period,time_s,band1_db,band2_db,band3_db,psil_db\n";
    for (const auto& r : readings) {
        char buf[192];
        std::snprintf(buf, sizeof buf, "%lld,%.6f,%.6f,%.6f,%.6f,%.6f\n",
                      static_cast<long long>(r.period), r.time_s, r.band_db[0], r.band_db[1],
                      r.band_db[2], r.psil_db);
        out << buf;
    }
    return 0;
}

int cmd_simulate(const std::string& scenario_path, const std::string& events_path,
                 bool audio_mode, const std::string& plot_path, const CommonOpts& opts,
                 const std::string& out_path, bool seed_given) {
    const avc::Config cfg = build_config(opts);
    avc::Scenario sc = avc::load_scenario_file(scenario_path);
    if (seed_given) sc.seed = cfg.seed;
    std::vector<avc::VolumeEvent> events;
    if (!events_path.empty()) events = avc::load_events_file(events_path);

    const avc::PipelineResult result =
        avc::run_pipeline(sc, cfg, audio_mode ? avc::SimMode::audio : avc::SimMode::sil, events);

    std::ofstream file;
    std::ostream& out = open_out(out_path, file);
    avc::write_trace_csv(out, result.trace);
    if (!plot_path.empty()) {
        std::ofstream svg(plot_path);
        if (!svg) throw avc::ProcessingError("cannot create plot file: " + plot_path);
        svg << avc::render_trace_svg(result.trace);
    }
    print_summary(result);
    return 0;
}

int cmd_process(const std::string& mic_path, const std::string& ref_path,
                const std::string& events_path, const CommonOpts& opts,
                const std::string& out_path) {
    const avc::Config cfg = build_config(opts);
    const avc::WavData mic = avc::read_wav_mono16(mic_path);
    if (mic.rate != cfg.fft_rate) {
        std::ostringstream os;
        os << mic_path << ": WAV sample rate " << mic.rate
           << " Hz does not match configured rate " << cfg.fft_rate << " Hz";
        throw avc::ConfigError(os.str());
    }
    const avc::WavData ref = avc::read_wav_mono16(ref_path);
    if (ref.rate != mic.rate) {
        std::ostringstream os;
        os << ref_path << ": WAV sample rate " << ref.rate << " Hz does not match mic rate "
           << mic.rate << " Hz";
        throw avc::ConfigError(os.str());
    }
    std::vector<avc::VolumeEvent> events;
    if (!events_path.empty()) events = avc::load_events_file(events_path);

    const avc::PipelineResult result = avc::run_stream_pipeline(mic.samples, ref.samples, cfg, events);

    std::ofstream file;
    std::ostream& out = open_out(out_path, file);
    avc::write_trace_csv(out, result.trace);
    print_summary(result);
    std::cerr << "final calibration: lag=" << result.final_cal.lag
              << " gain=" << result.final_cal.gain << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"PSIL-based automatic volume control"};
    app.require_subcommand(1);

    // design
    auto* design = app.add_subcommand("design", "check an FFT design against the guidelines");
    int d_n = 128;
    double d_s = 5600.0, d_tol = 1.15;
    std::string d_out;
    design->add_option("--n", d_n, "samples per period (power of 2)");
    design->add_option("--s", d_s, "sample rate, Hz");
    design->add_option("--tolerance", d_tol, "soft-limit multiplier for 'about'")
        ->check(CLI::Range(1.0, 10.0));
    design->add_option("--out", d_out, "write report to a file instead of stdout");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "WAV -> per-period PSIL CSV");
    std::string a_wav, a_out;
    CommonOpts a_opts;
    analyze->add_option("wav", a_wav, "mono 16-bit PCM WAV")->required();
    analyze->add_option("--out", a_out, "output CSV path (default stdout)");
    add_common(analyze, a_opts);

    // simulate
    auto* simulate = app.add_subcommand("simulate", "scenario -> solver trace CSV");
    std::string s_scenario, s_events, s_plot, s_out;
    bool s_audio = false;
    CommonOpts s_opts;
    simulate->add_option("scenario", s_scenario, "scenario file")->required();
    simulate->add_option("--events", s_events, "manual volume events file");
    simulate->add_flag("--audio", s_audio, "synthesize noise audio and meter it");
    simulate->add_option("--plot", s_plot, "write an SVG chart of S and A");
    simulate->add_option("--out", s_out, "output CSV path (default stdout)");
    add_common(simulate, s_opts);

    // process
    auto* process = app.add_subcommand("process", "mic + reference WAV -> gain trace CSV");
    std::string p_mic, p_ref, p_events, p_out;
    CommonOpts p_opts;
    process->add_option("mic", p_mic, "microphone WAV")->required();
    process->add_option("ref", p_ref, "device output reference WAV")->required();
    process->add_option("--events", p_events, "manual volume events file");
    process->add_option("--out", p_out, "output CSV path (default stdout)");
    add_common(process, p_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (design->parsed()) return cmd_design(d_n, d_s, d_tol, d_out);
        if (analyze->parsed()) return cmd_analyze(a_wav, a_opts, a_out);
        if (simulate->parsed())
            return cmd_simulate(s_scenario, s_events, s_audio, s_plot, s_opts, s_out,
                                simulate->count("--seed") > 0);
        if (process->parsed()) return cmd_process(p_mic, p_ref, p_events, p_opts, p_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
