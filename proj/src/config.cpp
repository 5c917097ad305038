#include "avc/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "avc/errors.hpp"

namespace avc {

namespace {

double parse_double(const std::string& key, const std::string& value) {
    if (value == "inf" || value == "+inf") return std::numeric_limits<double>::infinity();
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(key + ": expected a number, got '" + value + "'");
    }
}

int parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(key + ": expected an integer, got '" + value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "1" || value == "true" || value == "on") return true;
    if (value == "0" || value == "false" || value == "off") return false;
    throw ConfigError(key + ": expected a boolean, got '" + value + "'");
}

} // namespace

FftDesign Config::make_design() const {
    return design_fft(fft_n, fft_rate);
}

SolverParams Config::make_solver_params() const {
    SolverParams p;
    p.omega0 = omega0;
    p.damping = damping;
    p.deadband_db = deadband_db;
    p.floor_db = floor_db;
    p.dt = static_cast<double>(fft_n) / fft_rate;
    if (ceiling == "auto") {
        p.ceiling_auto = true;
        p.ceiling_db = std::numeric_limits<double>::infinity();
    } else {
        p.ceiling_auto = false;
        p.ceiling_db = parse_double("solver.ceiling_db", ceiling);
    }
    return p;
}

ListenerPrefs Config::make_prefs() const {
    ListenerPrefs p;
    p.r0_db = r0_db;
    p.floor_db = floor_db;
    p.sil_threshold_db = sil_threshold_db;
    p.latency_s = latency_s;
    return p;
}

IsolationParams Config::make_isolation_params() const {
    IsolationParams p;
    p.max_lag = max_lag;
    p.gain_lo = gain_lo;
    p.gain_hi = gain_hi;
    p.smoothing = isolation_smoothing;
    return p;
}

void Config::validate() const {
    if (fft_n < 2 || !is_power_of_two(static_cast<std::size_t>(fft_n)))
        throw ConfigError("fft.n: must be an integer power of 2, >= 2");
    if (!(fft_rate > 0.0)) throw ConfigError("fft.s: sample rate must be positive");
    if (!(omega0 > 0.0)) throw ConfigError("solver.omega0: must be positive");
    if (!(damping > 0.0)) throw ConfigError("solver.damping: must be positive");
    if (!(deadband_db >= 0.0)) throw ConfigError("solver.deadband_db: must be >= 0");
    if (!std::isfinite(floor_db)) throw ConfigError("solver.floor_db: must be finite");
    if (!(deadband_k > 0.0)) throw ConfigError("solver.deadband_k: must be positive");
    if (deadband_window < 2) throw ConfigError("solver.deadband_window: must be >= 2");
    if (ceiling != "auto") (void)parse_double("solver.ceiling_db", ceiling);
    if (prefs_window < 1) throw ConfigError("prefs.window: must be >= 1");
    if (!(latency_s > 0.0)) throw ConfigError("prefs.latency_s: must be positive");
    if (!std::isfinite(meter_floor_db)) throw ConfigError("meter.floor_db: must be finite");
    if (max_lag < 0 || max_lag >= fft_n / 4)
        throw ConfigError("isolation.max_lag: must satisfy 0 <= max_lag < fft.n/4");
    if (!(gain_lo > 0.0 && gain_lo <= 1.0 && gain_hi >= 1.0))
        throw ConfigError("isolation.gain_lo/gain_hi: need 0 < lo <= 1 <= hi");
    if (!(isolation_smoothing >= 0.0 && isolation_smoothing < 1.0))
        throw ConfigError("isolation.smoothing: must be in [0, 1)");
    if (threads < 0) throw ConfigError("threads: must be >= 0");
    // solver stability at this design's timestep
    SolverParams sp = make_solver_params();
    if (!sp.valid())
        throw ConfigError("solver.omega0/damping: explicit scheme unstable at dt = fft.n/fft.s");
}

void Config::set(const std::string& key, const std::string& value) {
    if (key == "fft.n") fft_n = parse_int(key, value);
    else if (key == "fft.s") fft_rate = parse_double(key, value);
    else if (key == "fft.hann") hann_window = parse_bool(key, value);
    else if (key == "solver.omega0") omega0 = parse_double(key, value);
    else if (key == "solver.damping") damping = parse_double(key, value);
    else if (key == "solver.deadband_db") deadband_db = parse_double(key, value);
    else if (key == "solver.floor_db") floor_db = parse_double(key, value);
    else if (key == "solver.adaptive_deadband") adaptive_deadband = parse_bool(key, value);
    else if (key == "solver.deadband_k") deadband_k = parse_double(key, value);
    else if (key == "solver.deadband_window") deadband_window = parse_int(key, value);
    else if (key == "solver.ceiling_db") ceiling = value;
    else if (key == "prefs.window") prefs_window = parse_int(key, value);
    else if (key == "prefs.latency_s") latency_s = parse_double(key, value);
    else if (key == "prefs.sil_threshold_db") sil_threshold_db = parse_double(key, value);
    else if (key == "prefs.r0_db") r0_db = parse_double(key, value);
    else if (key == "meter.floor_db") meter_floor_db = parse_double(key, value);
    else if (key == "isolation.max_lag") max_lag = parse_int(key, value);
    else if (key == "isolation.gain_lo") gain_lo = parse_double(key, value);
    else if (key == "isolation.gain_hi") gain_hi = parse_double(key, value);
    else if (key == "isolation.smoothing") isolation_smoothing = parse_double(key, value);
    else if (key == "isolation.mode") {
        if (value == "startup_only") isolation_mode = IsolationMode::startup_only;
        else if (value == "continuous") isolation_mode = IsolationMode::continuous;
        else if (value == "bypass") isolation_mode = IsolationMode::bypass;
        else throw ConfigError("isolation.mode: expected startup_only|continuous|bypass, got '" + value + "'");
    }
    else if (key == "seed") seed = static_cast<std::uint32_t>(parse_int(key, value));
    else if (key == "threads") threads = parse_int(key, value);
    else throw ConfigError("unknown config key '" + key + "'");
}

Config load_config_file(const std::string& path, Config base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        // trim
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        const auto e = line.find_last_not_of(" \t\r");
        line = line.substr(b, e - b + 1);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            std::ostringstream os;
            os << path << ":" << lineno << ": expected key=value";
            throw ConfigError(os.str());
        }
        auto strip = [](std::string s) {
            const auto sb = s.find_first_not_of(" \t");
            if (sb == std::string::npos) return std::string{};
            const auto se = s.find_last_not_of(" \t");
            return s.substr(sb, se - sb + 1);
        };
        base.set(strip(line.substr(0, eq)), strip(line.substr(eq + 1)));
    }
    return base;
}

} // namespace avc
