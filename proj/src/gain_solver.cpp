#include "avc/gain_solver.hpp"

#include <cmath>

#include "avc/errors.hpp"

namespace avc {

bool SolverParams::valid() const {
    if (!(omega0 > 0.0) || !(damping > 0.0) || !(deadband_db >= 0.0) || !(dt > 0.0))
        return false;
    if (!std::isfinite(floor_db)) return false;
    if (damping >= 2.0) {
        // explicit scheme must resolve the fast root
        const double fast = omega0 * (damping + std::sqrt(damping * damping - 4.0)) / 2.0;
        if (dt * fast >= 2.0) return false;
    }
    return true;
}

SolverState init_solver(double s0_db, SolverParams& params) {
    if (!params.valid()) {
        throw ConfigError("solver: invalid parameters (check omega0, damping, deadband, dt)");
    }
    if (!std::isfinite(s0_db)) {
        throw ProcessingError("solver: non-finite initial SIL");
    }
    SolverState st;
    st.gain_db = s0_db > params.floor_db ? s0_db : params.floor_db;
    st.gain_vel = 0.0;
    st.gain_acc = 0.0;
    st.period = 0;
    if (params.ceiling_auto) {
        params.ceiling_db = st.gain_db + 40.0;
    }
    return st;
}

SolverState step(const SolverState& state, double s_next, double s_current,
                 const SolverParams& params) {
    if (!std::isfinite(s_next) || !std::isfinite(s_current)) {
        return state; // drop the block
    }
    const double w0 = params.omega0;
    const double dt = params.dt;

    SolverState out;
    out.gain_vel = state.gain_vel + dt * state.gain_acc;
    if (std::fabs(state.gain_db - s_current) >= params.deadband_db) {
        out.gain_db = state.gain_db + dt * state.gain_vel;
    } else {
        out.gain_db = state.gain_db;
    }
    out.gain_acc = w0 * w0 * s_next - params.damping * w0 * out.gain_vel - w0 * w0 * out.gain_db;
    if (out.gain_db <= params.floor_db) {
        out.gain_db = params.floor_db;
    }
    if (out.gain_db > params.ceiling_db) {
        out.gain_db = params.ceiling_db;
    }
    out.period = state.period + 1;
    return out;
}

std::vector<SolverState> run_trace(const std::vector<double>& sil_trace,
                                   SolverParams params) {
    if (sil_trace.empty()) {
        throw ProcessingError("solver: empty SIL trace");
    }
    std::vector<SolverState> out;
    out.reserve(sil_trace.size());
    out.push_back(init_solver(sil_trace[0], params));
    for (std::size_t i = 1; i < sil_trace.size(); ++i) {
        out.push_back(step(out.back(), sil_trace[i], sil_trace[i - 1], params));
    }
    return out;
}

void AdaptiveDeadband::push(double sil_db) {
    if (!std::isfinite(sil_db)) return;
    if (ring_.size() < static_cast<std::size_t>(window_)) {
        ring_.push_back(sil_db);
    } else {
        ring_[next_] = sil_db;
        next_ = (next_ + 1) % ring_.size();
    }
}

double AdaptiveDeadband::effective() const {
    if (ring_.size() < 2) return base_db_;
    double mean = 0.0;
    for (double v : ring_) mean += v;
    mean /= static_cast<double>(ring_.size());
    double var = 0.0;
    for (double v : ring_) var += (v - mean) * (v - mean);
    var /= static_cast<double>(ring_.size());
    const double r = k_ * std::sqrt(var);
    return r > base_db_ ? r : base_db_;
}

} // namespace avc
