#pragma once

#include <cstdint>
#include <limits>
#include <vector>

namespace avc {

/// Constants of the damped-oscillator gain smoother.
struct SolverParams {
    double omega0 = 8.0;      // stiffness frequency, 1/s
    double damping = 4.0;     // dimensionless damping constant
    double deadband_db = 1.0; // |A - S| below this freezes the gain signal
    double floor_db = 2.5;    // listener's floor on the normalized gain
    double dt = 128.0 / 5600.0; // processing period N/s, seconds
    // Safety ceiling on the normalized gain. Not part of the published
    // algorithm; init_solver lowers it to A0 + 40 dB unless configured.
    double ceiling_db = std::numeric_limits<double>::infinity();
    bool ceiling_auto = true; // ceiling follows the startup level

    bool valid() const;
};

/// Normalized gain control signal and its first two time derivatives.
struct SolverState {
    double gain_db = 0.0;  // A
    double gain_vel = 0.0; // A', dB/s
    double gain_acc = 0.0; // A'', dB/s^2
    std::int64_t period = 0;
};

SolverState init_solver(double s0_db, SolverParams& params);

/// Advances one processing period:
///   A'[i+1] = A'[i] + dt*A''[i]
///   A[i+1]  = |A[i] - S[i]| >= r0 ? A[i] + dt*A'[i] : A[i]
///   A''[i+1] = w0^2*S[i+1] - b*w0*A'[i+1] - w0^2*A[i+1]
///   A[i+1]  = max(A[i+1], A_min)
/// s_current is S[i], s_next is S[i+1]. A non-finite SIL drops the block and
/// returns the state unchanged.
SolverState step(const SolverState& state, double s_next, double s_current,
                 const SolverParams& params);

/// Output gain command a = A + R0.
inline double gain_signal(const SolverState& state, double r0_pref_db) {
    return state.gain_db + r0_pref_db;
}

/// init_solver on the first sample, then one step per subsequent sample.
/// Output length equals input length.
std::vector<SolverState> run_trace(const std::vector<double>& sil_trace,
                                   SolverParams params);

/// Optional adaptive deadband: r0 grows with the recent RMS fluctuation of
/// the SIL, never dropping below the configured base.
class AdaptiveDeadband {
public:
    AdaptiveDeadband(double base_db, double k, int window = 22)
        : base_db_(base_db), k_(k), window_(window) {}

    void push(double sil_db);
    double effective() const;
    void reset() { ring_.clear(); next_ = 0; }

private:
    double base_db_;
    double k_;
    int window_;
    std::vector<double> ring_;
    std::size_t next_ = 0;
};

} // namespace avc
