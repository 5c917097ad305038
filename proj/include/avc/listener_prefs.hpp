#pragma once

#include <cstdint>
#include <deque>
#include <limits>
#include <vector>

#include "avc/sil_meter.hpp"

namespace avc {

/// Learned listener constraints fed to the solver.
struct ListenerPrefs {
    double r0_db = 0.0;    // preferred signal-to-SIL ratio
    double floor_db = 2.5; // preferred normalized gain floor (A_min)
    // Quiet-environment threshold. Starts at +inf so floor learning cannot
    // trigger before any quiet baseline has been observed.
    double sil_threshold_db = std::numeric_limits<double>::infinity();
    double latency_s = 10.0;
};

/// A completed manual volume adjustment (or the start-up setting).
struct AdjustEvent {
    double end_time_s = 0.0;
    double final_gain_db = 0.0; // a(t_m), the manually set output gain
    bool upward = false;
    bool is_startup = false;
};

/// Ring of recent PSIL readings plus the bookkeeping the threshold rule
/// needs: per-period weighted averages awaiting their latency window, and
/// the times of past adjustments.
class SilHistory {
public:
    explicit SilHistory(int window_m = 11, std::size_t capacity = 0);

    void push(const PsilSample& s);
    void note_adjustment(double time_s);

    int window() const { return window_m_; }
    std::size_t size() const { return samples_.size(); }
    const std::deque<PsilSample>& samples() const { return samples_; }
    double latest_time() const { return samples_.empty() ? 0.0 : samples_.back().time_s; }

    /// Window averages whose latency period has elapsed by `now` without a
    /// manual adjustment; each is returned once and then dropped.
    std::vector<double> take_quiet_candidates(double now, double latency_s);

private:
    struct Candidate {
        double end_time_s;
        double average_db;
    };

    int window_m_;
    std::size_t capacity_;
    std::deque<PsilSample> samples_;
    std::deque<Candidate> pending_;
    std::vector<double> adjust_times_;
};

struct WeightedSil {
    double average_db = 0.0;
    int used = 0;
    bool partial = false; // fewer than m samples were available
};

/// (1/m) * sum_i w_i * SIL_i with w_i = 2i/(m+1), i = m at the newest
/// sample. Short histories are averaged with reindexed weights and flagged.
WeightedSil weighted_sil_average(const SilHistory& history, int m);

/// Applies one adjustment: below-threshold upward adjustments re-establish
/// the gain floor and leave R0 untouched; anything else (and every startup)
/// re-derives R0 from the weighted SIL average.
ListenerPrefs on_manual_adjust(const AdjustEvent& ev, const SilHistory& history,
                               const ListenerPrefs& prefs, double current_a_norm_db);

/// Lowers sil_threshold to the smallest matured weighted average that no
/// adjustment followed within the latency period.
ListenerPrefs update_sil_threshold(SilHistory& history, const ListenerPrefs& prefs,
                                   double now_s);

} // namespace avc
