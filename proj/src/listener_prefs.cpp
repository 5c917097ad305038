#include "avc/listener_prefs.hpp"

#include <algorithm>
#include <cmath>

namespace avc {

SilHistory::SilHistory(int window_m, std::size_t capacity)
    : window_m_(window_m > 0 ? window_m : 1),
      capacity_(capacity ? capacity : std::max<std::size_t>(static_cast<std::size_t>(window_m_) * 8, 256)) {}

void SilHistory::push(const PsilSample& s) {
    samples_.push_back(s);
    while (samples_.size() > capacity_) samples_.pop_front();
    // every period ends a candidate averaging window for the quiet threshold
    pending_.push_back({s.time_s, weighted_sil_average(*this, window_m_).average_db});
}

void SilHistory::note_adjustment(double time_s) {
    adjust_times_.push_back(time_s);
}

std::vector<double> SilHistory::take_quiet_candidates(double now, double latency_s) {
    std::vector<double> out;
    while (!pending_.empty() && pending_.front().end_time_s + latency_s <= now) {
        const Candidate c = pending_.front();
        pending_.pop_front();
        const bool adjusted_after =
            std::any_of(adjust_times_.begin(), adjust_times_.end(), [&](double t) {
                return t > c.end_time_s && t <= c.end_time_s + latency_s;
            });
        if (!adjusted_after) out.push_back(c.average_db);
    }
    return out;
}

WeightedSil weighted_sil_average(const SilHistory& history, int m) {
    WeightedSil w;
    const auto& samples = history.samples();
    if (samples.empty()) {
        w.partial = true;
        return w;
    }
    int used = m;
    if (static_cast<std::size_t>(m) > samples.size()) {
        used = static_cast<int>(samples.size());
        w.partial = true;
    }
    // w_i = 2i/(m+1), i = used at the newest sample
    double acc = 0.0;
    const std::size_t start = samples.size() - static_cast<std::size_t>(used);
    for (int i = 1; i <= used; ++i) {
        const double weight = 2.0 * i / (used + 1.0);
        acc += weight * samples[start + static_cast<std::size_t>(i - 1)].psil_db;
    }
    w.average_db = acc / used;
    w.used = used;
    return w;
}

ListenerPrefs on_manual_adjust(const AdjustEvent& ev, const SilHistory& history,
                               const ListenerPrefs& prefs, double current_a_norm_db) {
    ListenerPrefs next = prefs;
    const WeightedSil w = weighted_sil_average(history, history.window());

    if (ev.is_startup) {
        next.r0_db = ev.final_gain_db - w.average_db;
        return next;
    }
    if (w.average_db < prefs.sil_threshold_db && ev.upward) {
        // quiet environment: the adjustment re-establishes the floor and
        // leaves R0 untouched
        next.floor_db = current_a_norm_db;
        return next;
    }
    next.r0_db = ev.final_gain_db - w.average_db;
    return next;
}

ListenerPrefs update_sil_threshold(SilHistory& history, const ListenerPrefs& prefs,
                                   double now_s) {
    ListenerPrefs next = prefs;
    for (double avg : history.take_quiet_candidates(now_s, prefs.latency_s)) {
        if (avg < next.sil_threshold_db) next.sil_threshold_db = avg;
    }
    return next;
}

} // namespace avc
