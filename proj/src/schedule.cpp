#include "dimer/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dimer {

double Segment::J_at(double tau) const {
    switch (j_law) {
        case Law::Constant:
            return J0;
        case Law::Linear:
            return duration > 0.0 ? J0 + (J1 - J0) * (tau / duration) : J0;
        case Law::Tabulated: {
            if (tab_t.size() < 2 || tab_t.size() != tab_J.size())
                throw std::runtime_error("Segment: malformed tabulated law");
            if (tau <= tab_t.front()) return tab_J.front();
            if (tau >= tab_t.back()) return tab_J.back();
            const auto it = std::upper_bound(tab_t.begin(), tab_t.end(), tau);
            const std::size_t i = static_cast<std::size_t>(it - tab_t.begin());
            const double f = (tau - tab_t[i - 1]) / (tab_t[i] - tab_t[i - 1]);
            return tab_J[i - 1] + f * (tab_J[i] - tab_J[i - 1]);
        }
    }
    return J0;
}

double Segment::Delta_at(double tau) const {
    return duration > 0.0 ? D0 + (D1 - D0) * (tau / duration) : D0;
}

double Segment::delta_rate() const {
    return duration > 0.0 ? (D1 - D0) / duration : 0.0;
}

double Segment::j_rate_at(double tau) const {
    switch (j_law) {
        case Law::Constant:
            return 0.0;
        case Law::Linear:
            return duration > 0.0 ? (J1 - J0) / duration : 0.0;
        case Law::Tabulated: {
            if (tab_t.size() < 2) return 0.0;
            auto it = std::upper_bound(tab_t.begin(), tab_t.end(), tau);
            std::size_t i = static_cast<std::size_t>(it - tab_t.begin());
            i = std::clamp<std::size_t>(i, 1, tab_t.size() - 1);
            const double dt = tab_t[i] - tab_t[i - 1];
            return dt > 0.0 ? (tab_J[i] - tab_J[i - 1]) / dt : 0.0;
        }
    }
    return 0.0;
}

double Segment::max_rate() const {
    double r = std::abs(delta_rate());
    if (j_law == Law::Linear) {
        r = std::max(r, duration > 0.0 ? std::abs(J1 - J0) / duration : 0.0);
    } else if (j_law == Law::Tabulated) {
        for (std::size_t i = 1; i < tab_t.size(); ++i) {
            const double dt = tab_t[i] - tab_t[i - 1];
            if (dt > 0.0) r = std::max(r, std::abs(tab_J[i] - tab_J[i - 1]) / dt);
        }
    }
    return r;
}

double ControlSchedule::total_duration() const {
    double total = 0.0;
    for (const auto& seg : segments) total += seg.duration;
    return total;
}

std::pair<double, double> ControlSchedule::controls_at(double t) const {
    if (segments.empty()) throw std::runtime_error("ControlSchedule: empty");
    double start = 0.0;
    for (const auto& seg : segments) {
        if (t <= start + seg.duration || &seg == &segments.back()) {
            const double tau = std::clamp(t - start, 0.0, seg.duration);
            return {seg.J_at(tau), seg.Delta_at(tau)};
        }
        start += seg.duration;
    }
    const Segment& last = segments.back();
    return {last.J_at(last.duration), last.Delta_at(last.duration)};
}

bool ControlSchedule::j_continuous(double tol) const {
    for (std::size_t i = 1; i < segments.size(); ++i) {
        const Segment& a = segments[i - 1];
        const double end = a.J_at(a.duration);
        const double begin = segments[i].J_at(0.0);
        if (std::abs(end - begin) > tol) return false;
    }
    return true;
}

}  // namespace dimer
