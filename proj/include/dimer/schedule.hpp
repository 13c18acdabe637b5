#ifndef DIMER_SCHEDULE_HPP
#define DIMER_SCHEDULE_HPP

#include <cstddef>
#include <utility>
#include <vector>

namespace dimer {

/// One stage of the control sequence. J(t) follows a constant, linear or
/// tabulated law over the segment's local time tau in [0, duration];
/// Delta(t) is linear. Tabulated laws hold (t, J) knots with piecewise
/// linear interpolation.
struct Segment {
    enum class Law { Constant, Linear, Tabulated };

    double duration = 0.0;
    Law j_law = Law::Constant;
    double J0 = 0.0, J1 = 0.0;
    std::vector<double> tab_t, tab_J;
    double D0 = 0.0, D1 = 0.0;

    double J_at(double tau) const;
    double Delta_at(double tau) const;
    double j_rate_at(double tau) const;
    double delta_rate() const;
    /// Largest control rate anywhere in the segment (for step-size control).
    double max_rate() const;
};

/// Instantaneous operation applied between segments.
struct BoundaryEvent {
    enum class Kind { PhaseEncode, RotateY };
    std::size_t after_segment = 0;
    Kind kind = Kind::PhaseEncode;
    double value = 0.0;  // phi per particle, or rotation angle
};

/// Piecewise time dependence of the controls (J, Delta) plus boundary
/// events. J is continuous across segment boundaries by construction of
/// the builders in protocol.hpp.
struct ControlSchedule {
    std::vector<Segment> segments;
    std::vector<BoundaryEvent> events;

    double total_duration() const;
    /// Controls at absolute time t in [0, total_duration].
    std::pair<double, double> controls_at(double t) const;
    /// Continuity check used by tests and builders.
    bool j_continuous(double tol) const;
};

}  // namespace dimer

#endif
