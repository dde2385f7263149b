#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mvdp/model.hpp"
#include "mvdp/params.hpp"

namespace mvdp {

/// A transversal used to stop trajectories and measure crossings.
/// axis = X: the vertical line x = value; axis = Y: the horizontal line y = value.
/// `half` restricts the sign of the other coordinate at the crossing
/// (+1, -1, or 0 for either). `crossing` restricts the sign of the axis
/// coordinate's derivative at the crossing (0 for either direction).
struct Section {
    enum class Axis { X, Y };
    Axis axis = Axis::X;
    double value = 0.0;
    int half = 0;
    int crossing = 0;
};

struct SectionHit {
    double t = 0.0;
    State s;
};

struct Trajectory {
    struct Sample {
        double t;
        State s;
    };

    enum class Stop { TimeReached, Escaped, SectionHit, StepLimit };

    std::vector<Sample> samples;
    bool forward = true;
    Stop stop = Stop::TimeReached;
    std::optional<SectionHit> hit;

    const Sample& front() const { return samples.front(); }
    const Sample& back() const { return samples.back(); }
    double duration() const { return samples.back().t - samples.front().t; }
};

/// Step-size underflow inside a step; carries whatever was integrated so far.
class StiffSegmentError : public NumericalError {
public:
    StiffSegmentError(std::string msg, Trajectory partial)
        : NumericalError(std::move(msg)), partial_trajectory(std::move(partial)) {}
    Trajectory partial_trajectory;
};

struct IntegrateOptions {
    double tol = 1e-9;                  // local error per step, in [1e-12, 1e-3]
    std::size_t max_steps = 4'000'000;
    std::optional<Section> section;     // stop at first admissible crossing
    double section_skip_time = 0.0;     // ignore crossings before |t| reaches this
};

/// Adaptive Dormand-Prince 5(4) integration of the flow from s0 over
/// [0, t_end] (t_end < 0 integrates backward). Terminates early when the
/// trajectory leaves the box |x| <= 10*max(|d|,|e|,1), |y| <= 100, or at a
/// section crossing when one is requested.
Trajectory integrate(const SystemParams& p, const State& s0, double t_end,
                     const IntegrateOptions& opts = {});

/// Escape-box half-widths used by integrate().
double escape_box_x(const SystemParams& p);
constexpr double escape_box_y = 100.0;

} // namespace mvdp
