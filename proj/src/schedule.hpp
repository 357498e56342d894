// schedule.hpp
// The A_n angle schedule, the partition of theta in [0, pi/2] into regions,
// per-region channel-state assignment and the ancilla parameter y.

#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "qcore.hpp"

namespace rsp {

// theta falls in the uncovered interval (pi/4 - A_depth, pi/4 + A_depth);
// callers should switch to improved protocol I or the POVM-based variant.
class CentralGapError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A_n = arcsin((2q-1)^n) / 2 for n >= 0; requires 1/2 < q < 1 strictly.
double schedule_value(double q, int n);

// Stored prefix A_0..A_depth of the schedule for a fixed q.
class Schedule {
public:
    Schedule(double q, int depth);

    double q() const { return q_; }
    int depth() const { return depth_; }
    double value(int n) const;
    const std::vector<double>& values() const { return values_; }

private:
    double q_;
    int depth_;
    std::vector<double> values_;
};

enum class Half { lower, upper };

// Region (half, n): lower n covers [pi/4 - A_n, pi/4 - A_{n+1}],
// upper n covers [pi/4 + A_{n+1}, pi/4 + A_n].
struct RegionIndex {
    Half half;
    int n;
};

// Shared entangled channel (|00> + t|11>) normalized; qubit 0 is Alice's.
struct ChannelState {
    double t;
    PureState as_state;
};

// Ancilla |0> + y|1> with y = a + i*sqrt(2a cot(2 A_{n+1}) / tan(2 theta) - a^2 - 1)
// (middle-term sign flipped on the upper half).
struct AncillaParam {
    double a;
    Complex y;
};

// Boundary points shared by two regions resolve to the smaller n.
RegionIndex locate_region(double theta, double q, int depth);
RegionIndex locate_region(double theta, const Schedule& schedule);

ChannelState channel_for_region(const RegionIndex& region, double q);

// The sigma_x (x) sigma_x image: swaps the Schmidt weights (t -> 1/t), so the
// lower-half family alone suffices for both halves.
ChannelState mirror_channel(const ChannelState& channel);

// Chooses a = |cot(2 A_{n+1}) / tan(2 theta)|, which maximizes the radicand to
// a^2 - 1 >= 0 across the region; at theta = 0 or pi/2 returns y = i.
AncillaParam ancilla_param(double theta, const RegionIndex& region, double q);

}  // namespace rsp
