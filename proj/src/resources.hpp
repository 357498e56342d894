// resources.hpp
// Closed-form entanglement-resource calculators and the greedy
// channel-compression planner, plus trade-off curve tabulation.

#pragma once

#include <stdexcept>
#include <vector>

namespace rsp {

// Requested POVM success probability cannot support a compression plan.
class InfeasiblePlanError : public std::domain_error {
public:
    InfeasiblePlanError(const std::string& what, int head)
        : std::domain_error(what), head_(head) {}
    int head() const { return head_; }

private:
    int head_;
};

// Accuracy exponent m and the derived central-gap half-width
// A_N = pi/4 - arcsin((1 - 10^-m) / sqrt(2)).
struct AccuracyModel {
    int m;
    double gap_half_width;
};

AccuracyModel accuracy_model(int m);

// Real-valued channel counts; callers ceil them for integer depths. The log
// ratio is base-invariant, so natural logarithms are used throughout.
double appendix_a_depth(double q, int m);           // log(2*10^-m - 10^-2m) / log(2q-1)
double improved1_depth(double q, double f_min);     // log(1 - f_min^2) / (2 log(2q-1))
double appendix_b_depth(double q, double f_min);    // log(1/f_min - 1) / log(2q-1)

// Minimal integer depth leaving a central gap no wider than the accuracy
// model's A_N: ceil of appendix_a_depth.
int minimal_depth_for_gap(double q, int m);

// C_f = tan(pi/4 - A_f), the Schmidt ratio of channel f (increasing in f).
double channel_ratio(double q, int f);

// One greedy section: head channel `head` substitutes every channel in
// [lo, head] via the local POVM.
struct Section {
    int head;
    int lo;
};

class CompressionPlan {
public:
    CompressionPlan(double q, double p_success, int deepest,
                    std::vector<Section> sections);

    double q() const { return q_; }
    double success_probability() const { return p_; }
    int deepest() const { return deepest_; }

    int section_count() const { return static_cast<int>(sections_.size()); }  // M
    const std::vector<Section>& sections() const { return sections_; }

    // Section heads, deepest first (the paper's published list).
    std::vector<int> heads() const;
    // Boundaries l_0..l_M ascending, with l_0 = 1 and l_M = deepest.
    std::vector<int> bounds() const;

    const Section& section_for_channel(int channel) const;

    // theta intervals served by section k (deepest first):
    // [lower_lo, lower_hi] and its mirror [upper_lo, upper_hi].
    struct ThetaIntervals {
        double lower_lo, lower_hi;
        double upper_lo, upper_hi;
    };
    ThetaIntervals section_theta(int k) const;

private:
    double q_;
    double p_;
    int deepest_;
    std::vector<Section> sections_;  // descending by head
};

// Walks heads from n_channels down, each section reaching every channel whose
// ratio satisfies C_f^2 >= P B^2 + P - 1; the boundary l = ceil(f) belongs to
// the deeper section and the next head is l - 1.
CompressionPlan greedy_compress(double q, int n_channels, double p_success);

// Post-hoc feasibility re-check, independent of the construction loop: full
// coverage of [1, N], strictly decreasing heads, and POVM reachability of
// every channel from its section head. Throws on violation.
void verify_plan(const CompressionPlan& plan);

enum class DepthKind { appendix_a, improved1, appendix_b };

struct SweepPoint {
    double q;
    double n;
};

// Tabulates (q, N) for plotting; param is m for appendix_a, f_min otherwise.
std::vector<SweepPoint> sweep_curve(DepthKind kind, double param, double q_lo,
                                    double q_hi, int samples);

}  // namespace rsp
