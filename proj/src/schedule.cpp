#include "schedule.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace rsp {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;
constexpr double kHalfPi = std::numbers::pi / 2.0;

void check_q(double q) {
    if (!(q > 0.5 && q < 1.0)) {
        throw std::domain_error("minimum fidelity q must lie strictly in (1/2, 1), got " +
                                std::to_string(q));
    }
}

void check_theta(double theta) {
    if (!(theta >= 0.0 && theta <= kHalfPi)) {
        throw std::domain_error("theta must lie in [0, pi/2], got " + std::to_string(theta));
    }
}

}  // namespace

double schedule_value(double q, int n) {
    check_q(q);
    if (n < 0) throw std::domain_error("schedule index n must be >= 0");
    return 0.5 * std::asin(std::pow(2.0 * q - 1.0, n));
}

Schedule::Schedule(double q, int depth) : q_(q), depth_(depth) {
    check_q(q);
    if (depth < 1) throw std::domain_error("schedule depth must be >= 1");
    values_.reserve(static_cast<std::size_t>(depth) + 1);
    for (int n = 0; n <= depth; ++n) values_.push_back(schedule_value(q, n));
}

double Schedule::value(int n) const {
    if (n < 0 || n > depth_) {
        throw std::domain_error("schedule index out of stored range");
    }
    return values_[static_cast<std::size_t>(n)];
}

RegionIndex locate_region(double theta, double q, int depth) {
    return locate_region(theta, Schedule(q, depth));
}

RegionIndex locate_region(double theta, const Schedule& schedule) {
    check_theta(theta);
    const auto& a = schedule.values();
    const int depth = schedule.depth();
    if (theta <= kQuarterPi - a[static_cast<std::size_t>(depth)]) {
        // scanning from n = 0 resolves shared boundaries to the smaller n
        for (int n = 0; n < depth; ++n) {
            const double lo = (n == 0) ? 0.0 : kQuarterPi - a[static_cast<std::size_t>(n)];
            const double hi = kQuarterPi - a[static_cast<std::size_t>(n) + 1];
            if (theta >= lo && theta <= hi) return {Half::lower, n};
        }
    }
    if (theta >= kQuarterPi + a[static_cast<std::size_t>(depth)]) {
        for (int n = 0; n < depth; ++n) {
            const double lo = kQuarterPi + a[static_cast<std::size_t>(n) + 1];
            const double hi = (n == 0) ? kHalfPi : kQuarterPi + a[static_cast<std::size_t>(n)];
            if (theta >= lo && theta <= hi) return {Half::upper, n};
        }
    }
    throw CentralGapError(
        "theta = " + std::to_string(theta) + " lies in the central gap (pi/4 - A_N, pi/4 + A_N) "
        "uncovered at depth " + std::to_string(depth) +
        "; use improved protocol I (improved1) or the POVM variant (appendixB)");
}

ChannelState channel_for_region(const RegionIndex& region, double q) {
    check_q(q);
    if (region.n < 0) throw std::domain_error("region ordinal must be >= 0");
    const double a_next = schedule_value(q, region.n + 1);
    const double t = (region.half == Half::lower) ? std::tan(kQuarterPi - a_next)
                                                  : std::tan(kQuarterPi + a_next);
    return {t, PureState(2, {Complex{1.0, 0.0}, {}, {}, Complex{t, 0.0}})};
}

ChannelState mirror_channel(const ChannelState& channel) {
    const double t = 1.0 / channel.t;
    return {t, PureState(2, {Complex{1.0, 0.0}, {}, {}, Complex{t, 0.0}})};
}

AncillaParam ancilla_param(double theta, const RegionIndex& region, double q) {
    check_theta(theta);
    const double a_n = schedule_value(q, region.n);
    const double a_next = schedule_value(q, region.n + 1);
    const bool lower = region.half == Half::lower;
    const double lo = lower ? kQuarterPi - a_n : kQuarterPi + a_next;
    const double hi = lower ? kQuarterPi - a_next : kQuarterPi + a_n;
    if (theta < lo || theta > hi) {
        throw std::domain_error("theta is outside the region domain");
    }

    if (theta == 0.0 || theta == kHalfPi) {
        // limiting choice: any pure-imaginary y cancels the off-diagonal here
        return {0.0, Complex{0.0, 1.0}};
    }

    const double cot = 1.0 / std::tan(2.0 * a_next);
    const double ratio = cot / std::tan(2.0 * theta);
    const double a = std::abs(ratio);
    if (!std::isfinite(a)) {
        return {0.0, Complex{0.0, 1.0}};
    }
    double radicand = a * a - 1.0;
    if (radicand < -kNormTol) {
        throw std::logic_error("ancilla radicand is negative inside a valid region");
    }
    if (radicand < 0.0) radicand = 0.0;
    return {a, Complex{a, std::sqrt(radicand)}};
}

}  // namespace rsp
