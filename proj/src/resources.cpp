#include "resources.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "schedule.hpp"

namespace rsp {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;

void check_q(double q) {
    if (!(q > 0.5 && q < 1.0)) {
        throw std::domain_error("q must lie strictly in (1/2, 1), got " + std::to_string(q));
    }
}

void check_m(int m) {
    if (m < 1) throw std::domain_error("accuracy exponent m must be >= 1");
}

}  // namespace

AccuracyModel accuracy_model(int m) {
    check_m(m);
    const double eps = std::pow(10.0, -m);
    const double gap = kQuarterPi - std::asin((1.0 - eps) / std::numbers::sqrt2);
    return {m, gap};
}

double appendix_a_depth(double q, int m) {
    check_q(q);
    check_m(m);
    const double eps = std::pow(10.0, -m);
    return std::log(2.0 * eps - eps * eps) / std::log(2.0 * q - 1.0);
}

double improved1_depth(double q, double f_min) {
    check_q(q);
    if (!(f_min > 0.0 && f_min < 1.0)) {
        throw std::domain_error("improved-I minimum fidelity must lie in (0, 1), got " +
                                std::to_string(f_min));
    }
    return std::log(1.0 - f_min * f_min) / (2.0 * std::log(2.0 * q - 1.0));
}

double appendix_b_depth(double q, double f_min) {
    check_q(q);
    if (!(f_min > 0.5 && f_min < 1.0)) {
        throw std::domain_error(
            "probabilistic-exact minimum fidelity must lie in (1/2, 1), got " +
            std::to_string(f_min));
    }
    return std::log(1.0 / f_min - 1.0) / std::log(2.0 * q - 1.0);
}

int minimal_depth_for_gap(double q, int m) {
    return static_cast<int>(std::ceil(appendix_a_depth(q, m)));
}

double channel_ratio(double q, int f) {
    if (f < 1) throw std::domain_error("channel index must be >= 1");
    return std::tan(kQuarterPi - schedule_value(q, f));
}

CompressionPlan::CompressionPlan(double q, double p_success, int deepest,
                                 std::vector<Section> sections)
    : q_(q), p_(p_success), deepest_(deepest), sections_(std::move(sections)) {}

std::vector<int> CompressionPlan::heads() const {
    std::vector<int> out;
    out.reserve(sections_.size());
    for (const auto& s : sections_) out.push_back(s.head);
    return out;
}

std::vector<int> CompressionPlan::bounds() const {
    std::vector<int> out;
    out.reserve(sections_.size() + 1);
    for (auto it = sections_.rbegin(); it != sections_.rend(); ++it) {
        out.push_back(it->lo);  // l_0 = 1 comes from the shallowest section
    }
    out.push_back(deepest_);
    return out;
}

const Section& CompressionPlan::section_for_channel(int channel) const {
    for (const auto& s : sections_) {
        if (channel >= s.lo && channel <= s.head) return s;
    }
    throw std::domain_error("channel " + std::to_string(channel) +
                            " maps to no section of the plan");
}

CompressionPlan::ThetaIntervals CompressionPlan::section_theta(int k) const {
    const auto& s = sections_.at(static_cast<std::size_t>(k));
    const double a_outer = schedule_value(q_, s.lo - 1);
    const double a_inner = schedule_value(q_, s.head);
    return {kQuarterPi - a_outer, kQuarterPi - a_inner,
            kQuarterPi + a_inner, kQuarterPi + a_outer};
}

CompressionPlan greedy_compress(double q, int n_channels, double p_success) {
    check_q(q);
    if (n_channels < 1) throw std::domain_error("channel count N must be >= 1");
    if (!(p_success > 0.0 && p_success <= 1.0)) {
        throw std::domain_error("POVM success probability must lie in (0, 1], got " +
                                std::to_string(p_success));
    }
    {
        const double b = channel_ratio(q, n_channels);
        if (p_success * (b * b + 1.0) <= 1.0) {
            throw InfeasiblePlanError(
                "P = " + std::to_string(p_success) + " is below 1/(B^2+1) = " +
                    std::to_string(1.0 / (b * b + 1.0)) + " already at head " +
                    std::to_string(n_channels) + "; no compression structure exists",
                n_channels);
        }
    }

    const double log_base = std::log(2.0 * q - 1.0);
    std::vector<Section> sections;
    int head = n_channels;
    while (true) {
        const double b = channel_ratio(q, head);
        const double thresh2 = p_success * b * b + p_success - 1.0;
        int lo = 1;
        if (thresh2 > 0.0) {
            // invert C_f = tan(pi/4 - A_f):  (2q-1)^f = (1 - C^2) / (1 + C^2)
            const double f_real = std::log((1.0 - thresh2) / (1.0 + thresh2)) / log_base;
            lo = static_cast<int>(std::ceil(f_real));
            if (lo < 1) lo = 1;
            if (lo > head) lo = head;  // P = 1 can overshoot by one ulp
        }
        sections.push_back({head, lo});
        if (lo <= 1) break;
        head = lo - 1;
    }
    return CompressionPlan(q, p_success, n_channels, std::move(sections));
}

void verify_plan(const CompressionPlan& plan) {
    const auto& sections = plan.sections();
    if (sections.empty()) throw std::domain_error("plan has no sections");
    if (sections.front().head != plan.deepest()) {
        throw std::domain_error("plan does not start at the deepest channel");
    }
    if (sections.back().lo != 1) {
        throw std::domain_error("plan does not reach channel 1");
    }
    const double p = plan.success_probability();
    for (std::size_t k = 0; k < sections.size(); ++k) {
        const auto& s = sections[k];
        if (s.lo > s.head) throw std::domain_error("plan section is empty");
        if (k + 1 < sections.size() && sections[k + 1].head != s.lo - 1) {
            throw std::domain_error("plan sections do not tile [1, N]");
        }
        const double b = channel_ratio(plan.q(), s.head);
        for (int f = s.lo; f <= s.head; ++f) {
            const double c = channel_ratio(plan.q(), f);
            if (c > b + kNormTol) {
                throw std::domain_error("channel ratio exceeds its section head");
            }
            // reachability: the Eq. 21 element stays within [0, I]
            if (c * c < p * b * b + p - 1.0 - kNormTol) {
                throw std::domain_error("channel " + std::to_string(f) +
                                        " is not reachable from head " +
                                        std::to_string(s.head));
            }
        }
    }
}

std::vector<SweepPoint> sweep_curve(DepthKind kind, double param, double q_lo,
                                    double q_hi, int samples) {
    check_q(q_lo);
    check_q(q_hi);
    if (q_hi < q_lo) throw std::domain_error("q range is reversed");
    if (samples < 2) throw std::domain_error("sweep needs at least 2 samples");

    std::vector<SweepPoint> out;
    out.reserve(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) {
        const double q = q_lo + (q_hi - q_lo) * i / (samples - 1);
        double n = 0.0;
        switch (kind) {
            case DepthKind::appendix_a:
                n = appendix_a_depth(q, static_cast<int>(param));
                break;
            case DepthKind::improved1:
                n = improved1_depth(q, param);
                break;
            case DepthKind::appendix_b:
                n = appendix_b_depth(q, param);
                break;
        }
        out.push_back({q, n});
    }
    return out;
}

}  // namespace rsp
