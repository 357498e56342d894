#include "protocols.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace rsp {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;

// Eq.-style unitary Alice applies to her channel qubit in the explicit scheme.
Gate explicit_alice_gate(double phi) {
    const double h = 1.0 / std::numbers::sqrt2;
    const Complex e = std::polar(1.0, phi);
    return Gate(1, {Complex{h, 0.0}, h * e, h * std::conj(e), Complex{-h, 0.0}});
}

// Alice's theta-dependent rotation for the central-region protocols.
Gate improved1_alice_gate(double theta, double phi) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const Complex e = std::polar(1.0, phi);
    return Gate(1, {Complex{c, 0.0}, s * e, s * std::conj(e), Complex{-c, 0.0}});
}

double chi_value(double theta, Half half, double a_next) {
    const double c2t = std::cos(2.0 * theta);
    const double s2a = std::sin(2.0 * a_next);
    return (half == Half::lower) ? (c2t - s2a) / (c2t + s2a)
                                 : (c2t + s2a) / (c2t - s2a);
}

struct AveragedDensity {
    explicit AveragedDensity(std::size_t dim) : dim_(dim), acc_(dim * dim) {}

    void add(double weight, const DensityMatrix& rho) {
        for (std::size_t i = 0; i < acc_.size(); ++i) {
            acc_[i] += weight * rho.entries()[i];
        }
        total_ += weight;
    }

    DensityMatrix finalize() const {
        std::vector<Complex> entries(acc_);
        for (auto& e : entries) e /= total_;
        return DensityMatrix(dim_, std::move(entries));
    }

    std::size_t dim_;
    std::vector<Complex> acc_;
    double total_ = 0.0;
};

double central_gap_half_width(double q, int depth) {
    if (depth < 1) throw std::domain_error("depth must be >= 1");
    return schedule_value(q, depth);
}

void check_central_region(double theta, double gap_half_width) {
    if (theta < kQuarterPi - gap_half_width || theta > kQuarterPi + gap_half_width) {
        throw std::domain_error(
            "theta = " + std::to_string(theta) +
            " lies outside the central region [pi/4 - A_N, pi/4 + A_N]");
    }
}

// Shared explicit-scheme tail: Alice's unitary and measurement on the given
// channel state, Bob's conditional sigma_z, CNOT with the ancilla, trace.
ProtocolOutcome explicit_core(const TargetQubit& target, double q,
                              const RegionIndex& region, const PureState& channel,
                              double branch_weight, std::vector<BranchRecord> branches,
                              std::optional<double> success_probability) {
    const PureState target_state = make_target_state(target);
    const AncillaParam anc = ancilla_param(target.theta, region, q);
    const PureState anc_state(1, {Complex{1.0, 0.0}, anc.y});

    PureState psi = apply_gate(channel, explicit_alice_gate(target.phi), {0});
    AveragedDensity averaged(2);
    double worst = 1.0;
    for (const auto& m : measure_enumerate(psi, 0)) {
        if (!m.state) continue;
        PureState bob = drop_measured_qubit(*m.state, 0, m.outcome);
        if (m.outcome == 1) bob = apply_gate(bob, Gate::sigma_z(), {0});
        PureState with_anc = apply_gate(bob.tensor(anc_state), Gate::cnot(), {0, 1});
        DensityMatrix rho = partial_trace(with_anc, {0});
        const double f = fidelity(target_state, rho).value;
        worst = std::min(worst, f);
        averaged.add(m.probability, rho);
        branches.push_back({{m.outcome}, branch_weight * m.probability, false, f, rho});
    }

    DensityMatrix rho_b = averaged.finalize();
    const double simulated = fidelity(target_state, rho_b).value;
    const double a_next = schedule_value(q, region.n + 1);
    const double chi = chi_value(target.theta, region.half, a_next);

    FidelityReport report{
        worst,
        1.0 / (1.0 + chi),
        chi,
        FidelityConvention::probability,
        simulated,
        std::move(branches),
    };
    return {std::move(report), std::move(rho_b), success_probability};
}

// Improved-I front end shared with appendix B: returns the two 50% branches
// (outcome, probability, Bob's qubit after his conditional sigma_z).
struct CentralBranch {
    int outcome;
    double probability;
    PureState bob;
};

std::vector<CentralBranch> central_branches(const TargetQubit& target) {
    const double h = 1.0 / std::numbers::sqrt2;
    const PureState bell(2, {Complex{h, 0.0}, {}, {}, Complex{h, 0.0}});
    PureState psi =
        apply_gate(bell, improved1_alice_gate(target.theta, target.phi), {0});

    std::vector<CentralBranch> out;
    for (const auto& m : measure_enumerate(psi, 0)) {
        if (!m.state) continue;
        PureState bob = drop_measured_qubit(*m.state, 0, m.outcome);
        if (m.outcome == 1) bob = apply_gate(bob, Gate::sigma_z(), {0});
        out.push_back({m.outcome, m.probability, std::move(bob)});
    }
    return out;
}

double weighted_average(const std::vector<BranchRecord>& branches) {
    double value = 0.0;
    double weight = 0.0;
    for (const auto& b : branches) {
        if (b.failed || !b.fidelity) continue;
        value += b.probability * *b.fidelity;
        weight += b.probability;
    }
    return (weight > 0.0) ? value / weight : 0.0;
}

}  // namespace

ProtocolOutcome run_explicit(const TargetQubit& target, double q, int depth) {
    make_target_state(target);  // validates theta/phi
    const Schedule sched(q, depth);
    const RegionIndex region = locate_region(target.theta, sched);
    const ChannelState channel = channel_for_region(region, q);
    return explicit_core(target, q, region, channel.as_state, 1.0, {}, std::nullopt);
}

ProtocolOutcome run_improved1_central(const TargetQubit& target, double q, int depth) {
    const PureState target_state = make_target_state(target);
    check_central_region(target.theta, central_gap_half_width(q, depth));

    std::vector<BranchRecord> branches;
    AveragedDensity averaged(2);
    double worst = 1.0;
    for (const auto& b : central_branches(target)) {
        const double f = fidelity(target_state, b.bob).value;
        worst = std::min(worst, f);
        DensityMatrix rho = DensityMatrix::from_pure(b.bob);
        averaged.add(b.probability, rho);
        branches.push_back({{b.outcome}, b.probability, false, f, std::move(rho)});
    }

    FidelityReport report{
        worst,
        std::sin(2.0 * target.theta),
        std::nullopt,
        FidelityConvention::overlap,
        weighted_average(branches),
        std::move(branches),
    };
    return {std::move(report), averaged.finalize(), std::nullopt};
}

ProtocolOutcome run_appendix_b_central(const TargetQubit& target, double q, int depth) {
    const PureState target_state = make_target_state(target);
    check_central_region(target.theta, central_gap_half_width(q, depth));

    std::vector<BranchRecord> branches;
    double success = 0.0;
    double worst = 1.0;
    for (const auto& b : central_branches(target)) {
        if (b.outcome == 0) {
            const double f = fidelity(target_state, b.bob).value;
            worst = std::min(worst, f);
            success += b.probability;
            branches.push_back(
                {{0}, b.probability, false, f, DensityMatrix::from_pure(b.bob)});
            continue;
        }
        // theta = pi/4 routes through the tangent form; both coincide there
        const double tan2 = std::tan(target.theta) * std::tan(target.theta);
        const PovmElement m0 = (target.theta <= kQuarterPi)
                                   ? PovmElement::diagonal(1.0, tan2)
                                   : PovmElement::diagonal(1.0 / tan2, 1.0);
        auto [p0, converted] = apply_povm_element(b.bob, m0, 0);
        const double f = fidelity(target_state, converted).value;
        worst = std::min(worst, f);
        success += b.probability * p0;
        branches.push_back({{1}, b.probability * p0, false, f,
                            DensityMatrix::from_pure(converted)});
        // the paper leaves Bob's state after M_1 unspecified; report failure
        branches.push_back(
            {{1}, b.probability * (1.0 - p0), true, std::nullopt, std::nullopt});
    }

    FidelityReport report{
        worst,
        1.0,
        std::nullopt,
        FidelityConvention::overlap,
        weighted_average(branches),
        std::move(branches),
    };
    return {std::move(report), std::nullopt, success};
}

ProtocolOutcome run_improved2(const TargetQubit& target, const CompressionPlan& plan) {
    make_target_state(target);
    const double q = plan.q();
    const RegionIndex region = locate_region(target.theta, q, plan.deepest());
    const int channel_index = region.n + 1;
    const Section& section = plan.section_for_channel(channel_index);

    const double b = channel_ratio(q, section.head);
    const double c = channel_ratio(q, channel_index);
    const double p = plan.success_probability();
    const double s = std::sqrt(p * (b * b + 1.0) / (c * c + 1.0));

    // shared head channel; the upper half uses the Schmidt-swapped twin and
    // the sigma_x-conjugated POVM element
    const bool lower = region.half == Half::lower;
    const double head_t = lower ? b : 1.0 / b;
    const PureState head_channel(2, {Complex{1.0, 0.0}, {}, {}, Complex{head_t, 0.0}});
    const PovmElement m0 = lower ? PovmElement::diagonal(s, s * c / b)
                                 : PovmElement::diagonal(s * c / b, s);

    auto [p_convert, converted] = apply_povm_element(head_channel, m0, 0);

    ProtocolOutcome outcome =
        explicit_core(target, q, region, converted, p_convert, {}, p_convert);
    // Alice's M_{k1} outcome aborts the run; the notice costs the same 1 cbit
    outcome.report.branches.push_back(
        {{1}, 1.0 - p_convert, true, std::nullopt, std::nullopt});
    outcome.report.average_fidelity = weighted_average(outcome.report.branches);
    return outcome;
}

ProtocolOutcome run_ghz(const TargetQubit& target) {
    const PureState target_state = make_target_state(target);
    const double h = 1.0 / std::numbers::sqrt2;
    const PureState ghz(3, {Complex{h, 0.0}, {}, {}, {}, {}, {}, {}, Complex{h, 0.0}});

    const double ct = std::cos(target.theta);
    const double st = std::sin(target.theta);
    const Gate rotation(1, {Complex{ct, 0.0}, Complex{-st, 0.0},
                            Complex{st, 0.0}, Complex{ct, 0.0}});
    const Complex phase = std::polar(1.0, target.phi);
    const Gate correction_a0(1, {Complex{1.0, 0.0}, {}, {}, -phase});
    const Gate correction_a1(1, {{}, Complex{1.0, 0.0}, phase, {}});

    PureState psi = apply_gate(ghz, rotation, {0});
    const PureState expected_shared(
        2, {Complex{ct, 0.0}, {}, {}, st * phase});

    std::vector<BranchRecord> branches;
    AveragedDensity averaged(2);
    double worst = 1.0;
    for (const auto& first : measure_enumerate(psi, 0)) {
        if (!first.state) continue;
        PureState shared = drop_measured_qubit(*first.state, 0, first.outcome);
        if (first.outcome == 0) {
            shared = apply_gate(shared, correction_a0, {0});
        } else {
            shared = apply_gate(shared, correction_a1, {0});
            shared = apply_gate(shared, Gate::sigma_x(), {1});
        }
        // both correction rounds must restore cos|00> + sin e^{i phi}|11>
        if (std::abs(shared.inner_product(expected_shared)) < 1.0 - kNormTol) {
            throw std::logic_error("GHZ correction round left the wrong shared state");
        }
        shared = apply_gate(shared, Gate::hadamard(), {0});
        for (const auto& second : measure_enumerate(shared, 0)) {
            if (!second.state) continue;
            PureState bob = drop_measured_qubit(*second.state, 0, second.outcome);
            if (second.outcome == 1) bob = apply_gate(bob, Gate::sigma_z(), {0});
            const double f = fidelity(target_state, bob).value;
            worst = std::min(worst, f);
            const double joint = first.probability * second.probability;
            DensityMatrix rho = DensityMatrix::from_pure(bob);
            averaged.add(joint, rho);
            branches.push_back(
                {{first.outcome, second.outcome}, joint, false, f, std::move(rho)});
        }
    }

    FidelityReport report{
        worst,
        1.0,
        std::nullopt,
        FidelityConvention::overlap,
        weighted_average(branches),
        std::move(branches),
    };
    return {std::move(report), averaged.finalize(), std::nullopt};
}

McReport run_monte_carlo(ProtocolId protocol, const TargetQubit& target, double q,
                         int depth, double povm_success, long long trials,
                         unsigned long long seed) {
    if (trials < 1) throw std::domain_error("Monte Carlo needs at least 1 trial");

    ProtocolOutcome exact;
    switch (protocol) {
        case ProtocolId::explicit_scheme:
            exact = run_explicit(target, q, depth);
            break;
        case ProtocolId::improved1:
            exact = run_improved1_central(target, q, depth);
            break;
        case ProtocolId::appendix_b:
            exact = run_appendix_b_central(target, q, depth);
            break;
        case ProtocolId::improved2:
            exact = run_improved2(target, greedy_compress(q, depth, povm_success));
            break;
        case ProtocolId::ghz:
            exact = run_ghz(target);
            break;
        default:
            throw std::domain_error("unknown protocol id");
    }

    const auto& branches = exact.report.branches;
    std::vector<double> cumulative;
    cumulative.reserve(branches.size());
    double acc = 0.0;
    for (const auto& b : branches) {
        acc += b.probability;
        cumulative.push_back(acc);
    }

    std::vector<long long> counts(branches.size(), 0);
    std::mt19937_64 rng(seed);
    for (long long t = 0; t < trials; ++t) {
        // top 53 bits give a uniform double in [0, 1) identically on every platform
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        std::size_t pick = branches.size() - 1;
        for (std::size_t i = 0; i < cumulative.size(); ++i) {
            if (u < cumulative[i]) {
                pick = i;
                break;
            }
        }
        ++counts[pick];
    }

    McReport report{trials, seed, {}, 0.0, 0.0};
    double fidelity_sum = 0.0;
    long long ok_trials = 0;
    for (std::size_t i = 0; i < branches.size(); ++i) {
        const auto& b = branches[i];
        const double freq = static_cast<double>(counts[i]) / static_cast<double>(trials);
        report.branches.push_back({b.cbits, counts[i], freq, b.failed, b.fidelity});
        if (!b.failed && b.fidelity) {
            fidelity_sum += static_cast<double>(counts[i]) * *b.fidelity;
            ok_trials += counts[i];
        }
    }
    report.mean_fidelity = (ok_trials > 0) ? fidelity_sum / static_cast<double>(ok_trials) : 0.0;
    report.success_rate = static_cast<double>(ok_trials) / static_cast<double>(trials);
    return report;
}

}  // namespace rsp
