#include <doctest.h>

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "protocols.hpp"

using namespace rsp;

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;
constexpr double kHalfPi = std::numbers::pi / 2.0;

// Independent oracle for the explicit scheme: evolves the channel (+) ancilla
// system with hand-rolled complex arithmetic and returns <phi|rho_B|phi>.
double explicit_oracle(double theta, double phi, double q, Half half, int n) {
    const double a_next = 0.5 * std::asin(std::pow(2.0 * q - 1.0, n + 1));
    const double t = (half == Half::lower) ? std::tan(kQuarterPi - a_next)
                                           : std::tan(kQuarterPi + a_next);
    Complex y{0.0, 1.0};
    if (theta != 0.0 && theta != kHalfPi) {
        const double ratio = (1.0 / std::tan(2.0 * a_next)) / std::tan(2.0 * theta);
        const double a = std::abs(ratio);
        y = Complex{a, std::sqrt(std::max(a * a - 1.0, 0.0))};
    }

    // two-qubit channel, Alice first: k(|00> + t|11>)
    const double k = 1.0 / std::sqrt(1.0 + t * t);
    const double h = 1.0 / std::numbers::sqrt2;
    const Complex eip = std::polar(1.0, phi);
    // after U on Alice: branch m amplitudes of Bob's qubit
    const std::array<std::array<Complex, 2>, 2> bob_raw = {{
        {Complex{k * h, 0.0}, k * h * t * eip},            // Alice saw 0
        {k * h * std::conj(eip), Complex{-k * h * t, 0}},  // Alice saw 1
    }};

    const double anc_norm = std::sqrt(1.0 + std::norm(y));
    const Complex anc0{1.0 / anc_norm, 0.0};
    const Complex anc1 = y / anc_norm;

    const Complex ket0{std::cos(theta), 0.0};
    const Complex ket1 = std::sin(theta) * eip;

    double fidelity_acc = 0.0;
    for (int m = 0; m < 2; ++m) {
        Complex b0 = bob_raw[m][0];
        Complex b1 = bob_raw[m][1];
        const double p = std::norm(b0) + std::norm(b1);
        const double bn = std::sqrt(p);
        b0 /= bn;
        b1 /= bn;
        if (m == 1) b1 = -b1;  // Bob's sigma_z
        // CNOT with the ancilla, then trace it out
        const Complex psi00 = b0 * anc0, psi01 = b0 * anc1;
        const Complex psi10 = b1 * anc1, psi11 = b1 * anc0;
        const Complex r00 = psi00 * std::conj(psi00) + psi01 * std::conj(psi01);
        const Complex r01 = psi00 * std::conj(psi10) + psi01 * std::conj(psi11);
        const Complex r10 = std::conj(r01);
        const Complex r11 = psi10 * std::conj(psi10) + psi11 * std::conj(psi11);
        const Complex f = std::conj(ket0) * (r00 * ket0 + r01 * ket1) +
                          std::conj(ket1) * (r10 * ket0 + r11 * ket1);
        fidelity_acc += p * f.real();
    }
    return fidelity_acc;
}

// Independent oracle for the GHZ protocol: evolves all 8 amplitudes by hand
// and returns the worst overlap across the four branches.
double ghz_oracle(double theta, double phi) {
    const double h = 1.0 / std::numbers::sqrt2;
    const double c = std::cos(theta), s = std::sin(theta);
    const Complex eip = std::polar(1.0, phi);

    double worst = 1.0;
    for (int k = 0; k < 2; ++k) {
        // after the rotation, branch k holds (unnormalized, qubits 2 and 3):
        //   k=0:  h(c|00> - s|11>),  k=1:  h(s|00> + c|11>)
        Complex a00{(k == 0) ? h * c : h * s, 0.0};
        Complex a11{(k == 0) ? -h * s : h * c, 0.0};
        const double pk = std::norm(a00) + std::norm(a11);
        a00 /= std::sqrt(pk);
        a11 /= std::sqrt(pk);
        // corrections: k=0 diag(1, -e^{i phi}) on Alice; k=1 swaps both sides,
        // sending the |00> amplitude to |11> with the phase and vice versa
        if (k == 0) {
            a11 *= -eip;
        } else {
            const Complex tmp = a00;
            a00 = a11;
            a11 = tmp * eip;
        }
        // Hadamard on Alice's remaining particle
        const Complex b00 = h * a00, b10 = h * a00;
        const Complex b01 = h * a11, b11 = -h * a11;
        const Complex ket0{std::cos(theta), 0.0};
        const Complex ket1 = std::sin(theta) * eip;
        for (int j = 0; j < 2; ++j) {
            Complex bob0 = (j == 0) ? b00 : b10;
            Complex bob1 = (j == 0) ? b01 : b11;
            const double pj = std::norm(bob0) + std::norm(bob1);
            bob0 /= std::sqrt(pj);
            bob1 /= std::sqrt(pj);
            if (j == 1) bob1 = -bob1;
            const double overlap =
                std::abs(std::conj(bob0) * ket0 + std::conj(bob1) * ket1);
            worst = std::min(worst, overlap);
        }
    }
    return worst;
}

double branch_probability_sum(const ProtocolOutcome& out) {
    double total = 0.0;
    for (const auto& b : out.report.branches) total += b.probability;
    return total;
}

// endpoint-exact grid point, immune to one-ulp overshoot past hi
double grid_theta(double lo, double hi, int i, int n) {
    if (i <= 0) return lo;
    if (i >= n) return hi;
    return lo + (hi - lo) * i / n;
}

}  // namespace

TEST_CASE("explicit scheme") {
    SUBCASE("inner region boundary reaches fidelity 1 (chi = 0)") {
        const double q = 0.95;
        const double theta = kQuarterPi - schedule_value(q, 2);  // region (lower, 1) edge
        const ProtocolOutcome out = run_explicit({theta, 0.4}, q, 10);
        CHECK(*out.report.chi == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(out.report.simulated_fidelity == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("outer boundary theta = 0 and theta = pi/2 give exactly q") {
        for (double q : {0.90, 0.95, 0.99}) {
            const ProtocolOutcome low = run_explicit({0.0, 1.0}, q, 8);
            CHECK(low.report.simulated_fidelity == doctest::Approx(q).epsilon(1e-9));
            CHECK(*low.report.chi == doctest::Approx(1.0 / q - 1.0).epsilon(1e-9));
            const ProtocolOutcome high = run_explicit({kHalfPi, 1.0}, q, 8);
            CHECK(high.report.simulated_fidelity == doctest::Approx(q).epsilon(1e-9));
        }
    }
    SUBCASE("theta = 0.3, q = 0.95 matches the closed form and the brute-force oracle") {
        const ProtocolOutcome out = run_explicit({0.3, 1.3}, 0.95, 10);
        const double a2 = schedule_value(0.95, 2);
        const double chi = (std::cos(0.6) - std::sin(2.0 * a2)) /
                           (std::cos(0.6) + std::sin(2.0 * a2));
        CHECK(std::abs(out.report.simulated_fidelity - 1.0 / (1.0 + chi)) <= 1e-9);
        const double oracle = explicit_oracle(0.3, 1.3, 0.95, Half::lower, 1);
        CHECK(out.report.simulated_fidelity == doctest::Approx(oracle).epsilon(1e-12));
    }
    SUBCASE("branch accounting: 1 cbit each, probabilities sum to 1") {
        const ProtocolOutcome out = run_explicit({0.5, 2.0}, 0.95, 10);
        CHECK(out.report.branches.size() == 2);
        for (const auto& b : out.report.branches) {
            CHECK(b.cbits.size() == 1);
            CHECK(b.probability == doctest::Approx(0.5).epsilon(1e-12));
            CHECK_FALSE(b.failed);
        }
        CHECK(std::abs(branch_probability_sum(out) - 1.0) <= 1e-12);
        CHECK(out.report.convention == FidelityConvention::probability);
    }
    SUBCASE("analytic equals simulated across the covered grid") {
        for (double q : {0.90, 0.99}) {
            const int depth = 10;
            const double gap = schedule_value(q, depth);
            for (int i = 0; i <= 60; ++i) {
                const double lower = grid_theta(0.0, kQuarterPi - gap, i, 60);
                const ProtocolOutcome out = run_explicit({lower, 2.7}, q, depth);
                CHECK(std::abs(out.report.simulated_fidelity -
                               *out.report.analytic_fidelity) <= 1e-9);
                CHECK(out.report.simulated_fidelity >= q - 1e-9);
                CHECK(out.report.simulated_fidelity <= 1.0 + 1e-9);
                const double upper = grid_theta(kQuarterPi + gap, kHalfPi, i, 60);
                const ProtocolOutcome up = run_explicit({upper, 2.7}, q, depth);
                CHECK(std::abs(up.report.simulated_fidelity -
                               *up.report.analytic_fidelity) <= 1e-9);
                CHECK(up.report.simulated_fidelity >= q - 1e-9);
            }
        }
    }
    SUBCASE("central gap propagates with a protocol hint") {
        CHECK_THROWS_WITH_AS(run_explicit({kQuarterPi, 0.0}, 0.95, 10),
                             doctest::Contains("improved"), CentralGapError);
    }
}

TEST_CASE("improved protocol I") {
    SUBCASE("theta = pi/4 gives |phi> on both branches") {
        const ProtocolOutcome out = run_improved1_central({kQuarterPi, 2.3}, 0.95, 19);
        CHECK(out.report.simulated_fidelity == doctest::Approx(1.0).epsilon(1e-9));
        for (const auto& b : out.report.branches) {
            CHECK(*b.fidelity == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
    SUBCASE("branch probabilities are exactly one half") {
        for (double theta : {kQuarterPi - 0.01, kQuarterPi, kQuarterPi + 0.008}) {
            for (double phi : {0.0, 1.234, 5.67}) {
                const ProtocolOutcome out =
                    run_improved1_central({theta, phi}, 0.95, 19);
                REQUIRE(out.report.branches.size() == 2);
                CHECK(out.report.branches[0].probability == 0.5);
                CHECK(out.report.branches[1].probability == 0.5);
            }
        }
    }
    SUBCASE("substitute branch has overlap sin(2 theta) with the bound of Eq. 18") {
        const double q = 0.95;
        const int depth = 19;  // ceil of the table's 18.59
        const double theta = kQuarterPi - schedule_value(q, depth);
        const ProtocolOutcome out = run_improved1_central({theta, 0.9}, q, depth);
        CHECK(out.report.simulated_fidelity ==
              doctest::Approx(std::sin(2.0 * theta)).epsilon(1e-12));
        const double bound = std::sqrt(1.0 - std::pow(2.0 * q - 1.0, 2 * depth));
        CHECK(out.report.simulated_fidelity >= bound - 1e-12);
        CHECK(out.report.convention == FidelityConvention::overlap);
    }
    SUBCASE("rejects theta outside the central region") {
        CHECK_THROWS_AS(run_improved1_central({0.1, 0.0}, 0.95, 19), std::domain_error);
    }
}

TEST_CASE("appendix-B protocol") {
    SUBCASE("theta = pi/4 succeeds with probability 1") {
        const ProtocolOutcome out = run_appendix_b_central({kQuarterPi, 1.0}, 0.95, 19);
        REQUIRE(out.success_probability.has_value());
        CHECK(*out.success_probability == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("POVM branch carries probability tan^2(theta)/2") {
        const double theta = kQuarterPi - 0.009;
        const ProtocolOutcome out = run_appendix_b_central({theta, 2.0}, 0.95, 19);
        const double tan2 = std::tan(theta) * std::tan(theta);
        REQUIRE(out.report.branches.size() == 3);
        CHECK(out.report.branches[1].probability ==
              doctest::Approx(0.5 * tan2).epsilon(1e-12));
        CHECK(out.report.branches[2].failed);
        CHECK(out.report.branches[2].probability ==
              doctest::Approx(0.5 * (1.0 - tan2)).epsilon(1e-12));
        CHECK(std::abs(branch_probability_sum(out) - 1.0) <= 1e-12);
    }
    SUBCASE("success branches deliver |phi> exactly") {
        for (double theta : {kQuarterPi - 0.0099, kQuarterPi + 0.005}) {
            const TargetQubit target{theta, 4.2};
            const ProtocolOutcome out = run_appendix_b_central(target, 0.95, 19);
            for (const auto& b : out.report.branches) {
                if (b.failed) continue;
                CHECK(*b.fidelity >= 1.0 - 1e-12);
            }
            // success probability follows the secant/cosecant law
            const double tan2 = std::tan(theta) * std::tan(theta);
            const double expect =
                (theta <= kQuarterPi) ? 0.5 * (1.0 + tan2) : 0.5 * (1.0 + 1.0 / tan2);
            CHECK(std::abs(*out.success_probability - expect) <= 1e-12);
        }
    }
    SUBCASE("gap-edge success probability matches 1/((2q-1)^N + 1)") {
        const double q = 0.95;
        const int depth = 19;
        const double theta = kQuarterPi - schedule_value(q, depth);
        const ProtocolOutcome out = run_appendix_b_central({theta, 0.0}, q, depth);
        const double expect = 1.0 / (std::pow(2.0 * q - 1.0, depth) + 1.0);
        CHECK(std::abs(*out.success_probability - expect) <= 1e-12);
    }
}

TEST_CASE("improved protocol II") {
    SUBCASE("P = 1 plan reproduces the explicit scheme") {
        const CompressionPlan plan = greedy_compress(0.95, 10, 1.0);
        for (double theta : {0.05, 0.3, 1.2, 1.5}) {
            const TargetQubit target{theta, 1.7};
            const ProtocolOutcome via_plan = run_improved2(target, plan);
            const ProtocolOutcome direct = run_explicit(target, 0.95, 10);
            CHECK(*via_plan.success_probability == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(via_plan.report.simulated_fidelity ==
                  doctest::Approx(direct.report.simulated_fidelity).epsilon(1e-12));
            CHECK(*via_plan.report.chi == doctest::Approx(*direct.report.chi).epsilon(1e-9));
        }
    }
    SUBCASE("paper plan: POVM success 0.99 on every section") {
        const CompressionPlan plan = greedy_compress(0.99, 194, 0.99);
        for (int k = 0; k < plan.section_count(); k += 7) {
            const auto intervals = plan.section_theta(k);
            const double theta =
                0.5 * (intervals.lower_lo + intervals.lower_hi);
            const ProtocolOutcome out = run_improved2({theta, 0.8}, plan);
            CHECK(std::abs(*out.success_probability - 0.99) <= 1e-9);
        }
    }
    SUBCASE("worst-case success times fidelity stays above q * P") {
        const double q = 0.99, p = 0.99;
        const CompressionPlan plan = greedy_compress(q, 194, p);
        const double gap = schedule_value(q, 194);
        for (int i = 0; i <= 40; ++i) {
            const double theta = grid_theta(0.0, kQuarterPi - gap, i, 40);
            const ProtocolOutcome out = run_improved2({theta, 2.9}, plan);
            // exhaustive branch enumeration: success mass and its worst fidelity
            double success_mass = 0.0;
            double worst = 1.0;
            for (const auto& b : out.report.branches) {
                if (b.failed) continue;
                success_mass += b.probability;
                worst = std::min(worst, *b.fidelity);
            }
            CHECK(success_mass * worst >= q * p - 1e-9);
            CHECK(std::abs(branch_probability_sum(out) - 1.0) <= 1e-12);
        }
    }
    SUBCASE("upper-half thetas route through the mirrored POVM") {
        const CompressionPlan plan = greedy_compress(0.99, 194, 0.99);
        const ProtocolOutcome out = run_improved2({1.45, 0.3}, plan);
        CHECK(std::abs(*out.success_probability - 0.99) <= 1e-9);
        CHECK(out.report.simulated_fidelity >= 0.99 - 1e-9);
        CHECK(std::abs(out.report.simulated_fidelity - *out.report.analytic_fidelity) <=
              1e-9);
    }
    SUBCASE("failure branch bookkeeping") {
        const CompressionPlan plan = greedy_compress(0.99, 50, 0.95);
        const ProtocolOutcome out = run_improved2({0.2, 1.0}, plan);
        REQUIRE(out.report.branches.size() == 3);
        const auto& failure = out.report.branches.back();
        CHECK(failure.failed);
        CHECK(failure.probability == doctest::Approx(0.05).epsilon(1e-9));
        CHECK_FALSE(failure.fidelity.has_value());
        CHECK(failure.cbits.size() == 1);
    }
    SUBCASE("central-gap thetas are rejected") {
        const CompressionPlan plan = greedy_compress(0.99, 194, 0.99);
        CHECK_THROWS_AS(run_improved2({kQuarterPi, 0.0}, plan), CentralGapError);
    }
}

TEST_CASE("GHZ protocol") {
    SUBCASE("theta = 0 leaves Bob in |0> on all branches") {
        const ProtocolOutcome out = run_ghz({0.0, 0.0});
        REQUIRE(out.report.branches.size() == 4);
        for (const auto& b : out.report.branches) {
            CHECK(*b.fidelity >= 1.0 - 1e-12);
            REQUIRE(b.bob_state.has_value());
            CHECK(std::abs(b.bob_state->entry(0, 0) - Complex{1, 0}) < 1e-12);
        }
    }
    SUBCASE("first correction round restores cos|00> + sin e^{i phi}|11>") {
        const double theta = 1.1, phi = 2.3;
        const double h = 1.0 / std::numbers::sqrt2;
        const PureState ghz(3, {Complex{h, 0}, {}, {}, {}, {}, {}, {}, Complex{h, 0}});
        const double c = std::cos(theta), s = std::sin(theta);
        const Gate rotation(1, {Complex{c, 0}, Complex{-s, 0}, Complex{s, 0}, Complex{c, 0}});
        const Complex eip = std::polar(1.0, phi);
        const Gate ua0(1, {Complex{1, 0}, {}, {}, -eip});
        const Gate ua1(1, {{}, Complex{1, 0}, eip, {}});
        const PureState expect(2, {Complex{c, 0}, {}, {}, s * eip});

        const PureState rotated = apply_gate(ghz, rotation, {0});
        for (const auto& m : measure_enumerate(rotated, 0)) {
            REQUIRE(m.state.has_value());
            PureState shared = drop_measured_qubit(*m.state, 0, m.outcome);
            if (m.outcome == 0) {
                shared = apply_gate(shared, ua0, {0});
            } else {
                shared = apply_gate(shared, ua1, {0});
                shared = apply_gate(shared, Gate::sigma_x(), {1});
            }
            CHECK(std::abs(shared.inner_product(expect)) >= 1.0 - 1e-12);
        }
    }
    SUBCASE("random target matches the hand-rolled eight-amplitude oracle") {
        const ProtocolOutcome out = run_ghz({1.1, 2.3});
        for (const auto& b : out.report.branches) {
            CHECK(*b.fidelity >= 1.0 - 1e-12);
            CHECK(b.probability == 0.25);
            CHECK(b.cbits.size() == 2);
        }
        CHECK(ghz_oracle(1.1, 2.3) >= 1.0 - 1e-12);
        CHECK(out.report.simulated_fidelity ==
              doctest::Approx(ghz_oracle(1.1, 2.3)).epsilon(1e-12));
    }
    SUBCASE("a hundred random targets all reach overlap 1") {
        unsigned long long state = 0x243F6A8885A308D3ull;  // simple LCG stream
        auto next = [&state]() {
            state = state * 6364136223846793005ull + 1442695040888963407ull;
            return static_cast<double>(state >> 11) * 0x1.0p-53;
        };
        for (int i = 0; i < 100; ++i) {
            const double theta = next() * kHalfPi;
            const double phi = next() * 2.0 * std::numbers::pi * 0.999999;
            const ProtocolOutcome out = run_ghz({theta, phi});
            CHECK(out.report.simulated_fidelity >= 1.0 - 1e-12);
        }
    }
}

TEST_CASE("Monte Carlo mode") {
    SUBCASE("identical seeds give identical reports") {
        const McReport a = run_monte_carlo(ProtocolId::improved1, {0.79, 1.2}, 0.95,
                                           19, 0.0, 20000, 12345);
        const McReport b = run_monte_carlo(ProtocolId::improved1, {0.79, 1.2}, 0.95,
                                           19, 0.0, 20000, 12345);
        REQUIRE(a.branches.size() == b.branches.size());
        for (std::size_t i = 0; i < a.branches.size(); ++i) {
            CHECK(a.branches[i].count == b.branches[i].count);
        }
        CHECK(a.mean_fidelity == b.mean_fidelity);
        const McReport c = run_monte_carlo(ProtocolId::improved1, {0.79, 1.2}, 0.95,
                                           19, 0.0, 20000, 54321);
        bool any_differs = false;
        for (std::size_t i = 0; i < a.branches.size(); ++i) {
            any_differs = any_differs || (a.branches[i].count != c.branches[i].count);
        }
        CHECK(any_differs);
    }
    SUBCASE("improved-I branch frequency converges to one half") {
        const McReport r = run_monte_carlo(ProtocolId::improved1, {0.78, 0.5}, 0.95,
                                           19, 0.0, 100000, 777);
        CHECK(std::abs(r.branches[0].frequency - 0.5) < 0.01);
    }
    SUBCASE("explicit empirical mean tracks the exact fidelity") {
        const ProtocolOutcome exact = run_explicit({0.3, 1.3}, 0.95, 10);
        const McReport r = run_monte_carlo(ProtocolId::explicit_scheme, {0.3, 1.3},
                                           0.95, 10, 0.0, 100000, 2024);
        CHECK(std::abs(r.mean_fidelity - exact.report.simulated_fidelity) < 0.01);
    }
    SUBCASE("improved-II sampling covers the failure branch") {
        const McReport r = run_monte_carlo(ProtocolId::improved2, {0.3, 1.0}, 0.99,
                                           194, 0.99, 50000, 99);
        CHECK(r.success_rate == doctest::Approx(0.99).epsilon(0.01));
        bool saw_failure = false;
        for (const auto& b : r.branches) saw_failure = saw_failure || b.failed;
        CHECK(saw_failure);
    }
    SUBCASE("trial count must be positive") {
        CHECK_THROWS_AS(
            run_monte_carlo(ProtocolId::ghz, {0.3, 1.0}, 0.95, 10, 0.0, 0, 1),
            std::domain_error);
    }
}
