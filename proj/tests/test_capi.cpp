#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include "rsp/rsp.h"

TEST_CASE("version and status names") {
    CHECK(std::string(rsp_version()) == "1.0.0");
    CHECK(std::string(rsp_status_name(RSP_OK)) == "ok");
    CHECK(std::string(rsp_status_name(RSP_ERR_CENTRAL_GAP)) == "central gap");
}

TEST_CASE("schedule and depth functions") {
    double v = 0.0;
    REQUIRE(rsp_schedule_value(0.95, 0, &v) == RSP_OK);
    CHECK(v == doctest::Approx(0.7853981633974483).epsilon(1e-15));

    CHECK(rsp_schedule_value(0.5, 1, &v) == RSP_ERR_DOMAIN);
    CHECK(std::string(rsp_last_error()).find("q") != std::string::npos);
    CHECK(rsp_schedule_value(0.9, 1, nullptr) == RSP_ERR_INVALID_ARGUMENT);

    REQUIRE(rsp_accuracy_gap(2, &v) == RSP_OK);
    CHECK(v == doctest::Approx(9.95066e-3).epsilon(1e-5));

    REQUIRE(rsp_depth_appendix_a(0.99, 2, &v) == RSP_OK);
    CHECK(std::abs(v - 193.89) <= 0.01);
    REQUIRE(rsp_depth_improved1(0.95, 0.99, &v) == RSP_OK);
    CHECK(std::abs(v + 1.0 - 19.59) <= 0.01);
    REQUIRE(rsp_depth_appendix_b(0.98, 0.97, &v) == RSP_OK);
    CHECK(std::abs(v + 1.0 - 86.15) <= 0.01);
    CHECK(rsp_depth_appendix_b(0.98, 0.4, &v) == RSP_ERR_DOMAIN);
}

TEST_CASE("protocol runs through the C surface") {
    SUBCASE("ghz run and branch getters") {
        rsp_outcome* out = nullptr;
        REQUIRE(rsp_run(RSP_PROTOCOL_GHZ, 1.1, 2.3, 0.0, 0, &out) == RSP_OK);
        REQUIRE(out != nullptr);
        CHECK(rsp_outcome_simulated_fidelity(out) >= 1.0 - 1e-12);
        CHECK(rsp_outcome_convention(out) == RSP_FIDELITY_OVERLAP);
        CHECK(rsp_outcome_has_chi(out) == 0);
        CHECK(rsp_outcome_has_success_probability(out) == 0);
        REQUIRE(rsp_outcome_branch_count(out) == 4);
        double total = 0.0;
        for (int i = 0; i < 4; ++i) {
            rsp_branch_info info;
            REQUIRE(rsp_outcome_branch(out, i, &info) == RSP_OK);
            CHECK(info.cbit_count == 2);
            CHECK(info.failed == 0);
            CHECK(info.fidelity >= 1.0 - 1e-12);
            total += info.probability;
        }
        CHECK(std::abs(total - 1.0) <= 1e-12);
        rsp_branch_info info;
        CHECK(rsp_outcome_branch(out, 4, &info) == RSP_ERR_INVALID_ARGUMENT);
        rsp_outcome_free(out);
    }
    SUBCASE("explicit run exposes chi and the analytic value") {
        rsp_outcome* out = nullptr;
        REQUIRE(rsp_run(RSP_PROTOCOL_EXPLICIT, 0.3, 1.3, 0.95, 10, &out) == RSP_OK);
        CHECK(rsp_outcome_has_analytic_fidelity(out) == 1);
        CHECK(rsp_outcome_has_chi(out) == 1);
        CHECK(std::abs(rsp_outcome_simulated_fidelity(out) -
                       rsp_outcome_analytic_fidelity(out)) <= 1e-9);
        CHECK(rsp_outcome_convention(out) == RSP_FIDELITY_PROBABILITY);
        rsp_outcome_free(out);
    }
    SUBCASE("central gap surfaces as its own status with a hint") {
        rsp_outcome* out = nullptr;
        CHECK(rsp_run(RSP_PROTOCOL_EXPLICIT, 0.7853981633974483, 0.0, 0.95, 10, &out) ==
              RSP_ERR_CENTRAL_GAP);
        CHECK(out == nullptr);
        const std::string message = rsp_last_error();
        CHECK(message.find("improved") != std::string::npos);
        CHECK(message.find("appendixB") != std::string::npos);
    }
    SUBCASE("domain and argument errors") {
        rsp_outcome* out = nullptr;
        CHECK(rsp_run(RSP_PROTOCOL_EXPLICIT, 3.5, 0.0, 0.95, 10, &out) == RSP_ERR_DOMAIN);
        CHECK(rsp_run(static_cast<rsp_protocol>(42), 0.3, 0.0, 0.95, 10, &out) ==
              RSP_ERR_DOMAIN);
        CHECK(rsp_run(RSP_PROTOCOL_IMPROVED2, 0.3, 0.0, 0.95, 10, &out) ==
              RSP_ERR_INVALID_ARGUMENT);
        CHECK(rsp_run(RSP_PROTOCOL_GHZ, 0.3, 0.0, 0.95, 10, nullptr) ==
              RSP_ERR_INVALID_ARGUMENT);
    }
}

TEST_CASE("compression plans through the C surface") {
    rsp_plan* plan = nullptr;
    REQUIRE(rsp_plan_create(0.99, 194, 0.99, &plan) == RSP_OK);
    CHECK(rsp_plan_section_count(plan) == 50);
    CHECK(rsp_plan_deepest(plan) == 194);
    CHECK(rsp_plan_success_probability(plan) == 0.99);

    int head = 0, lo = 0, hi = 0;
    REQUIRE(rsp_plan_section(plan, 0, &head, &lo, &hi) == RSP_OK);
    CHECK(head == 194);
    CHECK(lo == 174);
    CHECK(hi == 194);
    REQUIRE(rsp_plan_section(plan, 1, &head, &lo, &hi) == RSP_OK);
    CHECK(head == 173);
    CHECK(rsp_plan_section(plan, 50, &head, &lo, &hi) == RSP_ERR_INVALID_ARGUMENT);

    double llo = 0, lhi = 0, ulo = 0, uhi = 0;
    REQUIRE(rsp_plan_section_theta(plan, 0, &llo, &lhi, &ulo, &uhi) == RSP_OK);
    CHECK(llo < lhi);
    CHECK(lhi < ulo);
    CHECK(ulo < uhi);

    SUBCASE("plan-driven run") {
        rsp_outcome* out = nullptr;
        REQUIRE(rsp_run_with_plan(0.3, 1.0, plan, &out) == RSP_OK);
        CHECK(rsp_outcome_has_success_probability(out) == 1);
        CHECK(std::abs(rsp_outcome_success_probability(out) - 0.99) <= 1e-9);
        CHECK(rsp_outcome_simulated_fidelity(out) >= 0.99 - 1e-9);
        rsp_outcome_free(out);
    }

    rsp_plan_free(plan);

    SUBCASE("infeasible plans carry their own status") {
        rsp_plan* bad = nullptr;
        CHECK(rsp_plan_create(0.99, 194, 0.45, &bad) == RSP_ERR_INFEASIBLE_PLAN);
        CHECK(bad == nullptr);
        CHECK(std::string(rsp_last_error()).find("194") != std::string::npos);
    }
}

TEST_CASE("Monte Carlo through the C surface") {
    rsp_mc_report* a = nullptr;
    rsp_mc_report* b = nullptr;
    REQUIRE(rsp_monte_carlo(RSP_PROTOCOL_IMPROVED1, 0.785, 1.0, 0.95, 19, 0.0,
                            50000, 42, &a) == RSP_OK);
    REQUIRE(rsp_monte_carlo(RSP_PROTOCOL_IMPROVED1, 0.785, 1.0, 0.95, 19, 0.0,
                            50000, 42, &b) == RSP_OK);
    CHECK(rsp_mc_report_trials(a) == 50000);
    REQUIRE(rsp_mc_report_branch_count(a) == rsp_mc_report_branch_count(b));
    for (int i = 0; i < rsp_mc_report_branch_count(a); ++i) {
        rsp_mc_branch_info ia, ib;
        REQUIRE(rsp_mc_report_branch(a, i, &ia) == RSP_OK);
        REQUIRE(rsp_mc_report_branch(b, i, &ib) == RSP_OK);
        CHECK(ia.count == ib.count);
        CHECK(std::abs(ia.frequency - 0.5) < 0.01);
    }
    CHECK(rsp_mc_report_mean_fidelity(a) == rsp_mc_report_mean_fidelity(b));
    rsp_mc_report_free(a);
    rsp_mc_report_free(b);

    rsp_mc_report* bad = nullptr;
    CHECK(rsp_monte_carlo(RSP_PROTOCOL_GHZ, 0.3, 0.0, 0.95, 1, 0.0, 0, 1, &bad) ==
          RSP_ERR_DOMAIN);
}
