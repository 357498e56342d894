// C bindings over the rsp core. Every entry point catches and translates
// exceptions; handle getters assume a valid handle (as documented in rsp.h).

#include "rsp/rsp.h"

#include <cmath>
#include <exception>
#include <string>

#include "protocols.hpp"
#include "resources.hpp"
#include "schedule.hpp"

namespace {

thread_local std::string g_last_error;

rsp_status fail(rsp_status status, const std::string& message) {
    g_last_error = message;
    return status;
}

rsp_status translate(const std::exception& e) {
    if (dynamic_cast<const rsp::CentralGapError*>(&e)) {
        return fail(RSP_ERR_CENTRAL_GAP, e.what());
    }
    if (dynamic_cast<const rsp::InfeasiblePlanError*>(&e)) {
        return fail(RSP_ERR_INFEASIBLE_PLAN, e.what());
    }
    if (dynamic_cast<const std::domain_error*>(&e)) {
        return fail(RSP_ERR_DOMAIN, e.what());
    }
    if (dynamic_cast<const std::invalid_argument*>(&e)) {
        return fail(RSP_ERR_INVALID_ARGUMENT, e.what());
    }
    return fail(RSP_ERR_INTERNAL, e.what());
}

template <typename Fn>
rsp_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return RSP_OK;
    } catch (const std::exception& e) {
        return translate(e);
    } catch (...) {
        return fail(RSP_ERR_INTERNAL, "unknown error");
    }
}

void fill_branch(const rsp::BranchRecord& b, rsp_branch_info* info) {
    info->cbit_count = static_cast<int>(b.cbits.size());
    info->cbits[0] = b.cbits.empty() ? 0 : b.cbits[0];
    info->cbits[1] = b.cbits.size() > 1 ? b.cbits[1] : 0;
    info->probability = b.probability;
    info->failed = b.failed ? 1 : 0;
    info->fidelity = b.fidelity.value_or(0.0);
}

}  // namespace

struct rsp_outcome {
    rsp::ProtocolOutcome value;
};

struct rsp_plan {
    rsp::CompressionPlan value;
};

struct rsp_mc_report {
    rsp::McReport value;
};

extern "C" {

const char* rsp_version(void) { return "1.0.0"; }

const char* rsp_status_name(rsp_status status) {
    switch (status) {
        case RSP_OK: return "ok";
        case RSP_ERR_INVALID_ARGUMENT: return "invalid argument";
        case RSP_ERR_DOMAIN: return "domain error";
        case RSP_ERR_CENTRAL_GAP: return "central gap";
        case RSP_ERR_INFEASIBLE_PLAN: return "infeasible plan";
        case RSP_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* rsp_last_error(void) { return g_last_error.c_str(); }

rsp_status rsp_schedule_value(double q, int n, double* value) {
    if (!value) return fail(RSP_ERR_INVALID_ARGUMENT, "null output pointer");
    return guarded([&] { *value = rsp::schedule_value(q, n); });
}

rsp_status rsp_accuracy_gap(int m, double* gap_half_width) {
    if (!gap_half_width) return fail(RSP_ERR_INVALID_ARGUMENT, "null output pointer");
    return guarded([&] { *gap_half_width = rsp::accuracy_model(m).gap_half_width; });
}

rsp_status rsp_depth_appendix_a(double q, int m, double* n_real) {
    if (!n_real) return fail(RSP_ERR_INVALID_ARGUMENT, "null output pointer");
    return guarded([&] { *n_real = rsp::appendix_a_depth(q, m); });
}

rsp_status rsp_depth_improved1(double q, double f_min, double* n_real) {
    if (!n_real) return fail(RSP_ERR_INVALID_ARGUMENT, "null output pointer");
    return guarded([&] { *n_real = rsp::improved1_depth(q, f_min); });
}

rsp_status rsp_depth_appendix_b(double q, double f_min, double* n_real) {
    if (!n_real) return fail(RSP_ERR_INVALID_ARGUMENT, "null output pointer");
    return guarded([&] { *n_real = rsp::appendix_b_depth(q, f_min); });
}

rsp_status rsp_run(rsp_protocol protocol, double theta, double phi, double q,
                   int depth, rsp_outcome** out) {
    if (!out) return fail(RSP_ERR_INVALID_ARGUMENT, "null output pointer");
    *out = nullptr;
    return guarded([&] {
        const rsp::TargetQubit target{theta, phi};
        rsp::ProtocolOutcome outcome;
        switch (protocol) {
            case RSP_PROTOCOL_EXPLICIT:
                outcome = rsp::run_explicit(target, q, depth);
                break;
            case RSP_PROTOCOL_IMPROVED1:
                outcome = rsp::run_improved1_central(target, q, depth);
                break;
            case RSP_PROTOCOL_APPENDIX_B:
                outcome = rsp::run_appendix_b_central(target, q, depth);
                break;
            case RSP_PROTOCOL_GHZ:
                outcome = rsp::run_ghz(target);
                break;
            case RSP_PROTOCOL_IMPROVED2:
                throw std::invalid_argument("improved2 requires rsp_run_with_plan");
            default:
                throw std::domain_error("unknown protocol id");
        }
        *out = new rsp_outcome{std::move(outcome)};
    });
}

rsp_status rsp_run_with_plan(double theta, double phi, const rsp_plan* plan,
                             rsp_outcome** out) {
    if (!out || !plan) return fail(RSP_ERR_INVALID_ARGUMENT, "null pointer");
    *out = nullptr;
    return guarded([&] {
        *out = new rsp_outcome{rsp::run_improved2({theta, phi}, plan->value)};
    });
}

void rsp_outcome_free(rsp_outcome* outcome) { delete outcome; }

double rsp_outcome_simulated_fidelity(const rsp_outcome* o) {
    return o->value.report.simulated_fidelity;
}

int rsp_outcome_has_analytic_fidelity(const rsp_outcome* o) {
    return o->value.report.analytic_fidelity.has_value() ? 1 : 0;
}

double rsp_outcome_analytic_fidelity(const rsp_outcome* o) {
    return o->value.report.analytic_fidelity.value_or(std::nan(""));
}

int rsp_outcome_has_chi(const rsp_outcome* o) {
    return o->value.report.chi.has_value() ? 1 : 0;
}

double rsp_outcome_chi(const rsp_outcome* o) {
    return o->value.report.chi.value_or(std::nan(""));
}

rsp_convention rsp_outcome_convention(const rsp_outcome* o) {
    return o->value.report.convention == rsp::FidelityConvention::probability
               ? RSP_FIDELITY_PROBABILITY
               : RSP_FIDELITY_OVERLAP;
}

double rsp_outcome_average_fidelity(const rsp_outcome* o) {
    return o->value.report.average_fidelity;
}

int rsp_outcome_has_success_probability(const rsp_outcome* o) {
    return o->value.success_probability.has_value() ? 1 : 0;
}

double rsp_outcome_success_probability(const rsp_outcome* o) {
    return o->value.success_probability.value_or(std::nan(""));
}

int rsp_outcome_branch_count(const rsp_outcome* o) {
    return static_cast<int>(o->value.report.branches.size());
}

rsp_status rsp_outcome_branch(const rsp_outcome* o, int index, rsp_branch_info* info) {
    if (!info) return fail(RSP_ERR_INVALID_ARGUMENT, "null output pointer");
    if (index < 0 || index >= rsp_outcome_branch_count(o)) {
        return fail(RSP_ERR_INVALID_ARGUMENT, "branch index out of range");
    }
    fill_branch(o->value.report.branches[static_cast<std::size_t>(index)], info);
    return RSP_OK;
}

rsp_status rsp_plan_create(double q, int n_channels, double p_success, rsp_plan** out) {
    if (!out) return fail(RSP_ERR_INVALID_ARGUMENT, "null output pointer");
    *out = nullptr;
    return guarded([&] {
        *out = new rsp_plan{rsp::greedy_compress(q, n_channels, p_success)};
    });
}

void rsp_plan_free(rsp_plan* plan) { delete plan; }

int rsp_plan_section_count(const rsp_plan* plan) {
    return plan->value.section_count();
}

int rsp_plan_deepest(const rsp_plan* plan) { return plan->value.deepest(); }

double rsp_plan_success_probability(const rsp_plan* plan) {
    return plan->value.success_probability();
}

rsp_status rsp_plan_section(const rsp_plan* plan, int k, int* head, int* lo, int* hi) {
    if (!head || !lo || !hi) return fail(RSP_ERR_INVALID_ARGUMENT, "null output pointer");
    if (k < 0 || k >= plan->value.section_count()) {
        return fail(RSP_ERR_INVALID_ARGUMENT, "section index out of range");
    }
    const auto& s = plan->value.sections()[static_cast<std::size_t>(k)];
    *head = s.head;
    *lo = s.lo;
    *hi = s.head;
    return RSP_OK;
}

rsp_status rsp_plan_section_theta(const rsp_plan* plan, int k, double* lower_lo,
                                  double* lower_hi, double* upper_lo,
                                  double* upper_hi) {
    if (!lower_lo || !lower_hi || !upper_lo || !upper_hi) {
        return fail(RSP_ERR_INVALID_ARGUMENT, "null output pointer");
    }
    if (k < 0 || k >= plan->value.section_count()) {
        return fail(RSP_ERR_INVALID_ARGUMENT, "section index out of range");
    }
    return guarded([&] {
        const auto intervals = plan->value.section_theta(k);
        *lower_lo = intervals.lower_lo;
        *lower_hi = intervals.lower_hi;
        *upper_lo = intervals.upper_lo;
        *upper_hi = intervals.upper_hi;
    });
}

rsp_status rsp_monte_carlo(rsp_protocol protocol, double theta, double phi,
                           double q, int depth, double p_success,
                           long long trials, unsigned long long seed,
                           rsp_mc_report** out) {
    if (!out) return fail(RSP_ERR_INVALID_ARGUMENT, "null output pointer");
    *out = nullptr;
    return guarded([&] {
        rsp::ProtocolId id;
        switch (protocol) {
            case RSP_PROTOCOL_EXPLICIT: id = rsp::ProtocolId::explicit_scheme; break;
            case RSP_PROTOCOL_IMPROVED1: id = rsp::ProtocolId::improved1; break;
            case RSP_PROTOCOL_APPENDIX_B: id = rsp::ProtocolId::appendix_b; break;
            case RSP_PROTOCOL_IMPROVED2: id = rsp::ProtocolId::improved2; break;
            case RSP_PROTOCOL_GHZ: id = rsp::ProtocolId::ghz; break;
            default: throw std::domain_error("unknown protocol id");
        }
        *out = new rsp_mc_report{
            rsp::run_monte_carlo(id, {theta, phi}, q, depth, p_success, trials, seed)};
    });
}

void rsp_mc_report_free(rsp_mc_report* report) { delete report; }

long long rsp_mc_report_trials(const rsp_mc_report* r) { return r->value.trials; }

double rsp_mc_report_mean_fidelity(const rsp_mc_report* r) {
    return r->value.mean_fidelity;
}

double rsp_mc_report_success_rate(const rsp_mc_report* r) {
    return r->value.success_rate;
}

int rsp_mc_report_branch_count(const rsp_mc_report* r) {
    return static_cast<int>(r->value.branches.size());
}

rsp_status rsp_mc_report_branch(const rsp_mc_report* r, int index,
                                rsp_mc_branch_info* info) {
    if (!info) return fail(RSP_ERR_INVALID_ARGUMENT, "null output pointer");
    if (index < 0 || index >= rsp_mc_report_branch_count(r)) {
        return fail(RSP_ERR_INVALID_ARGUMENT, "branch index out of range");
    }
    const auto& b = r->value.branches[static_cast<std::size_t>(index)];
    info->cbit_count = static_cast<int>(b.cbits.size());
    info->cbits[0] = b.cbits.empty() ? 0 : b.cbits[0];
    info->cbits[1] = b.cbits.size() > 1 ? b.cbits[1] : 0;
    info->count = b.count;
    info->frequency = b.frequency;
    info->failed = b.failed ? 1 : 0;
    info->fidelity = b.fidelity.value_or(0.0);
    return RSP_OK;
}

}  // extern "C"
