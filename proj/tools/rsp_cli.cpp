// rsp command-line front end: run protocols, sweep theta grids, emit
// resource-table CSVs and print greedy compression plans. Links only the
// public C API.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rsp/rsp.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;

constexpr double kPi = 3.14159265358979323846;

struct CliError {
    int code;
    std::string message;
};

[[noreturn]] void fail_domain(const std::string& message) {
    throw CliError{kExitDomain, message};
}

[[noreturn]] void fail_status(const std::string& context) {
    throw CliError{kExitDomain, context + ": " + rsp_last_error()};
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::string fmt2(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) fail_domain("cannot open output file: " + path);
    out << text;
}

rsp_protocol parse_protocol(const std::string& name) {
    if (name == "explicit") return RSP_PROTOCOL_EXPLICIT;
    if (name == "improved1") return RSP_PROTOCOL_IMPROVED1;
    if (name == "appendixB") return RSP_PROTOCOL_APPENDIX_B;
    if (name == "improved2") return RSP_PROTOCOL_IMPROVED2;
    if (name == "ghz") return RSP_PROTOCOL_GHZ;
    throw CLI::ValidationError("--protocol",
                               "unknown protocol '" + name +
                                   "' (expected explicit, improved1, appendixB, "
                                   "improved2 or ghz)");
}

const char* convention_name(rsp_convention c) {
    return c == RSP_FIDELITY_PROBABILITY ? "probability" : "overlap";
}

struct OutcomeHandle {
    rsp_outcome* ptr = nullptr;
    ~OutcomeHandle() { rsp_outcome_free(ptr); }
};

struct PlanHandle {
    rsp_plan* ptr = nullptr;
    ~PlanHandle() { rsp_plan_free(ptr); }
};

struct McHandle {
    rsp_mc_report* ptr = nullptr;
    ~McHandle() { rsp_mc_report_free(ptr); }
};

// ---- run ----

struct RunOptions {
    std::string protocol = "explicit";
    double theta = 0.0;
    double phi = 0.0;
    double q = 0.95;
    std::optional<int> depth;
    std::optional<int> m;
    std::optional<double> f_min;
    double p_success = 0.99;
    std::string mode = "exact";
    long long trials = 100000;
    std::optional<unsigned long long> seed;
    bool degrees = false;
    std::string output;
};

int resolve_depth(const RunOptions& opt, rsp_protocol protocol) {
    const int given = (opt.depth ? 1 : 0) + (opt.m ? 1 : 0) + (opt.f_min ? 1 : 0);
    if (protocol == RSP_PROTOCOL_GHZ) {
        if (given != 0) {
            throw CLI::ValidationError("--depth", "ghz takes no depth specification");
        }
        return 1;
    }
    if (given != 1) {
        throw CLI::ValidationError(
            "--depth", "exactly one of --depth, --m, --f-min must be given");
    }
    if (opt.depth) {
        if (*opt.depth < 1) throw CLI::ValidationError("--depth", "depth must be >= 1");
        return *opt.depth;
    }
    double n_real = 0.0;
    if (opt.m) {
        if (rsp_depth_appendix_a(opt.q, *opt.m, &n_real) != RSP_OK) {
            fail_status("accuracy depth");
        }
    } else {
        rsp_status st;
        if (protocol == RSP_PROTOCOL_IMPROVED1) {
            st = rsp_depth_improved1(opt.q, *opt.f_min, &n_real);
        } else if (protocol == RSP_PROTOCOL_APPENDIX_B) {
            st = rsp_depth_appendix_b(opt.q, *opt.f_min, &n_real);
        } else {
            throw CLI::ValidationError("--f-min",
                                       "--f-min applies to improved1/appendixB only");
        }
        if (st != RSP_OK) fail_status("fidelity depth");
    }
    return static_cast<int>(std::ceil(n_real));
}

void render_outcome(std::ostringstream& out, const rsp_outcome* o) {
    out << "branch  cbits  probability  fidelity  convention\n";
    const int n = rsp_outcome_branch_count(o);
    for (int i = 0; i < n; ++i) {
        rsp_branch_info b{};
        rsp_outcome_branch(o, i, &b);
        std::string bits;
        for (int k = 0; k < b.cbit_count; ++k) bits += ('0' + b.cbits[k]);
        out << i << "       " << bits << (b.cbit_count == 1 ? "      " : "     ")
            << fmt(b.probability) << "     ";
        if (b.failed) {
            out << "-         failed\n";
        } else {
            out << fmt(b.fidelity) << "  "
                << convention_name(rsp_outcome_convention(o)) << "\n";
        }
    }
    out << "simulated_fidelity: " << fmt(rsp_outcome_simulated_fidelity(o)) << "\n";
    if (rsp_outcome_has_analytic_fidelity(o)) {
        out << "analytic_fidelity: " << fmt(rsp_outcome_analytic_fidelity(o)) << "\n";
    }
    if (rsp_outcome_has_chi(o)) {
        out << "chi: " << fmt(rsp_outcome_chi(o)) << "\n";
    }
    out << "average_fidelity: " << fmt(rsp_outcome_average_fidelity(o)) << "\n";
    if (rsp_outcome_has_success_probability(o)) {
        out << "success_probability: " << fmt(rsp_outcome_success_probability(o))
            << "\n";
    }
}

int cmd_run(const RunOptions& opt) {
    const rsp_protocol protocol = parse_protocol(opt.protocol);
    const double scale = opt.degrees ? kPi / 180.0 : 1.0;
    const double theta = opt.theta * scale;
    const double phi = opt.phi * scale;
    const int depth = resolve_depth(opt, protocol);

    std::ostringstream text;
    text << "protocol: " << opt.protocol << "\n";
    text << "theta: " << fmt(theta) << "  phi: " << fmt(phi);
    if (protocol != RSP_PROTOCOL_GHZ) {
        text << "  q: " << fmt(opt.q) << "  depth: " << depth;
    }
    text << "\n";

    if (opt.mode == "montecarlo") {
        if (!opt.seed) {
            throw CLI::ValidationError("--seed", "montecarlo mode requires --seed");
        }
        if (opt.trials < 1) {
            throw CLI::ValidationError("--trials", "montecarlo needs trials >= 1");
        }
        McHandle mc;
        if (rsp_monte_carlo(protocol, theta, phi, opt.q, depth, opt.p_success,
                            opt.trials, *opt.seed, &mc.ptr) != RSP_OK) {
            fail_status("monte carlo run");
        }
        text << "trials: " << rsp_mc_report_trials(mc.ptr) << "  seed: " << *opt.seed
             << "\n";
        text << "branch  cbits  count  frequency  fidelity\n";
        for (int i = 0; i < rsp_mc_report_branch_count(mc.ptr); ++i) {
            rsp_mc_branch_info b{};
            rsp_mc_report_branch(mc.ptr, i, &b);
            std::string bits;
            for (int k = 0; k < b.cbit_count; ++k) bits += ('0' + b.cbits[k]);
            text << i << "       " << bits << (b.cbit_count == 1 ? "      " : "     ")
                 << b.count << "  " << fmt(b.frequency) << "  ";
            if (b.failed) {
                text << "-  failed\n";
            } else {
                text << fmt(b.fidelity) << "\n";
            }
        }
        text << "mean_fidelity: " << fmt(rsp_mc_report_mean_fidelity(mc.ptr)) << "\n";
        text << "success_rate: " << fmt(rsp_mc_report_success_rate(mc.ptr)) << "\n";
    } else if (opt.mode == "exact") {
        OutcomeHandle outcome;
        rsp_status st;
        if (protocol == RSP_PROTOCOL_IMPROVED2) {
            PlanHandle plan;
            if (rsp_plan_create(opt.q, depth, opt.p_success, &plan.ptr) != RSP_OK) {
                fail_status("compression plan");
            }
            st = rsp_run_with_plan(theta, phi, plan.ptr, &outcome.ptr);
        } else {
            st = rsp_run(protocol, theta, phi, opt.q, depth, &outcome.ptr);
        }
        if (st != RSP_OK) fail_status("protocol run");
        render_outcome(text, outcome.ptr);
    } else {
        throw CLI::ValidationError("--mode", "mode must be exact or montecarlo");
    }

    write_output(opt.output, text.str());
    return kExitOk;
}

// ---- sweep ----

struct SweepOptions {
    std::string protocol = "explicit";
    double q = 0.95;
    std::optional<int> depth;
    std::optional<int> m;
    double phi = 0.0;
    double p_success = 0.99;
    int grid = 200;
    std::string output;
};

int cmd_sweep(const SweepOptions& opt) {
    const rsp_protocol protocol = parse_protocol(opt.protocol);
    if (opt.grid < 2) throw CLI::ValidationError("--grid", "grid must be >= 2");

    int depth = 1;
    if (protocol != RSP_PROTOCOL_GHZ) {
        RunOptions depth_opt;
        depth_opt.q = opt.q;
        depth_opt.depth = opt.depth;
        depth_opt.m = opt.m;
        depth = resolve_depth(depth_opt, protocol);
    }

    double gap = 0.0;
    if (protocol != RSP_PROTOCOL_GHZ &&
        rsp_schedule_value(opt.q, depth, &gap) != RSP_OK) {
        fail_status("schedule");
    }

    // covered theta domain per protocol
    struct Segment {
        double lo, hi;
    };
    std::vector<Segment> segments;
    const double quarter = kPi / 4.0;
    if (protocol == RSP_PROTOCOL_IMPROVED1 || protocol == RSP_PROTOCOL_APPENDIX_B) {
        segments.push_back({quarter - gap, quarter + gap});
    } else if (protocol == RSP_PROTOCOL_GHZ) {
        segments.push_back({0.0, kPi / 2.0});
    } else {
        segments.push_back({0.0, quarter - gap});
        segments.push_back({quarter + gap, kPi / 2.0});
    }
    double total = 0.0;
    for (const auto& s : segments) total += s.hi - s.lo;

    PlanHandle plan;
    if (protocol == RSP_PROTOCOL_IMPROVED2 &&
        rsp_plan_create(opt.q, depth, opt.p_success, &plan.ptr) != RSP_OK) {
        fail_status("compression plan");
    }

    std::ostringstream csv;
    csv << "theta,analytic_F,simulated_F,abs_diff\n";
    for (int i = 0; i < opt.grid; ++i) {
        // endpoint-exact: rounding must never push theta past a segment edge
        double theta = segments.back().hi;
        if (i == 0) {
            theta = segments.front().lo;
        } else if (i < opt.grid - 1) {
            double s = total * i / (opt.grid - 1);
            for (const auto& seg : segments) {
                const double len = seg.hi - seg.lo;
                if (s <= len || &seg == &segments.back()) {
                    theta = std::min(seg.lo + std::min(s, len), seg.hi);
                    break;
                }
                s -= len;
            }
        }
        OutcomeHandle outcome;
        rsp_status st;
        if (protocol == RSP_PROTOCOL_IMPROVED2) {
            st = rsp_run_with_plan(theta, opt.phi, plan.ptr, &outcome.ptr);
        } else {
            st = rsp_run(protocol, theta, opt.phi, opt.q, depth, &outcome.ptr);
        }
        if (st != RSP_OK) fail_status("protocol run at theta = " + fmt(theta));
        const double simulated = rsp_outcome_simulated_fidelity(outcome.ptr);
        const double analytic = rsp_outcome_has_analytic_fidelity(outcome.ptr)
                                    ? rsp_outcome_analytic_fidelity(outcome.ptr)
                                    : simulated;
        csv << fmt(theta) << "," << fmt(analytic) << "," << fmt(simulated) << ","
            << fmt(std::fabs(simulated - analytic)) << "\n";
    }

    write_output(opt.output, csv.str());
    return kExitOk;
}

// ---- resources ----

struct ResourceOptions {
    std::string kind;
    std::optional<int> m;
    std::optional<double> f_min;
    std::vector<double> q_values;
    std::optional<double> q_min;
    std::optional<double> q_max;
    int samples = 50;
    bool table = false;
    std::string output;
};

int cmd_resources(const ResourceOptions& opt) {
    const bool is_appendix_a = opt.kind == "appendixA";
    const bool is_improved1 = opt.kind == "improved1";
    const bool is_appendix_b = opt.kind == "appendixB";
    if (!is_appendix_a && !is_improved1 && !is_appendix_b) {
        throw CLI::ValidationError("--kind",
                                   "kind must be appendixA, improved1 or appendixB");
    }
    if (is_appendix_a && !opt.m) {
        throw CLI::ValidationError("--m", "kind=appendixA requires --m");
    }
    if (!is_appendix_a && !opt.f_min) {
        throw CLI::ValidationError("--f-min", "kind=" + opt.kind + " requires --f-min");
    }

    std::vector<double> qs = opt.q_values;
    if (qs.empty()) {
        if (opt.q_min && opt.q_max) {
            if (opt.samples < 2) {
                throw CLI::ValidationError("--samples", "samples must be >= 2");
            }
            for (int i = 0; i < opt.samples; ++i) {
                qs.push_back(*opt.q_min +
                             (*opt.q_max - *opt.q_min) * i / (opt.samples - 1));
            }
        } else {
            qs = {0.90, 0.95, 0.98, 0.99};  // the tables' key points
        }
    }

    std::ostringstream out;
    const bool tabulates_n_plus_1 = !is_appendix_a;
    if (opt.table) {
        out << (tabulates_n_plus_1 ? "q       N       N+1\n" : "q       N\n");
    } else {
        out << (tabulates_n_plus_1 ? "q,N,N_plus_1\n" : "q,N\n");
    }
    for (double q : qs) {
        double n = 0.0;
        rsp_status st;
        if (is_appendix_a) {
            st = rsp_depth_appendix_a(q, *opt.m, &n);
        } else if (is_improved1) {
            st = rsp_depth_improved1(q, *opt.f_min, &n);
        } else {
            st = rsp_depth_appendix_b(q, *opt.f_min, &n);
        }
        if (st != RSP_OK) fail_status("depth at q = " + fmt(q));
        if (opt.table) {
            out << fmt2(q) << "    " << fmt2(n);
            if (tabulates_n_plus_1) out << "   " << fmt2(n + 1.0);
            out << "\n";
        } else {
            out << fmt(q) << "," << fmt(n);
            if (tabulates_n_plus_1) out << "," << fmt(n + 1.0);
            out << "\n";
        }
    }

    write_output(opt.output, out.str());
    return kExitOk;
}

// ---- compress ----

struct CompressOptions {
    double q = 0.99;
    std::optional<int> n_channels;
    std::optional<int> m;
    double p_success = 0.99;
    std::string output;
};

int cmd_compress(const CompressOptions& opt) {
    if (!opt.n_channels && !opt.m) {
        throw CLI::ValidationError("--N", "give --N or --m");
    }
    if (opt.n_channels && opt.m) {
        throw CLI::ValidationError("--N", "give only one of --N and --m");
    }
    int n = 0;
    if (opt.n_channels) {
        n = *opt.n_channels;
    } else {
        double n_real = 0.0;
        if (rsp_depth_appendix_a(opt.q, *opt.m, &n_real) != RSP_OK) {
            fail_status("accuracy depth");
        }
        n = static_cast<int>(std::ceil(n_real));
    }

    PlanHandle plan;
    if (rsp_plan_create(opt.q, n, opt.p_success, &plan.ptr) != RSP_OK) {
        fail_status("compression plan");
    }

    std::ostringstream out;
    out << "q: " << fmt(opt.q) << "  N: " << n << "  P: " << fmt(opt.p_success) << "\n";
    out << "M: " << rsp_plan_section_count(plan.ptr) << "\n";
    out << "head  channels  theta_lower              theta_upper\n";
    for (int k = 0; k < rsp_plan_section_count(plan.ptr); ++k) {
        int head = 0, lo = 0, hi = 0;
        rsp_plan_section(plan.ptr, k, &head, &lo, &hi);
        double llo = 0, lhi = 0, ulo = 0, uhi = 0;
        rsp_plan_section_theta(plan.ptr, k, &llo, &lhi, &ulo, &uhi);
        out << head << "  [" << lo << "," << hi << "]  [" << fmt(llo) << ","
            << fmt(lhi) << "]  [" << fmt(ulo) << "," << fmt(uhi) << "]\n";
    }

    write_output(opt.output, out.str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"remote-state-preparation protocol simulator and resource calculator"};
    app.require_subcommand(1);

    RunOptions run_opt;
    auto* run = app.add_subcommand("run", "run one protocol at a single (theta, phi)");
    run->add_option("--protocol", run_opt.protocol,
                    "explicit | improved1 | appendixB | improved2 | ghz");
    run->add_option("--theta", run_opt.theta, "polar angle in radians")->required();
    run->add_option("--phi", run_opt.phi, "azimuthal angle in radians")->required();
    run->add_option("--q", run_opt.q, "minimum fidelity, in (1/2, 1)");
    run->add_option("--depth", run_opt.depth, "schedule depth N");
    run->add_option("--m", run_opt.m, "accuracy exponent (depth from the gap model)");
    run->add_option("--f-min", run_opt.f_min, "minimum fidelity (depth from its inverse)");
    run->add_option("--P", run_opt.p_success, "improved2 POVM success probability");
    run->add_option("--mode", run_opt.mode, "exact | montecarlo");
    run->add_option("--trials", run_opt.trials, "montecarlo trial count");
    run->add_option("--seed", run_opt.seed, "montecarlo seed");
    run->add_flag("--degrees", run_opt.degrees, "interpret angles in degrees");
    run->add_option("--output", run_opt.output, "write to file instead of stdout");

    SweepOptions sweep_opt;
    auto* sweep = app.add_subcommand("sweep", "CSV of fidelities over a theta grid");
    sweep->add_option("--protocol", sweep_opt.protocol, "protocol to sweep");
    sweep->add_option("--q", sweep_opt.q, "minimum fidelity");
    sweep->add_option("--depth", sweep_opt.depth, "schedule depth N");
    sweep->add_option("--m", sweep_opt.m, "accuracy exponent");
    sweep->add_option("--phi", sweep_opt.phi, "azimuthal angle in radians");
    sweep->add_option("--P", sweep_opt.p_success, "improved2 POVM success probability");
    sweep->add_option("--grid", sweep_opt.grid, "number of theta rows");
    sweep->add_option("--output", sweep_opt.output, "write to file instead of stdout");

    ResourceOptions res_opt;
    auto* resources =
        app.add_subcommand("resources", "CSV of the N-versus-q trade-off curves");
    resources->add_option("--kind", res_opt.kind, "appendixA | improved1 | appendixB")
        ->required();
    resources->add_option("--m", res_opt.m, "accuracy exponent (appendixA)");
    resources->add_option("--f-min", res_opt.f_min, "minimum fidelity (improved1/appendixB)");
    resources->add_option("--q", res_opt.q_values, "explicit q values (repeatable)");
    resources->add_option("--q-min", res_opt.q_min, "sweep start");
    resources->add_option("--q-max", res_opt.q_max, "sweep end");
    resources->add_option("--samples", res_opt.samples, "sweep sample count");
    resources->add_flag("--table", res_opt.table, "aligned 2-decimal table output");
    resources->add_option("--output", res_opt.output, "write to file instead of stdout");

    CompressOptions comp_opt;
    auto* compress =
        app.add_subcommand("compress", "greedy channel-compression plan");
    compress->add_option("--q", comp_opt.q, "minimum fidelity");
    compress->add_option("--N", comp_opt.n_channels, "channel count");
    compress->add_option("--m", comp_opt.m, "accuracy exponent (derives N)");
    compress->add_option("--P", comp_opt.p_success, "POVM success probability");
    compress->add_option("--output", comp_opt.output, "write to file instead of stdout");

    try {
        app.parse(argc, argv);
        if (run->parsed()) return cmd_run(run_opt);
        if (sweep->parsed()) return cmd_sweep(sweep_opt);
        if (resources->parsed()) return cmd_resources(res_opt);
        if (compress->parsed()) return cmd_compress(comp_opt);
        return kExitUsage;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.code;
    }
}
