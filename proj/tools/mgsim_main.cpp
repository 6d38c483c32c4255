// mgsim command-line front end: scenario runs, cost estimation, line-rate
// arithmetic, and gap representability checks.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mgsim/error.hpp"
#include "mgsim/measure/cost.hpp"
#include "mgsim/ratectl/gapfill.hpp"
#include "mgsim/runtime/launch.hpp"
#include "mgsim/wire/link.hpp"

namespace {

std::vector<std::string> split_ops(const std::string& arg) {
    std::vector<std::string> out;
    std::stringstream ss(arg);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

int cmd_run(const std::string& file, const mgsim::runtime::RunOptions& opt) {
    const auto scenario = mgsim::runtime::load_scenario(file);
    const auto report = mgsim::runtime::launch(scenario, opt);
    if (opt.format == "plain")
        std::cout << report.plain;
    else
        std::cout << report.json;
    if (!opt.out_dir.empty()) {
        std::ofstream f(opt.out_dir + "/report.json");
        f << report.json;
    }
    return 0;
}

int cmd_estimate(const std::string& ops_arg, double freq_ghz) {
    const mgsim::measure::CostModel model;
    const auto ops = split_ops(ops_arg);
    const auto cycles = model.estimate_cycles(ops);
    const auto tp = mgsim::measure::predict_throughput(cycles, freq_ghz * 1e9);
    std::printf("%.1f±%.2f cycles/pkt\n", cycles.mean, cycles.sigma);
    std::printf("%.2f Mpps at %.2f GHz (range %.2f–%.2f)\n", tp.mean_mpps, freq_ghz,
                tp.lo_mpps, tp.hi_mpps);
    return 0;
}

int cmd_linerate(std::int64_t frame, double rate) {
    const auto rate_bps = static_cast<std::int64_t>(rate);
    const double pps = mgsim::wire::line_rate_pps(frame, rate_bps);
    const std::int64_t wire = mgsim::wire::wire_length(frame);
    const double ser_ns = mgsim::wire::serialization_time(wire, rate_bps).to_ns();
    std::printf("%.2f pps (%lld wire bytes, %.4f ns serialization)\n", pps,
                static_cast<long long>(wire), ser_ns);
    return 0;
}

int cmd_gapcheck(double gap_ns, double rate) {
    const auto rate_bps = static_cast<std::int64_t>(rate);
    const double byte_ns =
        static_cast<double>(mgsim::wire::byte_ticks(rate_bps)) / mgsim::SimTime::kTicksPerNs;
    const double gap_bytes = gap_ns / byte_ns;
    const mgsim::ratectl::GapFillParams params;
    switch (mgsim::ratectl::validate_gap(gap_bytes, params)) {
    case mgsim::ratectl::GapClass::BackToBack:
        std::printf("BackToBack (0 bytes)\n");
        break;
    case mgsim::ratectl::GapClass::Approximated:
        std::printf("Approximated (%.1f bytes, below %lld-byte filler minimum)\n", gap_bytes,
                    static_cast<long long>(params.min_filler_wire));
        break;
    case mgsim::ratectl::GapClass::Exact:
        std::printf("Exact (%.1f bytes)\n", gap_bytes);
        break;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"packet generation and timing simulator"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "run a scenario file");
    std::string scenario_file;
    mgsim::runtime::RunOptions opt;
    std::uint64_t seed_arg = 0;
    run->add_option("scenario", scenario_file, "scenario JSON file")->required();
    auto* seed_opt = run->add_option("--seed", seed_arg, "override the scenario seed");
    run->add_option("--out", opt.out_dir, "directory for CSV/JSON exports");
    run->add_option("--format", opt.format, "csv or plain output")
        ->check(CLI::IsMember({"csv", "plain"}));
    run->add_flag("--with-fcs", opt.pcap_with_fcs, "include the FCS in pcap exports");

    auto* estimate = app.add_subcommand("estimate", "per-packet cycle cost of operations");
    std::string ops_arg;
    double freq_ghz = 2.4;
    estimate->add_option("ops", ops_arg, "comma-separated operation names")->required();
    estimate->add_option("--freq", freq_ghz, "CPU frequency in GHz");

    auto* linerate = app.add_subcommand("linerate", "packets per second at line rate");
    std::int64_t frame = 64;
    double rate = 10e9;
    linerate->add_option("--frame", frame, "frame length incl. FCS")->required();
    linerate->add_option("--rate", rate, "line rate in bit/s")->required();

    auto* gapcheck = app.add_subcommand("gapcheck", "representability of an inter-packet gap");
    double gap_ns = 0;
    gapcheck->add_option("--gap-ns", gap_ns, "gap in nanoseconds")->required();
    gapcheck->add_option("--rate", rate, "line rate in bit/s")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 2 : 0;
    }

    try {
        if (run->parsed()) {
            if (seed_opt->count()) {
                opt.seed_override = seed_arg;
            } else if (const char* env = std::getenv("MGSIM_SEED")) {
                opt.seed_override = std::strtoull(env, nullptr, 10);
            }
            return cmd_run(scenario_file, opt);
        }
        if (estimate->parsed()) return cmd_estimate(ops_arg, freq_ghz);
        if (linerate->parsed()) return cmd_linerate(frame, rate);
        if (gapcheck->parsed()) return cmd_gapcheck(gap_ns, rate);
    } catch (const mgsim::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.code()) {
        case mgsim::Errc::ConfigInvalid:
        case mgsim::Errc::QueueConflict:
        case mgsim::Errc::UnknownOperation:
        case mgsim::Errc::UnknownField:
            return 2;
        default:
            return 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
