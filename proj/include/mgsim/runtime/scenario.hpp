#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mgsim/wire/clock.hpp"
#include "mgsim/wire/link.hpp"

namespace mgsim::runtime {

// Declarative scenario: devices (ports with a clock model and hardware
// queues), links between them, and tasks bound to queues. Scenario files are
// versioned JSON documents; parse errors report the offending path.

struct DeviceCfg {
    std::string id;
    std::int64_t line_rate_bps = wire::kRate10G;
    wire::ClockPreset clock = wire::ClockPreset::Ideal;
    int queues = 1;

    bool operator==(const DeviceCfg&) const = default;
};

struct LinkCfg {
    std::string a;
    std::string b;
    double length_m = 1.0;
    double vp_fraction = 1.0;
    double k_ns = 0.0;
    std::optional<std::int64_t> aggregate_cap_bps;

    bool operator==(const LinkCfg&) const = default;
};

struct PatternCfg {
    std::string kind = "cbr";  // cbr | poisson | bursts | custom
    double rate_pps = 0.0;
    std::uint32_t burst_len = 0;
    double intra_gap_ns = 0.0;
    double inter_burst_ns = 0.0;
    std::string csv;                   // custom: one-column inter-departure ns
    std::vector<double> deltas_ns;     // custom: inline alternative

    bool operator==(const PatternCfg&) const = default;
};

struct ModifierCfg {
    std::string kind = "wrapping-counter";  // or random-uniform
    std::string field;
    std::string lo;
    std::string hi;

    bool operator==(const ModifierCfg&) const = default;
};

struct TemplateCfg {
    std::vector<std::string> stack{"eth", "ip4", "udp"};
    std::size_t pkt_length = 60;
    std::vector<std::pair<std::string, std::string>> defaults;

    bool operator==(const TemplateCfg&) const = default;
};

struct HistogramCfg {
    double bin_ns = 64.0;
    std::optional<double> target_ns;

    bool operator==(const HistogramCfg&) const = default;
};

struct TaskCfg {
    std::string id;
    std::string kind;  // generator | counter | latency | dut

    // generator + counter
    std::string device;
    int queue = 0;

    // generator
    std::string mechanism = "gapfill";  // or hwcbr
    PatternCfg pattern;
    TemplateCfg tmpl;
    std::vector<ModifierCfg> modifiers;
    std::vector<std::string> offload;   // subset of {ip4, udp, tcp}
    std::uint64_t count = 0;
    double duration_s = 0.0;            // used when count == 0

    // counter
    std::optional<HistogramCfg> histogram;
    std::string pcap;

    // latency + dut
    std::string tx_device;
    std::string rx_device;
    std::uint64_t samples = 1000;
    std::uint16_t udp_ptp_port = 319;

    // dut
    double service_rate_pps = 1.9e6;
    std::uint32_t buffer_pkts = 3800;
    double interrupt_throttle_ns = 0.0;

    bool operator==(const TaskCfg&) const = default;
};

struct Scenario {
    int version = 1;
    std::uint64_t seed = 0;
    std::vector<DeviceCfg> devices;
    std::vector<LinkCfg> links;
    std::vector<TaskCfg> tasks;

    bool operator==(const Scenario&) const = default;
};

Scenario parse_scenario(const std::string& json_text);
Scenario load_scenario(const std::string& path);
std::string serialize_scenario(const Scenario& s);  // canonical JSON

const char* clock_preset_name(wire::ClockPreset p);
wire::ClockPreset clock_preset_from(const std::string& name);  // ConfigInvalid

} // namespace mgsim::runtime
