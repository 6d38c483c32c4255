#include "mgsim/runtime/scenario.hpp"

#include <fstream>

#include <json.hpp>

#include "mgsim/error.hpp"

namespace mgsim::runtime {

using ordered_json = nlohmann::ordered_json;

const char* clock_preset_name(wire::ClockPreset p) {
    switch (p) {
    case wire::ClockPreset::Ideal:  return "ideal";
    case wire::ClockPreset::I82599: return "82599";
    case wire::ClockPreset::X540:   return "X540";
    case wire::ClockPreset::I82580: return "82580";
    }
    return "ideal";
}

wire::ClockPreset clock_preset_from(const std::string& name) {
    if (name == "ideal") return wire::ClockPreset::Ideal;
    if (name == "82599") return wire::ClockPreset::I82599;
    if (name == "X540" || name == "x540") return wire::ClockPreset::X540;
    if (name == "82580") return wire::ClockPreset::I82580;
    raise(Errc::ConfigInvalid, "unknown clock preset '" + name + "'");
}

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) {
    raise(Errc::ConfigInvalid, path + ": " + what);
}

template <typename T>
T require(const ordered_json& j, const std::string& path, const char* key) {
    if (!j.contains(key)) bad(path + "." + key, "missing");
    try {
        return j.at(key).get<T>();
    } catch (const ordered_json::exception& e) {
        bad(path + "." + key, e.what());
    }
}

template <typename T>
T optional_or(const ordered_json& j, const std::string& path, const char* key, T fallback) {
    if (!j.contains(key) || j.at(key).is_null()) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const ordered_json::exception& e) {
        bad(path + "." + key, e.what());
    }
}

std::string value_to_string(const ordered_json& v, const std::string& path) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
    if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
    if (v.is_number_float()) return std::to_string(v.get<double>());
    bad(path, "expected string or number");
}

PatternCfg parse_pattern(const ordered_json& j, const std::string& path) {
    PatternCfg p;
    p.kind = require<std::string>(j, path, "kind");
    if (p.kind == "cbr" || p.kind == "poisson") {
        p.rate_pps = require<double>(j, path, "rate_pps");
    } else if (p.kind == "bursts") {
        p.burst_len = require<std::uint32_t>(j, path, "burst_len");
        p.intra_gap_ns = require<double>(j, path, "intra_gap_ns");
        p.inter_burst_ns = require<double>(j, path, "inter_burst_ns");
    } else if (p.kind == "custom") {
        p.csv = optional_or<std::string>(j, path, "csv", "");
        p.deltas_ns = optional_or<std::vector<double>>(j, path, "deltas_ns", {});
        if (p.csv.empty() && p.deltas_ns.empty())
            bad(path, "custom pattern needs csv or deltas_ns");
    } else {
        bad(path + ".kind", "unknown pattern '" + p.kind + "'");
    }
    return p;
}

} // namespace

Scenario parse_scenario(const std::string& json_text) {
    ordered_json j;
    try {
        j = ordered_json::parse(json_text);
    } catch (const ordered_json::exception& e) {
        raise(Errc::ConfigInvalid, std::string("scenario: ") + e.what());
    }

    Scenario s;
    s.version = require<int>(j, "scenario", "version");
    if (s.version != 1) bad("scenario.version", "unsupported version");
    s.seed = optional_or<std::uint64_t>(j, "scenario", "seed", 0);

    std::size_t idx = 0;
    for (const auto& dj : optional_or<ordered_json>(j, "scenario", "devices", ordered_json::array())) {
        const std::string path = "devices[" + std::to_string(idx++) + "]";
        DeviceCfg d;
        d.id = require<std::string>(dj, path, "id");
        d.line_rate_bps = optional_or<std::int64_t>(dj, path, "line_rate_bps", wire::kRate10G);
        d.clock = clock_preset_from(optional_or<std::string>(dj, path, "clock", "ideal"));
        d.queues = optional_or<int>(dj, path, "queues", 1);
        if (d.queues < 1) bad(path + ".queues", "must be >= 1");
        s.devices.push_back(std::move(d));
    }

    idx = 0;
    for (const auto& lj : optional_or<ordered_json>(j, "scenario", "links", ordered_json::array())) {
        const std::string path = "links[" + std::to_string(idx++) + "]";
        LinkCfg l;
        l.a = require<std::string>(lj, path, "a");
        l.b = require<std::string>(lj, path, "b");
        l.length_m = optional_or<double>(lj, path, "length_m", 1.0);
        l.vp_fraction = optional_or<double>(lj, path, "vp_fraction", 1.0);
        l.k_ns = optional_or<double>(lj, path, "k_ns", 0.0);
        if (l.vp_fraction <= 0 || l.vp_fraction > 1) bad(path + ".vp_fraction", "must be in (0, 1]");
        if (l.k_ns < 0) bad(path + ".k_ns", "must be >= 0");
        if (lj.contains("aggregate_cap_bps") && !lj.at("aggregate_cap_bps").is_null())
            l.aggregate_cap_bps = require<std::int64_t>(lj, path, "aggregate_cap_bps");
        s.links.push_back(std::move(l));
    }

    idx = 0;
    for (const auto& tj : optional_or<ordered_json>(j, "scenario", "tasks", ordered_json::array())) {
        const std::string path = "tasks[" + std::to_string(idx++) + "]";
        TaskCfg t;
        t.id = require<std::string>(tj, path, "id");
        t.kind = require<std::string>(tj, path, "kind");
        if (t.kind == "generator") {
            t.device = require<std::string>(tj, path, "device");
            t.queue = optional_or<int>(tj, path, "queue", 0);
            t.mechanism = optional_or<std::string>(tj, path, "mechanism", "gapfill");
            if (t.mechanism != "gapfill" && t.mechanism != "hwcbr")
                bad(path + ".mechanism", "must be gapfill or hwcbr");
            t.pattern = parse_pattern(require<ordered_json>(tj, path, "pattern"), path + ".pattern");
            if (tj.contains("template")) {
                const auto& mj = tj.at("template");
                const std::string mpath = path + ".template";
                t.tmpl.stack = optional_or<std::vector<std::string>>(
                    mj, mpath, "stack", {"eth", "ip4", "udp"});
                t.tmpl.pkt_length = optional_or<std::size_t>(mj, mpath, "pkt_length", 60);
                if (mj.contains("defaults")) {
                    for (const auto& [k, v] : mj.at("defaults").items())
                        t.tmpl.defaults.emplace_back(k, value_to_string(v, mpath + ".defaults." + k));
                }
            }
            std::size_t midx = 0;
            for (const auto& mj : optional_or<ordered_json>(tj, path, "modifiers", ordered_json::array())) {
                const std::string mpath = path + ".modifiers[" + std::to_string(midx++) + "]";
                ModifierCfg m;
                m.kind = require<std::string>(mj, mpath, "kind");
                if (m.kind != "wrapping-counter" && m.kind != "random-uniform")
                    bad(mpath + ".kind", "unknown modifier kind");
                m.field = require<std::string>(mj, mpath, "field");
                m.lo = value_to_string(mj.contains("lo") ? mj.at("lo") : ordered_json(0), mpath + ".lo");
                m.hi = value_to_string(mj.contains("hi") ? mj.at("hi") : ordered_json(0), mpath + ".hi");
                t.modifiers.push_back(std::move(m));
            }
            t.offload = optional_or<std::vector<std::string>>(tj, path, "offload", {});
            t.count = optional_or<std::uint64_t>(tj, path, "count", 0);
            t.duration_s = optional_or<double>(tj, path, "duration_s", 0.0);
            if (t.count == 0 && t.duration_s <= 0)
                bad(path, "generator needs count or duration_s");
        } else if (t.kind == "counter") {
            t.device = require<std::string>(tj, path, "device");
            t.queue = optional_or<int>(tj, path, "queue", 0);
            if (tj.contains("histogram") && !tj.at("histogram").is_null()) {
                HistogramCfg h;
                const auto& hj = tj.at("histogram");
                h.bin_ns = optional_or<double>(hj, path + ".histogram", "bin_ns", 64.0);
                if (hj.contains("target_ns") && !hj.at("target_ns").is_null())
                    h.target_ns = require<double>(hj, path + ".histogram", "target_ns");
                t.histogram = h;
            }
            t.pcap = optional_or<std::string>(tj, path, "pcap", "");
        } else if (t.kind == "latency") {
            t.tx_device = require<std::string>(tj, path, "tx_device");
            t.rx_device = require<std::string>(tj, path, "rx_device");
            t.queue = optional_or<int>(tj, path, "queue", 0);
            t.samples = optional_or<std::uint64_t>(tj, path, "samples", 1000);
            t.udp_ptp_port = optional_or<std::uint16_t>(tj, path, "udp_ptp_port", 319);
        } else if (t.kind == "dut") {
            t.rx_device = require<std::string>(tj, path, "rx_device");
            t.tx_device = require<std::string>(tj, path, "tx_device");
            t.service_rate_pps = optional_or<double>(tj, path, "service_rate_pps", 1.9e6);
            t.buffer_pkts = optional_or<std::uint32_t>(tj, path, "buffer_pkts", 3800);
            t.interrupt_throttle_ns = optional_or<double>(tj, path, "interrupt_throttle_ns", 0.0);
        } else {
            bad(path + ".kind", "unknown task kind '" + t.kind + "'");
        }
        s.tasks.push_back(std::move(t));
    }
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(Errc::IoFailure, "cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_scenario(text);
}

std::string serialize_scenario(const Scenario& s) {
    ordered_json j;
    j["version"] = s.version;
    j["seed"] = s.seed;
    j["devices"] = ordered_json::array();
    for (const auto& d : s.devices) {
        ordered_json dj;
        dj["id"] = d.id;
        dj["line_rate_bps"] = d.line_rate_bps;
        dj["clock"] = clock_preset_name(d.clock);
        dj["queues"] = d.queues;
        j["devices"].push_back(dj);
    }
    j["links"] = ordered_json::array();
    for (const auto& l : s.links) {
        ordered_json lj;
        lj["a"] = l.a;
        lj["b"] = l.b;
        lj["length_m"] = l.length_m;
        lj["vp_fraction"] = l.vp_fraction;
        lj["k_ns"] = l.k_ns;
        if (l.aggregate_cap_bps) lj["aggregate_cap_bps"] = *l.aggregate_cap_bps;
        j["links"].push_back(lj);
    }
    j["tasks"] = ordered_json::array();
    for (const auto& t : s.tasks) {
        ordered_json tj;
        tj["id"] = t.id;
        tj["kind"] = t.kind;
        if (t.kind == "generator") {
            tj["device"] = t.device;
            tj["queue"] = t.queue;
            tj["mechanism"] = t.mechanism;
            ordered_json pj;
            pj["kind"] = t.pattern.kind;
            if (t.pattern.kind == "cbr" || t.pattern.kind == "poisson")
                pj["rate_pps"] = t.pattern.rate_pps;
            if (t.pattern.kind == "bursts") {
                pj["burst_len"] = t.pattern.burst_len;
                pj["intra_gap_ns"] = t.pattern.intra_gap_ns;
                pj["inter_burst_ns"] = t.pattern.inter_burst_ns;
            }
            if (t.pattern.kind == "custom") {
                if (!t.pattern.csv.empty()) pj["csv"] = t.pattern.csv;
                if (!t.pattern.deltas_ns.empty()) pj["deltas_ns"] = t.pattern.deltas_ns;
            }
            tj["pattern"] = pj;
            ordered_json mj;
            mj["stack"] = t.tmpl.stack;
            mj["pkt_length"] = t.tmpl.pkt_length;
            ordered_json defs = ordered_json::object();
            for (const auto& [k, v] : t.tmpl.defaults) defs[k] = v;
            mj["defaults"] = defs;
            tj["template"] = mj;
            tj["modifiers"] = ordered_json::array();
            for (const auto& m : t.modifiers) {
                ordered_json mmj;
                mmj["kind"] = m.kind;
                mmj["field"] = m.field;
                mmj["lo"] = m.lo;
                mmj["hi"] = m.hi;
                tj["modifiers"].push_back(mmj);
            }
            tj["offload"] = t.offload;
            if (t.count) tj["count"] = t.count;
            if (t.duration_s > 0) tj["duration_s"] = t.duration_s;
        } else if (t.kind == "counter") {
            tj["device"] = t.device;
            tj["queue"] = t.queue;
            if (t.histogram) {
                ordered_json hj;
                hj["bin_ns"] = t.histogram->bin_ns;
                if (t.histogram->target_ns) hj["target_ns"] = *t.histogram->target_ns;
                tj["histogram"] = hj;
            }
            if (!t.pcap.empty()) tj["pcap"] = t.pcap;
        } else if (t.kind == "latency") {
            tj["tx_device"] = t.tx_device;
            tj["rx_device"] = t.rx_device;
            tj["queue"] = t.queue;
            tj["samples"] = t.samples;
            tj["udp_ptp_port"] = t.udp_ptp_port;
        } else if (t.kind == "dut") {
            tj["rx_device"] = t.rx_device;
            tj["tx_device"] = t.tx_device;
            tj["service_rate_pps"] = t.service_rate_pps;
            tj["buffer_pkts"] = t.buffer_pkts;
            tj["interrupt_throttle_ns"] = t.interrupt_throttle_ns;
        }
        j["tasks"].push_back(tj);
    }
    return j.dump(2) + "\n";
}

} // namespace mgsim::runtime
