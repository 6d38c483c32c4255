#include "mgsim/runtime/launch.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mgsim/dutsim/dut.hpp"
#include "mgsim/error.hpp"
#include "mgsim/measure/histogram.hpp"
#include "mgsim/measure/latency.hpp"
#include "mgsim/measure/stats.hpp"
#include "mgsim/packet/checksums.hpp"
#include "mgsim/packet/modifier.hpp"
#include "mgsim/packet/template.hpp"
#include "mgsim/ratectl/hwcbr.hpp"
#include "mgsim/ratectl/pattern.hpp"
#include "mgsim/ratectl/realize.hpp"
#include "mgsim/runtime/pcap.hpp"
#include "mgsim/wire/transmit.hpp"

namespace mgsim::runtime {

using ordered_json = nlohmann::ordered_json;

namespace {

packet::Proto proto_from(const std::string& name) {
    if (name == "eth") return packet::Proto::Ethernet;
    if (name == "ip4") return packet::Proto::IPv4;
    if (name == "ip6") return packet::Proto::IPv6;
    if (name == "udp") return packet::Proto::Udp;
    if (name == "tcp") return packet::Proto::Tcp;
    if (name == "ptp") return packet::Proto::Ptp;
    raise(Errc::ConfigInvalid, "unknown protocol '" + name + "'");
}

struct DeviceState {
    const DeviceCfg* cfg = nullptr;
    wire::PortClock clock;
    wire::PortCounters counters;
    int link = -1;          // index into scenario.links, -1 = unconnected
    std::string peer;
};

struct CounterTaskState {
    const TaskCfg* cfg = nullptr;
    measure::StatsCounter stats{measure::StatsCounter::Kind::PktRx};
    std::optional<measure::Histogram> hist;
    std::uint64_t micro_bursts = 0;
    std::optional<SimTime> last_arrival;
    std::unique_ptr<PcapWriter> pcap;
    std::int64_t rx_rate_bps = wire::kRate10G;
};

struct DutTaskState {
    const TaskCfg* cfg = nullptr;
    std::unique_ptr<dutsim::DutQueue> queue;
    std::vector<SimTime> residences;
    std::unique_ptr<wire::Transmitter> out;
    SimTime out_cursor;
    std::int64_t out_rate_bps = wire::kRate10G;
};

struct GeneratorResult {
    std::uint64_t payloads = 0;
    std::uint64_t fillers = 0;
    std::int64_t wire_bytes = 0;
    double requested_mpps = 0.0;
    double achieved_mpps = 0.0;
    double duration_s = 0.0;
    bool non_linear_regime = false;
};

// Materializes template copies with modifiers applied, batch by batch.
class PayloadSource {
public:
    PayloadSource(const TaskCfg& cfg, Rng& rng) : rng_(&rng) {
        packet::PacketTemplate tmpl;
        for (const auto& s : cfg.tmpl.stack) tmpl.protocol_stack.push_back(proto_from(s));
        tmpl.pkt_length = cfg.tmpl.pkt_length;
        tmpl.defaults = cfg.tmpl.defaults;
        packet::PacketBuffer proto = packet::make_template(tmpl);
        for (const auto& o : cfg.offload) {
            if (o == "ip4") proto.offload |= packet::kOffloadIPv4;
            else if (o == "udp") proto.offload |= packet::kOffloadUdp;
            else if (o == "tcp") proto.offload |= packet::kOffloadTcp;
            else raise(Errc::ConfigInvalid, cfg.id + ": unknown offload '" + o + "'");
        }
        frame_len_ = proto.frame_len;
        pool_ = std::make_unique<packet::BufferPool>(std::move(proto));
        for (const auto& m : cfg.modifiers) {
            packet::FieldModifier fm;
            fm.kind = m.kind == "random-uniform" ? packet::FieldModifier::Kind::RandomUniform
                                                 : packet::FieldModifier::Kind::WrappingCounter;
            fm.field = m.field;
            fm.lo = packet::parse_field_u64(m.lo);
            fm.hi = packet::parse_field_u64(m.hi);
            if (fm.hi < fm.lo) raise(Errc::ConfigInvalid, cfg.id + ": modifier hi < lo");
            mods_.push_back(fm);
        }
    }

    // Wire length of one payload frame (frame + FCS + overhead).
    std::int64_t wire_len() const { return static_cast<std::int64_t>(frame_len_) + 4 +
                                            wire::kWireOverheadBytes; }

    wire::TimedFrame next() {
        if (pos_ >= batch_.count()) refill();
        packet::PacketBuffer buf = batch_.take(0);
        ++pos_;
        wire::TimedFrame f;
        f.seq = buf.seq_id;
        f.bad_fcs = !buf.crc_valid;
        f.octets = packet::materialize(buf);
        return f;
    }

private:
    void refill() {
        batch_ = pool_->alloc_batch(64, frame_len_);
        for (auto& m : mods_) packet::apply_modifier(batch_, m, *rng_);
        pos_ = 0;
    }

    Rng* rng_;
    std::unique_ptr<packet::BufferPool> pool_;
    std::vector<packet::FieldModifier> mods_;
    packet::BufBatch batch_{64};
    std::uint32_t frame_len_ = 0;
    std::size_t pos_ = 0;
};

ratectl::PatternSource make_pattern(const PatternCfg& cfg, const std::string& task_id) {
    if (cfg.kind == "cbr") return ratectl::PatternSource::cbr(cfg.rate_pps);
    if (cfg.kind == "poisson") return ratectl::PatternSource::poisson(cfg.rate_pps);
    if (cfg.kind == "bursts")
        return ratectl::PatternSource::bursts(cfg.burst_len, SimTime::from_ns(cfg.intra_gap_ns),
                                              SimTime::from_ns(cfg.inter_burst_ns));
    if (cfg.kind == "custom") {
        if (!cfg.csv.empty())
            return ratectl::PatternSource::custom(ratectl::load_custom_pattern_csv(cfg.csv));
        std::vector<SimTime> deltas;
        deltas.reserve(cfg.deltas_ns.size());
        for (double d : cfg.deltas_ns) deltas.push_back(SimTime::from_ns(d));
        return ratectl::PatternSource::custom(std::move(deltas));
    }
    raise(Errc::ConfigInvalid, task_id + ": bad pattern kind");
}

double round3(double v) { return std::round(v * 1000.0) / 1000.0; }

class Runner {
public:
    Runner(const Scenario& s, const RunOptions& opt) : scenario_(s), opt_(opt) {
        seed_ = opt.seed_override.value_or(s.seed);
        validate_and_build();
    }

    RunReport run() {
        // Latency tasks are self-contained request/response loops; generators
        // stream onto the wire towards counters and DuT chains. Everything is
        // ordered by logical time inside each pipeline.
        for (const TaskCfg& t : scenario_.tasks)
            if (t.kind == "generator") pending_generators_[t.device].push_back(&t);
        for (auto& [dev, gens] : pending_generators_)
            run_device_generators(dev, gens);
        for (const TaskCfg& t : scenario_.tasks)
            if (t.kind == "latency") run_latency(t);
        return assemble_report();
    }

private:
    const Scenario& scenario_;
    const RunOptions& opt_;
    std::uint64_t seed_ = 0;

    std::map<std::string, DeviceState> devices_;
    std::map<std::string, CounterTaskState> counters_by_task_;
    std::map<std::string, std::vector<CounterTaskState*>> counters_by_device_;
    std::map<std::string, DutTaskState> duts_by_task_;
    std::map<std::string, DutTaskState*> dut_by_rx_device_;
    std::map<std::string, std::vector<const TaskCfg*>> pending_generators_;
    std::map<std::string, GeneratorResult> generator_results_;
    std::map<std::string, measure::LatencyRun> latency_results_;

    Rng task_rng(const std::string& id) { return Rng(derive_seed(seed_, id)); }

    void validate_and_build() {
        if (scenario_.version != 1) raise(Errc::ConfigInvalid, "version: unsupported");
        for (const auto& d : scenario_.devices) {
            if (devices_.count(d.id))
                raise(Errc::ConfigInvalid, "devices: duplicate id '" + d.id + "'");
            DeviceState st;
            st.cfg = &d;
            Rng clock_rng(derive_seed(seed_, "device:" + d.id));
            st.clock = wire::make_clock(d.clock, d.line_rate_bps, clock_rng);
            devices_.emplace(d.id, std::move(st));
        }
        for (std::size_t i = 0; i < scenario_.links.size(); ++i) {
            const auto& l = scenario_.links[i];
            for (const std::string* end : {&l.a, &l.b}) {
                auto it = devices_.find(*end);
                if (it == devices_.end())
                    raise(Errc::ConfigInvalid,
                          "links[" + std::to_string(i) + "]: unknown device '" + *end + "'");
                if (it->second.link != -1)
                    raise(Errc::ConfigInvalid, "links[" + std::to_string(i) + "]: device '" +
                                                   *end + "' already on a link");
                it->second.link = static_cast<int>(i);
            }
            devices_.at(l.a).peer = l.b;
            devices_.at(l.b).peer = l.a;
        }

        std::set<std::pair<std::string, int>> queue_bindings;
        std::set<std::string> task_ids;
        std::set<std::string> gapfill_devices;
        auto bind_queue = [&](const TaskCfg& t, const std::string& dev, int queue) {
            auto it = devices_.find(dev);
            if (it == devices_.end())
                raise(Errc::ConfigInvalid, t.id + ": unknown device '" + dev + "'");
            if (queue < 0 || queue >= it->second.cfg->queues)
                raise(Errc::ConfigInvalid, t.id + ": queue " + std::to_string(queue) +
                                               " out of range");
            if (!queue_bindings.emplace(dev, queue).second)
                raise(Errc::QueueConflict, t.id + ": queue " + std::to_string(queue) +
                                               " of '" + dev + "' already bound");
        };

        for (const TaskCfg& t : scenario_.tasks) {
            if (!task_ids.insert(t.id).second)
                raise(Errc::ConfigInvalid, "tasks: duplicate id '" + t.id + "'");
            if (t.kind == "generator") {
                bind_queue(t, t.device, t.queue);
                if (devices_.at(t.device).link == -1)
                    raise(Errc::ConfigInvalid, t.id + ": device '" + t.device + "' has no link");
                if (t.mechanism == "gapfill" && !gapfill_devices.insert(t.device).second)
                    raise(Errc::ConfigInvalid,
                          t.id + ": only one gap-fill generator per device");
            } else if (t.kind == "counter") {
                bind_queue(t, t.device, t.queue);
                CounterTaskState st;
                st.cfg = &t;
                if (t.histogram) {
                    std::optional<SimTime> target;
                    if (t.histogram->target_ns)
                        target = SimTime::from_ns(*t.histogram->target_ns);
                    st.hist.emplace(SimTime::from_ns(t.histogram->bin_ns), target);
                }
                if (!t.pcap.empty())
                    st.pcap = std::make_unique<PcapWriter>(t.pcap, opt_.pcap_with_fcs);
                st.rx_rate_bps = devices_.at(t.device).cfg->line_rate_bps;
                auto [it, ok] = counters_by_task_.emplace(t.id, std::move(st));
                counters_by_device_[t.device].push_back(&it->second);
            } else if (t.kind == "latency") {
                bind_queue(t, t.tx_device, t.queue);
                if (!devices_.count(t.rx_device))
                    raise(Errc::ConfigInvalid, t.id + ": unknown device '" + t.rx_device + "'");
                const auto& txd = devices_.at(t.tx_device);
                if (txd.link == -1 || txd.peer != t.rx_device)
                    raise(Errc::ConfigInvalid,
                          t.id + ": tx and rx devices must share one link");
            } else if (t.kind == "dut") {
                if (!devices_.count(t.rx_device) || !devices_.count(t.tx_device))
                    raise(Errc::ConfigInvalid, t.id + ": unknown device");
                if (t.rx_device == t.tx_device)
                    raise(Errc::ConfigInvalid, t.id + ": rx and tx must differ");
                DutTaskState st;
                st.cfg = &t;
                dutsim::DutModel m;
                m.service_rate_pps = t.service_rate_pps;
                m.buffer_pkts = t.buffer_pkts;
                m.interrupt_throttle = SimTime::from_ns(t.interrupt_throttle_ns);
                st.queue = std::make_unique<dutsim::DutQueue>(m);
                auto [it, ok] = duts_by_task_.emplace(t.id, std::move(st));
                if (!dut_by_rx_device_.emplace(t.rx_device, &it->second).second)
                    raise(Errc::ConfigInvalid, t.id + ": device '" + t.rx_device +
                                                   "' already consumed by another dut");
            } else {
                raise(Errc::ConfigInvalid, t.id + ": unknown kind '" + t.kind + "'");
            }
        }
    }

    wire::LinkModel link_model_from(const DeviceState& tx) {
        const LinkCfg& l = scenario_.links[static_cast<std::size_t>(tx.link)];
        wire::LinkModel m;
        m.length_m = l.length_m;
        m.vp_fraction = l.vp_fraction;
        m.k_ns = l.k_ns;
        m.line_rate_bps = tx.cfg->line_rate_bps;
        m.aggregate_cap_bps = l.aggregate_cap_bps;
        return m;
    }

    // Sink of a device's incoming wire events: feeds its counters and, when a
    // DuT consumes this device, forwards through the DuT onto its next hop.
    wire::EventSink make_rx_sink(const std::string& device_id, std::set<std::string>& visiting) {
        std::vector<CounterTaskState*> counters;
        if (auto it = counters_by_device_.find(device_id); it != counters_by_device_.end())
            counters = it->second;

        DutTaskState* dut = nullptr;
        if (auto it = dut_by_rx_device_.find(device_id); it != dut_by_rx_device_.end()) {
            dut = it->second;
            if (!dut->out) {
                if (!visiting.insert(device_id).second)
                    raise(Errc::ConfigInvalid, "dut chain forms a cycle at '" + device_id + "'");
                DeviceState& out_dev = devices_.at(dut->cfg->tx_device);
                if (out_dev.link == -1)
                    raise(Errc::ConfigInvalid, dut->cfg->id + ": tx device has no link");
                wire::EventSink next = make_rx_sink(out_dev.peer, visiting);
                dut->out_rate_bps = out_dev.cfg->line_rate_bps;
                dut->out = std::make_unique<wire::Transmitter>(
                    link_model_from(out_dev), devices_.at(out_dev.peer).counters,
                    std::move(next));
                visiting.erase(device_id);
            }
        }

        return [this, counters, dut](wire::WireEvent&& ev) {
            if (ev.kind != wire::WireEvent::Kind::Delivered) return;  // dropped pre-queue
            for (CounterTaskState* c : counters) {
                c->stats.update(ev.arrival, 1, ev.octets.size() - 4);
                if (c->hist) {
                    if (c->last_arrival) {
                        const SimTime delta = ev.arrival - *c->last_arrival;
                        c->hist->add(delta);
                        if (delta == wire::serialization_time(ev.wire_len, c->rx_rate_bps))
                            ++c->micro_bursts;
                    }
                    c->last_arrival = ev.arrival;
                }
                if (c->pcap) c->pcap->write(ev.arrival, ev.octets);
            }
            if (dut) {
                dutsim::DutQueue& q = *dut->queue;
                auto* st = dut;
                q.arrive(ev.arrival, [st, &ev](SimTime a, SimTime d) {
                    st->residences.push_back(d - a);
                    wire::TimedFrame f;
                    f.departure = std::max(d, st->out_cursor);
                    f.octets = std::move(ev.octets);
                    f.seq = ev.seq;
                    const auto wl = static_cast<std::int64_t>(f.octets.size()) +
                                    wire::kWireOverheadBytes;
                    st->out_cursor = f.departure +
                                     wire::serialization_time(wl, st->out_rate_bps);
                    st->out->push(std::move(f));
                });
            }
        };
    }

    void run_device_generators(const std::string& device_id,
                               const std::vector<const TaskCfg*>& gens) {
        DeviceState& dev = devices_.at(device_id);
        std::set<std::string> visiting{device_id};
        wire::EventSink sink = make_rx_sink(dev.peer, visiting);
        wire::Transmitter tx(link_model_from(dev), devices_.at(dev.peer).counters,
                             std::move(sink));

        const bool gapfill = gens.size() == 1 && gens[0]->mechanism == "gapfill";
        if (gapfill) {
            run_gapfill_generator(*gens[0], dev, tx);
            return;
        }
        for (const TaskCfg* g : gens)
            if (g->mechanism == "gapfill")
                raise(Errc::ConfigInvalid,
                      g->id + ": gap-fill stream cannot share the device TX");
        run_hwcbr_generators(gens, dev, tx);
    }

    std::uint64_t resolve_count(const TaskCfg& t, double rate_pps) {
        if (t.count) return t.count;
        if (rate_pps <= 0)
            raise(Errc::ConfigInvalid, t.id + ": cannot derive count from duration");
        const auto n = static_cast<std::uint64_t>(std::llround(t.duration_s * rate_pps));
        if (n == 0) raise(Errc::ConfigInvalid, t.id + ": duration yields zero packets");
        return n;
    }

    void run_gapfill_generator(const TaskCfg& t, DeviceState& dev, wire::Transmitter& tx) {
        Rng rng = task_rng(t.id);
        PayloadSource payloads(t, rng);
        ratectl::PatternSource pattern = make_pattern(t.pattern, t.id);
        const std::uint64_t count = resolve_count(t, pattern.rate_pps());
        const std::int64_t rate = dev.cfg->line_rate_bps;
        const SimTime min_delta = wire::serialization_time(payloads.wire_len(), rate);

        // Pattern deltas below the payload's serialization time cannot exist
        // on a full wire; clamp and repay so the requested mean rate holds.
        std::vector<SimTime> deltas;
        deltas.reserve(count);
        SimTime carry;
        for (std::uint64_t i = 0; i < count; ++i) {
            SimTime d = pattern.next_interdeparture(rng) - carry;
            if (d < min_delta) {
                carry = min_delta - d;
                d = min_delta;
            } else {
                carry = SimTime{};
            }
            deltas.push_back(d);
        }

        ratectl::GapPlan plan = ratectl::gapfill_encode(deltas, payloads.wire_len(), rate);
        const SimTime end = ratectl::realize_gap_plan(
            plan, SimTime{}, [&] { return payloads.next(); }, tx);

        GeneratorResult res;
        res.payloads = plan.payload_count;
        res.fillers = plan.filler_count;
        res.wire_bytes = plan.total_wire_bytes;
        res.duration_s = end.to_sec();
        res.requested_mpps =
            static_cast<double>(count) / plan.total_requested.to_sec() / 1e6;
        res.achieved_mpps = static_cast<double>(plan.payload_count) / end.to_sec() / 1e6;
        generator_results_[t.id] = res;
    }

    void run_hwcbr_generators(const std::vector<const TaskCfg*>& gens, DeviceState& dev,
                              wire::Transmitter& tx) {
        struct Stream {
            const TaskCfg* cfg;
            ratectl::HwCbrSchedule schedule;
            std::unique_ptr<PayloadSource> payloads;
            std::unique_ptr<Rng> rng;
            std::size_t pos = 0;
        };
        std::vector<Stream> streams;
        for (const TaskCfg* g : gens) {
            if (g->pattern.kind != "cbr")
                raise(Errc::ConfigInvalid, g->id + ": hwcbr mechanism supports cbr only");
            Stream s;
            s.cfg = g;
            s.rng = std::make_unique<Rng>(derive_seed(seed_, g->id));
            s.payloads = std::make_unique<PayloadSource>(*g, *s.rng);
            ratectl::HwCbrModel model;
            model.target_rate_pps = g->pattern.rate_pps;
            const std::uint64_t count = resolve_count(*g, g->pattern.rate_pps);
            s.schedule = ratectl::hw_cbr_schedule(model, count, s.payloads->wire_len(),
                                                  dev.cfg->line_rate_bps, *s.rng);
            streams.push_back(std::move(s));
        }

        // Merge the queue schedules onto the single port, shifting collisions
        // forward the way the NIC arbiter would.
        SimTime busy;
        bool first = true;
        SimTime first_dep, last_end;
        std::uint64_t total = 0;
        while (true) {
            Stream* best = nullptr;
            for (auto& s : streams)
                if (s.pos < s.schedule.departures.size() &&
                    (!best || s.schedule.departures[s.pos] <
                                  best->schedule.departures[best->pos]))
                    best = &s;
            if (!best) break;
            wire::TimedFrame f = best->payloads->next();
            f.departure = best->schedule.departures[best->pos++];
            if (!first && f.departure < busy) f.departure = busy;
            const SimTime ser = wire::serialization_time(
                static_cast<std::int64_t>(f.octets.size()) + wire::kWireOverheadBytes,
                dev.cfg->line_rate_bps);
            busy = f.departure + ser;
            if (first) first_dep = f.departure;
            first = false;
            last_end = busy;
            ++total;
            tx.push(std::move(f));
        }

        for (auto& s : streams) {
            GeneratorResult res;
            res.payloads = s.schedule.departures.size();
            res.non_linear_regime = s.schedule.non_linear_regime;
            res.requested_mpps = s.cfg->pattern.rate_pps / 1e6;
            const double span = (last_end - first_dep).to_sec();
            res.duration_s = span;
            res.achieved_mpps =
                span > 0 ? static_cast<double>(res.payloads) / span / 1e6 : 0.0;
            generator_results_[s.cfg->id] = res;
        }
    }

    void run_latency(const TaskCfg& t) {
        DeviceState& txd = devices_.at(t.tx_device);
        DeviceState& rxd = devices_.at(t.rx_device);
        Rng rng = task_rng(t.id);

        // Minimal layer-2 PTP frame; 64 bytes with FCS on the wire.
        packet::PacketTemplate tmpl;
        tmpl.protocol_stack = {packet::Proto::Ethernet, packet::Proto::Ptp};
        tmpl.pkt_length = 60;
        packet::PacketBuffer buf = packet::make_template(tmpl);
        buf.request_timestamp = true;
        const auto frame = packet::materialize(buf);
        const auto wire_len =
            static_cast<std::int64_t>(frame.size()) + wire::kWireOverheadBytes;

        const wire::LinkModel link = link_model_from(txd);
        measure::LatencyConfig cfg;
        cfg.n_samples = t.samples;
        cfg.frame_serialization = wire::serialization_time(wire_len, link.line_rate_bps);
        measure::LatencyRun run = measure::measure_latency(
            txd.clock, rxd.clock, measure::direct_link_path(link, wire_len), cfg, rng);
        latency_results_[t.id] = std::move(run);
    }

    RunReport assemble_report() {
        ordered_json doc;
        doc["version"] = 1;
        doc["seed"] = seed_;

        ordered_json tasks = ordered_json::object();
        for (const TaskCfg& t : scenario_.tasks) {
            ordered_json tj;
            tj["kind"] = t.kind;
            if (t.kind == "generator") {
                const GeneratorResult& r = generator_results_.at(t.id);
                tj["payload_packets"] = r.payloads;
                tj["filler_frames"] = r.fillers;
                if (r.wire_bytes) tj["wire_bytes"] = r.wire_bytes;
                tj["duration_s"] = round3(r.duration_s * 1e6) / 1e6;
                tj["requested_mpps"] = round3(r.requested_mpps);
                tj["achieved_mpps"] = round3(r.achieved_mpps);
                if (r.non_linear_regime) tj["non_linear_regime"] = true;
            } else if (t.kind == "counter") {
                CounterTaskState& c = counters_by_task_.at(t.id);
                const auto sum = c.stats.finalize();
                tj["packets"] = sum.packets;
                tj["bytes"] = sum.bytes;
                tj["mean_mpps"] = round3(sum.mean_mpps);
                tj["stddev_mpps"] = round3(sum.stddev_mpps);
                tj["mean_mbit"] = round3(sum.mean_mbit);
                tj["stddev_mbit"] = round3(sum.stddev_mbit);
                if (c.hist) {
                    tj["micro_bursts"] = c.micro_bursts;
                    ordered_json hj;
                    hj["bin_ns"] = c.hist->bin_width().to_ns();
                    ordered_json bins = ordered_json::object();
                    for (const auto& [k, n] : c.hist->bins())
                        bins[std::to_string(static_cast<double>(k) *
                                            c.hist->bin_width().to_ns())] = n;
                    hj["bins"] = bins;
                    if (c.hist->target()) {
                        ordered_json within;
                        for (int w : {64, 128, 256, 512})
                            within[std::to_string(w)] =
                                round3(c.hist->percent_within(SimTime::ns(w)));
                        hj["fraction_within_ns"] = within;
                    }
                    tj["histogram"] = hj;
                }
                if (c.pcap) {
                    c.pcap->close();
                    tj["pcap_frames"] = c.pcap->frames_written();
                }
            } else if (t.kind == "latency") {
                const measure::LatencyRun& r = latency_results_.at(t.id);
                tj["samples"] = r.samples.size();
                tj["lost_samples"] = r.lost_samples;
                tj["median_ns"] = r.median_ns;
                tj["mean_ns"] = round3(r.mean_ns);
                tj["min_ns"] = r.min_ns;
                tj["max_ns"] = r.max_ns;
            } else if (t.kind == "dut") {
                DutTaskState& d = duts_by_task_.at(t.id);
                const auto& st = d.queue->stats();
                tj["forwarded"] = st.forwarded;
                tj["dropped"] = st.dropped;
                tj["interrupts"] = st.interrupts;
                if (!d.residences.empty()) {
                    const double ps[] = {25, 50, 75};
                    const auto q = dutsim::latency_percentiles(d.residences, ps);
                    tj["p25_ns"] = q[0].to_ns();
                    tj["p50_ns"] = q[1].to_ns();
                    tj["p75_ns"] = q[2].to_ns();
                }
            }
            tasks[t.id] = tj;
        }
        doc["tasks"] = tasks;

        ordered_json devs = ordered_json::object();
        for (const auto& [id, st] : devices_) {
            ordered_json dj;
            dj["delivered"] = st.counters.delivered;
            dj["crc_errors"] = st.counters.crc_errors;
            devs[id] = dj;
        }
        doc["devices"] = devs;

        RunReport rep;
        rep.json = doc.dump(2) + "\n";
        rep.plain = make_plain(doc);
        export_csv();
        return rep;
    }

    std::string make_plain(const ordered_json& doc) {
        std::ostringstream out;
        out << "seed " << seed_ << "\n";
        for (const auto& [id, tj] : doc.at("tasks").items()) {
            out << "[" << id << "] " << tj.at("kind").get<std::string>();
            for (const auto& [k, v] : tj.items())
                if (k != "kind" && !v.is_object()) out << " " << k << "=" << v.dump();
            out << "\n";
        }
        for (const auto& [id, dj] : doc.at("devices").items())
            out << "[" << id << "] delivered=" << dj.at("delivered")
                << " crc_errors=" << dj.at("crc_errors") << "\n";
        return out.str();
    }

    void export_csv() {
        if (opt_.out_dir.empty()) return;
        std::filesystem::create_directories(opt_.out_dir);
        for (auto& [id, c] : counters_by_task_) {
            {
                std::ofstream f(opt_.out_dir + "/" + id + "_counter.csv");
                if (!f) raise(Errc::IoFailure, "cannot write counter csv for " + id);
                f << c.stats.to_csv();
            }
            if (c.hist) {
                std::ofstream f(opt_.out_dir + "/" + id + "_hist.csv");
                if (!f) raise(Errc::IoFailure, "cannot write histogram csv for " + id);
                f << c.hist->to_csv();
            }
        }
    }
};

} // namespace

RunReport launch(const Scenario& scenario, const RunOptions& options) {
    Runner runner(scenario, options);
    return runner.run();
}

} // namespace mgsim::runtime
