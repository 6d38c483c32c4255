#pragma once

#include <optional>
#include <string>

#include "mgsim/runtime/scenario.hpp"

namespace mgsim::runtime {

struct RunOptions {
    std::optional<std::uint64_t> seed_override;  // --seed / MGSIM_SEED
    std::string out_dir;                         // CSV export directory
    std::string format = "csv";                  // csv | plain
    bool pcap_with_fcs = false;
};

struct RunReport {
    std::string json;   // canonical report document, byte-stable per seed
    std::string plain;  // human-readable summary
};

// Runs every task of the scenario to completion on one deterministic
// logical-time worker and aggregates all counters, histograms, and samples.
// All randomness derives from the scenario seed through per-task seeds, so a
// fixed seed reproduces the report byte for byte.
RunReport launch(const Scenario& scenario, const RunOptions& options = {});

} // namespace mgsim::runtime
