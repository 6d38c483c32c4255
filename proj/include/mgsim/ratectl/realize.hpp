#pragma once

#include <functional>

#include "mgsim/ratectl/gapfill.hpp"
#include "mgsim/wire/transmit.hpp"

namespace mgsim::ratectl {

// Streams a gap plan onto the wire starting at `start`. The wire is
// completely full for the duration of the plan: every entry departs the
// instant the previous one has been serialized. Payload octets come from
// next_payload (called plan.payload_count times, in order); filler frames are
// built here with a complemented FCS. Returns the time just after the last
// frame left the wire. Raises FillerRateTooHigh when the plan's total frame
// rate exceeds the NIC's short-frame limit.
SimTime realize_gap_plan(const GapPlan& plan, SimTime start,
                         const std::function<wire::TimedFrame()>& next_payload,
                         wire::Transmitter& tx);

// Filler frame octets (zero content, complemented FCS) for a wire length.
std::vector<std::uint8_t> make_filler_octets(std::uint32_t wire_len);

} // namespace mgsim::ratectl
