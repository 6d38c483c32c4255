#include "mgsim/time.hpp"

#include <cmath>

namespace mgsim {

SimTime SimTime::from_ns(double n) {
    return SimTime::ticks(static_cast<std::int64_t>(std::llround(n * kTicksPerNs)));
}

SimTime SimTime::from_sec(double s) {
    return from_ns(s * 1e9);
}

std::int64_t SimTime::floor_ns() const {
    std::int64_t q = ticks_ / kTicksPerNs;
    if (ticks_ < 0 && q * kTicksPerNs != ticks_) --q;
    return q;
}

} // namespace mgsim
