#include "mgsim/error.hpp"

namespace mgsim {

const char* errc_name(Errc c) {
    switch (c) {
    case Errc::UnknownField:      return "UnknownField";
    case Errc::LengthTooSmall:    return "LengthTooSmall";
    case Errc::LengthTooLarge:    return "LengthTooLarge";
    case Errc::CapacityExceeded:  return "CapacityExceeded";
    case Errc::OddLength:         return "OddLength";
    case Errc::MissingLayer:      return "MissingLayer";
    case Errc::Exhausted:         return "Exhausted";
    case Errc::RateAboveLineRate: return "RateAboveLineRate";
    case Errc::DeltaTooSmall:     return "DeltaTooSmall";
    case Errc::FillerRateTooHigh: return "FillerRateTooHigh";
    case Errc::WireOverlap:       return "WireOverlap";
    case Errc::Timeout:           return "Timeout";
    case Errc::NoTarget:          return "NoTarget";
    case Errc::UnknownOperation:  return "UnknownOperation";
    case Errc::EmptySample:       return "EmptySample";
    case Errc::ConfigInvalid:     return "ConfigInvalid";
    case Errc::QueueConflict:     return "QueueConflict";
    case Errc::IoFailure:         return "IoFailure";
    }
    return "UnknownError";
}

} // namespace mgsim
