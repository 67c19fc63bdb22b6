#pragma once

#include <cstdint>
#include <string_view>

namespace seisdetect {

// Seed fan-out: one master seed produces independent per-stage and per-item
// seeds by hashing the stage name and index through SplitMix64.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t master, std::string_view stage, std::uint64_t index = 0);

}  // namespace seisdetect
