#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "seisdetect/role.hpp"
#include "seisdetect/waveform.hpp"

namespace seisdetect {

// Line-delimited JSON. Line 1 is a header object
//   {"format":"seisdetect-waveforms","version":1,"role":"train"}
// and every following line is one record:
//   {"trace_id":..., "event_id":null|str, "station":..., "channel":...,
//    "sample_rate":..., "label":"event"|"noise", "magnitude":null|num,
//    "samples":[...]}
// Doubles are written in shortest round-trip form.
struct WaveformFile {
  DataRole role = DataRole::Unassigned;
  std::vector<WaveformRecord> records;
};

void write_waveforms(std::ostream& out, const WaveformFile& file);
void write_waveforms(const std::filesystem::path& path, const WaveformFile& file);

// Rejects malformed lines and invariant violations with a line-numbered
// ParseError.
WaveformFile read_waveforms(std::istream& in);
WaveformFile read_waveforms(const std::filesystem::path& path);

}  // namespace seisdetect
