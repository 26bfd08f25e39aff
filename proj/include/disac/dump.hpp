#pragma once

#include <string>
#include <utility>
#include <vector>

#include "disac/pipeline.hpp"

namespace disac {

/// Text matrix dumps. Line 1 is a JSON header; every following line holds
/// one row as whitespace-separated "re im" pairs.

void write_image(const std::string& path, const CVec& pixels, int nx, int ny,
                 const RegionOfInterest& roi, const std::vector<std::pair<int, int>>& pairs);

struct ImageDump {
  int nx = 0, ny = 0;
  CVec pixels;
};
ImageDump read_image(const std::string& path);

/// Delay sequences (one line per AP) then Doppler sequences, header carries
/// M, K, N, the lag set and the sample set.
void write_waveforms(const std::string& path, const WaveformBank& bank, const GridConfig& grid);

struct WaveformDump {
  int M = 0, K = 0, N = 0;
  DelaySupport support;
  std::vector<CVec> delay;
  std::vector<CVec> doppler;
};
WaveformDump read_waveforms(const std::string& path);

}  // namespace disac
