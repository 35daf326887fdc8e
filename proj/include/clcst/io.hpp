#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "clcst/clcst.hpp"

namespace clcst {

// Binary layout (little-endian):
//   "CLCG" | u16 version | u16 n | u16 axis count | u32 size per axis | u32 blade count
//   | f64 payload, blade-major, then row-major over the axes.
// Metadata goes to a JSON sidecar at <path>.json.

constexpr std::uint16_t kFormatVersion = 1;

void write_grid(const GridSignal& f, const std::string& path);
GridSignal read_grid(const std::string& path);

void write_volume(const CLCSTVolume& vol, const std::string& path);
CLCSTVolume read_volume(const std::string& path);

/// |V| over b for one (u, theta) slice, one row per b point: coordinates, then modulus.
void write_slice_csv(const CLCSTVolume& vol, std::size_t u_index, std::size_t theta_index, const std::string& path);

nlohmann::json grid_spec_json(const GridSpec& g);
GridSpec grid_spec_from_json(const nlohmann::json& j);
nlohmann::json lct_json(const LCTParams& M);
LCTParams lct_from_json(const nlohmann::json& j);

}  // namespace clcst
