#pragma once

#include <string>
#include <vector>

#include "q1d/common.hpp"
#include "q1d/state.hpp"

namespace q1d {

// Binary state snapshot: little-endian, fixed header
//   magic "Q1DSNAP1" | u32 version | u32 N | i32 levels | i32 quad_nodes |
//   i32 z_points | f64 z_length | i32 ordering_version | u64 coeff count |
// followed by interleaved re/im f64 pairs.  Round trips are bit exact.
void save_state(const ManyBodyState& state, const std::string& path);
ManyBodyState load_state(const std::string& path);

void write_lines(const std::string& path, const std::vector<std::string>& lines);

std::string fnv1a_hex(const std::string& text);

}  // namespace q1d
