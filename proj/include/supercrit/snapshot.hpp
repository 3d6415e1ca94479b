#pragma once

#include <filesystem>
#include <variant>

#include "supercrit/state.hpp"

namespace supercrit {

// One JSON header line {d,N,L,t,kind} followed by little-endian float64
// payload: u then u_t for "wave", interleaved re/im for "nls".
void write_snapshot(const std::filesystem::path& path, const WaveState& s);
void write_snapshot(const std::filesystem::path& path, const NlsState& s);

std::variant<WaveState, NlsState> read_snapshot(const std::filesystem::path& path);

}  // namespace supercrit
