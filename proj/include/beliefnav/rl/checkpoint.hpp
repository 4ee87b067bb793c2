#pragma once

#include <filesystem>

#include "beliefnav/rl/network.hpp"

namespace beliefnav::rl {

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Versioned flat binary: magic, version, architecture (in-channels plus
// (out-channels, dilation) pairs), parameter checksum, then the row-major
// parameter array as little-endian doubles.
void save_checkpoint(const std::filesystem::path& path, const QNetwork& net);
QNetwork load_checkpoint(const std::filesystem::path& path);

}  // namespace beliefnav::rl
