#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "sshlab/config.hpp"
#include "sshlab/io.hpp"

namespace sshlab {

struct EmittedFile {
  std::filesystem::path path;  // relative to the output directory
  std::string sha256;
  std::size_t bytes = 0;
};

struct ExperimentReport {
  Command command = Command::spectrum;
  std::string name;
  std::filesystem::path output_dir;
  std::vector<EmittedFile> files;
  io::json summary;
  bool ok = true;
  std::string error;
};

struct RunOptions {
  int threads = 1;
};

/// Validates `config`, runs it and writes the requested files plus a
/// manifest.json (file list with SHA-256 digests, summary, status).
///
/// ValidationError is thrown before anything touches the output directory.
/// A ComputationError raised mid-run is rethrown after the manifest has been
/// written with status "failed".
ExperimentReport run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

}  // namespace sshlab
