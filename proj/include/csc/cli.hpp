#pragma once

#include <string>

#include "csc/config.hpp"

namespace csc {

struct CommandOptions {
  std::string config_path;
  std::string out_dir = ".";
  Overrides overrides;
  std::string dump_lift_dir;  // simulate: also dump G/H/Z when nonempty
};

// Runs one closed loop; writes run.json and trace.csv; prints rms and
// average sparsity.
int cmd_simulate(const CommandOptions& opts);

// Runs the configured parameter sweep (seed ensemble per value, values in
// ascending order, points executed concurrently); writes sweep.csv.
int cmd_sweep(const CommandOptions& opts);

// Sparse run, truncated-ridge run on its sparsity schedule, and plain
// ridge; writes compare.csv and prints which controller wins.
int cmd_compare(const CommandOptions& opts);

// Per-period byte table for the configured run; writes codec.csv.
int cmd_codec_stats(const CommandOptions& opts);

}  // namespace csc
