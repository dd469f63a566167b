#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "cli/run_config.hpp"

namespace mtcsim::cli {

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitInput = 1,
  kExitSolver = 2,
  kExitIo = 3,
};

struct CommandContext {
  RunConfig config;
  std::filesystem::path out_dir;
  unsigned threads = 1;
  std::ostream* out = nullptr;  // human-readable summary
  std::ostream* err = nullptr;  // warnings
};

/// Each command writes its artifacts into ctx.out_dir and returns an exit
/// code; errors propagate as mtcsim exceptions.
int cmd_steady(const CommandContext& ctx);
int cmd_transient(const CommandContext& ctx);
int cmd_sweep_fit(const CommandContext& ctx);
int cmd_calibrate(const CommandContext& ctx);
int cmd_report(const CommandContext& ctx);

/// Full command line: `mtcsim <command> --config <file> [--out <dir>]`.
/// Never throws; maps errors to the exit codes above.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Value of MTCSIM_THREADS, or the hardware concurrency when unset.
/// Throws InputError for anything but a positive integer.
unsigned threads_from_environment();

}  // namespace mtcsim::cli
