#pragma once

#include <filesystem>
#include <optional>

namespace nlqed::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int { kPass = 0, kUsage = 1, kScienceFailed = 2 };

struct CommandOptions {
  std::filesystem::path config;
  std::optional<std::filesystem::path> out;
  std::optional<double> tol;
  std::optional<std::size_t> refine;
};

int cmd_material_kk(const CommandOptions& options);
int cmd_green_verify(const CommandOptions& options);
int cmd_alpha(const CommandOptions& options);
int cmd_noise(const CommandOptions& options);
int cmd_pdc(const CommandOptions& options);

/// Parses argv, applies NLQED_THREADS and dispatches.
int run(int argc, char** argv);

}  // namespace nlqed::cli
