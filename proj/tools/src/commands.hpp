#ifndef BJET_TOOLS_COMMANDS_HPP_
#define BJET_TOOLS_COMMANDS_HPP_

#include <string>

#include "config.hpp"

namespace bjet::cli {

// Exit codes shared with CI: 0 pass, 2 config, 3 range, 4 conditioning,
// 5 check-failure.
inline constexpr int kExitPass = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitRange = 3;
inline constexpr int kExitConditioning = 4;
inline constexpr int kExitCheckFailure = 5;

int cmd_metric(const RunConfig& cfg, const std::string& out_dir);
int cmd_extend(const RunConfig& cfg, const std::string& out_dir);
int cmd_sweep(const RunConfig& cfg, const std::string& out_dir);
int cmd_lemmas(const RunConfig& cfg, const std::string& out_dir);

}  // namespace bjet::cli

#endif  // BJET_TOOLS_COMMANDS_HPP_
