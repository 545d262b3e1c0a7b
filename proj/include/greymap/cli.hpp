#pragma once

#include "greymap/engine.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace greymap::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kBadInput = 2;
inline constexpr int kUnsupported = 3;

// Runs one command. args excludes the program name. Data goes to out,
// diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// step,node,kernel,greyness with 12 significant digits; nodes count from 1.
std::string trace_csv(const Trajectory& trajectory);

// behavior=<kind> settle_step=<t|-> period=<P|->
std::string behavior_line(const Behavior& behavior);

} // namespace greymap::cli
