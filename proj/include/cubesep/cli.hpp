#pragma once

#include <iosfwd>
#include <string>

namespace cubesep::cli {

// Exit code contract shared by all subcommands.
constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct TableRequest {
    enum class Quantity { pdf, cdf, both };
    Quantity quantity = Quantity::both;
    int points = 200;
    double side_length = 1.0;
    std::string output_path = "-";  // "-" means standard output
};

// Full command-line surface; argv as passed to main. Output and diagnostics
// go to the given streams so the surface is testable in-process.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cubesep::cli
