#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace poolann {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitVerifyFailure = 2;
inline constexpr int kExitResourceRefusal = 3;

// Parsed command line. Flags may also come from a key=value config file
// (--config); explicit flags win.
struct RunConfig {
    std::string command;  // fairness | sweep | verify | simulate
    int la = 0;
    int lb = 0;
    double pa = 0.0;
    double pb = 0.0;
    double fa = 1.0;
    double fb = 1.0;
    std::string method = "auto";  // auto | exact | enumerate | mc
    std::uint64_t replications = 0;
    std::uint64_t seed = 0;
    std::string out_path;
    std::string figure;
    int threads = 1;
    int max_l = 200;
    bool expect_fail = false;
    // explicit sweep grid (alternative to --figure)
    double pb_min = 0.0;
    double pb_max = 0.0;
    double pb_step = 0.0;
    std::string metric = "gain";  // gain | conditional
};

// Runs one CLI invocation against the given streams and returns the process
// exit code (0 ok, 1 validation, 2 verification failure, 3 refused resource).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace poolann
