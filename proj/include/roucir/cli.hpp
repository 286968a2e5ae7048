#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace roucir::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDomain = 3;

/// Options shared by the commands; unset values fall back to the config file
/// and then to the built-in defaults (T = 5, dt = 1e-3).
struct CommonOptions {
    std::optional<std::string> config;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::optional<double> dt;
    std::optional<double> horizon;
};

int run_simulate(const std::string& scheme, const CommonOptions& options, std::ostream& err);

int run_figure1(const std::vector<double>& hurst_list, std::optional<double> epsilon,
                const CommonOptions& options, std::ostream& err);

int run_figure2(const std::vector<double>& eps_ladder, const CommonOptions& options,
                std::ostream& err);

int run_verify(const std::string& suite, std::ostream& out, std::ostream& err,
               bool verbose = false);

}  // namespace roucir::cli
