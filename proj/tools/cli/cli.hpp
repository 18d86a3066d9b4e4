#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "phonent/experiment.hpp"

namespace phonent::cli {

enum ExitCode : int {
    kOk = 0,
    kInvariantFailure = 1,
    kInvalidInput = 2,
    kInternalError = 3,
    kOutputError = 4,
};

using KeyValues = std::map<std::string, std::string, std::less<>>;

/// Built-in values for every recognised key.
const KeyValues& default_values();

/// Parses `key = value` lines; `#` starts a comment. Throws InvalidArgument
/// on malformed lines or unknown keys.
KeyValues parse_config_text(std::string_view text);
KeyValues read_config_file(const std::string& path);

struct CliConfig {
    KeyValues values;  ///< defaults < config file < flags
    std::optional<std::string> output;
    bool verbose = false;

    bool has(std::string_view key) const;
    double number(std::string_view key) const;
    std::size_t count(std::string_view key) const;
    const std::string& text(std::string_view key) const;

    /// Builds and validates the experiment; maneuver is left at its default.
    ExperimentConfig experiment() const;
};

CliConfig merge_layers(const KeyValues& file, const KeyValues& flags);

/// At most 12 significant digits, "." separator, independent of locale.
std::string format_number(double value);

inline constexpr std::string_view kCsvHeader = "delta_phi,delta_tau,h,n0,n_pert,n_num,degradation_pct";

void write_csv(std::ostream& os, const std::vector<NegativityResult>& rows);

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace phonent::cli
