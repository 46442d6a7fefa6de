#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "sparseproc/synthesis.hpp"

namespace ssp {

/// Configuration failure with the offending key and line (0 = not tied to a
/// specific line).
struct ConfigError : std::runtime_error {
    std::string key;
    int line = 0;
    ConfigError(const std::string& message, std::string bad_key = "", int bad_line = 0)
        : std::runtime_error(message), key(std::move(bad_key)), line(bad_line) {}
};

/// Sectioned key=value file: `[section]` headers, `key = value` lines, `#`
/// comments. Keys are addressed as "section.key". Every key that is read is
/// recorded with its resolved value (including defaulted ones) so the full
/// effective configuration can be reproduced; keys that are present but
/// never read are reported as unknown.
class KeyValueConfig {
public:
    static KeyValueConfig from_file(const std::string& path);
    static KeyValueConfig from_string(const std::string& text);

    bool has(const std::string& key) const;
    int line_of(const std::string& key) const;

    std::string text(const std::string& key, const std::string& fallback) const;
    double number(const std::string& key, double fallback) const;
    std::uint64_t integer(const std::string& key, std::uint64_t fallback) const;
    std::vector<std::string> list(const std::string& key,
                                  const std::vector<std::string>& fallback) const;
    /// Comma-separated complex values: "-0.1", "1.5i", "-0.5+0.3i".
    std::vector<cplx> complex_list(const std::string& key, const std::vector<cplx>& fallback) const;
    std::vector<double> number_list(const std::string& key,
                                    const std::vector<double>& fallback) const;

    /// Keys present in the file but never read; non-empty means a typo or an
    /// unsupported option.
    std::vector<std::string> unused_keys() const;
    void reject_unused() const;

    /// "key=value" pairs of everything that was read, sorted by key.
    std::string resolved_summary() const;

private:
    struct Entry {
        std::string value;
        int line = 0;
        mutable bool used = false;
    };
    std::map<std::string, Entry> entries_;
    mutable std::map<std::string, std::string> resolved_;
};

cplx parse_complex(const std::string& token);

/// Fully resolved experiment description shared by the CLI subcommands.
struct ExperimentSetup {
    ProcessSpec process;
    std::uint64_t seed = 1;
    std::size_t realizations = 200;
    std::string format = "csv";

    double pdf_time = 1.0;           // pdf
    double tau_max = 5.0;            // stats
    double omega_max = 8.0;          // stats
    std::vector<std::string> transforms{"klt", "dct", "haar", "espline"}; // mterm
    double espline_alpha = -0.1;     // mterm
    int levels = 6;                  // mterm
    std::size_t signal_length = 1024;// mterm
    std::size_t oversample = 16;     // mterm: synthesis cells per sample

    std::string summary; ///< resolved key=value record for output comments
};

/// Build the setup for one experiment from a parsed config, then reject any
/// leftover unknown keys. `experiment` is the subcommand name.
ExperimentSetup resolve_experiment(const KeyValueConfig& cfg, const std::string& experiment);

} // namespace ssp
