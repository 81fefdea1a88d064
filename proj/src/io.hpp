#pragma once

#include "diagnostics.hpp"
#include "grid.hpp"
#include "initial.hpp"
#include "params.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ccfv::io {

/// Parse/validation failure; message names the key and line.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& msg, std::string key = {}, int line = 0)
        : std::runtime_error(msg), key_(std::move(key)), line_(line) {}
    const std::string& key() const { return key_; }
    int line() const { return line_; }

private:
    std::string key_;
    int line_;
};

/// Everything a run needs, from one `key = value` text.
struct RunConfig {
    Grid2D grid;
    Parameters params;
    InitialCondition ic;
    double record_every = 0.1;
    bool evolve_w = false;
    std::string output_dir = ".";
    std::optional<double> upvq_p;
    std::optional<double> upvq_q;

    std::optional<std::pair<double, double>> upvq_exponents() const {
        if (upvq_p && upvq_q) return std::make_pair(*upvq_p, *upvq_q);
        return std::nullopt;
    }
};

/// Line-oriented `key = value` parser, `#` starts a comment. Unknown,
/// duplicate or missing keys and invariant violations throw ConfigError
/// naming the key and line.
RunConfig parse_config(const std::string& text);
RunConfig parse_config_file(const std::string& path);

/// Canonical text that reparses to an identical RunConfig.
std::string serialize_config(const RunConfig& cfg);

extern const char* const kTimeseriesHeader;

/// CSV with the exact pinned header; shortest round-trip decimals; a missing
/// upvq serializes as an empty field. Whole-file atomic (temp + rename).
void write_timeseries_csv(const std::vector<DiagnosticsRecord>& records,
                          const std::string& path);
std::vector<DiagnosticsRecord> read_timeseries_csv(const std::string& path);

/// Grid-free snapshot payload (serialization works on raw dims).
struct RawField {
    int nx = 0, ny = 0;
    double lx = 0.0, ly = 0.0;
    double t = 0.0;
    std::string name;
    std::vector<double> values; // row-major from y-min
};

void write_field_snapshot(const RawField& f, const std::string& path);
void write_field_snapshot(const ScalarField& f, const std::string& name, double t,
                          const std::string& path);
RawField read_field_snapshot(const std::string& path);

/// Shortest round-trip decimal (to_chars).
std::string format_double(double x);

} // namespace ccfv::io
