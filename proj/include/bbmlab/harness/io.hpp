#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "bbmlab/field.hpp"
#include "bbmlab/invariants.hpp"
#include "bbmlab/limit_lab.hpp"
#include "bbmlab/trace.hpp"

namespace bbmlab::harness {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

/// Comma-delimited file with a header row.
class CsvWriter {
public:
    CsvWriter(const fs::path& path, const std::vector<std::string>& header);
    void row(const std::vector<double>& values);
    /// Flushes and throws Error if any write failed.
    void close();

private:
    fs::path path_;
    std::string buffer_;
    std::size_t columns_;
};

/// Columns x,value.
void write_field_csv(const fs::path& path, const Field& field);
/// Columns k,re,im in DFT order.
void write_spectrum_csv(const fs::path& path, const Field& field);
/// Columns t,u0,...,u{n-1}.
void write_trace_csv(const fs::path& path, const Trace& trace);
/// Columns t,e0,e1,e2.
void write_invariants_csv(const fs::path& path, const InvariantLog& log);
/// Columns t,error.
void write_error_csv(const fs::path& path, const ErrorTrace& trace);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    /// Index of a header column; InputError naming the file if absent.
    std::size_t column(const std::string& name) const;
    std::string source;
};

/// Throws InputError naming the file if it is missing or malformed.
CsvTable read_csv(const fs::path& path);

void write_text(const fs::path& path, const std::string& text);
void write_json(const fs::path& path, const Json& value);
Json read_json(const fs::path& path);

std::string sha256_hex(const std::string& data);
/// Current UTC time as ISO 8601 with seconds.
std::string utc_timestamp();

/// Written last into every output directory as the completion marker.
struct RunManifest {
    std::string command;
    std::string config_hash;
    std::uint64_t seed = 0;
    std::string version;
    std::string started;
    std::string finished;
    std::string status;  ///< pass, fail, incomplete or blow-up
    int exit_code = 0;
    std::vector<std::string> files;  ///< relative to the output directory
    std::vector<std::string> warnings;

    Json to_json() const;
    void write(const fs::path& dir) const;
};

}  // namespace bbmlab::harness
