#include "bbmlab/harness/io.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

#include "bbmlab/errors.hpp"

namespace bbmlab::harness {

std::string format_double(double v) { return shortest(v); }

CsvWriter::CsvWriter(const fs::path& path, const std::vector<std::string>& header)
    : path_(path), columns_(header.size()) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i > 0) buffer_ += ',';
        buffer_ += header[i];
    }
    buffer_ += '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != columns_) throw Error("CSV row width does not match the header of " + path_.string());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) buffer_ += ',';
        buffer_ += format_double(values[i]);
    }
    buffer_ += '\n';
}

void CsvWriter::close() { write_text(path_, buffer_); }

void write_field_csv(const fs::path& path, const Field& field) {
    CsvWriter out(path, {"x", "value"});
    const auto& grid = field.grid();
    for (std::size_t j = 0; j < grid.size(); ++j) out.row({grid.x(j), field.physical()[j]});
    out.close();
}

void write_spectrum_csv(const fs::path& path, const Field& field) {
    CsvWriter out(path, {"k", "re", "im"});
    const auto& grid = field.grid();
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const auto& c = field.spectral()[j];
        out.row({static_cast<double>(grid.mode_index(j)), c.real(), c.imag()});
    }
    out.close();
}

void write_trace_csv(const fs::path& path, const Trace& trace) {
    if (trace.empty()) throw InputError("cannot write an empty trace to " + path.string());
    const std::size_t n = trace.front().field.grid().size();
    std::vector<std::string> header{"t"};
    for (std::size_t j = 0; j < n; ++j) header.push_back("u" + std::to_string(j));
    CsvWriter out(path, header);
    std::vector<double> row(n + 1);
    for (const auto& snap : trace) {
        row[0] = snap.time;
        std::copy(snap.field.physical().begin(), snap.field.physical().end(), row.begin() + 1);
        out.row(row);
    }
    out.close();
}

void write_invariants_csv(const fs::path& path, const InvariantLog& log) {
    CsvWriter out(path, {"t", "e0", "e1", "e2"});
    for (const auto& rec : log) out.row({rec.time, rec.values.e0, rec.values.e1, rec.values.e2});
    out.close();
}

void write_error_csv(const fs::path& path, const ErrorTrace& trace) {
    CsvWriter out(path, {"t", "error"});
    for (const auto& s : trace) out.row({s.time, s.error});
    out.close();
}

std::size_t CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    throw InputError(source + ": missing column '" + name + "'");
}

CsvTable read_csv(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("missing input file " + path.string());
    CsvTable table;
    table.source = path.string();
    std::string line;
    if (!std::getline(in, line) || line.empty()) throw InputError("empty CSV file " + path.string());
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) table.header.push_back(cell);
    }
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<double> row;
        std::size_t start = 0;
        while (start <= line.size()) {
            const std::size_t end = std::min(line.find(',', start), line.size());
            double v = 0.0;
            const auto res = std::from_chars(line.data() + start, line.data() + end, v);
            if (res.ec != std::errc() || res.ptr != line.data() + end) {
                throw InputError(path.string() + ":" + std::to_string(line_no) + ": malformed number");
            }
            row.push_back(v);
            start = end + 1;
        }
        if (row.size() != table.header.size()) {
            throw InputError(path.string() + ":" + std::to_string(line_no) + ": wrong number of columns");
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    out.close();
    if (!out) throw Error("failed to write " + path.string());
}

void write_json(const fs::path& path, const Json& value) { write_text(path, value.dump(2) + "\n"); }

Json read_json(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("missing input file " + path.string());
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw InputError(path.string() + ": invalid JSON: " + e.what());
    }
}

std::string sha256_hex(const std::string& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
        throw Error("SHA-256 computation failed");
    }
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < length; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xf];
    }
    return out;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

Json RunManifest::to_json() const {
    Json j;
    j["command"] = command;
    j["config_hash"] = config_hash;
    j["seed"] = seed;
    j["version"] = version;
    j["started"] = started;
    j["finished"] = finished;
    j["status"] = status;
    j["exit_code"] = exit_code;
    j["files"] = files;
    j["warnings"] = warnings;
    return j;
}

void RunManifest::write(const fs::path& dir) const { write_json(dir / "manifest.json", to_json()); }

}  // namespace bbmlab::harness
