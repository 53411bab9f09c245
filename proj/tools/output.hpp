#pragma once

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

// Output plumbing for the CLI: run manifests, round-trip-safe CSV and
// JSON report files.
namespace qmem_cli {

inline constexpr const char* kVersion = "0.1.0";

// 17 significant digits: enough for exact double round trips.
inline std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

inline std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline nlohmann::json make_manifest(const std::string& command,
                                    const nlohmann::json& parameters,
                                    const std::vector<std::string>& outputs) {
    nlohmann::json m;
    m["command"] = command;
    m["version"] = kVersion;
    m["timestamp"] = utc_timestamp();
    m["parameters"] = parameters;
    m["outputs"] = outputs;
    return m;
}

// CSV with an embedded '#'-prefixed manifest line, a header row and
// 17-significant-digit numeric cells.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const nlohmann::json& manifest,
              const std::vector<std::string>& columns)
        : out_(path) {
        if (!out_) throw std::runtime_error("cannot open output file: " + path);
        out_ << "# " << manifest.dump() << "\n";
        for (std::size_t i = 0; i < columns.size(); ++i)
            out_ << (i ? "," : "") << columns[i];
        out_ << "\n";
    }

    void row(const std::vector<double>& values) {
        for (std::size_t i = 0; i < values.size(); ++i)
            out_ << (i ? "," : "") << fmt17(values[i]);
        out_ << "\n";
    }

private:
    std::ofstream out_;
};

// JSON report plus a sibling <path>.manifest.json; the report itself
// stays timestamp-free so identical inputs give identical bytes.
inline void write_json_report(const std::string& path,
                              const nlohmann::json& report,
                              const nlohmann::json& manifest) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << report.dump(2) << "\n";
    std::ofstream mout(path + ".manifest.json");
    if (!mout)
        throw std::runtime_error("cannot open manifest file for: " + path);
    mout << manifest.dump(2) << "\n";
}

inline std::string summary_path(const std::string& csv_path) {
    const std::string suffix = ".csv";
    if (csv_path.size() > suffix.size() &&
        csv_path.compare(csv_path.size() - suffix.size(), suffix.size(),
                         suffix) == 0)
        return csv_path.substr(0, csv_path.size() - suffix.size()) +
               ".summary.json";
    return csv_path + ".summary.json";
}

}  // namespace qmem_cli
