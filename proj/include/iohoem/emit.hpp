#pragma once

// Result tables and their CSV / JSON serialization.
//
// CSV: metadata as "# key: value" lines, then the header t,x,observable,re,im
// and one row per sample with 17 significant digits.
// JSON: {"metadata": {...}, "columns": [...], "rows": [[t, x, observable, re, im], ...]}.

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace iohoem {

struct ResultRow {
    double t = 0.0;
    double x = 0.0;
    std::string observable;
    double re = 0.0;
    double im = 0.0;

    bool operator==(const ResultRow&) const = default;
};

struct ResultTable {
    std::vector<std::pair<std::string, std::string>> metadata;  // insertion ordered
    std::vector<ResultRow> rows;

    void set_meta(const std::string& key, const std::string& value);
    std::string meta(const std::string& key) const;  // empty when absent
    bool operator==(const ResultTable&) const = default;
};

inline constexpr const char* CSV_HEADER = "t,x,observable,re,im";

void write_csv(const ResultTable& table, std::ostream& out);
void write_json(const ResultTable& table, std::ostream& out);
ResultTable read_csv(std::istream& in);
ResultTable read_json(std::istream& in);

// Writes to `path` in the given format ("csv" or "json"); throws
// std::runtime_error on IO failure.
void emit(const ResultTable& table, const std::string& path, const std::string& format);
ResultTable load(const std::string& path, const std::string& format);

}  // namespace iohoem
