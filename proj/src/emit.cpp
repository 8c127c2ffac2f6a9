#include "iohoem/emit.hpp"

#include "iohoem/errors.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace iohoem {

void ResultTable::set_meta(const std::string& key, const std::string& value)
{
    for (auto& [k, v] : metadata)
        if (k == key) {
            v = value;
            return;
        }
    metadata.emplace_back(key, value);
}

std::string ResultTable::meta(const std::string& key) const
{
    for (const auto& [k, v] : metadata)
        if (k == key)
            return v;
    return "";
}

namespace {

std::string num(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double to_double(const std::string& s)
{
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size())
        throw std::runtime_error("malformed number '" + s + "'");
    return v;
}

}  // namespace

void write_csv(const ResultTable& table, std::ostream& out)
{
    for (const auto& [k, v] : table.metadata)
        out << "# " << k << ": " << v << "\n";
    out << CSV_HEADER << "\n";
    for (const auto& r : table.rows) {
        if (r.observable.find_first_of(",\n") != std::string::npos)
            throw std::runtime_error("observable names must not contain commas or newlines");
        out << num(r.t) << ',' << num(r.x) << ',' << r.observable << ',' << num(r.re) << ',' << num(r.im) << "\n";
    }
}

void write_json(const ResultTable& table, std::ostream& out)
{
    nlohmann::ordered_json j;
    j["metadata"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : table.metadata)
        j["metadata"][k] = v;
    j["columns"] = {"t", "x", "observable", "re", "im"};
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : table.rows)
        j["rows"].push_back({r.t, r.x, r.observable, r.re, r.im});
    out << j.dump(1) << "\n";
}

ResultTable read_csv(std::istream& in)
{
    ResultTable t;
    std::string line;
    bool header = false;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        if (!header && line.rfind("# ", 0) == 0) {
            const auto colon = line.find(": ", 2);
            if (colon == std::string::npos)
                throw std::runtime_error("malformed metadata line: " + line);
            t.metadata.emplace_back(line.substr(2, colon - 2), line.substr(colon + 2));
            continue;
        }
        if (!header) {
            if (line != CSV_HEADER)
                throw std::runtime_error("unexpected CSV header: " + line);
            header = true;
            continue;
        }
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            f.push_back(cell);
        if (f.size() != 5)
            throw std::runtime_error("CSV row must have 5 fields: " + line);
        t.rows.push_back({to_double(f[0]), to_double(f[1]), f[2], to_double(f[3]), to_double(f[4])});
    }
    if (!header)
        throw std::runtime_error("CSV header missing");
    return t;
}

ResultTable read_json(std::istream& in)
{
    const auto j = nlohmann::ordered_json::parse(in);
    ResultTable t;
    for (const auto& [k, v] : j.at("metadata").items())
        t.metadata.emplace_back(k, v.get<std::string>());
    for (const auto& r : j.at("rows"))
        t.rows.push_back({r.at(0).get<double>(), r.at(1).get<double>(), r.at(2).get<std::string>(),
                          r.at(3).get<double>(), r.at(4).get<double>()});
    return t;
}

void emit(const ResultTable& table, const std::string& path, const std::string& format)
{
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    if (format == "csv")
        write_csv(table, f);
    else if (format == "json")
        write_json(table, f);
    else
        throw std::runtime_error("unknown output format '" + format + "'");
    if (!f)
        throw std::runtime_error("write to '" + path + "' failed");
}

ResultTable load(const std::string& path, const std::string& format)
{
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot open '" + path + "'");
    if (format == "csv")
        return read_csv(f);
    if (format == "json")
        return read_json(f);
    throw std::runtime_error("unknown format '" + format + "'");
}

}  // namespace iohoem
