#include "actch/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "actch/errors.hpp"

namespace actch {

void CsvTable::add_row(std::vector<CsvValue> row) {
    if (row.size() != header.size())
        throw std::invalid_argument("CsvTable: row width does not match header");
    rows.push_back(std::move(row));
}

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string CsvTable::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out += ',';
        out += header[i];
    }
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            if (const auto* d = std::get_if<double>(&row[i]))
                out += format_real(*d);
            else if (const auto* n = std::get_if<long long>(&row[i]))
                out += std::to_string(*n);
            else
                out += std::get<std::string>(row[i]);
        }
        out += '\n';
    }
    return out;
}

void emit_csv(const CsvTable& table, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open output file '" + path + "'");
    const std::string body = table.to_string();
    f.write(body.data(), static_cast<std::streamsize>(body.size()));
    if (!f) throw ConfigError("failed writing output file '" + path + "'");
}

CsvTable parse_csv(const std::string& text) {
    CsvTable table;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        std::vector<std::string> fields;
        std::string field;
        std::istringstream ls(line);
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (!line.empty() && line.back() == ',') fields.push_back("");
        if (first) {
            table.header = fields;
            first = false;
            continue;
        }
        std::vector<CsvValue> row;
        row.reserve(fields.size());
        for (auto& fstr : fields) {
            try {
                std::size_t pos = 0;
                const double d = std::stod(fstr, &pos);
                if (pos == fstr.size()) {
                    row.emplace_back(d);
                    continue;
                }
            } catch (...) {
            }
            row.emplace_back(std::move(fstr));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace actch
