#include "cdw/curve_table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "cdw/errors.hpp"

namespace cdw {

std::string format_number(double v) {
    if (std::isnan(v)) return {};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15e", v);
    return buf;
}

CurveTable::CurveTable(std::vector<std::string> columns) : columns_(std::move(columns)) {
    require(!columns_.empty(), "CurveTable: no columns");
}

void CurveTable::add_row(std::vector<double> row) {
    require(row.size() == columns_.size(), "CurveTable: row arity " + std::to_string(row.size()) +
                                               " does not match header arity " +
                                               std::to_string(columns_.size()));
    rows_.push_back(std::move(row));
}

std::vector<double> CurveTable::column(const std::string& name) const {
    const auto it = std::find(columns_.begin(), columns_.end(), name);
    require(it != columns_.end(), "CurveTable: no column named " + name);
    const auto idx = static_cast<std::size_t>(it - columns_.begin());
    std::vector<double> out;
    out.reserve(rows_.size());
    for (const auto& r : rows_) out.push_back(r[idx]);
    return out;
}

void CurveTable::write_csv(std::ostream& out) const {
    for (std::size_t c = 0; c < columns_.size(); ++c) out << (c ? "," : "") << columns_[c];
    out << '\n';
    for (const auto& r : rows_) {
        for (std::size_t c = 0; c < r.size(); ++c) out << (c ? "," : "") << format_number(r[c]);
        out << '\n';
    }
}

}  // namespace cdw
