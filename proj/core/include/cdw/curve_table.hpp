#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

namespace cdw {

// Fixed 16-significant-digit scientific notation, '.' decimal separator.
// NaN is written as an empty field (a missing value).
[[nodiscard]] std::string format_number(double v);

// Named columns plus rows of numbers; backs every CSV artifact.
class CurveTable {
public:
    CurveTable() = default;
    explicit CurveTable(std::vector<std::string> columns);

    // DomainError when the arity does not match the header.
    void add_row(std::vector<double> row);

    [[nodiscard]] const std::vector<std::string>& columns() const noexcept { return columns_; }
    [[nodiscard]] const std::vector<std::vector<double>>& rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t size() const noexcept { return rows_.size(); }

    [[nodiscard]] std::vector<double> column(const std::string& name) const;

    void write_csv(std::ostream& out) const;

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<double>> rows_;
};

}  // namespace cdw
