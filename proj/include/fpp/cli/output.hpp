#pragma once

#include <span>
#include <string>
#include <vector>

#include "fpp/estimators.hpp"

namespace fpp::cli {

/// Number formatting shared by every artifact: 12 significant digits, "inf" for +inf.
std::string format_number(double value);

/// Comma-separated table with '\n' line endings.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);

    CsvTable& row();
    CsvTable& cell(double value);
    CsvTable& cell(long long value);
    CsvTable& cell(int value) { return cell(static_cast<long long>(value)); }
    CsvTable& cell(std::size_t value) { return cell(static_cast<long long>(value)); }
    CsvTable& cell(const std::string& value);

    std::string str() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> error; // half-widths of the error bars; empty for none
};

/// Line plot with error bars, axes, ticks and a legend.
std::string series_svg(const std::string& title, const std::string& x_label, const std::string& y_label,
                       const std::vector<PlotSeries>& series);

/// Overlay of S/t (unit cells z + [0,1)^2 drawn as row runs) on the outline of
/// the reference ball. Two-dimensional boxes only.
std::string shape_svg(const std::string& title, const Box& box, std::span<const std::size_t> members, double t,
                      const ReferenceBall& reference);

} // namespace fpp::cli
