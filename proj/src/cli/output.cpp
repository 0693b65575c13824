#include "fpp/cli/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "fpp/errors.hpp"

namespace fpp::cli {

std::string format_number(double value)
{
    if (value == kInfinity) return "inf";
    if (value == -kInfinity) return "-inf";
    if (std::isnan(value)) return "nan";
    if (value == 0.0) return "0"; // also folds -0
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

CsvTable& CsvTable::row()
{
    rows_.emplace_back();
    return *this;
}

CsvTable& CsvTable::cell(double value) { return cell(format_number(value)); }

CsvTable& CsvTable::cell(long long value) { return cell(std::to_string(value)); }

CsvTable& CsvTable::cell(const std::string& value)
{
    if (rows_.empty()) throw DomainError("CsvTable::cell called before row()");
    if (rows_.back().size() >= header_.size()) throw DomainError("CSV row has more cells than the header");
    rows_.back().push_back(value);
    return *this;
}

std::string CsvTable::str() const
{
    std::string out;
    auto line = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += cells[i];
        }
        out += '\n';
    };
    line(header_);
    for (const auto& r : rows_) {
        if (r.size() != header_.size()) throw DomainError("CSV row is shorter than the header");
        line(r);
    }
    return out;
}

namespace {

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 70, kRight = 160, kTop = 40, kBottom = 50;

const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", std::abs(v) < 1e-12 ? 0.0 : v);
    return buf;
}

std::string escape_xml(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

struct Range {
    double lo = 0, hi = 1;
    void pad()
    {
        if (!(hi > lo)) {
            lo -= 0.5;
            hi += 0.5;
        }
        const double m = 0.05 * (hi - lo);
        lo -= m;
        hi += m;
    }
};

} // namespace

std::string series_svg(const std::string& title, const std::string& x_label, const std::string& y_label,
                       const std::vector<PlotSeries>& series)
{
    Range xr{kInfinity, -kInfinity}, yr{kInfinity, -kInfinity};
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            const double e = i < s.error.size() && std::isfinite(s.error[i]) ? s.error[i] : 0.0;
            xr.lo = std::min(xr.lo, s.x[i]);
            xr.hi = std::max(xr.hi, s.x[i]);
            yr.lo = std::min(yr.lo, s.y[i] - e);
            yr.hi = std::max(yr.hi, s.y[i] + e);
        }
    if (xr.lo > xr.hi) xr = {0, 1};
    if (yr.lo > yr.hi) yr = {0, 1};
    xr.pad();
    yr.pad();
    const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
    auto X = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
    auto Y = [&](double y) { return kTop + (yr.hi - y) / (yr.hi - yr.lo) * ph; };

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight << "\" viewBox=\"0 0 "
      << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<text x=\"" << fmt(kLeft + pw / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << escape_xml(title)
      << "</text>\n";
    o << "<rect x=\"" << fmt(kLeft) << "\" y=\"" << fmt(kTop) << "\" width=\"" << fmt(pw) << "\" height=\"" << fmt(ph)
      << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double xv = xr.lo + k * (xr.hi - xr.lo) / 4, yv = yr.lo + k * (yr.hi - yr.lo) / 4;
        o << "<line x1=\"" << fmt(X(xv)) << "\" y1=\"" << fmt(kTop + ph) << "\" x2=\"" << fmt(X(xv)) << "\" y2=\""
          << fmt(kTop + ph + 5) << "\" stroke=\"black\"/>";
        o << "<text x=\"" << fmt(X(xv)) << "\" y=\"" << fmt(kTop + ph + 18) << "\" text-anchor=\"middle\">" << tick_label(xv)
          << "</text>\n";
        o << "<line x1=\"" << fmt(kLeft - 5) << "\" y1=\"" << fmt(Y(yv)) << "\" x2=\"" << fmt(kLeft) << "\" y2=\""
          << fmt(Y(yv)) << "\" stroke=\"black\"/>";
        o << "<text x=\"" << fmt(kLeft - 8) << "\" y=\"" << fmt(Y(yv) + 4) << "\" text-anchor=\"end\">" << tick_label(yv)
          << "</text>\n";
    }
    o << "<text x=\"" << fmt(kLeft + pw / 2) << "\" y=\"" << fmt(kHeight - 10) << "\" text-anchor=\"middle\">"
      << escape_xml(x_label) << "</text>\n";
    o << "<text transform=\"translate(16 " << fmt(kTop + ph / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
      << escape_xml(y_label) << "</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        const char* color = kColors[si % std::size(kColors)];
        std::string pts;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            if (!pts.empty()) pts += ' ';
            pts += fmt(X(s.x[i])) + "," + fmt(Y(s.y[i]));
        }
        o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"" << pts << "\"/>\n";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            const double cx = X(s.x[i]), cy = Y(s.y[i]);
            if (i < s.error.size() && std::isfinite(s.error[i]) && s.error[i] > 0) {
                const double y0 = Y(s.y[i] - s.error[i]), y1 = Y(s.y[i] + s.error[i]);
                o << "<path d=\"M" << fmt(cx) << ',' << fmt(y0) << "V" << fmt(y1) << "M" << fmt(cx - 4) << ',' << fmt(y0) << "h8M"
                  << fmt(cx - 4) << ',' << fmt(y1) << "h8\" stroke=\"" << color << "\"/>";
            }
            o << "<circle cx=\"" << fmt(cx) << "\" cy=\"" << fmt(cy) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        }
        const double ly = kTop + 14 + 18 * static_cast<double>(si);
        o << "<line x1=\"" << fmt(kWidth - kRight + 12) << "\" y1=\"" << fmt(ly - 4) << "\" x2=\"" << fmt(kWidth - kRight + 32)
          << "\" y2=\"" << fmt(ly - 4) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>";
        o << "<text x=\"" << fmt(kWidth - kRight + 38) << "\" y=\"" << fmt(ly) << "\">" << escape_xml(s.label) << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

std::string shape_svg(const std::string& title, const Box& box, std::span<const std::size_t> members, double t,
                      const ReferenceBall& reference)
{
    if (box.dimension() != 2) throw DomainError("shape overlays are two-dimensional");
    constexpr double size = 480, margin = 30;
    double extent = reference.extent();
    for (std::size_t v : members)
        for (int a = 0; a < 2; ++a) extent = std::max(extent, (std::abs(box.coord(v, a)) + 1) / t);
    extent *= 1.05;
    const double scale = (size - 2 * margin) / (2 * extent);
    auto X = [&](double x) { return margin + (x + extent) * scale; };
    auto Y = [&](double y) { return margin + (extent - y) * scale; };

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size + 20 << "\" viewBox=\"0 0 "
      << size << ' ' << size + 20 << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<text x=\"" << fmt(size / 2) << "\" y=\"18\" text-anchor=\"middle\" font-size=\"14\">" << escape_xml(title)
      << "</text>\n";
    o << "<g transform=\"translate(0 20)\">\n";
    o << "<line x1=\"" << fmt(X(-extent)) << "\" y1=\"" << fmt(Y(0)) << "\" x2=\"" << fmt(X(extent)) << "\" y2=\"" << fmt(Y(0))
      << "\" stroke=\"#ccc\"/><line x1=\"" << fmt(X(0)) << "\" y1=\"" << fmt(Y(-extent)) << "\" x2=\"" << fmt(X(0))
      << "\" y2=\"" << fmt(Y(extent)) << "\" stroke=\"#ccc\"/>\n";

    // members are in increasing vertex order, so rows (fixed x_1) come out contiguous in x_2
    std::vector<std::size_t> sorted(members.begin(), members.end());
    std::sort(sorted.begin(), sorted.end());
    o << "<path fill=\"#1f77b4\" fill-opacity=\"0.55\" d=\"";
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        while (j + 1 < sorted.size() && sorted[j + 1] == sorted[j] + 1 && box.coord(sorted[j + 1], 0) == box.coord(sorted[i], 0))
            ++j;
        const double x0 = box.coord(sorted[i], 0) / t, y0 = box.coord(sorted[i], 1) / t;
        const double y1 = (box.coord(sorted[j], 1) + 1) / t;
        o << 'M' << fmt(X(x0)) << ',' << fmt(Y(y0)) << 'H' << fmt(X(x0 + 1 / t)) << 'V' << fmt(Y(y1)) << 'H' << fmt(X(x0)) << 'Z';
        i = j + 1;
    }
    o << "\"/>\n";

    std::string outline;
    for (int k = 0; k < 720; ++k) {
        const double a = 2 * std::numbers::pi * k / 720;
        const double dir[] = {std::cos(a), std::sin(a)};
        const double r = 1.0 / reference.gauge(dir);
        outline += (k ? " " : "") + fmt(X(r * dir[0])) + "," + fmt(Y(r * dir[1]));
    }
    o << "<polygon fill=\"none\" stroke=\"#d62728\" stroke-width=\"2\" points=\"" << outline << "\"/>\n";
    o << "</g>\n</svg>\n";
    return o.str();
}

} // namespace fpp::cli
