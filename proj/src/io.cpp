#include "nk/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace nk::io {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(std::ostream& os, const std::vector<std::string>& header) : os_(os), width_(header.size()) {
    for (size_t i = 0; i < header.size(); ++i) os_ << (i ? "," : "") << header[i];
    os_ << '\n';
}

void CsvWriter::row(const std::vector<Cell>& cells) {
    if (cells.size() != width_) throw std::invalid_argument("CSV row width does not match header");
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) os_ << ',';
        const Cell& c = cells[i];
        if (auto d = std::get_if<double>(&c)) os_ << format_double(*d);
        else if (auto l = std::get_if<long>(&c)) os_ << *l;
        else if (auto s = std::get_if<std::string>(&c)) os_ << *s;
    }
    os_ << '\n';
}

size_t CsvTable::column(const std::string& name) const {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw std::out_of_range("no CSV column named " + name);
    return static_cast<size_t>(it - header.begin());
}

bool CsvTable::is_empty(size_t row, size_t col) const { return rows.at(row).at(col).empty(); }

double CsvTable::number(size_t row, size_t col) const {
    const std::string& s = rows.at(row).at(col);
    double v = 0.0;
    // from_chars accepts subnormals, which stod rejects as out of range
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || end != s.data() + s.size() || ec != std::errc())
        throw std::invalid_argument("not a number: " + s);
    return v;
}

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

CsvTable read_csv(std::istream& is) {
    CsvTable t;
    std::string line;
    bool have_header = false;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto cells = split(line);
        if (!have_header) {
            t.header = std::move(cells);
            have_header = true;
            continue;
        }
        if (cells.size() != t.header.size()) throw std::runtime_error("CSV row width does not match header");
        t.rows.push_back(std::move(cells));
    }
    if (!have_header) throw std::runtime_error("CSV input has no header");
    return t;
}

CsvTable read_csv_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    return read_csv(f);
}

void write_block_marker(std::ostream& os, const std::string& name) { os << "# block: " << name << '\n'; }

CsvTable read_csv_block(std::istream& is, const std::string& name) {
    const std::string marker = "# block: " + name;
    std::string line;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line == marker) break;
    }
    if (line != marker) throw std::runtime_error("no CSV block named " + name);
    std::stringstream body;
    while (std::getline(is, line)) {
        if (!line.empty() && line[0] == '#') break;
        if (line.empty()) continue;
        body << line << '\n';
    }
    return read_csv(body);
}

namespace {

constexpr double kW = 640, kH = 480, kPad = 50;

void svg_open(std::ostream& os, const std::string& title) {
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
       << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
       << title << "</text>\n";
}

void svg_axes(std::ostream& os, double xmin, double xmax, double ymin, double ymax) {
    os << "<rect x=\"" << kPad << "\" y=\"" << kPad << "\" width=\"" << kW - 2 * kPad << "\" height=\"" << kH - 2 * kPad
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    auto label = [&](double x, double y, const std::string& s, const char* anchor) {
        os << "<text x=\"" << x << "\" y=\"" << y << "\" text-anchor=\"" << anchor
           << "\" font-family=\"sans-serif\" font-size=\"10\">" << s << "</text>\n";
    };
    char b[32];
    std::snprintf(b, sizeof b, "%.3g", xmin);
    label(kPad, kH - kPad + 14, b, "start");
    std::snprintf(b, sizeof b, "%.3g", xmax);
    label(kW - kPad, kH - kPad + 14, b, "end");
    std::snprintf(b, sizeof b, "%.3g", ymin);
    label(kPad - 4, kH - kPad, b, "end");
    std::snprintf(b, sizeof b, "%.3g", ymax);
    label(kPad - 4, kPad + 8, b, "end");
}

}  // namespace

void write_svg_lines(std::ostream& os, const std::vector<Series>& series, const std::string& title) {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
    for (const auto& s : series)
        for (size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    if (!(xmax > xmin)) { xmin -= 1; xmax += 1; }
    if (!(ymax > ymin)) { ymin -= 1; ymax += 1; }
    svg_open(os, title);
    svg_axes(os, xmin, xmax, ymin, ymax);
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
    int ci = 0;
    for (const auto& s : series) {
        os << "<polyline fill=\"none\" stroke-width=\"1\" stroke=\"" << colors[ci++ % 6] << "\" points=\"";
        for (size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            const double px = kPad + (s.x[i] - xmin) / (xmax - xmin) * (kW - 2 * kPad);
            const double py = kH - kPad - (s.y[i] - ymin) / (ymax - ymin) * (kH - 2 * kPad);
            os << px << ',' << py << ' ';
        }
        os << "\"/>\n";
    }
    os << "</svg>\n";
}

void write_svg_heatmap(std::ostream& os, const std::vector<double>& values, int nx, int ny, double xmin, double xmax,
                       double ymin, double ymax, const std::string& title) {
    if (values.size() != static_cast<size_t>(nx) * ny) throw std::invalid_argument("heatmap size mismatch");
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (double v : values)
        if (std::isfinite(v)) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    if (!(hi > lo)) hi = lo + 1.0;
    svg_open(os, title);
    const double cw = (kW - 2 * kPad) / nx, ch = (kH - 2 * kPad) / ny;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            const double v = values[static_cast<size_t>(j) * nx + i];
            const int g = std::isfinite(v) ? static_cast<int>(255.0 * (1.0 - (v - lo) / (hi - lo))) : 255;
            os << "<rect x=\"" << kPad + i * cw << "\" y=\"" << kH - kPad - (j + 1) * ch << "\" width=\"" << cw + 0.5
               << "\" height=\"" << ch + 0.5 << "\" fill=\"rgb(" << g << ',' << g << ',' << g << ")\"/>\n";
        }
    svg_axes(os, xmin, xmax, ymin, ymax);
    os << "</svg>\n";
}

}  // namespace nk::io
