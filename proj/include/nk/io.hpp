#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace nk::io {

// A CSV cell: a number (written with 17 significant digits), text, or empty.
using Cell = std::variant<std::monostate, double, long, std::string>;

class CsvWriter {
public:
    CsvWriter(std::ostream& os, const std::vector<std::string>& header);
    void row(const std::vector<Cell>& cells);

private:
    std::ostream& os_;
    size_t width_;
};

std::string format_double(double v);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    size_t column(const std::string& name) const;  // throws std::out_of_range
    bool is_empty(size_t row, size_t col) const;
    double number(size_t row, size_t col) const;   // throws std::invalid_argument on non-numeric cells
};

CsvTable read_csv(std::istream& is);
CsvTable read_csv_file(const std::string& path);

// Reads the table that follows a "# block: name" line, up to the next '#' line or EOF.
CsvTable read_csv_block(std::istream& is, const std::string& name);
void write_block_marker(std::ostream& os, const std::string& name);

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

// Polyline plot with axes box and autoscaled bounds.
void write_svg_lines(std::ostream& os, const std::vector<Series>& series, const std::string& title);

// Grayscale heat map of a row-major ny-by-nx grid (row 0 at ymin).
void write_svg_heatmap(std::ostream& os, const std::vector<double>& values, int nx, int ny, double xmin, double xmax,
                       double ymin, double ymax, const std::string& title);

}  // namespace nk::io
