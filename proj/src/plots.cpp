#include "wbe/plots.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "wbe/exports.hpp"

namespace wbe {

namespace {

// Shared agent color cycle (UAV k and the k-th region use the same hue).
const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
constexpr int kPaletteSize = 10;

const char* palette(int k) {
    return kPalette[((k % kPaletteSize) + kPaletteSize) % kPaletteSize];
}

std::string fmt(double v) {
    return format_fixed(v, 2);
}

class SvgBuilder {
public:
    SvgBuilder(int width, int height) {
        out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
             << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' ' << height
             << "\">\n";
        out_ << "<rect width=\"" << width << "\" height=\"" << height
             << "\" fill=\"white\"/>\n";
    }

    void rect(double x, double y, double w, double h, const std::string& fill,
              const std::string& stroke = "none") {
        out_ << "<rect x=\"" << fmt(x) << "\" y=\"" << fmt(y) << "\" width=\"" << fmt(w)
             << "\" height=\"" << fmt(h) << "\" fill=\"" << fill << "\" stroke=\"" << stroke
             << "\"/>\n";
    }

    void circle(double cx, double cy, double r, const std::string& fill,
                const std::string& stroke = "none") {
        out_ << "<circle cx=\"" << fmt(cx) << "\" cy=\"" << fmt(cy) << "\" r=\"" << fmt(r)
             << "\" fill=\"" << fill << "\" stroke=\"" << stroke << "\"/>\n";
    }

    void polyline(const std::vector<std::pair<double, double>>& points,
                  const std::string& stroke, double width, bool dashed = false) {
        if (points.empty()) {
            return;
        }
        out_ << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\""
             << fmt(width) << "\"";
        if (dashed) {
            out_ << " stroke-dasharray=\"4 3\"";
        }
        out_ << " points=\"";
        for (std::size_t k = 0; k < points.size(); ++k) {
            if (k > 0) {
                out_ << ' ';
            }
            out_ << fmt(points[k].first) << ',' << fmt(points[k].second);
        }
        out_ << "\"/>\n";
    }

    void line(double x1, double y1, double x2, double y2, const std::string& stroke,
              double width = 1.0) {
        out_ << "<line x1=\"" << fmt(x1) << "\" y1=\"" << fmt(y1) << "\" x2=\"" << fmt(x2)
             << "\" y2=\"" << fmt(y2) << "\" stroke=\"" << stroke << "\" stroke-width=\""
             << fmt(width) << "\"/>\n";
    }

    void text(double x, double y, const std::string& content, int size_px = 11,
              const std::string& fill = "#333333") {
        out_ << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(y) << "\" font-family=\"monospace\" "
             << "font-size=\"" << size_px << "\" fill=\"" << fill << "\">" << content
             << "</text>\n";
    }

    std::string finish() {
        out_ << "</svg>\n";
        return out_.str();
    }

private:
    std::ostringstream out_;
};

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) {
        fields.push_back(field);
    }
    if (!line.empty() && line.back() == ',') {
        fields.push_back("");
    }
    return fields;
}

struct Series {
    bool uav = true;
    int id = 0;
    std::vector<const TrajectoryData::Row*> rows;
};

// Groups rows by agent, UAVs first, preserving id order.
std::vector<Series> group_agents(const TrajectoryData& data) {
    std::map<std::pair<int, int>, Series> grouped;  // (kind, id) -> series
    for (const TrajectoryData::Row& row : data.rows) {
        auto key = std::make_pair(row.uav ? 0 : 1, row.id);
        Series& s = grouped[key];
        s.uav = row.uav;
        s.id = row.id;
        s.rows.push_back(&row);
    }
    std::vector<Series> out;
    for (auto& [key, series] : grouped) {
        out.push_back(std::move(series));
    }
    return out;
}

struct Extent {
    double lo = 0.0;
    double hi = 1.0;

    void grow(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    double span() const { return hi - lo > 0.0 ? hi - lo : 1.0; }
};

}  // namespace

TrajectoryData parse_trajectories_csv(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) {
        throw std::invalid_argument("trajectory file is empty");
    }
    std::vector<std::string> columns = split_csv_line(header);
    auto column = [&](const char* name) {
        for (std::size_t k = 0; k < columns.size(); ++k) {
            if (columns[k] == name) {
                return static_cast<int>(k);
            }
        }
        throw std::invalid_argument(std::string("trajectory file is missing column '") +
                                    name + "'");
    };
    int c_t = column("t");
    int c_kind = column("agent_kind");
    int c_id = column("agent_id");
    int c_x = column("x");
    int c_y = column("y");
    int c_z = column("z");
    int c_mode = column("mode");

    TrajectoryData data;
    std::string line;
    int line_no = 1;
    while (std::getline(in, line)) {
        line_no += 1;
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> fields = split_csv_line(line);
        if (static_cast<int>(fields.size()) < static_cast<int>(columns.size())) {
            throw std::invalid_argument("trajectory line " + std::to_string(line_no) +
                                        " has too few fields");
        }
        TrajectoryData::Row row;
        try {
            row.t = std::stod(fields[c_t]);
            row.id = std::stoi(fields[c_id]);
            row.x = std::stod(fields[c_x]);
            row.y = std::stod(fields[c_y]);
            row.z = std::stod(fields[c_z]);
        } catch (const std::exception&) {
            throw std::invalid_argument("trajectory line " + std::to_string(line_no) +
                                        " has a malformed number");
        }
        row.uav = fields[c_kind] == "uav";
        row.mode = fields[c_mode];
        data.rows.push_back(std::move(row));
    }
    if (data.rows.empty()) {
        throw std::invalid_argument("trajectory file has no data rows");
    }
    return data;
}

GridData parse_grid_csv(std::istream& in) {
    GridData grid;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> fields = split_csv_line(line);
        if (grid.cols == 0) {
            grid.cols = static_cast<int>(fields.size());
        } else if (static_cast<int>(fields.size()) != grid.cols) {
            throw std::invalid_argument("grid file has ragged rows");
        }
        for (const std::string& f : fields) {
            try {
                grid.values.push_back(std::stoll(f));
            } catch (const std::exception&) {
                throw std::invalid_argument("grid file has a non-integer cell '" + f + "'");
            }
        }
        grid.rows += 1;
    }
    if (grid.values.empty()) {
        throw std::invalid_argument("grid file has no cells");
    }
    return grid;
}

std::string render_weight_heatmap_svg(const GridData& grid, const PlotStyle& style) {
    long long lo = grid.values[0];
    long long hi = grid.values[0];
    for (long long v : grid.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    // Log ramp: weights span orders of magnitude and the ramp only needs
    // to be monotone.
    double log_lo = std::log(static_cast<double>(std::max(1LL, lo)));
    double log_hi = std::log(static_cast<double>(std::max(1LL, hi)));
    auto shade = [&](long long v) {
        double t = 1.0;
        if (log_hi > log_lo) {
            t = (std::log(static_cast<double>(std::max(1LL, v))) - log_lo) / (log_hi - log_lo);
        }
        int r = static_cast<int>(std::lround(247.0 - t * 239.0));
        int g = static_cast<int>(std::lround(251.0 - t * 177.0));
        int b = static_cast<int>(std::lround(255.0 - t * 148.0));
        char buf[8];
        std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
        return std::string(buf);
    };

    double px = std::min(static_cast<double>(style.width_px) / grid.cols,
                         static_cast<double>(style.height_px) / grid.rows);
    SvgBuilder svg(style.width_px, style.height_px);
    for (int j = 0; j < grid.rows; ++j) {
        for (int i = 0; i < grid.cols; ++i) {
            // j = 0 is the southernmost row; SVG y grows downward.
            svg.rect(i * px, (grid.rows - 1 - j) * px, px, px,
                     shade(grid.values[j * grid.cols + i]));
        }
    }
    svg.rect(0, 0, grid.cols * px, grid.rows * px, "none", "#333333");
    return svg.finish();
}

std::string render_partition_svg(const GridData& grid, const std::vector<WorldPoint>& seeds,
                                 double cell_size_m, const PlotStyle& style) {
    double px = std::min(static_cast<double>(style.width_px) / grid.cols,
                         static_cast<double>(style.height_px) / grid.rows);
    SvgBuilder svg(style.width_px, style.height_px);
    for (int j = 0; j < grid.rows; ++j) {
        for (int i = 0; i < grid.cols; ++i) {
            int owner = static_cast<int>(grid.values[j * grid.cols + i]);
            svg.rect(i * px, (grid.rows - 1 - j) * px, px, px, palette(owner));
        }
    }
    for (const WorldPoint& seed : seeds) {
        double cx = seed.x / cell_size_m * px;
        double cy = (grid.rows - seed.y / cell_size_m) * px;
        svg.circle(cx, cy, std::max(3.0, px * 0.3), "white", "black");
    }
    svg.rect(0, 0, grid.cols * px, grid.rows * px, "none", "#333333");
    return svg.finish();
}

std::string render_trajectory_xy_svg(const TrajectoryData& data, const PlotStyle& style) {
    Extent ex, ey;
    for (const TrajectoryData::Row& row : data.rows) {
        ex.grow(row.x);
        ey.grow(row.y);
    }
    double margin = 40.0;
    double w = style.width_px - 2 * margin;
    double h = style.height_px - 2 * margin;
    auto sx = [&](double x) { return margin + (x - ex.lo) / ex.span() * w; };
    auto sy = [&](double y) { return margin + (1.0 - (y - ey.lo) / ey.span()) * h; };

    SvgBuilder svg(style.width_px, style.height_px);
    svg.rect(margin, margin, w, h, "none", "#333333");
    svg.text(margin, style.height_px - margin + 16,
             "x: " + fmt(ex.lo) + " .. " + fmt(ex.hi) + " m");
    svg.text(4, margin - 6, "y: " + fmt(ey.lo) + " .. " + fmt(ey.hi) + " m");

    for (const Series& series : group_agents(data)) {
        std::vector<std::pair<double, double>> points;
        points.reserve(series.rows.size());
        for (const TrajectoryData::Row* row : series.rows) {
            points.emplace_back(sx(row->x), sy(row->y));
        }
        const char* color = palette(series.id);
        svg.polyline(points, color, series.uav ? 1.5 : 1.0, !series.uav);
        svg.circle(points.front().first, points.front().second, 4.0, "white", color);
        svg.rect(points.back().first - 3.,
                 points.back().second - 3., 6.0, 6.0, color);
        std::string label = (series.uav ? "uav " : "survivor ") + std::to_string(series.id);
        svg.text(points.back().first + 6, points.back().second + 4, label, 10, color);
    }
    return svg.finish();
}

std::string render_trajectory3d_svg(const TrajectoryData& data, const PlotStyle& style) {
    // 30-degree isometric axes.
    const double cos30 = 0.86602540378443865;
    const double sin30 = 0.5;
    auto iso = [&](double x, double y, double z) {
        return std::make_pair((x - y) * cos30, (x + y) * sin30 - z);
    };

    Extent ex, ey;
    Extent wx, wy;
    double zmax = 0.0;
    for (const TrajectoryData::Row& row : data.rows) {
        auto [px, py] = iso(row.x, row.y, row.z);
        ex.grow(px);
        ey.grow(py);
        wx.grow(row.x);
        wy.grow(row.y);
        zmax = std::max(zmax, row.z);
    }
    // Ground rectangle corners join the projection extent.
    const std::pair<double, double> corners[] = {
        iso(wx.lo, wy.lo, 0), iso(wx.hi, wy.lo, 0), iso(wx.hi, wy.hi, 0),
        iso(wx.lo, wy.hi, 0)};
    for (const auto& c : corners) {
        ex.grow(c.first);
        ey.grow(c.second);
    }

    double margin = 30.0;
    double w = style.width_px - 2 * margin;
    double h = style.height_px - 2 * margin;
    auto sx = [&](double x) { return margin + (x - ex.lo) / ex.span() * w; };
    auto sy = [&](double y) { return margin + (y - ey.lo) / ey.span() * h; };

    SvgBuilder svg(style.width_px, style.height_px);
    std::vector<std::pair<double, double>> ground;
    for (int k = 0; k < 5; ++k) {
        const auto& c = corners[k % 4];
        ground.emplace_back(sx(c.first), sy(c.second));
    }
    svg.polyline(ground, "#999999", 1.0);

    for (const Series& series : group_agents(data)) {
        std::vector<std::pair<double, double>> points;
        points.reserve(series.rows.size());
        for (const TrajectoryData::Row* row : series.rows) {
            auto [px, py] = iso(row->x, row->y, row->z);
            points.emplace_back(sx(px), sy(py));
        }
        const char* color = palette(series.id);
        svg.polyline(points, color, series.uav ? 1.5 : 1.0, !series.uav);
        svg.circle(points.front().first, points.front().second, 3.5, "white", color);
        svg.rect(points.back().first - 3.0, points.back().second - 3.0, 6.0, 6.0, color);
    }
    svg.text(margin, style.height_px - 8,
             "isometric view, z up to " + fmt(zmax) + " m");
    return svg.finish();
}

std::string render_position_vs_time_svg(const TrajectoryData& data, const PlotStyle& style) {
    Extent et, ex, ey;
    for (const TrajectoryData::Row& row : data.rows) {
        et.grow(row.t);
        ex.grow(row.x);
        ey.grow(row.y);
    }
    double margin = 40.0;
    double w = style.width_px - 2 * margin;
    double panel_h = (style.height_px - 3 * margin) / 2.0;

    SvgBuilder svg(style.width_px, style.height_px);
    struct Panel {
        double top;
        Extent* extent;
        bool use_x;
        const char* label;
    };
    Panel panels[] = {{margin, &ex, true, "x (m)"},
                      {2 * margin + panel_h, &ey, false, "y (m)"}};
    for (const Panel& panel : panels) {
        svg.rect(margin, panel.top, w, panel_h, "none", "#333333");
        svg.text(4, panel.top + 12, panel.label);
        auto sx = [&](double t) { return margin + (t - et.lo) / et.span() * w; };
        auto sy = [&](double v) {
            return panel.top + (1.0 - (v - panel.extent->lo) / panel.extent->span()) * panel_h;
        };
        for (const Series& series : group_agents(data)) {
            std::vector<std::pair<double, double>> points;
            points.reserve(series.rows.size());
            for (const TrajectoryData::Row* row : series.rows) {
                points.emplace_back(sx(row->t), sy(panel.use_x ? row->x : row->y));
            }
            svg.polyline(points, palette(series.id), series.uav ? 1.2 : 1.0, !series.uav);
        }
    }
    svg.text(margin, style.height_px - 8,
             "t: " + fmt(et.lo) + " .. " + fmt(et.hi) + " s");
    return svg.finish();
}

}  // namespace wbe
