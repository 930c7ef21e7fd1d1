#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "characteristics.hpp"
#include "errors.hpp"

namespace slipline::out {

//! Round-trip number formatting (17 significant digits).
inline std::string num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

//! Writes via a temporary file in the target directory, then renames over path.
inline void atomic_write(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path dir = target.has_parent_path() ? target.parent_path() : fs::path(".");
    const fs::path tmp = dir / (target.filename().string() + ".tmp." + std::to_string(::getpid()));
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw ConfigError("cannot open " + tmp.string() + " for writing");
        os << content;
        os.flush();
        if (!os) throw ConfigError("write failed: " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw ConfigError("cannot rename onto " + path + ": " + ec.message());
    }
}

class Csv {
public:
    explicit Csv(const std::vector<std::string>& header) : cols_(header.size()) { row_strings(header); }

    void row(const std::vector<double>& vals) {
        std::vector<std::string> s;
        s.reserve(vals.size());
        for (double v : vals) s.push_back(num(v));
        row_strings(s);
    }

    void row_strings(const std::vector<std::string>& cells) {
        if (cells.size() != cols_) throw ConfigError("csv: wrong number of cells");
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) os_ << ',';
            os_ << cells[i];
        }
        os_ << '\n';
        ++rows_;
    }

    std::string str() const { return os_.str(); }
    std::size_t data_rows() const { return rows_ - 1; }

private:
    std::size_t cols_;
    std::size_t rows_ = 0;
    std::ostringstream os_;
};

inline const std::vector<std::string>& sample_header() {
    static const std::vector<std::string> h{"x", "y", "sigma", "theta", "sigma_x", "sigma_y", "tau_xy", "xi", "eta"};
    return h;
}

inline const std::vector<std::string>& polyline_header() {
    static const std::vector<std::string> h{"curve_id", "s", "x", "y", "sigma", "theta", "xi", "eta"};
    return h;
}

inline const std::vector<std::string>& velocity_header() {
    static const std::vector<std::string> h{"curve_id", "s", "x", "y", "u", "v", "D", "diss_ok"};
    return h;
}

// ---------------------------------------------------------------- SVG

struct SvgPath {
    std::vector<std::array<double, 2>> pts;
    std::string css_class;
};

//! Raw SVG with a viewBox from the data bounds (y axis flipped).
inline std::string svg(const std::vector<SvgPath>& paths, const std::string& title) {
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (const auto& p : paths)
        for (const auto& q : p.pts) {
            if (!std::isfinite(q[0]) || !std::isfinite(q[1])) continue;
            x0 = std::min(x0, q[0]);
            x1 = std::max(x1, q[0]);
            y0 = std::min(y0, q[1]);
            y1 = std::max(y1, q[1]);
        }
    if (!std::isfinite(x0)) x0 = y0 = 0.0, x1 = y1 = 1.0;
    const double pad = 0.02 * std::max({x1 - x0, y1 - y0, 1e-9});
    x0 -= pad;
    x1 += pad;
    y0 -= pad;
    y1 += pad;
    const double w = x1 - x0, h = y1 - y0;
    const double stroke = 0.002 * std::max(w, h);
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num(x0) << ' ' << num(-y1) << ' ' << num(w) << ' '
       << num(h) << "\">\n";
    os << "<title>" << title << "</title>\n";
    os << "<style>path{fill:none;stroke-width:" << num(stroke) << "}"
       << ".first{stroke:#1f4e9c}.second{stroke:#c0392b;stroke-dasharray:" << num(4 * stroke) << ' ' << num(2 * stroke)
       << "}.envelope{stroke:#111;stroke-width:" << num(2.5 * stroke) << "}.streamline{stroke:#2e7d32}</style>\n";
    for (const auto& p : paths) {
        if (p.pts.size() < 2) continue;
        os << "<path class=\"" << p.css_class << "\" d=\"";
        bool pen = false;
        for (const auto& q : p.pts) {
            if (!std::isfinite(q[0]) || !std::isfinite(q[1])) {
                pen = false;
                continue;
            }
            os << (pen ? " L" : "M") << num(q[0]) << ' ' << num(-q[1]);
            pen = true;
        }
        os << "\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace slipline::out
