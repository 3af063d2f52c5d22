// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "tauli/analysis.hpp"
#include "tauli/arithmetic.hpp"
#include "tauli/bounds.hpp"
#include "tauli/errors.hpp"
#include "tauli/zerosum.hpp"

namespace tauli {

// ---------------------------------------------------------------------------
// n-grid syntax start:stop:step (also start:stop with step 1, or a single n)

struct NGrid {
    unsigned start = 1, stop = 1, step = 1;

    std::vector<unsigned> values() const {
        std::vector<unsigned> v;
        for (unsigned n = start; n <= stop; n += step) v.push_back(n);
        return v;
    }
};

inline NGrid parse_ngrid(const std::string& s) {
    NGrid g;
    unsigned parts[3] = {0, 0, 1};
    int count = 0;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ':')) {
        if (count >= 3 || tok.empty() ||
            tok.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError("invalid n grid '" + s + "' (use start:stop:step)");
        parts[count++] = static_cast<unsigned>(std::stoul(tok));
    }
    if (count == 0) throw ParseError("empty n grid");
    g.start = parts[0];
    g.stop = count >= 2 ? parts[1] : parts[0];
    g.step = count >= 3 ? parts[2] : 1;
    if (g.start < 1 || g.stop < g.start || g.step < 1)
        throw ParseError("invalid n grid '" + s + "'");
    return g;
}

// ---------------------------------------------------------------------------
// CSV schema: n, method, center, radius, truncation_bound,
// perturbation_bound, rule, T, prec -- full-precision decimal strings.

struct LiRow {
    unsigned n = 0;
    std::string method;
    std::string center;
    std::string radius;
    std::string truncation;
    std::string perturbation;
    std::string rule;
    std::string height_t;
    unsigned prec = 0;
};

inline LiRow to_row(const LiEstimate& est, const Real& height_t, unsigned prec) {
    LiRow r;
    r.n = est.n;
    r.method = est.method;
    r.center = to_decimal(est.center, prec);
    r.radius = to_decimal(est.radius, 20);
    r.truncation = to_decimal(est.report.truncation, 20);
    r.perturbation = to_decimal(est.report.perturbation, 20);
    r.rule = to_string(est.report.rule);
    r.height_t = to_decimal(height_t, 20);
    r.prec = prec;
    return r;
}

inline void write_li_csv(std::ostream& out, const std::vector<LiRow>& rows) {
    out << "n,method,center,radius,truncation_bound,perturbation_bound,rule,T,prec\n";
    for (const auto& r : rows)
        out << r.n << ',' << r.method << ',' << r.center << ',' << r.radius << ','
            << r.truncation << ',' << r.perturbation << ',' << r.rule << ',' << r.height_t
            << ',' << r.prec << '\n';
}

inline std::vector<LiRow> read_li_csv(std::istream& in) {
    std::vector<LiRow> rows;
    std::string line;
    long line_no = 0;
    bool header = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (header) {
            header = false;
            if (line.rfind("n,method,", 0) != 0)
                throw ParseError("unexpected CSV header", line_no);
            continue;
        }
        std::stringstream ss(line);
        std::string f[9];
        for (int i = 0; i < 9; ++i)
            if (!std::getline(ss, f[i], ','))
                throw ParseError("short CSV row", line_no);
        LiRow r;
        try {
            r.n = static_cast<unsigned>(std::stoul(f[0]));
            r.prec = static_cast<unsigned>(std::stoul(f[8]));
        } catch (const std::exception&) {
            throw ParseError("bad numeric field in CSV", line_no);
        }
        r.method = f[1];
        r.center = f[2];
        r.radius = f[3];
        r.truncation = f[4];
        r.perturbation = f[5];
        r.rule = f[6];
        r.height_t = f[7];
        rows.push_back(std::move(r));
    }
    if (rows.empty()) throw ParseError("CSV contains no data rows");
    return rows;
}

/// Reconstructs estimates from CSV rows (center/radius parsed at the row's
/// recorded precision).
inline std::vector<LiEstimate> estimates_from_rows(const std::vector<LiRow>& rows,
                                                   const Real& tau) {
    std::vector<LiEstimate> out;
    out.reserve(rows.size());
    for (const auto& r : rows) {
        PrecisionScope scope(std::max(30u, r.prec));
        LiEstimate e;
        e.n = r.n;
        e.tau = tau;
        e.center = Real(r.center);
        e.radius = Real(r.radius);
        e.method = r.method;
        e.certified = !(r.method == "zero_sum" && r.rule == "prop61");
        out.push_back(std::move(e));
    }
    return out;
}

/// Filename piece for tau: shortest decimal form ("10", "2.5").
inline std::string tau_slug(const Rational& tau) {
    if (tau.get_den() == 1) return tau.get_num().get_str();
    PrecisionScope scope(30);
    std::string s = to_real(tau).str(12, std::ios_base::fixed);
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}

// ---------------------------------------------------------------------------
// SVG emission: points, certified-interval band, optional c n log n overlay.
// Output is bit-stable for fixed inputs (fixed-format printf rendering).

struct PlotOptions {
    double overlay_nlogn = 0; // coefficient c for y = c n log n; 0 = off
    unsigned width = 960;
    unsigned height = 600;
};

namespace detail {

inline std::string fmt3(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

} // namespace detail

inline std::string render_svg(const std::vector<LiRow>& rows, const PlotOptions& opt = {}) {
    if (rows.empty()) throw DomainError("render_svg: no rows");
    struct Pt {
        double n, lo, mid, hi;
        std::string method;
    };
    std::vector<Pt> pts;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& r : rows) {
        PrecisionScope scope(40);
        double c = em::to_dbl(Real(r.center));
        double rad = em::to_dbl(Real(r.radius));
        Pt p{static_cast<double>(r.n), c - rad, c, c + rad, r.method};
        pts.push_back(p);
        xmin = std::min(xmin, p.n);
        xmax = std::max(xmax, p.n);
        ymin = std::min(ymin, p.lo);
        ymax = std::max(ymax, p.hi);
    }
    std::vector<double> overlay;
    if (opt.overlay_nlogn != 0) {
        for (const auto& p : pts) {
            double y = opt.overlay_nlogn * p.n * std::log(p.n);
            overlay.push_back(y);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    if (xmax <= xmin) xmax = xmin + 1;
    if (ymax <= ymin) ymax = ymin + 1;
    const double w = opt.width, h = opt.height, m = 50;
    auto sx = [&](double x) { return m + (x - xmin) / (xmax - xmin) * (w - 2 * m); };
    auto sy = [&](double y) { return h - m - (y - ymin) / (ymax - ymin) * (h - 2 * m); };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << opt.width
        << "\" height=\"" << opt.height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // band per method (upper path forward, lower path back)
    std::map<std::string, std::vector<const Pt*>> groups;
    for (const auto& p : pts) groups[p.method].push_back(&p);
    const char* band_colors[] = {"#9ecae1", "#fdbb84"};
    const char* point_colors[] = {"#08519c", "#d94801"};
    unsigned color_i = 0;
    for (auto& [method, g] : groups) {
        const char* bc = band_colors[color_i % 2];
        out << "<polygon fill=\"" << bc << "\" fill-opacity=\"0.5\" stroke=\"none\" points=\"";
        for (const auto* p : g) out << detail::fmt3(sx(p->n)) << ',' << detail::fmt3(sy(p->hi)) << ' ';
        for (auto it = g.rbegin(); it != g.rend(); ++it)
            out << detail::fmt3(sx((*it)->n)) << ',' << detail::fmt3(sy((*it)->lo)) << ' ';
        out << "\"/>\n";
        ++color_i;
    }
    // axes
    out << "<line x1=\"" << detail::fmt3(m) << "\" y1=\"" << detail::fmt3(h - m) << "\" x2=\""
        << detail::fmt3(w - m) << "\" y2=\"" << detail::fmt3(h - m)
        << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << detail::fmt3(m) << "\" y1=\"" << detail::fmt3(m) << "\" x2=\""
        << detail::fmt3(m) << "\" y2=\"" << detail::fmt3(h - m) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << detail::fmt3(w - m) << "\" y=\"" << detail::fmt3(h - m + 30)
        << "\" text-anchor=\"end\" font-size=\"12\">n = " << detail::fmt3(xmax)
        << "</text>\n";
    out << "<text x=\"" << detail::fmt3(m - 5) << "\" y=\"" << detail::fmt3(m)
        << "\" text-anchor=\"end\" font-size=\"12\">" << detail::fmt3(ymax) << "</text>\n";
    out << "<text x=\"" << detail::fmt3(m - 5) << "\" y=\"" << detail::fmt3(h - m)
        << "\" text-anchor=\"end\" font-size=\"12\">" << detail::fmt3(ymin) << "</text>\n";

    // overlay curve
    if (!overlay.empty()) {
        out << "<polyline fill=\"none\" stroke=\"#31a354\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i)
            out << detail::fmt3(sx(pts[i].n)) << ',' << detail::fmt3(sy(overlay[i])) << ' ';
        out << "\"/>\n";
    }
    // points
    color_i = 0;
    for (auto& [method, g] : groups) {
        const char* pc = point_colors[color_i % 2];
        for (const auto* p : g)
            out << "<circle cx=\"" << detail::fmt3(sx(p->n)) << "\" cy=\""
                << detail::fmt3(sy(p->mid)) << "\" r=\"2.2\" fill=\"" << pc << "\"/>\n";
        ++color_i;
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace tauli
