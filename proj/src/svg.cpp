#include "gdrr/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace gdrr {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    std::string s(buf);
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
    return s;
}

}  // namespace

std::string render_pattern_svg(const Instance& inst, const Pattern& p) {
    const auto& bin = inst.bins()[static_cast<std::size_t>(p.bin_type())];
    const double longest = std::max(p.width(), p.height());
    const double px = 600.0 / longest;  // display scale only, geometry stays in bin units
    const double stroke = longest / 400.0;

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(p.width() * px) << "\" height=\""
        << num(p.height() * px) << "\" viewBox=\"0 0 " << p.width() << ' ' << p.height() << "\">\n";
    out << "<title>bin " << bin.id << " (" << p.width() << "x" << p.height() << ")</title>\n";
    out << "<rect class=\"bin\" x=\"0\" y=\"0\" width=\"" << p.width() << "\" height=\"" << p.height()
        << "\" fill=\"#ffffff\" stroke=\"#000000\" stroke-width=\"" << num(stroke * 2) << "\"/>\n";

    for (const auto& r : p.leftover_rects())
        out << "<rect class=\"leftover\" x=\"" << r.x << "\" y=\"" << r.y << "\" width=\"" << r.width
            << "\" height=\"" << r.height << "\" fill=\"#e6ecf2\" stroke=\"#9aa8b5\" stroke-width=\"" << num(stroke)
            << "\" stroke-dasharray=\"" << num(stroke * 4) << "\"/>\n";

    for (const auto& r : p.layout()) {
        const int id = inst.item_id_of_copy(r.copy);
        out << "<rect class=\"item\" x=\"" << r.x << "\" y=\"" << r.y << "\" width=\"" << r.width << "\" height=\""
            << r.height << "\" fill=\"#34495e\" stroke=\"#ffffff\" stroke-width=\"" << num(stroke) << "\"/>\n";
        const double font = std::max(std::min(r.width, r.height) * 0.4, longest / 200.0);
        out << "<text x=\"" << num(r.x + r.width / 2.0) << "\" y=\"" << num(r.y + r.height / 2.0)
            << "\" font-family=\"sans-serif\" font-size=\"" << num(font)
            << "\" fill=\"#ffffff\" text-anchor=\"middle\" dominant-baseline=\"central\">" << id
            << (r.rotated ? "r" : "") << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::vector<std::string> render_svg(const Solution& s) {
    std::vector<std::string> out;
    out.reserve(s.patterns.size());
    for (const auto& p : s.patterns) out.push_back(render_pattern_svg(s.inst(), p));
    return out;
}

}  // namespace gdrr
