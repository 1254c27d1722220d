#include "layervec/svgout.hpp"

#include <algorithm>
#include <cstdio>

namespace layervec {

namespace {

void append_num(std::string& s, double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    s += buf;
}

void append_hex(std::string& s, Rgb c) {
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", c.r, c.g, c.b);
    s += buf;
}

}  // namespace

std::string emit_svg(const std::vector<VectorShape>& shapes, int width, int height,
                     bool stroke) {
    std::vector<const VectorShape*> order;
    order.reserve(shapes.size());
    for (const VectorShape& s : shapes) order.push_back(&s);
    std::sort(order.begin(), order.end(),
              [](const VectorShape* a, const VectorShape* b) {
                  return a->depth_rank > b->depth_rank;  // bottom first
              });

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
           "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " +
           std::to_string(width) + " " + std::to_string(height) + "\">\n";
    for (const VectorShape* s : order) {
        out += "<path fill=\"";
        append_hex(out, s->fill);
        out += "\" fill-rule=\"nonzero\"";
        if (stroke) out += " stroke=\"#000000\" stroke-width=\"0.5\"";
        out += " d=\"";
        for (size_t li = 0; li < s->loops.size(); ++li) {
            const auto& loop = s->loops[li];
            if (loop.empty()) continue;
            if (li) out += " ";
            out += "M ";
            append_num(out, loop[0].p0.x);
            out += " ";
            append_num(out, loop[0].p0.y);
            for (const CubicBezier& c : loop) {
                out += " C ";
                append_num(out, c.p1.x);
                out += " ";
                append_num(out, c.p1.y);
                out += ", ";
                append_num(out, c.p2.x);
                out += " ";
                append_num(out, c.p2.y);
                out += ", ";
                append_num(out, c.p3.x);
                out += " ";
                append_num(out, c.p3.y);
            }
            out += " Z";
        }
        out += "\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace layervec
