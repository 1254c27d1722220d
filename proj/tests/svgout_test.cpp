#include <doctest.h>

#include "layervec/svgout.hpp"
#include "oracles.hpp"

using namespace layervec;

namespace {

VectorShape square_shape(double x0, double y0, double s, Rgb fill, int rank) {
    auto seg = [](Vec2 a, Vec2 b) {
        Vec2 d = (b - a) * (1.0 / 3.0);
        return CubicBezier{a, a + d, a + d + d, b};
    };
    VectorShape shape;
    shape.fill = fill;
    shape.depth_rank = rank;
    Vec2 a{x0, y0}, b{x0 + s, y0}, c{x0 + s, y0 + s}, d{x0, y0 + s};
    shape.loops.push_back({seg(a, b), seg(b, c), seg(c, d), seg(d, a)});
    return shape;
}

}  // namespace

TEST_CASE("empty shape list still emits a valid document") {
    std::string svg = emit_svg({}, 64, 48);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("viewBox=\"0 0 64 48\"") != std::string::npos);
    CHECK(svg.find("<path") == std::string::npos);
    CHECK(oracles::xml_well_formed(svg));
}

TEST_CASE("one red square emits one path") {
    std::string svg = emit_svg({square_shape(2, 3, 10, {255, 0, 0}, 0)}, 32, 32);
    CHECK(oracles::xml_well_formed(svg));
    CHECK(svg.find("fill=\"#ff0000\"") != std::string::npos);
    size_t d = svg.find(" d=\"");
    REQUIRE(d != std::string::npos);
    size_t open = svg.find('"', d + 3);
    size_t close = svg.find('"', open + 1);
    std::string dstr = svg.substr(open + 1, close - open - 1);
    CHECK(dstr.substr(0, 1) == "M");
    CHECK(dstr.substr(dstr.size() - 1) == "Z");
    CHECK(svg.find("<path", svg.find("<path") + 1) == std::string::npos);  // exactly one
}

TEST_CASE("deeper ranks come first in the document") {
    std::string svg = emit_svg({square_shape(0, 0, 4, {255, 0, 0}, 0),
                                square_shape(2, 2, 4, {0, 255, 0}, 1)},
                               16, 16);
    size_t green = svg.find("#00ff00");
    size_t red = svg.find("#ff0000");
    REQUIRE(green != std::string::npos);
    REQUIRE(red != std::string::npos);
    CHECK(green < red);  // rank 1 painted first
}

TEST_CASE("emission does not depend on input order") {
    std::vector<VectorShape> shapes{square_shape(0, 0, 4, {255, 0, 0}, 0),
                                    square_shape(2, 2, 4, {0, 255, 0}, 1),
                                    square_shape(4, 4, 4, {0, 0, 255}, 2)};
    std::string a = emit_svg(shapes, 16, 16);
    std::rotate(shapes.begin(), shapes.begin() + 1, shapes.end());
    std::string b = emit_svg(shapes, 16, 16);
    std::swap(shapes[0], shapes[2]);
    std::string c = emit_svg(shapes, 16, 16);
    CHECK(a == b);
    CHECK(a == c);
}

TEST_CASE("coordinates are printed with two decimals") {
    VectorShape s = square_shape(1.23456, 2.98765, 5, {1, 2, 3}, 0);
    std::string svg = emit_svg({s}, 16, 16);
    CHECK(svg.find("1.23 2.99") != std::string::npos);
}

TEST_CASE("stroke flag adds outlines") {
    std::string plain = emit_svg({square_shape(0, 0, 4, {9, 9, 9}, 0)}, 8, 8);
    std::string stroked = emit_svg({square_shape(0, 0, 4, {9, 9, 9}, 0)}, 8, 8, true);
    CHECK(plain.find("stroke-width") == std::string::npos);
    CHECK(stroked.find("stroke-width=\"0.5\"") != std::string::npos);
    CHECK(oracles::xml_well_formed(stroked));
}

TEST_CASE("multi-loop shapes share one path") {
    VectorShape s = square_shape(0, 0, 10, {10, 20, 30}, 0);
    VectorShape hole = square_shape(3, 3, 4, {10, 20, 30}, 0);
    s.loops.push_back(hole.loops[0]);
    std::string svg = emit_svg({s}, 16, 16);
    CHECK(svg.find("<path", svg.find("<path") + 1) == std::string::npos);
    // two M commands inside the single d attribute
    size_t first_m = svg.find("M ");
    REQUIRE(first_m != std::string::npos);
    CHECK(svg.find("M ", first_m + 1) != std::string::npos);
}
