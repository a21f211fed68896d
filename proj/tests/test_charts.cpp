#include "doctest.h"
#include "ext2/charts.hpp"
#include "ext2/resolve.hpp"

using namespace ext2;

namespace {

ExtChart bo_chart() {
    Resolution r = minimal_resolution(trivial_module(Algebra::A1, 0), 8, 20);
    ExtChart c = ext_chart(r, r);
    c.module = "F2";
    return c;
}

}  // namespace

TEST_CASE("chart JSON round-trips and is a fixed point of the serializer") {
    ExtChart c = bo_chart();
    c.annotations.push_back("sample annotation");
    std::string j1 = chart_to_json(c);
    std::string err;
    auto back = chart_from_json(j1, &err);
    REQUIRE_MESSAGE(back.has_value(), err);
    CHECK(back->dims == c.dims);
    CHECK(back->edges == c.edges);
    CHECK(back->annotations == c.annotations);
    CHECK(back->s_max == c.s_max);
    CHECK(chart_to_json(*back) == j1);
    CHECK(!chart_from_json("{not json", &err).has_value());
}

TEST_CASE("compare: identical charts empty, mutations located") {
    ExtChart c = bo_chart();
    CHECK(compare(c, c).empty());
    ExtChart m = c;
    m.dims[{3, 7}] += 1;
    auto d = compare(c, m);
    REQUIRE(d.size() == 1);
    CHECK(d[0].s == 3);
    CHECK(d[0].t == 7);
    CHECK(d[0].what == "dim");
    // out-of-window differences are not reported
    ExtChart w = restrict_window(c, 4, 0, 10);
    ExtChart w2 = w;
    w2.dims[{2, 4}] = 0;
    w2.dims.erase({2, 4});
    CHECK(compare(w, w2).size() == 1);
    ExtChart far = c;
    far.dims[{2, 18}] += 1;  // t beyond the restricted window of w
    CHECK(compare(w, far).empty());
}

TEST_CASE("assemble sums shifted pieces and tracks the complete window") {
    ExtChart c = bo_chart();
    AssembledChart one = assemble({{c, 0, 0, "bo"}});
    CHECK(one.dim(0, 0) == 1);
    CHECK(one.dim(4, 3) == 1);  // stem 4 tower bottom
    AssembledChart two = assemble({{c, 0, 0, "bo"}, {c, 3, 1, "shifted"}});
    CHECK(two.dim(0, 0) == 1);
    CHECK(two.dim(3, 1) == 1);  // the shifted bottom class; bo stem 3 is empty
    CHECK(two.x_max == std::min(c.t_max - c.s_max, c.t_max - c.s_max + 3));
    // dims add: stem 4 = bo stem 4 + shifted stem 1
    CHECK(two.dim(4, 2) == one.dim(4, 2) + one.dim(1, 1));
}

TEST_CASE("apply_fact: differentials drop both endpoint dims, errors on empty cells") {
    ExtChart c = bo_chart();
    AssembledChart a = assemble({{c, 0, 0, "bo"}});
    int before_src = a.dim(4, 3), before_tgt = a.dim(3, 5);
    REQUIRE(before_src == 1);
    CHECK(before_tgt == 0);
    ChartFact bad{"dr", 2, 4, 3, "synthetic"};
    CHECK_THROWS_AS(apply_fact(a, bad), std::invalid_argument);  // target empty
    // fabricate a target, then apply
    a.dims[{3, 5}] = 1;
    apply_fact(a, bad);
    CHECK(a.dim(4, 3) == 0);
    CHECK(a.dim(3, 5) == 0);
    REQUIRE(a.applied.size() == 1);
    CHECK(a.applied[0].provenance == "synthetic");
    // extensions record without changing dims
    ChartFact ext{"extension", 0, 8, 4, "note"};
    apply_fact(a, ext);
    CHECK(a.dim(8, 4) == 1);
    CHECK(a.applied.size() == 2);
}

TEST_CASE("renderers produce the expected shapes") {
    ExtChart c = bo_chart();
    std::string ascii = render(c, ChartFormat::Ascii);
    CHECK(ascii.find('|') != std::string::npos);
    // the stem-0 tower: every filtration row shows a class in column 0
    size_t lines = 0;
    for (size_t pos = 0; (pos = ascii.find("| 1", pos)) != std::string::npos; ++pos)
        ++lines;
    CHECK(lines >= size_t(c.s_max));
    std::string svg = render(c, ChartFormat::Svg);
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.find("circle") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(render(c, ChartFormat::Json) == chart_to_json(c));
    // empty chart still renders axes
    ExtChart empty;
    empty.algebra = "A1";
    std::string ea = render(empty, ChartFormat::Ascii);
    CHECK(ea.find('+') != std::string::npos);
}

TEST_CASE("assembled chart json lists pieces and applied facts") {
    ExtChart c = bo_chart();
    AssembledChart a = assemble({{c, 0, 0, "bo"}});
    a.dims[{3, 5}] = 1;
    apply_fact(a, {"dr", 2, 4, 3, "synthetic"});
    std::string j = assembled_to_json(a);
    CHECK(j.find("\"bo\"") != std::string::npos);
    CHECK(j.find("synthetic") != std::string::npos);
    CHECK(j.find("applied_facts") != std::string::npos);
}
