#include "ext2/charts.hpp"

#include "json.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ext2 {

using json = nlohmann::ordered_json;

std::string chart_to_json(const ExtChart& c) {
    json j;
    j["algebra"] = c.algebra;
    j["module"] = c.module;
    j["window"] = {{"s_max", c.s_max}, {"t_min", c.t_min}, {"t_max", c.t_max}};
    json dims = json::array();
    for (const auto& [st, n] : c.dims)
        if (n) dims.push_back({st.first, st.second, n});
    j["dims"] = std::move(dims);
    json edges = json::array();
    std::vector<ChartEdge> es = c.edges;
    std::sort(es.begin(), es.end());
    for (const ChartEdge& e : es)
        edges.push_back({{"kind", "h" + std::to_string(e.kind)},
                         {"from", {e.from.s, e.from.t, e.from.index}},
                         {"to", {e.to.s, e.to.t, e.to.index}}});
    j["edges"] = std::move(edges);
    j["annotations"] = c.annotations;
    return j.dump(2) + "\n";
}

std::optional<ExtChart> chart_from_json(const std::string& text, std::string* err) {
    try {
        json j = json::parse(text);
        ExtChart c;
        c.algebra = j.at("algebra").get<std::string>();
        c.module = j.at("module").get<std::string>();
        c.s_max = j.at("window").at("s_max").get<int>();
        c.t_min = j.at("window").at("t_min").get<int>();
        c.t_max = j.at("window").at("t_max").get<int>();
        for (const auto& d : j.at("dims")) {
            int n = d.at(2).get<int>();
            if (n) c.dims[{d.at(0).get<int>(), d.at(1).get<int>()}] = n;
        }
        for (const auto& e : j.at("edges")) {
            ChartEdge edge;
            std::string kind = e.at("kind").get<std::string>();
            if (kind.size() != 2 || kind[0] != 'h') throw std::runtime_error("bad edge kind");
            edge.kind = kind[1] - '0';
            edge.from = {e.at("from").at(0).get<int>(), e.at("from").at(1).get<int>(),
                         e.at("from").at(2).get<int>()};
            edge.to = {e.at("to").at(0).get<int>(), e.at("to").at(1).get<int>(),
                       e.at("to").at(2).get<int>()};
            c.edges.push_back(edge);
        }
        for (const auto& a : j.at("annotations")) c.annotations.push_back(a.get<std::string>());
        std::sort(c.edges.begin(), c.edges.end());
        return c;
    } catch (const std::exception& e) {
        if (err) *err = e.what();
        return std::nullopt;
    }
}

std::vector<ChartDiff> compare(const ExtChart& a, const ExtChart& b) {
    std::vector<ChartDiff> out;
    int s_top = std::min(a.s_max, b.s_max);
    int t_lo = std::max(a.t_min, b.t_min);
    int t_hi = std::min(a.t_max, b.t_max);
    std::set<std::pair<int, int>> keys;
    for (const auto& [st, n] : a.dims) keys.insert(st);
    for (const auto& [st, n] : b.dims) keys.insert(st);
    for (auto [s, t] : keys) {
        if (s < 0 || s > s_top || t < t_lo || t > t_hi) continue;
        int da = a.dim(s, t), db = b.dim(s, t);
        if (da != db) out.push_back({s, t, da, db, "dim"});
    }
    auto in_win = [&](const ChartClass& c) {
        return c.s >= 0 && c.s <= s_top && c.t >= t_lo && c.t <= t_hi;
    };
    std::set<ChartEdge> ea(a.edges.begin(), a.edges.end());
    std::set<ChartEdge> eb(b.edges.begin(), b.edges.end());
    for (const ChartEdge& e : ea)
        if (in_win(e.from) && in_win(e.to) && !eb.count(e))
            out.push_back({e.from.s, e.from.t, 1, 0, "edge h" + std::to_string(e.kind)});
    for (const ChartEdge& e : eb)
        if (in_win(e.from) && in_win(e.to) && !ea.count(e))
            out.push_back({e.from.s, e.from.t, 0, 1, "edge h" + std::to_string(e.kind)});
    return out;
}

ExtChart restrict_window(const ExtChart& c, int s_max, int t_min, int t_max) {
    ExtChart out = c;
    out.s_max = std::min(c.s_max, s_max);
    out.t_min = std::max(c.t_min, t_min);
    out.t_max = std::min(c.t_max, t_max);
    out.dims.clear();
    for (const auto& [st, n] : c.dims)
        if (st.first <= out.s_max && st.second >= out.t_min && st.second <= out.t_max)
            out.dims[st] = n;
    out.edges.clear();
    for (const ChartEdge& e : c.edges)
        if (e.from.s <= out.s_max && e.to.s <= out.s_max && e.from.t >= out.t_min &&
            e.to.t <= out.t_max)
            out.edges.push_back(e);
    return out;
}

ExtChart shift_chart(const ExtChart& c, int ds, int dt) {
    ExtChart out = c;
    out.s_max = c.s_max + ds;
    out.t_min = c.t_min + dt;
    out.t_max = c.t_max + dt;
    out.dims.clear();
    for (const auto& [st, n] : c.dims) out.dims[{st.first + ds, st.second + dt}] = n;
    for (ChartEdge& e : out.edges) {
        e.from.s += ds; e.from.t += dt;
        e.to.s += ds; e.to.t += dt;
    }
    return out;
}

AssembledChart assemble(const std::vector<ChartPiece>& pieces) {
    AssembledChart out;
    out.pieces = pieces;
    bool first = true;
    for (const ChartPiece& p : pieces) {
        // a chart is stem-complete where every filtration 0..s_max is in-window
        int lo = p.chart.t_min + p.x_shift;
        int hi = p.chart.t_max - p.chart.s_max + p.x_shift;
        int sm = p.chart.s_max + p.s_shift;
        if (first) {
            out.x_min = lo; out.x_max = hi; out.s_max = sm;
            first = false;
        } else {
            out.x_min = std::max(out.x_min, lo);
            out.x_max = std::min(out.x_max, hi);
            out.s_max = std::min(out.s_max, sm);
        }
        for (const auto& [st, n] : p.chart.dims) {
            auto [s, t] = st;
            out.dims[{t - s + p.x_shift, s + p.s_shift}] += n;
        }
        for (const std::string& a : p.chart.annotations) out.annotations.push_back(a);
    }
    return out;
}

void apply_fact(AssembledChart& c, const ChartFact& f) {
    if (f.kind == "extension") {
        c.applied.push_back(f);
        return;
    }
    if (f.kind != "dr") throw std::invalid_argument("apply_fact: unknown kind " + f.kind);
    int tx = f.x - 1, ts = f.s + f.r;
    auto src = c.dims.find({f.x, f.s});
    auto tgt = c.dims.find({tx, ts});
    if (src == c.dims.end() || src->second == 0)
        throw std::invalid_argument("apply_fact: empty differential source");
    if (tgt == c.dims.end() || tgt->second == 0)
        throw std::invalid_argument("apply_fact: empty differential target");
    if (--src->second == 0) c.dims.erase(src);
    if (--tgt->second == 0) c.dims.erase(tgt);
    c.applied.push_back(f);
}

std::vector<ChartDiff> compare(const AssembledChart& a, const AssembledChart& b) {
    std::vector<ChartDiff> out;
    int x_lo = std::max(a.x_min, b.x_min);
    int x_hi = std::min(a.x_max, b.x_max);
    int s_top = std::min(a.s_max, b.s_max);
    std::set<std::pair<int, int>> keys;
    for (const auto& [xs, n] : a.dims) keys.insert(xs);
    for (const auto& [xs, n] : b.dims) keys.insert(xs);
    for (auto [x, s] : keys) {
        if (x < x_lo || x > x_hi || s < 0 || s > s_top) continue;
        int da = a.dim(x, s), db = b.dim(x, s);
        if (da != db) out.push_back({s, x, da, db, "dim"});
    }
    return out;
}

std::string assembled_to_json(const AssembledChart& c) {
    json j;
    j["window"] = {{"x_min", c.x_min}, {"x_max", c.x_max}, {"s_max", c.s_max}};
    json labels = json::array();
    for (const ChartPiece& p : c.pieces)
        labels.push_back({{"label", p.label}, {"x_shift", p.x_shift}, {"s_shift", p.s_shift}});
    j["pieces"] = std::move(labels);
    json dims = json::array();
    for (const auto& [xs, n] : c.dims)
        if (n) dims.push_back({xs.first, xs.second, n});
    j["dims"] = std::move(dims);
    json facts = json::array();
    for (const ChartFact& f : c.applied)
        facts.push_back({{"kind", f.kind}, {"r", f.r}, {"x", f.x}, {"s", f.s},
                         {"provenance", f.provenance}});
    j["applied_facts"] = std::move(facts);
    j["annotations"] = c.annotations;
    return j.dump(2) + "\n";
}

namespace {

std::string ascii_grid(int x_min, int x_max, int s_max,
                       const std::function<int(int, int)>& dim, int width) {
    std::ostringstream out;
    int cols = std::min(x_max - x_min + 1, std::max(1, (width - 6) / 2));
    for (int s = s_max; s >= 0; --s) {
        out << (s < 10 ? " " : "") << s << " |";
        for (int x = x_min; x < x_min + cols; ++x) {
            int n = dim(x, s);
            out << ' ';
            if (n == 0) out << '.';
            else if (n < 10) out << n;
            else out << '#';
        }
        out << '\n';
    }
    out << "   +";
    for (int x = x_min; x < x_min + cols; ++x) out << "--";
    out << '\n' << "    ";
    for (int x = x_min; x < x_min + cols; ++x) {
        if (x % 4 == 0) {
            std::string lbl = std::to_string(x);
            out << lbl.back() << ' ';
        } else {
            out << "  ";
        }
    }
    out << '\n';
    return out.str();
}

std::string svg_chart(int x_min, int x_max, int s_max,
                      const std::function<int(int, int)>& dim,
                      const std::vector<ChartEdge>& edges) {
    const int cell = 16, pad = 30, rdot = 3;
    int w = pad * 2 + (x_max - x_min + 1) * cell;
    int h = pad * 2 + (s_max + 1) * cell;
    auto px = [&](double x) { return pad + (x - x_min) * cell + cell / 2.0; };
    auto py = [&](double s) { return h - pad - s * cell - cell / 2.0; };
    // classes at one (x,s) spread horizontally
    auto dot_x = [&](int x, int s, int i) {
        int n = dim(x, s);
        return px(x) + (i - (n - 1) / 2.0) * (2 * rdot + 1);
    };
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << w
        << "\" height=\"" << h << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    // axes
    out << "<line x1=\"" << pad << "\" y1=\"" << h - pad << "\" x2=\"" << w - pad / 2
        << "\" y2=\"" << h - pad << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << pad << "\" y1=\"" << h - pad << "\" x2=\"" << pad
        << "\" y2=\"" << pad / 2 << "\" stroke=\"black\"/>\n";
    for (int x = x_min; x <= x_max; ++x)
        if (x % 4 == 0)
            out << "<text x=\"" << px(x) << "\" y=\"" << h - pad + 14
                << "\" font-size=\"9\" text-anchor=\"middle\">" << x << "</text>\n";
    for (int s = 0; s <= s_max; ++s)
        if (s % 2 == 0)
            out << "<text x=\"" << pad - 8 << "\" y=\"" << py(s) + 3
                << "\" font-size=\"9\" text-anchor=\"end\">" << s << "</text>\n";
    for (const ChartEdge& e : edges) {
        int fx = e.from.t - e.from.s, tx = e.to.t - e.to.s;
        out << "<line x1=\"" << dot_x(fx, e.from.s, e.from.index) << "\" y1=\""
            << py(e.from.s) << "\" x2=\"" << dot_x(tx, e.to.s, e.to.index) << "\" y2=\""
            << py(e.to.s) << "\" stroke=\"" << (e.kind == 0 ? "black" : e.kind == 1 ? "blue" : "red")
            << "\" stroke-width=\"0.8\"/>\n";
    }
    for (int s = 0; s <= s_max; ++s)
        for (int x = x_min; x <= x_max; ++x) {
            int n = dim(x, s);
            for (int i = 0; i < n; ++i)
                out << "<circle cx=\"" << dot_x(x, s, i) << "\" cy=\"" << py(s)
                    << "\" r=\"" << rdot << "\" fill=\"black\"/>\n";
        }
    out << "</svg>\n";
    return out.str();
}

}  // namespace

std::string render(const ExtChart& c, ChartFormat f, int ascii_width) {
    int x_min = c.t_min, x_max = std::max(c.t_min, c.t_max - c.s_max);
    auto dim = [&](int x, int s) { return c.dim(s, x + s); };
    switch (f) {
        case ChartFormat::Json:
            return chart_to_json(c);
        case ChartFormat::Ascii:
            return ascii_grid(x_min, x_max, c.s_max, dim, ascii_width);
        case ChartFormat::Svg:
            return svg_chart(x_min, x_max, c.s_max, dim, c.edges);
    }
    return {};
}

std::string render(const AssembledChart& c, ChartFormat f, int ascii_width) {
    auto dim = [&](int x, int s) { return c.dim(x, s); };
    switch (f) {
        case ChartFormat::Json:
            return assembled_to_json(c);
        case ChartFormat::Ascii:
            return ascii_grid(c.x_min, c.x_max, c.s_max, dim, ascii_width);
        case ChartFormat::Svg:
            return svg_chart(c.x_min, c.x_max, c.s_max, dim, {});
    }
    return {};
}

}  // namespace ext2
