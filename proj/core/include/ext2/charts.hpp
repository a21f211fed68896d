#pragma once
// Ext charts ((s,t)-indexed dimension tables with h_i product edges and
// recorded annotations), assembled homotopy charts ((stem, filtration) sums of
// shifted pieces with applied differential/extension facts), comparison, and
// rendering (ascii / svg / json).
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ext2 {

struct ChartClass {
    int s = 0, t = 0;
    int index = 0;  // within the generator list at (s,t)
    bool operator==(const ChartClass&) const = default;
    auto operator<=>(const ChartClass&) const = default;
};

struct ChartEdge {
    int kind = 0;  // i for h_i: bidegree (1, 2^i)
    ChartClass from, to;
    bool operator==(const ChartEdge&) const = default;
    auto operator<=>(const ChartEdge&) const = default;
};

// dims are stored sparsely; the chart is complete (trustworthy zeroes) exactly
// for 0 <= s <= s_max, t_min <= t <= t_max
struct ExtChart {
    std::string algebra;  // "A1", "A2", ...
    std::string module;
    int s_max = 0;
    int t_min = 0, t_max = 0;
    std::map<std::pair<int, int>, int> dims;  // (s,t) -> dim, zero not stored
    std::vector<ChartEdge> edges;
    std::vector<std::string> annotations;

    int dim(int s, int t) const {
        auto it = dims.find({s, t});
        return it == dims.end() ? 0 : it->second;
    }
    bool in_window(int s, int t) const {
        return s >= 0 && s <= s_max && t >= t_min && t <= t_max;
    }
};

std::string chart_to_json(const ExtChart& c);
std::optional<ExtChart> chart_from_json(const std::string& text, std::string* err);

// difference of two charts over the intersection of their complete windows
struct ChartDiff {
    int s = 0, t = 0;
    int dim_a = 0, dim_b = 0;
    std::string what;  // "dim" or "edge"
};
std::vector<ChartDiff> compare(const ExtChart& a, const ExtChart& b);

// chart restricted to the window (dims and edges outside dropped)
ExtChart restrict_window(const ExtChart& c, int s_max, int t_min, int t_max);
// chart with s shifted by ds and t shifted by dt (window shifts along)
ExtChart shift_chart(const ExtChart& c, int ds, int dt);

// ---- assembled homotopy charts ---------------------------------------------
// pieces live at (stem x = t - s + x_shift, filtration s + s_shift)
struct ChartPiece {
    ExtChart chart;
    int x_shift = 0, s_shift = 0;
    std::string label;
};

// a recorded (not derived) spectral-sequence fact
struct ChartFact {
    std::string kind;  // "dr" (differential, uses r) or "extension"
    int r = 2;
    int x = 0, s = 0;       // source position (stem, filtration)
    std::string provenance;  // citation string, carried verbatim
};

struct AssembledChart {
    std::vector<ChartPiece> pieces;
    std::map<std::pair<int, int>, int> dims;  // (stem, filtration)
    int x_min = 0, x_max = 0, s_max = 0;      // complete window
    std::vector<ChartFact> applied;
    std::vector<std::string> annotations;

    int dim(int x, int s) const {
        auto it = dims.find({x, s});
        return it == dims.end() ? 0 : it->second;
    }
};

// dimensionwise sum of the shifted pieces; the complete window is the
// intersection of the shifted piece windows in x, union in nothing else
AssembledChart assemble(const std::vector<ChartPiece>& pieces);

// d_r: (x,s) -> (x-1, s+r): drops one dimension at both ends; "extension"
// records the fact without changing dims.  Throws std::invalid_argument if an
// endpoint has dimension zero.
void apply_fact(AssembledChart& c, const ChartFact& f);

std::vector<ChartDiff> compare(const AssembledChart& a, const AssembledChart& b);

std::string assembled_to_json(const AssembledChart& c);

// ---- rendering -------------------------------------------------------------
enum class ChartFormat { Ascii, Svg, Json };
// Ext charts plot at (stem t-s, filtration s); h_i edges drawn
std::string render(const ExtChart& c, ChartFormat f, int ascii_width = 100);
std::string render(const AssembledChart& c, ChartFormat f, int ascii_width = 100);

}  // namespace ext2
