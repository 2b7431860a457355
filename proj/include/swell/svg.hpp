#pragma once

#include <string>
#include <utility>
#include <vector>

namespace swell {

struct Series {
    std::string label;
    std::string color; // CSS color; empty picks from a fixed palette
    std::vector<std::pair<double, double>> points;
};

struct Panel {
    std::string title;
    std::vector<Series> series;
};

/// Write a standalone multi-panel line plot. Deterministic bytes for fixed
/// input. Throws on an unwritable path or if every panel is empty.
void emit_svg(const std::vector<Panel>& panels, const std::string& path);

} // namespace swell
