#include "gdrr/treeops.hpp"

#include <algorithm>

namespace gdrr {

int created_leftovers(Length w, Length h, Length iw, Length ih, Cut first_cut, std::array<LeftoverSize, 2>& out) {
    LeftoverSize first;
    LeftoverSize second;
    if (first_cut == Cut::Vertical) {
        first = {w - iw, h};
        second = {iw, h - ih};
    } else {
        first = {w, h - ih};
        second = {w - iw, ih};
    }
    int k = 0;
    if (first.area() > 0) out[static_cast<std::size_t>(k++)] = first;
    if (second.area() > 0) out[static_cast<std::size_t>(k++)] = second;
    return k;
}

double option_cost(const InsertionOption& o, double alpha) {
    double created = 0.0;
    for (int k = 0; k < o.created_count; ++k) created += area_value(o.created[static_cast<std::size_t>(k)].area(), alpha);
    return area_value(Area{o.target_width} * o.target_height, alpha) - created;
}

void enumerate_options_into(const Solution& s, int copy, double alpha, std::size_t first_pattern,
                            std::vector<InsertionOption>& out) {
    const ItemCopy& ic = s.inst().copy(copy);
    const bool rot = s.inst().rotation_allowed();
    std::vector<NodeIndex> leftovers;
    for (std::size_t pi = first_pattern; pi < s.patterns.size(); ++pi) {
        const Pattern& p = s.patterns[pi];
        leftovers.clear();
        p.collect_leftovers(leftovers);
        for (NodeIndex l : leftovers) {
            const Node& nd = p.node(l);
            for_each_insertion_geometry(nd.width, nd.height, ic.width, ic.height, rot,
                                        [&](Length iw, Length ih, bool rotated, Cut cut) {
                                            InsertionOption o;
                                            o.pattern = pi;
                                            o.target = l;
                                            o.target_id = nd.id;
                                            o.target_width = nd.width;
                                            o.target_height = nd.height;
                                            o.item_width = iw;
                                            o.item_height = ih;
                                            o.rotated = rotated;
                                            o.first_cut = cut;
                                            o.created_count = created_leftovers(nd.width, nd.height, iw, ih, cut, o.created);
                                            o.cost = option_cost(o, alpha);
                                            out.push_back(o);
                                        });
        }
    }
}

std::vector<InsertionOption> enumerate_options(const Solution& s, int copy, double alpha, std::size_t first_pattern) {
    std::vector<InsertionOption> out;
    enumerate_options_into(s, copy, alpha, first_pattern, out);
    return out;
}

std::size_t count_options(const Solution& s, int copy) {
    const ItemCopy& ic = s.inst().copy(copy);
    const bool rot = s.inst().rotation_allowed();
    std::size_t count = 0;
    std::vector<NodeIndex> leftovers;
    for (const auto& p : s.patterns) {
        leftovers.clear();
        p.collect_leftovers(leftovers);
        for (NodeIndex l : leftovers) {
            const Node& nd = p.node(l);
            for_each_insertion_geometry(nd.width, nd.height, ic.width, ic.height, rot,
                                        [&count](Length, Length, bool, Cut) { ++count; });
        }
    }
    return count;
}

void insert(Solution& s, const InsertionOption& o, int copy) {
    if (o.pattern >= s.patterns.size()) throw StaleOption("insert: pattern no longer exists");
    Pattern& p = s.patterns[o.pattern];
    if (o.target < 0 || static_cast<std::size_t>(o.target) >= p.arena_size()) throw StaleOption("insert: stale target");
    const Node& nd = p.node(o.target);
    if (!nd.alive || nd.kind != NodeKind::Leftover || nd.id != o.target_id || nd.width != o.target_width ||
        nd.height != o.target_height)
        throw StaleOption("insert: target leftover no longer exists");

    auto it = std::find(s.excluded.begin(), s.excluded.end(), copy);
    if (it == s.excluded.end()) throw std::invalid_argument("insert: copy is not excluded");
    p.insert(o.target, copy, o.item_width, o.item_height, o.rotated, o.first_cut);
    s.excluded.erase(it);
}

std::vector<int> remove_node(Solution& s, std::size_t pattern, NodeIndex n) {
    Pattern& p = s.patterns.at(pattern);
    auto released = p.remove(n);
    s.excluded.insert(s.excluded.end(), released.begin(), released.end());
    if (p.empty()) s.patterns.erase(s.patterns.begin() + static_cast<std::ptrdiff_t>(pattern));
    return released;
}

}  // namespace gdrr
