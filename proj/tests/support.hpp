// Test-only helpers: instance generators, a tree canonicalizer and layout
// routine written independently of the library's tree code, and random
// edit drivers.
#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <memory>
#include <vector>

#include "gdrr/instance.hpp"
#include "gdrr/pattern.hpp"
#include "gdrr/rng.hpp"
#include "gdrr/solution.hpp"
#include "gdrr/treeops.hpp"

namespace gdrr::testing {

inline std::shared_ptr<const Instance> make_instance(std::vector<ItemSpec> items, std::vector<BinSpec> bins,
                                                     bool rotation = false, std::string name = "test") {
    for (std::size_t k = 0; k < items.size(); ++k)
        if (items[k].id == 0) items[k].id = static_cast<int>(k + 1);
    for (std::size_t k = 0; k < bins.size(); ++k)
        if (bins[k].id == 0) bins[k].id = static_cast<int>(k + 1);
    return std::make_shared<const Instance>(std::move(name), std::move(items), std::move(bins), rotation);
}

inline Length draw(Rng& rng, Length lo, Length hi) {
    return lo + static_cast<Length>(rng.uniform_index(static_cast<std::size_t>(hi - lo + 1)));
}

// Random instance whose items all fit the first bin type.
inline std::shared_ptr<const Instance> random_instance(Rng& rng, int item_types, int max_demand, int bin_types,
                                                       Length max_side, bool rotation) {
    std::vector<BinSpec> bins;
    for (int b = 0; b < bin_types; ++b) {
        BinSpec spec{b + 1, draw(rng, max_side / 2, max_side), draw(rng, max_side / 2, max_side), std::nullopt};
        if (rng.bernoulli(0.3)) spec.quantity = 1 + static_cast<int>(rng.uniform_index(4));
        bins.push_back(spec);
    }
    bins[0].quantity.reset();
    std::vector<ItemSpec> items;
    for (int t = 0; t < item_types; ++t)
        items.push_back({t + 1, draw(rng, 1, bins[0].width), draw(rng, 1, bins[0].height),
                         1 + static_cast<int>(rng.uniform_index(static_cast<std::size_t>(max_demand)))});
    return make_instance(std::move(items), std::move(bins), rotation);
}

inline Area tree_area(const TreeNode& t) { return Area{t.width} * t.height; }

// Canonical form computed directly on value trees: drop zero-area nodes,
// splice same-orientation structure children, merge neighbouring leftovers,
// collapse single-child structures.
inline TreeNode canon(const TreeNode& t) {
    if (t.kind != NodeKind::Structure) return t;
    std::vector<TreeNode> kids;
    for (const auto& c0 : t.children) {
        if (tree_area(c0) == 0) continue;
        TreeNode c = canon(c0);
        if (c.kind == NodeKind::Structure && c.orientation == t.orientation) {
            for (auto& g : c.children) kids.push_back(std::move(g));
        } else {
            kids.push_back(std::move(c));
        }
    }
    std::vector<TreeNode> merged;
    for (auto& c : kids) {
        if (!merged.empty() && merged.back().kind == NodeKind::Leftover && c.kind == NodeKind::Leftover) {
            if (t.orientation == Cut::Vertical)
                merged.back().width += c.width;
            else
                merged.back().height += c.height;
            continue;
        }
        merged.push_back(std::move(c));
    }
    if (merged.size() == 1) {
        TreeNode only = std::move(merged.front());
        if (only.kind == NodeKind::Leftover) return TreeNode::leftover(t.width, t.height);
        if (only.width == t.width && only.height == t.height) return only;
        merged.assign(1, std::move(only));
    }
    if (merged.empty()) return TreeNode::leftover(t.width, t.height);
    return TreeNode::structure(t.orientation, t.width, t.height, std::move(merged));
}

struct Rect {
    int copy;  // -1 for leftovers
    Length x, y, w, h;
    bool operator<(const Rect& o) const {
        return std::tie(copy, x, y, w, h) < std::tie(o.copy, o.x, o.y, o.w, o.h);
    }
    bool operator==(const Rect&) const = default;
};

// Every leaf rectangle, placing V children left to right and H children top
// to bottom.
inline void leaf_rects(const TreeNode& t, Length x, Length y, std::vector<Rect>& out) {
    if (t.kind == NodeKind::Item) {
        out.push_back({t.copy, x, y, t.width, t.height});
        return;
    }
    if (t.kind == NodeKind::Leftover) {
        out.push_back({-1, x, y, t.width, t.height});
        return;
    }
    for (const auto& c : t.children) {
        leaf_rects(c, x, y, out);
        if (t.orientation == Cut::Vertical)
            x += c.width;
        else
            y += c.height;
    }
}

// Replaces the leftover at preorder leaf position `leaf` by the unnormalized
// two-cut construction.
inline bool splice_item(TreeNode& t, int& leaf, int copy, Length iw, Length ih, bool rotated, Cut first) {
    if (t.kind == NodeKind::Leftover) {
        if (leaf-- != 0) return false;
        const Length w = t.width;
        const Length h = t.height;
        if (first == Cut::Vertical) {
            TreeNode strip = TreeNode::structure(Cut::Horizontal, iw, h,
                                                 {TreeNode::item(copy, iw, ih, rotated), TreeNode::leftover(iw, h - ih)});
            t = TreeNode::structure(Cut::Vertical, w, h, {std::move(strip), TreeNode::leftover(w - iw, h)});
        } else {
            TreeNode strip = TreeNode::structure(Cut::Vertical, w, ih,
                                                 {TreeNode::item(copy, iw, ih, rotated), TreeNode::leftover(w - iw, ih)});
            t = TreeNode::structure(Cut::Horizontal, w, h, {std::move(strip), TreeNode::leftover(w, h - ih)});
        }
        return true;
    }
    for (auto& c : t.children)
        if (splice_item(c, leaf, copy, iw, ih, rotated, first)) return true;
    return false;
}

inline int leftover_leaves(const TreeNode& t) {
    if (t.kind == NodeKind::Leftover) return 1;
    int n = 0;
    for (const auto& c : t.children) n += leftover_leaves(c);
    return n;
}

// Applies one random edit: insert a random excluded copy via a random
// option (opening a bin when nothing fits), or remove a random node.
inline void random_edit(Solution& s, Rng& rng, double alpha = 1.2) {
    const bool try_insert = !s.excluded.empty() && (s.patterns.empty() || rng.bernoulli(0.65));
    if (try_insert) {
        const int copy = s.excluded[rng.uniform_index(s.excluded.size())];
        auto opts = enumerate_options(s, copy, alpha);
        if (opts.empty() || rng.bernoulli(0.1)) {
            const auto used = bins_used(s);
            std::vector<int> open;
            for (std::size_t t = 0; t < s.inst().bins().size(); ++t) {
                const auto& b = s.inst().bins()[t];
                if ((!b.quantity || used[t] < *b.quantity) && s.inst().copy_fits_bin(copy, static_cast<int>(t)))
                    open.push_back(static_cast<int>(t));
            }
            if (open.empty()) return;
            const int t = open[rng.uniform_index(open.size())];
            s.patterns.emplace_back(t, s.inst().bins()[static_cast<std::size_t>(t)].width,
                                    s.inst().bins()[static_cast<std::size_t>(t)].height);
            opts = enumerate_options(s, copy, alpha, s.patterns.size() - 1);
        }
        insert(s, opts[rng.uniform_index(opts.size())], copy);
        return;
    }
    if (s.patterns.empty()) return;
    const std::size_t pi = rng.uniform_index(s.patterns.size());
    std::vector<NodeIndex> nodes;
    s.patterns[pi].collect_removable(nodes);
    if (nodes.empty()) return;
    remove_node(s, pi, nodes[rng.uniform_index(nodes.size())]);
}

// Every (leftover, orientation, first cut) triple applied to the pattern's
// value tree and canonicalized; duplicates collapse.
inline std::set<std::pair<std::size_t, std::vector<Rect>>> brute_outcomes(const Solution& s, int copy) {
    std::set<std::pair<std::size_t, std::vector<Rect>>> out;
    const ItemCopy& ic = s.inst().copy(copy);
    for (std::size_t pi = 0; pi < s.patterns.size(); ++pi) {
        const TreeNode base = s.patterns[pi].to_tree();
        const int leaves = leftover_leaves(base);
        for (int leaf = 0; leaf < leaves; ++leaf) {
            for (int r = 0; r < (s.inst().rotation_allowed() ? 2 : 1); ++r) {
                const Length iw = r ? ic.height : ic.width;
                const Length ih = r ? ic.width : ic.height;
                for (Cut cut : {Cut::Vertical, Cut::Horizontal}) {
                    TreeNode t = base;
                    int pos = leaf;
                    // find the leaf size first
                    std::vector<Rect> rects;
                    leaf_rects(t, 0, 0, rects);
                    int seen = 0;
                    Rect target{};
                    for (const auto& x : rects)
                        if (x.copy < 0 && seen++ == leaf) target = x;
                    if (iw > target.w || ih > target.h) continue;
                    splice_item(t, pos, copy, iw, ih, r == 1, cut);
                    std::vector<Rect> placed;
                    leaf_rects(canon(t), 0, 0, placed);
                    std::sort(placed.begin(), placed.end());
                    out.insert({pi, placed});
                }
            }
        }
    }
    return out;
}

// Cost recomputed from the canonical tree: value of the used leftover minus
// the values of leftovers that did not exist before.
inline double brute_cost(const Pattern& before, const Pattern& after, Length tw, Length th, double alpha) {
    std::vector<Rect> a;
    std::vector<Rect> b;
    leaf_rects(before.to_tree(), 0, 0, a);
    leaf_rects(canon(after.to_tree()), 0, 0, b);
    std::multiset<Rect> old(a.begin(), a.end());
    double created = 0.0;
    for (const auto& r : b) {
        if (r.copy >= 0) continue;
        auto it = old.find(r);
        if (it != old.end()) {
            old.erase(it);
            continue;
        }
        created += std::pow(static_cast<double>(Area{r.w} * r.h), alpha);
    }
    return std::pow(static_cast<double>(Area{tw} * th), alpha) - created;
}

}  // namespace gdrr::testing
