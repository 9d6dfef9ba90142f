#include "gdrr/validate.hpp"

#include <algorithm>
#include <string>

namespace gdrr {

const char* to_string(ViolationKind k) {
    switch (k) {
        case ViolationKind::OutsideBin: return "outside-bin";
        case ViolationKind::Overlap: return "overlap";
        case ViolationKind::CopyAccounting: return "copy-accounting";
        case ViolationKind::DimensionMismatch: return "dimension-mismatch";
        case ViolationKind::TreeStructure: return "tree-structure";
        case ViolationKind::BinQuantity: return "bin-quantity";
    }
    return "unknown";
}

bool ValidationReport::has(ViolationKind k) const {
    return std::any_of(violations.begin(), violations.end(), [k](const Violation& v) { return v.kind == k; });
}

namespace {

struct Rect {
    int copy;
    long long x0, y0, x1, y1;
};

class Checker {
public:
    Checker(const Instance& inst, const Solution& s, ValidationReport& rep) : inst_(inst), s_(s), rep_(rep) {}

    void run() {
        std::vector<int> seen(inst_.copy_count(), 0);
        std::vector<int> per_type(inst_.bins().size(), 0);

        for (std::size_t pi = 0; pi < s_.patterns.size(); ++pi) {
            const Pattern& p = s_.patterns[pi];
            tag_ = "pattern " + std::to_string(pi);
            if (p.bin_type() < 0 || static_cast<std::size_t>(p.bin_type()) >= inst_.bins().size()) {
                add(ViolationKind::TreeStructure, tag_ + ": unknown bin type " + std::to_string(p.bin_type()));
                continue;
            }
            ++per_type[static_cast<std::size_t>(p.bin_type())];
            const BinSpec& bin = inst_.bins()[static_cast<std::size_t>(p.bin_type())];
            const Node& root = p.node(p.root());
            if (root.width != bin.width || root.height != bin.height)
                add(ViolationKind::TreeStructure, tag_ + ": root size differs from bin size");

            rects_.clear();
            visit(p, p.root(), 0, 0, seen);

            for (const auto& r : rects_) {
                if (r.x0 < 0 || r.y0 < 0 || r.x1 > bin.width || r.y1 > bin.height)
                    add(ViolationKind::OutsideBin, tag_ + ": copy " + std::to_string(r.copy) + " outside bin");
            }
            sweep_overlaps();
        }

        for (int c : s_.excluded) {
            if (c < 0 || static_cast<std::size_t>(c) >= seen.size()) {
                add(ViolationKind::CopyAccounting, "excluded set holds unknown copy " + std::to_string(c));
                continue;
            }
            ++seen[static_cast<std::size_t>(c)];
        }
        for (std::size_t c = 0; c < seen.size(); ++c) {
            if (seen[c] != 1)
                add(ViolationKind::CopyAccounting,
                    "copy " + std::to_string(c) + " accounted " + std::to_string(seen[c]) + " times");
        }

        for (std::size_t t = 0; t < per_type.size(); ++t) {
            const auto& q = inst_.bins()[t].quantity;
            if (q && per_type[t] > *q)
                add(ViolationKind::BinQuantity, "bin type " + std::to_string(inst_.bins()[t].id) + " used " +
                                                    std::to_string(per_type[t]) + " times, quantity " +
                                                    std::to_string(*q));
        }
    }

private:
    void add(ViolationKind k, std::string msg) { rep_.violations.push_back({k, std::move(msg)}); }

    void visit(const Pattern& p, NodeIndex n, long long x, long long y, std::vector<int>& seen) {
        const Node& nd = p.node(n);
        if (nd.width < 1 || nd.height < 1) add(ViolationKind::TreeStructure, tag_ + ": zero-area node");

        if (nd.kind == NodeKind::Item) {
            if (nd.first != kNoNode) add(ViolationKind::TreeStructure, tag_ + ": item node with children");
            if (nd.copy < 0 || static_cast<std::size_t>(nd.copy) >= inst_.copy_count()) {
                add(ViolationKind::CopyAccounting, tag_ + ": unknown copy " + std::to_string(nd.copy));
                return;
            }
            ++seen[static_cast<std::size_t>(nd.copy)];
            const ItemCopy& ic = inst_.copy(nd.copy);
            const bool straight = !nd.rotated && nd.width == ic.width && nd.height == ic.height;
            const bool turned = nd.rotated && nd.width == ic.height && nd.height == ic.width;
            if (!straight && !turned)
                add(ViolationKind::DimensionMismatch, tag_ + ": copy " + std::to_string(nd.copy) + " has wrong size");
            if (nd.rotated && !inst_.rotation_allowed())
                add(ViolationKind::DimensionMismatch,
                    tag_ + ": copy " + std::to_string(nd.copy) + " rotated without permission");
            rects_.push_back({nd.copy, x, y, x + nd.width, y + nd.height});
            return;
        }
        if (nd.kind == NodeKind::Leftover) {
            if (nd.first != kNoNode) add(ViolationKind::TreeStructure, tag_ + ": leftover node with children");
            return;
        }

        // structure node
        const bool vertical = nd.orientation == Cut::Vertical;
        int count = 0;
        long long along = 0;
        bool prev_leftover = false;
        long long cx = x;
        long long cy = y;
        for (NodeIndex c = nd.first; c != kNoNode; c = p.node(c).next) {
            const Node& cn = p.node(c);
            ++count;
            if (cn.kind == NodeKind::Structure && cn.orientation == nd.orientation)
                add(ViolationKind::TreeStructure, tag_ + ": structure child shares parent orientation");
            const bool leftover = cn.kind == NodeKind::Leftover;
            if (leftover && prev_leftover) add(ViolationKind::TreeStructure, tag_ + ": adjacent leftover siblings");
            prev_leftover = leftover;
            if (vertical) {
                if (cn.height != nd.height) add(ViolationKind::TreeStructure, tag_ + ": V child height mismatch");
                along += cn.width;
            } else {
                if (cn.width != nd.width) add(ViolationKind::TreeStructure, tag_ + ": H child width mismatch");
                along += cn.height;
            }
            visit(p, c, cx, cy, seen);
            if (vertical)
                cx += cn.width;
            else
                cy += cn.height;
        }
        if (count < 2) add(ViolationKind::TreeStructure, tag_ + ": structure node with fewer than 2 children");
        if (along != (vertical ? nd.width : nd.height))
            add(ViolationKind::TreeStructure, tag_ + ": children do not partition the parent");
    }

    void sweep_overlaps() {
        std::sort(rects_.begin(), rects_.end(), [](const Rect& a, const Rect& b) { return a.x0 < b.x0; });
        std::vector<const Rect*> active;
        for (const auto& r : rects_) {
            active.erase(std::remove_if(active.begin(), active.end(), [&](const Rect* a) { return a->x1 <= r.x0; }),
                         active.end());
            for (const Rect* a : active) {
                if (a->y0 < r.y1 && r.y0 < a->y1)
                    add(ViolationKind::Overlap,
                        tag_ + ": copies " + std::to_string(a->copy) + " and " + std::to_string(r.copy) + " overlap");
            }
            active.push_back(&r);
        }
    }

    const Instance& inst_;
    const Solution& s_;
    ValidationReport& rep_;
    std::string tag_;
    std::vector<Rect> rects_;
};

}  // namespace

ValidationReport validate(const Instance& inst, const Solution& s) {
    ValidationReport rep;
    Checker(inst, s, rep).run();
    return rep;
}

}  // namespace gdrr
