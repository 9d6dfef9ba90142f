#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "gdrr/types.hpp"

namespace gdrr {

// Value of a leftover region: area raised to alpha.
inline double area_value(Area a, double alpha) { return std::pow(static_cast<double>(a), alpha); }

enum class NodeKind : std::uint8_t { Structure, Item, Leftover };

using NodeIndex = std::int32_t;
inline constexpr NodeIndex kNoNode = -1;

// Arena node of a cutting-pattern tree. Children form a doubly linked list.
struct Node {
    NodeKind kind = NodeKind::Leftover;
    Cut orientation = Cut::Vertical;  // Structure only
    bool rotated = false;             // Item only
    bool alive = true;
    Length width = 0;
    Length height = 0;
    std::int32_t copy = -1;  // Item only
    std::uint32_t id = 0;    // stable within the pattern, survives compaction
    NodeIndex parent = kNoNode;
    NodeIndex first = kNoNode;
    NodeIndex last = kNoNode;
    NodeIndex prev = kNoNode;
    NodeIndex next = kNoNode;

    Area area() const { return Area{width} * height; }
};

// Owning, index-free tree value used for construction, comparison and I/O.
struct TreeNode {
    NodeKind kind = NodeKind::Leftover;
    Cut orientation = Cut::Vertical;
    Length width = 0;
    Length height = 0;
    int copy = -1;
    bool rotated = false;
    std::vector<TreeNode> children;

    static TreeNode leftover(Length w, Length h) { return {NodeKind::Leftover, Cut::Vertical, w, h, -1, false, {}}; }
    static TreeNode item(int copy, Length w, Length h, bool rotated = false) {
        return {NodeKind::Item, Cut::Vertical, w, h, copy, rotated, {}};
    }
    static TreeNode structure(Cut c, Length w, Length h, std::vector<TreeNode> children) {
        return {NodeKind::Structure, c, w, h, -1, false, std::move(children)};
    }

    bool operator==(const TreeNode&) const = default;
};

// Item or leftover rectangle realized in bin coordinates (y grows downward).
struct PlacedRect {
    int copy = -1;  // -1 for leftovers
    bool rotated = false;
    Length x = 0;
    Length y = 0;
    Length width = 0;
    Length height = 0;

    bool operator==(const PlacedRect&) const = default;
};

// A rooted alternating-orientation tree bound to one bin type.
//
// Edits (remove, insert) restore normal form: no zero-area nodes, no
// adjacent leftover siblings, no single-child structure nodes and no
// structure child sharing its parent's orientation.
class Pattern {
public:
    // Freshly opened bin: a single root leftover.
    Pattern(int bin_type, Length width, Length height);

    // Raw construction without normalization or checking. Used by readers and
    // by tests that need deliberately malformed trees.
    static Pattern from_tree(int bin_type, const TreeNode& root);
    TreeNode to_tree() const;

    int bin_type() const { return bin_type_; }
    Length width() const { return nodes_[static_cast<std::size_t>(root_)].width; }
    Length height() const { return nodes_[static_cast<std::size_t>(root_)].height; }
    Area area() const { return Area{width()} * height(); }

    NodeIndex root() const { return root_; }
    const Node& node(NodeIndex n) const { return nodes_[static_cast<std::size_t>(n)]; }
    std::size_t arena_size() const { return nodes_.size(); }

    // True when the whole bin is one leftover.
    bool empty() const { return node(root_).kind == NodeKind::Leftover; }

    // Preorder collections.
    void collect_removable(std::vector<NodeIndex>& out) const;
    void collect_leftovers(std::vector<NodeIndex>& out) const;
    std::vector<NodeIndex> children(NodeIndex n) const;

    // Replace n (Item or Structure) by a leftover of the same size. Returns the
    // released item copies in preorder.
    std::vector<int> remove(NodeIndex n);

    // Replace leftover `target` by an item of size item_w x item_h. The first
    // cut separates the item's strip, the second (perpendicular) cut isolates
    // the item inside the strip.
    void insert(NodeIndex target, int copy, Length item_w, Length item_h, bool rotated, Cut first_cut);

    void normalize();

    std::size_t item_count() const;
    Area item_area() const;
    Area leftover_area() const;
    double leftover_value(double alpha) const;

    // Item rectangles in preorder.
    std::vector<PlacedRect> layout() const;
    std::vector<PlacedRect> leftover_rects() const;

private:
    NodeIndex alloc(const Node& proto);
    void kill_subtree(NodeIndex n, std::vector<int>* released);
    void unlink(NodeIndex n);
    void append_child(NodeIndex parent, NodeIndex child);
    void replace_in_parent(NodeIndex old_node, NodeIndex new_node);
    NodeIndex normalize_node(NodeIndex n);
    NodeIndex build(const TreeNode& t, NodeIndex parent);
    void maybe_compact();

    int bin_type_ = 0;
    std::vector<Node> nodes_;
    NodeIndex root_ = kNoNode;
    std::uint32_t next_id_ = 0;
    std::size_t dead_ = 0;
};

TreeNode normalized(const TreeNode& t);

}  // namespace gdrr
