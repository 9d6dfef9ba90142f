#include "gdrr/pattern.hpp"

#include <stdexcept>

namespace gdrr {

Pattern::Pattern(int bin_type, Length width, Length height) : bin_type_(bin_type) {
    Node root;
    root.kind = NodeKind::Leftover;
    root.width = width;
    root.height = height;
    root_ = alloc(root);
}

NodeIndex Pattern::alloc(const Node& proto) {
    Node n = proto;
    n.id = next_id_++;
    n.alive = true;
    nodes_.push_back(n);
    return static_cast<NodeIndex>(nodes_.size() - 1);
}

NodeIndex Pattern::build(const TreeNode& t, NodeIndex parent) {
    Node proto;
    proto.kind = t.kind;
    proto.orientation = t.orientation;
    proto.width = t.width;
    proto.height = t.height;
    proto.copy = t.copy;
    proto.rotated = t.rotated;
    const NodeIndex idx = alloc(proto);
    if (parent != kNoNode) append_child(parent, idx);
    for (const auto& c : t.children) build(c, idx);
    return idx;
}

Pattern Pattern::from_tree(int bin_type, const TreeNode& root) {
    Pattern p(bin_type, root.width, root.height);
    p.nodes_.clear();
    p.next_id_ = 0;
    p.root_ = p.build(root, kNoNode);
    return p;
}

TreeNode Pattern::to_tree() const {
    auto rec = [this](auto&& self, NodeIndex n) -> TreeNode {
        const Node& nd = node(n);
        TreeNode t{nd.kind, nd.orientation, nd.width, nd.height, nd.copy, nd.rotated, {}};
        if (nd.kind != NodeKind::Structure) {
            t.orientation = Cut::Vertical;
        }
        for (NodeIndex c = nd.first; c != kNoNode; c = node(c).next) t.children.push_back(self(self, c));
        return t;
    };
    return rec(rec, root_);
}

std::vector<NodeIndex> Pattern::children(NodeIndex n) const {
    std::vector<NodeIndex> out;
    for (NodeIndex c = node(n).first; c != kNoNode; c = node(c).next) out.push_back(c);
    return out;
}

void Pattern::collect_removable(std::vector<NodeIndex>& out) const {
    auto rec = [this, &out](auto&& self, NodeIndex n) -> void {
        const Node& nd = node(n);
        if (nd.kind == NodeKind::Leftover) return;
        out.push_back(n);
        for (NodeIndex c = nd.first; c != kNoNode; c = node(c).next) self(self, c);
    };
    rec(rec, root_);
}

void Pattern::collect_leftovers(std::vector<NodeIndex>& out) const {
    auto rec = [this, &out](auto&& self, NodeIndex n) -> void {
        const Node& nd = node(n);
        if (nd.kind == NodeKind::Leftover) out.push_back(n);
        for (NodeIndex c = nd.first; c != kNoNode; c = node(c).next) self(self, c);
    };
    rec(rec, root_);
}

void Pattern::append_child(NodeIndex parent, NodeIndex child) {
    Node& p = nodes_[static_cast<std::size_t>(parent)];
    Node& c = nodes_[static_cast<std::size_t>(child)];
    c.parent = parent;
    c.next = kNoNode;
    c.prev = p.last;
    if (p.last != kNoNode)
        nodes_[static_cast<std::size_t>(p.last)].next = child;
    else
        p.first = child;
    p.last = child;
}

void Pattern::unlink(NodeIndex n) {
    Node& nd = nodes_[static_cast<std::size_t>(n)];
    if (nd.parent == kNoNode) return;
    Node& p = nodes_[static_cast<std::size_t>(nd.parent)];
    if (nd.prev != kNoNode)
        nodes_[static_cast<std::size_t>(nd.prev)].next = nd.next;
    else
        p.first = nd.next;
    if (nd.next != kNoNode)
        nodes_[static_cast<std::size_t>(nd.next)].prev = nd.prev;
    else
        p.last = nd.prev;
    nd.prev = nd.next = nd.parent = kNoNode;
}

void Pattern::replace_in_parent(NodeIndex old_node, NodeIndex new_node) {
    Node& o = nodes_[static_cast<std::size_t>(old_node)];
    Node& nw = nodes_[static_cast<std::size_t>(new_node)];
    nw.parent = o.parent;
    nw.prev = o.prev;
    nw.next = o.next;
    if (o.parent == kNoNode) {
        root_ = new_node;
    } else {
        Node& p = nodes_[static_cast<std::size_t>(o.parent)];
        if (o.prev != kNoNode)
            nodes_[static_cast<std::size_t>(o.prev)].next = new_node;
        else
            p.first = new_node;
        if (o.next != kNoNode)
            nodes_[static_cast<std::size_t>(o.next)].prev = new_node;
        else
            p.last = new_node;
    }
    o.parent = o.prev = o.next = kNoNode;
}

void Pattern::kill_subtree(NodeIndex n, std::vector<int>* released) {
    Node& nd = nodes_[static_cast<std::size_t>(n)];
    for (NodeIndex c = nd.first; c != kNoNode;) {
        const NodeIndex nx = node(c).next;
        kill_subtree(c, released);
        c = nx;
    }
    if (nd.kind == NodeKind::Item && released) released->push_back(nd.copy);
    nd.alive = false;
    nd.first = nd.last = kNoNode;
    ++dead_;
}

NodeIndex Pattern::normalize_node(NodeIndex n) {
    if (node(n).kind != NodeKind::Structure) return n;

    for (NodeIndex c = node(n).first; c != kNoNode;) {
        const NodeIndex nx = node(c).next;
        normalize_node(c);
        c = nx;
    }

    const Cut orient = node(n).orientation;
    NodeIndex c = node(n).first;
    while (c != kNoNode) {
        Node& cn = nodes_[static_cast<std::size_t>(c)];
        const NodeIndex nx = cn.next;
        if (cn.area() == 0) {
            unlink(c);
            kill_subtree(c, nullptr);
            c = nx;
            continue;
        }
        if (cn.kind == NodeKind::Structure && cn.orientation == orient) {
            const NodeIndex first_grandchild = cn.first;
            for (NodeIndex g = cn.first; g != kNoNode;) {
                const NodeIndex gnx = node(g).next;
                Node& gn = nodes_[static_cast<std::size_t>(g)];
                gn.parent = n;
                gn.prev = cn.prev;
                gn.next = c;
                if (cn.prev != kNoNode)
                    nodes_[static_cast<std::size_t>(cn.prev)].next = g;
                else
                    nodes_[static_cast<std::size_t>(n)].first = g;
                cn.prev = g;
                g = gnx;
            }
            cn.first = cn.last = kNoNode;
            unlink(c);
            cn.alive = false;
            ++dead_;
            c = first_grandchild != kNoNode ? first_grandchild : nx;
            continue;
        }
        if (cn.kind == NodeKind::Leftover && cn.prev != kNoNode &&
            node(cn.prev).kind == NodeKind::Leftover) {
            Node& pv = nodes_[static_cast<std::size_t>(cn.prev)];
            if (orient == Cut::Vertical)
                pv.width += cn.width;
            else
                pv.height += cn.height;
            unlink(c);
            cn.alive = false;
            ++dead_;
            c = nx;
            continue;
        }
        c = nx;
    }

    Node& nd = nodes_[static_cast<std::size_t>(n)];
    if (nd.first != kNoNode && nd.first == nd.last) {
        const NodeIndex only = nd.first;
        nd.first = nd.last = kNoNode;
        Node& on = nodes_[static_cast<std::size_t>(only)];
        on.prev = on.next = kNoNode;
        replace_in_parent(n, only);
        nodes_[static_cast<std::size_t>(n)].alive = false;
        ++dead_;
        return only;
    }
    return n;
}

void Pattern::normalize() {
    root_ = normalize_node(root_);
    nodes_[static_cast<std::size_t>(root_)].parent = kNoNode;
    maybe_compact();
}

std::vector<int> Pattern::remove(NodeIndex n) {
    if (n < 0 || static_cast<std::size_t>(n) >= nodes_.size() || !node(n).alive)
        throw std::invalid_argument("remove: node does not exist");
    if (node(n).kind == NodeKind::Leftover) throw std::invalid_argument("remove: leftover nodes are not removable");

    std::vector<int> released;
    for (NodeIndex c = node(n).first; c != kNoNode;) {
        const NodeIndex nx = node(c).next;
        kill_subtree(c, &released);
        c = nx;
    }
    Node& nd = nodes_[static_cast<std::size_t>(n)];
    if (nd.kind == NodeKind::Item) released.push_back(nd.copy);
    nd.kind = NodeKind::Leftover;
    nd.first = nd.last = kNoNode;
    nd.copy = -1;
    nd.rotated = false;
    nd.orientation = Cut::Vertical;
    nd.id = next_id_++;
    normalize();
    return released;
}

void Pattern::insert(NodeIndex target, int copy, Length item_w, Length item_h, bool rotated, Cut first_cut) {
    if (target < 0 || static_cast<std::size_t>(target) >= nodes_.size() || !node(target).alive ||
        node(target).kind != NodeKind::Leftover)
        throw std::invalid_argument("insert: target is not a live leftover");
    const Length w = node(target).width;
    const Length h = node(target).height;
    if (item_w > w || item_h > h || item_w < 1 || item_h < 1)
        throw std::invalid_argument("insert: item does not fit the target leftover");

    Node item;
    item.kind = NodeKind::Item;
    item.width = item_w;
    item.height = item_h;
    item.copy = copy;
    item.rotated = rotated;

    Node strip;
    strip.kind = NodeKind::Structure;
    Node inner_leftover;
    Node outer_leftover;
    if (first_cut == Cut::Vertical) {
        strip.orientation = Cut::Horizontal;
        strip.width = item_w;
        strip.height = h;
        inner_leftover.width = item_w;
        inner_leftover.height = h - item_h;
        outer_leftover.width = w - item_w;
        outer_leftover.height = h;
    } else {
        strip.orientation = Cut::Vertical;
        strip.width = w;
        strip.height = item_h;
        inner_leftover.width = w - item_w;
        inner_leftover.height = item_h;
        outer_leftover.width = w;
        outer_leftover.height = h - item_h;
    }

    const NodeIndex s = alloc(strip);
    const NodeIndex i = alloc(item);
    const NodeIndex l2 = alloc(inner_leftover);
    const NodeIndex l1 = alloc(outer_leftover);

    Node& t = nodes_[static_cast<std::size_t>(target)];
    t.kind = NodeKind::Structure;
    t.orientation = first_cut;
    t.id = next_id_++;
    append_child(target, s);
    append_child(target, l1);
    append_child(s, i);
    append_child(s, l2);
    normalize();
}

void Pattern::maybe_compact() {
    if (dead_ < 32 || dead_ * 2 < nodes_.size()) return;
    std::vector<NodeIndex> remap(nodes_.size(), kNoNode);
    std::vector<Node> fresh;
    fresh.reserve(nodes_.size() - dead_);
    for (std::size_t k = 0; k < nodes_.size(); ++k) {
        if (!nodes_[k].alive) continue;
        remap[k] = static_cast<NodeIndex>(fresh.size());
        fresh.push_back(nodes_[k]);
    }
    auto fix = [&remap](NodeIndex& x) {
        if (x != kNoNode) x = remap[static_cast<std::size_t>(x)];
    };
    for (auto& n : fresh) {
        fix(n.parent);
        fix(n.first);
        fix(n.last);
        fix(n.prev);
        fix(n.next);
    }
    fix(root_);
    nodes_ = std::move(fresh);
    dead_ = 0;
}

std::size_t Pattern::item_count() const {
    std::size_t k = 0;
    for (const auto& n : nodes_)
        if (n.alive && n.kind == NodeKind::Item) ++k;
    return k;
}

Area Pattern::item_area() const {
    Area a = 0;
    for (const auto& n : nodes_)
        if (n.alive && n.kind == NodeKind::Item) a += n.area();
    return a;
}

Area Pattern::leftover_area() const {
    Area a = 0;
    for (const auto& n : nodes_)
        if (n.alive && n.kind == NodeKind::Leftover) a += n.area();
    return a;
}

double Pattern::leftover_value(double alpha) const {
    double v = 0.0;
    auto rec = [&](auto&& self, NodeIndex n) -> void {
        const Node& nd = node(n);
        if (nd.kind == NodeKind::Leftover) v += area_value(nd.area(), alpha);
        for (NodeIndex c = nd.first; c != kNoNode; c = node(c).next) self(self, c);
    };
    rec(rec, root_);
    return v;
}

namespace {

template <class Visit>
void realize(const Pattern& p, NodeIndex n, Length x, Length y, Visit&& visit) {
    const Node& nd = p.node(n);
    if (nd.kind != NodeKind::Structure) {
        visit(nd, x, y);
        return;
    }
    for (NodeIndex c = nd.first; c != kNoNode; c = p.node(c).next) {
        realize(p, c, x, y, visit);
        if (nd.orientation == Cut::Vertical)
            x += p.node(c).width;
        else
            y += p.node(c).height;
    }
}

}  // namespace

std::vector<PlacedRect> Pattern::layout() const {
    std::vector<PlacedRect> out;
    realize(*this, root_, 0, 0, [&out](const Node& nd, Length x, Length y) {
        if (nd.kind == NodeKind::Item) out.push_back({nd.copy, nd.rotated, x, y, nd.width, nd.height});
    });
    return out;
}

std::vector<PlacedRect> Pattern::leftover_rects() const {
    std::vector<PlacedRect> out;
    realize(*this, root_, 0, 0, [&out](const Node& nd, Length x, Length y) {
        if (nd.kind == NodeKind::Leftover) out.push_back({-1, false, x, y, nd.width, nd.height});
    });
    return out;
}

TreeNode normalized(const TreeNode& t) {
    auto p = Pattern::from_tree(0, t);
    p.normalize();
    return p.to_tree();
}

}  // namespace gdrr
