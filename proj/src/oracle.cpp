#include "gdrr/oracle.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <unordered_map>

namespace gdrr {

namespace {

using Mask = std::uint32_t;

struct BinSet {
    std::vector<int> counts;
    Area area = 0;
    int total = 0;
};

// All bin multisets with 1..max_bins bins, ordered by area, then bin count.
std::vector<BinSet> bin_sets(const Instance& inst, int max_bins, std::size_t limit) {
    std::vector<BinSet> out;
    BinSet cur;
    cur.counts.assign(inst.bins().size(), 0);
    auto rec = [&](auto&& self, std::size_t t) -> void {
        if (t == inst.bins().size()) {
            if (cur.total > 0) {
                out.push_back(cur);
                if (out.size() > limit) throw OracleBudgetExceeded("oracle: too many bin multisets");
            }
            return;
        }
        const auto& b = inst.bins()[t];
        const int cap = std::min(max_bins - cur.total, b.quantity ? *b.quantity : max_bins);
        for (int k = 0; k <= cap; ++k) {
            cur.counts[t] = k;
            cur.total += k;
            cur.area += k * b.area();
            self(self, t + 1);
            cur.total -= k;
            cur.area -= k * b.area();
        }
        cur.counts[t] = 0;
    };
    rec(rec, 0);
    std::stable_sort(out.begin(), out.end(), [](const BinSet& a, const BinSet& b) {
        if (a.area != b.area) return a.area < b.area;
        return a.total < b.total;
    });
    return out;
}

class TreePacker {
public:
    TreePacker(const Instance& inst, const OracleBudget& budget) : inst_(inst), budget_(budget) {
        const auto n = inst.copy_count();
        areas_.assign(std::size_t{1} << n, 0);
        for (Mask m = 1; m < (Mask{1} << n); ++m) {
            const int low = std::countr_zero(m);
            areas_[m] = areas_[m & (m - 1)] + inst.copy(low).area();
        }
    }

    Area mask_area(Mask m) const { return areas_[m]; }

    bool feasible(Mask mask, Length w, Length h) {
        if (++nodes_ > budget_.node_budget) throw OracleBudgetExceeded("oracle: node budget exhausted");
        if (mask == 0) return true;
        if (mask_area(mask) > Area{w} * h) return false;
        if (std::has_single_bit(mask)) {
            const auto& ic = inst_.copy(std::countr_zero(mask));
            return inst_.fits(ic.width, ic.height, w, h);
        }
        const std::uint64_t key = key_of(mask, w, h);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second.ok;

        Decision d;
        const Mask low = mask & (~mask + 1);
        for (Cut cut : {Cut::Vertical, Cut::Horizontal}) {
            const Length span = cut == Cut::Vertical ? w : h;
            for (Mask a = (mask - 1) & mask; a != 0 && !d.ok; a = (a - 1) & mask) {
                if (!(a & low)) continue;
                const Mask b = mask ^ a;
                for (Length x : sums(a, cut)) {
                    if (x >= span) break;
                    const bool ok = cut == Cut::Vertical ? feasible(a, x, h) && feasible(b, w - x, h)
                                                         : feasible(a, w, x) && feasible(b, w, h - x);
                    if (ok) {
                        d = {true, cut, x, a};
                        break;
                    }
                }
            }
            if (d.ok) break;
        }
        memo_[key] = d;
        return d.ok;
    }

    // Tree for a (mask, w, h) known to be feasible.
    TreeNode build(Mask mask, Length w, Length h) {
        if (std::has_single_bit(mask)) {
            const int c = std::countr_zero(mask);
            const auto& ic = inst_.copy(c);
            const bool straight = ic.width <= w && ic.height <= h;
            const Length iw = straight ? ic.width : ic.height;
            const Length ih = straight ? ic.height : ic.width;
            auto strip = TreeNode::structure(Cut::Horizontal, iw, h,
                                             {TreeNode::item(c, iw, ih, !straight), TreeNode::leftover(iw, h - ih)});
            return TreeNode::structure(Cut::Vertical, w, h, {std::move(strip), TreeNode::leftover(w - iw, h)});
        }
        feasible(mask, w, h);
        const Decision d = memo_.at(key_of(mask, w, h));
        const Mask b = mask ^ d.left;
        if (d.cut == Cut::Vertical)
            return TreeNode::structure(Cut::Vertical, w, h, {build(d.left, d.pos, h), build(b, w - d.pos, h)});
        return TreeNode::structure(Cut::Horizontal, w, h, {build(d.left, w, d.pos), build(b, w, h - d.pos)});
    }

private:
    struct Decision {
        bool ok = false;
        Cut cut = Cut::Vertical;
        Length pos = 0;
        Mask left = 0;
    };

    static std::uint64_t key_of(Mask mask, Length w, Length h) {
        return std::uint64_t{mask} | (std::uint64_t(static_cast<std::uint32_t>(w)) << 16) |
               (std::uint64_t(static_cast<std::uint32_t>(h)) << 40);
    }

    // Possible extents of a left-justified packing of `mask` along the cut
    // axis: sums over subsets, each item in either allowed orientation.
    const std::vector<Length>& sums(Mask mask, Cut cut) {
        auto& cache = cut == Cut::Vertical ? width_sums_ : height_sums_;
        if (auto it = cache.find(mask); it != cache.end()) return it->second;
        std::set<Length> acc{0};
        for (Mask m = mask; m; m &= m - 1) {
            const auto& ic = inst_.copy(std::countr_zero(m));
            const Length along = cut == Cut::Vertical ? ic.width : ic.height;
            const Length across = cut == Cut::Vertical ? ic.height : ic.width;
            std::set<Length> next = acc;
            for (Length s : acc) {
                next.insert(s + along);
                if (inst_.rotation_allowed()) next.insert(s + across);
            }
            acc = std::move(next);
        }
        acc.erase(0);
        return cache[mask] = std::vector<Length>(acc.begin(), acc.end());
    }

    const Instance& inst_;
    const OracleBudget& budget_;
    std::vector<Area> areas_;
    std::unordered_map<std::uint64_t, Decision> memo_;
    std::unordered_map<Mask, std::vector<Length>> width_sums_;
    std::unordered_map<Mask, std::vector<Length>> height_sums_;
    std::uint64_t nodes_ = 0;
};

// Splits `rest` over bins[k..], every bin non-empty.
bool assign(TreePacker& packer, const Instance& inst, const std::vector<int>& bins, std::size_t k, Mask rest,
            std::vector<Mask>& chosen) {
    const auto& b = inst.bins()[static_cast<std::size_t>(bins[k])];
    if (k + 1 == bins.size()) {
        if (!packer.feasible(rest, b.width, b.height)) return false;
        chosen[k] = rest;
        return true;
    }
    const std::size_t bins_after = bins.size() - k - 1;
    for (Mask s = rest; s != 0; s = (s - 1) & rest) {
        if (static_cast<std::size_t>(std::popcount(rest ^ s)) < bins_after) continue;
        // identical consecutive bins: keep subsets in decreasing mask order
        if (k > 0 && bins[k] == bins[k - 1] && s > chosen[k - 1]) continue;
        if (packer.mask_area(s) > b.area()) continue;
        if (!packer.feasible(s, b.width, b.height)) continue;
        chosen[k] = s;
        if (assign(packer, inst, bins, k + 1, rest ^ s, chosen)) return true;
    }
    return false;
}

void check_size(const Instance& inst, const OracleBudget& budget) {
    if (inst.copy_count() > budget.max_copies || inst.copy_count() > 16)
        throw OracleBudgetExceeded("oracle: instance has " + std::to_string(inst.copy_count()) +
                                   " item copies, budget allows " + std::to_string(budget.max_copies));
}

}  // namespace

OracleResult exact_min_area(std::shared_ptr<const Instance> inst_ptr, const OracleBudget& budget) {
    const Instance& inst = *inst_ptr;
    check_size(inst, budget);
    const int n = static_cast<int>(inst.copy_count());
    const Mask all = (Mask{1} << n) - 1;
    TreePacker packer(inst, budget);

    for (const auto& set : bin_sets(inst, n, budget.max_bin_sets)) {
        if (set.area < inst.total_item_area()) continue;
        std::vector<int> bins;
        for (std::size_t t = 0; t < set.counts.size(); ++t)
            for (int k = 0; k < set.counts[t]; ++k) bins.push_back(static_cast<int>(t));
        std::vector<Mask> chosen(bins.size(), 0);
        if (!assign(packer, inst, bins, 0, all, chosen)) continue;

        OracleResult res{set.area, Solution{}};
        res.witness.instance = inst_ptr;
        for (std::size_t k = 0; k < bins.size(); ++k) {
            const auto& b = inst.bins()[static_cast<std::size_t>(bins[k])];
            auto p = Pattern::from_tree(bins[k], packer.build(chosen[k], b.width, b.height));
            p.normalize();
            res.witness.patterns.push_back(std::move(p));
        }
        return res;
    }
    throw InstanceError("oracle: no bin multiset can pack all items");
}

namespace {

struct PlacedBox {
    Length x0, y0, x1, y1;
};

bool guillotine_separable(std::vector<PlacedBox> boxes) {
    if (boxes.size() <= 1) return true;
    for (int axis = 0; axis < 2; ++axis) {
        for (const auto& cand : boxes) {
            const Length cut = axis == 0 ? cand.x1 : cand.y1;
            std::vector<PlacedBox> lo;
            std::vector<PlacedBox> hi;
            bool crosses = false;
            for (const auto& b : boxes) {
                const Length a0 = axis == 0 ? b.x0 : b.y0;
                const Length a1 = axis == 0 ? b.x1 : b.y1;
                if (a1 <= cut)
                    lo.push_back(b);
                else if (a0 >= cut)
                    hi.push_back(b);
                else {
                    crosses = true;
                    break;
                }
            }
            if (crosses || lo.empty() || hi.empty()) continue;
            return guillotine_separable(std::move(lo)) && guillotine_separable(std::move(hi));
        }
    }
    return false;
}

class PlacementSearch {
public:
    PlacementSearch(const Instance& inst, const OracleBudget& budget) : inst_(inst), budget_(budget) {}

    bool packable(const std::vector<int>& copies, Length w, Length h) {
        std::vector<int> key = copies;
        std::sort(key.begin(), key.end());
        key.push_back(w);
        key.push_back(h);
        if (auto it = cache_.find(key); it != cache_.end()) return it->second;
        std::vector<PlacedBox> placed;
        std::vector<bool> used(copies.size(), false);
        const bool ok = place(copies, used, placed, w, h);
        cache_[key] = ok;
        return ok;
    }

private:
    bool place(const std::vector<int>& copies, std::vector<bool>& used, std::vector<PlacedBox>& placed, Length w,
               Length h) {
        if (++nodes_ > budget_.node_budget) throw OracleBudgetExceeded("placement oracle: node budget exhausted");
        if (placed.size() == copies.size()) return guillotine_separable(placed);

        std::vector<Length> xs{0};
        std::vector<Length> ys{0};
        for (const auto& b : placed) {
            xs.push_back(b.x1);
            ys.push_back(b.y1);
        }
        for (std::size_t i = 0; i < copies.size(); ++i) {
            if (used[i]) continue;
            const auto& ic = inst_.copy(copies[i]);
            for (int r = 0; r < (inst_.rotation_allowed() && ic.width != ic.height ? 2 : 1); ++r) {
                const Length iw = r ? ic.height : ic.width;
                const Length ih = r ? ic.width : ic.height;
                for (Length x : xs) {
                    for (Length y : ys) {
                        const PlacedBox box{x, y, x + iw, y + ih};
                        if (box.x1 > w || box.y1 > h) continue;
                        const bool clash = std::any_of(placed.begin(), placed.end(), [&](const PlacedBox& o) {
                            return box.x0 < o.x1 && o.x0 < box.x1 && box.y0 < o.y1 && o.y0 < box.y1;
                        });
                        if (clash) continue;
                        used[i] = true;
                        placed.push_back(box);
                        const bool ok = place(copies, used, placed, w, h);
                        placed.pop_back();
                        used[i] = false;
                        if (ok) return true;
                    }
                }
            }
        }
        return false;
    }

    const Instance& inst_;
    const OracleBudget& budget_;
    std::map<std::vector<int>, bool> cache_;
    std::uint64_t nodes_ = 0;
};

}  // namespace

Area exact_min_area_by_placement(const Instance& inst, const OracleBudget& budget) {
    check_size(inst, budget);
    const int n = static_cast<int>(inst.copy_count());

    // multisets enumerated independently of bin_sets()
    std::vector<std::pair<Area, std::vector<int>>> sets;
    std::vector<int> counts(inst.bins().size(), 0);
    auto rec = [&](auto&& self, std::size_t t, int total) -> void {
        if (t == counts.size()) {
            if (total == 0) return;
            Area a = 0;
            for (std::size_t k = 0; k < counts.size(); ++k) a += counts[k] * inst.bins()[k].area();
            sets.emplace_back(a, counts);
            return;
        }
        const auto& q = inst.bins()[t].quantity;
        for (int k = 0; total + k <= n && (!q || k <= *q); ++k) {
            counts[t] = k;
            self(self, t + 1, total + k);
        }
        counts[t] = 0;
    };
    rec(rec, 0, 0);
    if (sets.size() > budget.max_bin_sets) throw OracleBudgetExceeded("placement oracle: too many bin multisets");
    std::sort(sets.begin(), sets.end());

    PlacementSearch search(inst, budget);
    for (const auto& [area, cnt] : sets) {
        if (area < inst.total_item_area()) continue;
        std::vector<int> bins;
        for (std::size_t t = 0; t < cnt.size(); ++t)
            for (int k = 0; k < cnt[t]; ++k) bins.push_back(static_cast<int>(t));
        const auto m = bins.size();
        if (m > static_cast<std::size_t>(n)) continue;

        // every assignment of copies to bins, each bin non-empty
        std::vector<std::size_t> where(static_cast<std::size_t>(n), 0);
        bool found = false;
        for (;;) {
            std::vector<std::vector<int>> groups(m);
            for (int c = 0; c < n; ++c) groups[where[static_cast<std::size_t>(c)]].push_back(c);
            bool ok = true;
            for (std::size_t k = 0; k < m && ok; ++k) {
                const auto& b = inst.bins()[static_cast<std::size_t>(bins[k])];
                ok = !groups[k].empty() && search.packable(groups[k], b.width, b.height);
            }
            if (ok) {
                found = true;
                break;
            }
            std::size_t d = 0;
            while (d < where.size() && ++where[d] == m) where[d++] = 0;
            if (d == where.size()) break;
        }
        if (found) return area;
    }
    throw InstanceError("placement oracle: no bin multiset can pack all items");
}

}  // namespace gdrr
