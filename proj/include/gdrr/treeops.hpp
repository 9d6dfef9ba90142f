#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "gdrr/solution.hpp"

namespace gdrr {

struct LeftoverSize {
    Length width = 0;
    Length height = 0;

    Area area() const { return Area{width} * height; }
    bool operator==(const LeftoverSize&) const = default;
};

// One concrete way to put an item copy into a leftover node.
struct InsertionOption {
    std::size_t pattern = 0;  // index into Solution::patterns
    NodeIndex target = kNoNode;
    std::uint32_t target_id = 0;
    Length target_width = 0;
    Length target_height = 0;
    Length item_width = 0;  // in the chosen orientation
    Length item_height = 0;
    bool rotated = false;
    Cut first_cut = Cut::Vertical;
    std::array<LeftoverSize, 2> created{};
    int created_count = 0;
    double cost = 0.0;
};

class StaleOption : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Leftovers produced by splitting a w x h leftover around an iw x ih item.
// Zero-area pieces are omitted.
int created_leftovers(Length w, Length h, Length iw, Length ih, Cut first_cut, std::array<LeftoverSize, 2>& out);

// value(used) minus the summed value of the created leftovers.
double option_cost(const InsertionOption& o, double alpha);

// Calls f(item_w, item_h, rotated, first_cut) for every distinct insertion
// geometry of an iw x ih item in a w x h leftover. Distinct means the
// normalized resulting subtrees differ: exact fits in one dimension produce a
// single cut order, and square items are never rotated.
template <class F>
void for_each_insertion_geometry(Length w, Length h, Length iw, Length ih, bool rotation_allowed, F&& f) {
    auto orientation = [&](Length a, Length b, bool rotated) {
        if (a > w || b > h) return;
        if (a == w || b == h) {
            f(a, b, rotated, a == w ? Cut::Horizontal : Cut::Vertical);
            return;
        }
        f(a, b, rotated, Cut::Vertical);
        f(a, b, rotated, Cut::Horizontal);
    };
    orientation(iw, ih, false);
    if (rotation_allowed && iw != ih) orientation(ih, iw, true);
}

// Every insertion option for one item copy over all leftovers of the
// patterns in [first_pattern, end).
std::vector<InsertionOption> enumerate_options(const Solution& s, int copy, double alpha,
                                               std::size_t first_pattern = 0);
void enumerate_options_into(const Solution& s, int copy, double alpha, std::size_t first_pattern,
                            std::vector<InsertionOption>& out);

// Equal to enumerate_options(s, copy, alpha).size() without building options.
std::size_t count_options(const Solution& s, int copy);

// Applies an option enumerated against the current s. Throws StaleOption when
// the target leftover no longer exists or changed.
void insert(Solution& s, const InsertionOption& o, int copy);

// Removes an Item or Structure node of s.patterns[pattern], moving the
// released copies to the excluded set. A pattern left without items is
// dropped from the solution. Returns the released copies.
std::vector<int> remove_node(Solution& s, std::size_t pattern, NodeIndex n);

}  // namespace gdrr
