#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gdrr/types.hpp"

namespace gdrr {

struct ItemSpec {
    int id = 0;
    Length width = 0;
    Length height = 0;
    int demand = 1;
};

struct BinSpec {
    int id = 0;
    Length width = 0;
    Length height = 0;
    std::optional<int> quantity;  // empty = unlimited

    Area area() const { return Area{width} * height; }
};

// One placeable unit. An ItemSpec with demand d yields d copies.
struct ItemCopy {
    int type = 0;  // index into Instance::items()
    Length width = 0;
    Length height = 0;

    Area area() const { return Area{width} * height; }
};

class InstanceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Immutable problem definition. Construction validates dimensions, id
// uniqueness and that every item fits at least one bin type.
class Instance {
public:
    Instance(std::string name, std::vector<ItemSpec> items, std::vector<BinSpec> bins,
             bool rotation_allowed);

    const std::string& name() const { return name_; }
    const std::vector<ItemSpec>& items() const { return items_; }
    const std::vector<BinSpec>& bins() const { return bins_; }
    bool rotation_allowed() const { return rotation_allowed_; }

    const std::vector<ItemCopy>& copies() const { return copies_; }
    std::size_t copy_count() const { return copies_.size(); }
    const ItemCopy& copy(int c) const { return copies_[static_cast<std::size_t>(c)]; }
    int item_id_of_copy(int c) const { return items_[static_cast<std::size_t>(copy(c).type)].id; }

    Area total_item_area() const { return total_item_area_; }

    bool fits(Length item_w, Length item_h, Length bin_w, Length bin_h) const;
    bool copy_fits_bin(int c, int bin_type) const;

    // Same data with a different rotation policy (re-validated).
    Instance with_rotation(bool rotation_allowed) const;

    // Every dimension multiplied by k.
    Instance scaled(Length k) const;

private:
    std::string name_;
    std::vector<ItemSpec> items_;
    std::vector<BinSpec> bins_;
    bool rotation_allowed_ = false;
    std::vector<ItemCopy> copies_;
    Area total_item_area_ = 0;
};

// Smallest total area of a bin multiset (respecting quantities) whose area
// covers the total item area. Any feasible solution uses at least this much.
// Falls back to the total item area when the search range is too large.
Area bin_area_lower_bound(const Instance& inst);

}  // namespace gdrr
