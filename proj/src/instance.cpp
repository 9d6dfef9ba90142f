#include "gdrr/instance.hpp"

#include <algorithm>
#include <set>

namespace gdrr {

Instance::Instance(std::string name, std::vector<ItemSpec> items, std::vector<BinSpec> bins,
                   bool rotation_allowed)
    : name_(std::move(name)),
      items_(std::move(items)),
      bins_(std::move(bins)),
      rotation_allowed_(rotation_allowed) {
    if (items_.empty()) throw InstanceError("instance has no items");
    if (bins_.empty()) throw InstanceError("instance has no bin types");

    std::set<int> item_ids;
    for (const auto& it : items_) {
        if (it.width < 1 || it.height < 1)
            throw InstanceError("item " + std::to_string(it.id) + " has a non-positive dimension");
        if (it.demand < 1)
            throw InstanceError("item " + std::to_string(it.id) + " has non-positive demand");
        if (!item_ids.insert(it.id).second)
            throw InstanceError("duplicate item id " + std::to_string(it.id));
    }
    std::set<int> bin_ids;
    for (const auto& b : bins_) {
        if (b.width < 1 || b.height < 1)
            throw InstanceError("bin " + std::to_string(b.id) + " has a non-positive dimension");
        if (b.quantity && *b.quantity < 1)
            throw InstanceError("bin " + std::to_string(b.id) + " has non-positive quantity");
        if (!bin_ids.insert(b.id).second)
            throw InstanceError("duplicate bin id " + std::to_string(b.id));
    }

    for (std::size_t t = 0; t < items_.size(); ++t) {
        const auto& it = items_[t];
        const bool fits_some = std::any_of(bins_.begin(), bins_.end(), [&](const BinSpec& b) {
            return fits(it.width, it.height, b.width, b.height);
        });
        if (!fits_some)
            throw InstanceError("item " + std::to_string(it.id) + " (" + std::to_string(it.width) + "x" +
                                std::to_string(it.height) + ") fits no bin type");
        for (int d = 0; d < it.demand; ++d) {
            copies_.push_back(ItemCopy{static_cast<int>(t), it.width, it.height});
            total_item_area_ += copies_.back().area();
        }
    }
}

bool Instance::fits(Length item_w, Length item_h, Length bin_w, Length bin_h) const {
    if (item_w <= bin_w && item_h <= bin_h) return true;
    return rotation_allowed_ && item_h <= bin_w && item_w <= bin_h;
}

bool Instance::copy_fits_bin(int c, int bin_type) const {
    const auto& ic = copy(c);
    const auto& b = bins_[static_cast<std::size_t>(bin_type)];
    return fits(ic.width, ic.height, b.width, b.height);
}

Instance Instance::with_rotation(bool rotation_allowed) const {
    return Instance(name_, items_, bins_, rotation_allowed);
}

Instance Instance::scaled(Length k) const {
    auto items = items_;
    auto bins = bins_;
    for (auto& it : items) {
        it.width *= k;
        it.height *= k;
    }
    for (auto& b : bins) {
        b.width *= k;
        b.height *= k;
    }
    return Instance(name_, std::move(items), std::move(bins), rotation_allowed_);
}

Area bin_area_lower_bound(const Instance& inst) {
    const Area target = inst.total_item_area();
    Area max_bin = 0;
    for (const auto& b : inst.bins()) max_bin = std::max(max_bin, b.area());
    const Area range = target + max_bin;
    constexpr Area kMaxRange = 20'000'000;
    if (range > kMaxRange) return target;

    std::vector<char> reach(static_cast<std::size_t>(range) + 1, 0);
    reach[0] = 1;
    for (const auto& b : inst.bins()) {
        const Area a = b.area();
        if (!b.quantity) {
            for (Area s = a; s <= range; ++s)
                if (reach[static_cast<std::size_t>(s - a)]) reach[static_cast<std::size_t>(s)] = 1;
            continue;
        }
        // bounded: binary splitting into 0/1 chunks
        Area remaining = *b.quantity;
        for (Area chunk = 1; remaining > 0; chunk *= 2) {
            const Area take = std::min(chunk, remaining);
            remaining -= take;
            const Area w = take * a;
            if (w > range) continue;
            for (Area s = range; s >= w; --s)
                if (reach[static_cast<std::size_t>(s - w)]) reach[static_cast<std::size_t>(s)] = 1;
        }
    }
    for (Area s = target; s <= range; ++s)
        if (reach[static_cast<std::size_t>(s)]) return s;
    return target;
}

}  // namespace gdrr
