#pragma once

#include <string>
#include <vector>

#include "gdrr/solution.hpp"

namespace gdrr {

enum class ViolationKind {
    OutsideBin,         // rectangle not contained in its bin
    Overlap,            // two items intersect
    CopyAccounting,     // copy missing, duplicated or unknown
    DimensionMismatch,  // placed size disagrees with the item type
    TreeStructure,      // partition / alternation / normal-form breach
    BinQuantity,        // more patterns of a type than available
};

const char* to_string(ViolationKind k);

struct Violation {
    ViolationKind kind;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    bool has(ViolationKind k) const;
};

// Checks a solution against its instance without relying on the tree-edit
// code: coordinates are recomputed here and overlaps found by a sweep.
ValidationReport validate(const Instance& inst, const Solution& s);

}  // namespace gdrr
