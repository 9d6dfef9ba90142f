#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "gdrr/search.hpp"
#include "gdrr/solution.hpp"

namespace gdrr {

// Json: {"name", "rotation_allowed"?, "bins": [{"width", "height",
// "quantity"?, "id"?}], "items": [{"width", "height", "demand", "id"?}]}.
//
// Text, one record per line, '#' starts a comment:
//   B
//   W H Q      (B lines, Q = 0 means unlimited)
//   M
//   w h d      (M lines)
// Auto picks Json when the first non-blank character is '{'.
enum class InstanceFormat { Auto, Json, Text };

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line, int column);
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

// Largest accepted width or height. Keeps every area product and its
// alpha power well inside the numeric range used by the search.
inline constexpr Length kMaxDimension = 1 << 24;

// Throws ParseError for malformed input and InstanceError for well-formed
// input describing an invalid instance. `rotation`, when set, overrides the
// file's flag.
Instance parse_instance(std::string_view text, InstanceFormat format = InstanceFormat::Auto,
                        const std::string& fallback_name = "instance", std::optional<bool> rotation = std::nullopt);

Instance load_instance(const std::filesystem::path& path, std::optional<bool> rotation = std::nullopt);

std::string format_text_instance(const Instance& inst);
std::string format_json_instance(const Instance& inst);

// Run settings recorded next to a solution. Nothing time-dependent goes in,
// so two identical deterministic runs write identical files.
struct SolutionMeta {
    SearchParams params;
    int threads = 1;
    int mu = 0;
    int history_length = 0;
};

// Throws std::invalid_argument when `s` does not validate.
std::string write_solution(const Solution& s, const SolutionMeta& meta);

// Inverse of write_solution. Throws ParseError for malformed documents or
// ones that do not belong to `inst`. The result is not validated.
Solution read_solution(std::string_view text, std::shared_ptr<const Instance> inst);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

}  // namespace gdrr
