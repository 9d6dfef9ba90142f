#include "gdrr/io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "gdrr/validate.hpp"

namespace gdrr {

using nlohmann::json;
using nlohmann::ordered_json;

ParseError::ParseError(const std::string& what, int line, int column)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what
                                  : what),
      line_(line),
      column_(column) {}

namespace {

constexpr long long kMaxDemand = 1'000'000;
constexpr long long kMaxCopies = 1'000'000;

struct Token {
    std::string_view text;
    int line;
    int column;
};

// Splits text into lines of tokens, dropping comments and blank lines.
std::vector<std::vector<Token>> tokenize(std::string_view text) {
    std::vector<std::vector<Token>> lines;
    int line = 1;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view row = text.substr(pos, end - pos);
        if (auto hash = row.find('#'); hash != std::string_view::npos) row = row.substr(0, hash);
        std::vector<Token> toks;
        std::size_t i = 0;
        while (i < row.size()) {
            while (i < row.size() && std::isspace(static_cast<unsigned char>(row[i]))) ++i;
            const std::size_t start = i;
            while (i < row.size() && !std::isspace(static_cast<unsigned char>(row[i]))) ++i;
            if (i > start) toks.push_back({row.substr(start, i - start), line, static_cast<int>(start) + 1});
        }
        if (!toks.empty()) lines.push_back(std::move(toks));
        ++line;
        pos = end + 1;
    }
    return lines;
}

long long to_integer(const Token& t, long long lo, long long hi, const char* what) {
    long long v = 0;
    const auto* first = t.text.data();
    const auto* last = first + t.text.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec == std::errc::result_out_of_range)
        throw ParseError(std::string(what) + " '" + std::string(t.text) + "' is out of range", t.line, t.column);
    if (ec != std::errc() || ptr != last)
        throw ParseError(std::string("expected an integer ") + what + ", got '" + std::string(t.text) + "'", t.line,
                         t.column);
    if (v < lo || v > hi)
        throw ParseError(std::string(what) + " " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " +
                             std::to_string(hi) + "]",
                         t.line, t.column);
    return v;
}

class TextReader {
public:
    explicit TextReader(std::string_view text) : lines_(tokenize(text)) {}

    const std::vector<Token>& line(std::size_t arity, const char* what) {
        if (next_ >= lines_.size()) {
            const int l = lines_.empty() ? 1 : lines_.back().front().line + 1;
            throw ParseError(std::string("unexpected end of input, expected ") + what, l, 1);
        }
        const auto& toks = lines_[next_++];
        if (toks.size() != arity) {
            const auto& t = toks.size() > arity ? toks[arity] : toks.back();
            const int col = toks.size() > arity ? t.column : t.column + static_cast<int>(t.text.size());
            throw ParseError(std::string("expected ") + std::to_string(arity) + " field(s) for " + what + ", found " +
                                 std::to_string(toks.size()),
                             t.line, col);
        }
        return toks;
    }

    void finish() {
        if (next_ < lines_.size()) {
            const auto& t = lines_[next_].front();
            throw ParseError("unexpected trailing data '" + std::string(t.text) + "'", t.line, t.column);
        }
    }

private:
    std::vector<std::vector<Token>> lines_;
    std::size_t next_ = 0;
};

Instance parse_text(std::string_view text, const std::string& name, std::optional<bool> rotation) {
    TextReader r(text);
    const auto& bcount = r.line(1, "bin type count");
    const auto nb = to_integer(bcount[0], 1, 100'000, "bin type count");
    std::vector<BinSpec> bins;
    for (long long k = 0; k < nb; ++k) {
        const auto& t = r.line(3, "bin type 'W H Q'");
        BinSpec b;
        b.id = static_cast<int>(k + 1);
        b.width = static_cast<Length>(to_integer(t[0], 0, kMaxDimension, "bin width"));
        b.height = static_cast<Length>(to_integer(t[1], 0, kMaxDimension, "bin height"));
        const auto q = to_integer(t[2], 0, std::numeric_limits<int>::max(), "bin quantity");
        if (q > 0) b.quantity = static_cast<int>(q);
        bins.push_back(b);
    }
    const auto& icount = r.line(1, "item type count");
    const auto ni = to_integer(icount[0], 1, kMaxCopies, "item type count");
    std::vector<ItemSpec> items;
    long long copies = 0;
    for (long long k = 0; k < ni; ++k) {
        const auto& t = r.line(3, "item type 'w h d'");
        ItemSpec it;
        it.id = static_cast<int>(k + 1);
        it.width = static_cast<Length>(to_integer(t[0], 0, kMaxDimension, "item width"));
        it.height = static_cast<Length>(to_integer(t[1], 0, kMaxDimension, "item height"));
        it.demand = static_cast<int>(to_integer(t[2], 0, kMaxDemand, "item demand"));
        copies += it.demand;
        if (copies > kMaxCopies) throw ParseError("too many item copies", t[2].line, t[2].column);
        items.push_back(it);
    }
    r.finish();
    return Instance(name, std::move(items), std::move(bins), rotation.value_or(false));
}

std::pair<int, int> line_column(std::string_view text, std::size_t byte) {
    int line = 1;
    int col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

// Schema errors in JSON documents carry a path instead of a position.
[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
    throw ParseError(path + ": " + what, 0, 0);
}

const json& field(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object()) schema_error(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) schema_error(path, "missing field '" + key + "'");
    return *it;
}

long long json_integer(const json& v, long long lo, long long hi, const std::string& path) {
    long long x = 0;
    if (v.is_number_integer()) {
        if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(hi))
            schema_error(path, "value out of range");
        x = v.get<long long>();
    } else if (v.is_number_float()) {
        const double d = v.get<double>();
        if (!(d >= static_cast<double>(lo) && d <= static_cast<double>(hi)) || d != static_cast<double>(static_cast<long long>(d)))
            schema_error(path, "expected an integer");
        x = static_cast<long long>(d);
    } else {
        schema_error(path, "expected an integer");
    }
    if (x < lo || x > hi)
        schema_error(path, "value " + std::to_string(x) + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) +
                               "]");
    return x;
}

json parse_json_document(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const auto [l, c] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
        std::string msg = e.what();
        if (auto p = msg.find("syntax error"); p != std::string::npos) msg = msg.substr(p);
        throw ParseError("invalid JSON: " + msg, l, c);
    }
}

Instance parse_json(std::string_view text, const std::string& fallback_name, std::optional<bool> rotation) {
    const json doc = parse_json_document(text);
    if (!doc.is_object()) schema_error("$", "expected an object");

    std::string name = fallback_name;
    if (auto it = doc.find("name"); it != doc.end()) {
        if (!it->is_string()) schema_error("$.name", "expected a string");
        name = it->get<std::string>();
    }
    bool rot = false;
    if (auto it = doc.find("rotation_allowed"); it != doc.end()) {
        if (!it->is_boolean()) schema_error("$.rotation_allowed", "expected a boolean");
        rot = it->get<bool>();
    }
    if (rotation) rot = *rotation;

    const json& jb = field(doc, "bins", "$");
    if (!jb.is_array()) schema_error("$.bins", "expected an array");
    std::vector<BinSpec> bins;
    for (std::size_t k = 0; k < jb.size(); ++k) {
        const std::string p = "$.bins[" + std::to_string(k) + "]";
        const json& e = jb[k];
        BinSpec b;
        b.id = static_cast<int>(k + 1);
        if (e.is_object() && e.contains("id"))
            b.id = static_cast<int>(json_integer(e["id"], std::numeric_limits<int>::min(), std::numeric_limits<int>::max(), p + ".id"));
        b.width = static_cast<Length>(json_integer(field(e, "width", p), 0, kMaxDimension, p + ".width"));
        b.height = static_cast<Length>(json_integer(field(e, "height", p), 0, kMaxDimension, p + ".height"));
        if (auto it = e.find("quantity"); it != e.end() && !it->is_null()) {
            const auto q = json_integer(*it, 0, std::numeric_limits<int>::max(), p + ".quantity");
            if (q > 0) b.quantity = static_cast<int>(q);
        }
        bins.push_back(b);
    }

    const json& ji = field(doc, "items", "$");
    if (!ji.is_array()) schema_error("$.items", "expected an array");
    std::vector<ItemSpec> items;
    long long copies = 0;
    for (std::size_t k = 0; k < ji.size(); ++k) {
        const std::string p = "$.items[" + std::to_string(k) + "]";
        const json& e = ji[k];
        ItemSpec it;
        it.id = static_cast<int>(k + 1);
        if (e.is_object() && e.contains("id"))
            it.id = static_cast<int>(json_integer(e["id"], std::numeric_limits<int>::min(), std::numeric_limits<int>::max(), p + ".id"));
        it.width = static_cast<Length>(json_integer(field(e, "width", p), 0, kMaxDimension, p + ".width"));
        it.height = static_cast<Length>(json_integer(field(e, "height", p), 0, kMaxDimension, p + ".height"));
        it.demand = static_cast<int>(json_integer(field(e, "demand", p), 0, kMaxDemand, p + ".demand"));
        copies += it.demand;
        if (copies > kMaxCopies) schema_error(p + ".demand", "too many item copies");
        items.push_back(it);
    }
    return Instance(std::move(name), std::move(items), std::move(bins), rot);
}

const char* kind_name(NodeKind k) {
    switch (k) {
        case NodeKind::Structure: return "structure";
        case NodeKind::Item: return "item";
        case NodeKind::Leftover: return "leftover";
    }
    return "?";
}

ordered_json tree_json(const Instance& inst, const TreeNode& t) {
    ordered_json j;
    j["kind"] = kind_name(t.kind);
    j["width"] = t.width;
    j["height"] = t.height;
    if (t.kind == NodeKind::Structure) {
        j["cut"] = std::string(1, cut_char(t.orientation));
        ordered_json kids = ordered_json::array();
        for (const auto& c : t.children) kids.push_back(tree_json(inst, c));
        j["children"] = std::move(kids);
    } else if (t.kind == NodeKind::Item) {
        j["copy"] = t.copy;
        j["item_id"] = inst.item_id_of_copy(t.copy);
        j["rotated"] = t.rotated;
    }
    return j;
}

TreeNode tree_from_json(const Instance& inst, const json& j, const std::string& path) {
    const json& kind = field(j, "kind", path);
    if (!kind.is_string()) schema_error(path + ".kind", "expected a string");
    const auto k = kind.get<std::string>();
    const auto w = static_cast<Length>(json_integer(field(j, "width", path), 0, kMaxDimension, path + ".width"));
    const auto h = static_cast<Length>(json_integer(field(j, "height", path), 0, kMaxDimension, path + ".height"));
    if (k == "leftover") return TreeNode::leftover(w, h);
    if (k == "item") {
        const auto copy = static_cast<int>(
            json_integer(field(j, "copy", path), 0, static_cast<long long>(inst.copy_count()) - 1, path + ".copy"));
        const json& rot = field(j, "rotated", path);
        if (!rot.is_boolean()) schema_error(path + ".rotated", "expected a boolean");
        if (auto it = j.find("item_id"); it != j.end() &&
            json_integer(*it, std::numeric_limits<int>::min(), std::numeric_limits<int>::max(), path + ".item_id") !=
                inst.item_id_of_copy(copy))
            schema_error(path + ".item_id", "does not match the item type of copy " + std::to_string(copy));
        return TreeNode::item(copy, w, h, rot.get<bool>());
    }
    if (k == "structure") {
        const json& cut = field(j, "cut", path);
        if (!cut.is_string() || (cut != "V" && cut != "H")) schema_error(path + ".cut", "expected \"V\" or \"H\"");
        const json& kids = field(j, "children", path);
        if (!kids.is_array()) schema_error(path + ".children", "expected an array");
        std::vector<TreeNode> children;
        for (std::size_t c = 0; c < kids.size(); ++c)
            children.push_back(tree_from_json(inst, kids[c], path + ".children[" + std::to_string(c) + "]"));
        return TreeNode::structure(cut == "V" ? Cut::Vertical : Cut::Horizontal, w, h, std::move(children));
    }
    schema_error(path + ".kind", "unknown node kind '" + k + "'");
}

}  // namespace

Instance parse_instance(std::string_view text, InstanceFormat format, const std::string& fallback_name,
                        std::optional<bool> rotation) {
    if (format == InstanceFormat::Auto) {
        const auto p = text.find_first_not_of(" \t\r\n");
        format = p != std::string_view::npos && text[p] == '{' ? InstanceFormat::Json : InstanceFormat::Text;
    }
    if (format == InstanceFormat::Json) return parse_json(text, fallback_name, rotation);
    return parse_text(text, fallback_name, rotation);
}

Instance load_instance(const std::filesystem::path& path, std::optional<bool> rotation) {
    const std::string text = read_file(path);
    try {
        return parse_instance(text, InstanceFormat::Auto, path.stem().string(), rotation);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what(), 0, 0);
    }
}

std::string format_text_instance(const Instance& inst) {
    std::ostringstream out;
    out << "# " << inst.name() << "\n" << inst.bins().size() << "\n";
    for (const auto& b : inst.bins()) out << b.width << ' ' << b.height << ' ' << b.quantity.value_or(0) << "\n";
    out << inst.items().size() << "\n";
    for (const auto& it : inst.items()) out << it.width << ' ' << it.height << ' ' << it.demand << "\n";
    return out.str();
}

std::string format_json_instance(const Instance& inst) {
    ordered_json doc;
    doc["name"] = inst.name();
    doc["rotation_allowed"] = inst.rotation_allowed();
    doc["bins"] = ordered_json::array();
    for (const auto& b : inst.bins()) {
        ordered_json e{{"id", b.id}, {"width", b.width}, {"height", b.height}};
        if (b.quantity) e["quantity"] = *b.quantity;
        doc["bins"].push_back(std::move(e));
    }
    doc["items"] = ordered_json::array();
    for (const auto& it : inst.items())
        doc["items"].push_back({{"id", it.id}, {"width", it.width}, {"height", it.height}, {"demand", it.demand}});
    return doc.dump(2) + "\n";
}

std::string write_solution(const Solution& s, const SolutionMeta& meta) {
    const Instance& inst = s.inst();
    const auto report = validate(inst, s);
    if (!report.ok())
        throw std::invalid_argument("refusing to write an invalid solution: " + report.violations.front().message);

    ordered_json doc;
    doc["instance"] = inst.name();
    doc["rotation_allowed"] = inst.rotation_allowed();
    const auto& p = meta.params;
    ordered_json params;
    params["alpha"] = p.alpha;
    params["beta"] = p.beta;
    params["mu"] = meta.mu;
    params["history_length"] = meta.history_length;
    params["time_limit"] = p.time_limit;
    if (p.max_iterations) params["max_iterations"] = *p.max_iterations;
    params["threads"] = meta.threads;
    params["strict_bin_open"] = p.strict_bin_open;
    doc["params"] = std::move(params);
    doc["seed"] = p.seed;
    doc["feasible"] = s.feasible();
    doc["total_bin_area"] = total_bin_area(s);
    doc["placed_item_area"] = placed_item_area(s);
    doc["utilization"] = s.patterns.empty() ? 0.0 : utilization(s);

    const auto used = bins_used(s);
    ordered_json counts = ordered_json::array();
    for (std::size_t t = 0; t < used.size(); ++t)
        if (used[t] > 0) counts.push_back({{"bin_id", inst.bins()[t].id}, {"count", used[t]}});
    doc["bins_used"] = std::move(counts);

    ordered_json pats = ordered_json::array();
    for (const auto& pat : s.patterns) {
        ordered_json jp;
        jp["bin_id"] = inst.bins()[static_cast<std::size_t>(pat.bin_type())].id;
        jp["width"] = pat.width();
        jp["height"] = pat.height();
        ordered_json rects = ordered_json::array();
        for (const auto& r : pat.layout())
            rects.push_back({{"x", r.x},
                             {"y", r.y},
                             {"width", r.width},
                             {"height", r.height},
                             {"item_id", inst.item_id_of_copy(r.copy)},
                             {"copy", r.copy},
                             {"rotated", r.rotated}});
        jp["layout"] = std::move(rects);
        jp["tree"] = tree_json(inst, pat.to_tree());
        pats.push_back(std::move(jp));
    }
    doc["patterns"] = std::move(pats);
    doc["excluded"] = s.excluded;
    return doc.dump(1) + "\n";
}

Solution read_solution(std::string_view text, std::shared_ptr<const Instance> inst) {
    const json doc = parse_json_document(text);
    if (!doc.is_object()) schema_error("$", "expected an object");

    std::map<int, int> bin_index;
    for (std::size_t t = 0; t < inst->bins().size(); ++t) bin_index[inst->bins()[t].id] = static_cast<int>(t);

    Solution s;
    s.instance = inst;
    const json& pats = field(doc, "patterns", "$");
    if (!pats.is_array()) schema_error("$.patterns", "expected an array");
    for (std::size_t k = 0; k < pats.size(); ++k) {
        const std::string p = "$.patterns[" + std::to_string(k) + "]";
        const auto id = static_cast<int>(json_integer(field(pats[k], "bin_id", p), std::numeric_limits<int>::min(),
                                                      std::numeric_limits<int>::max(), p + ".bin_id"));
        auto it = bin_index.find(id);
        if (it == bin_index.end()) schema_error(p + ".bin_id", "unknown bin id " + std::to_string(id));
        s.patterns.push_back(Pattern::from_tree(it->second, tree_from_json(*inst, field(pats[k], "tree", p), p + ".tree")));
    }
    if (auto ex = doc.find("excluded"); ex != doc.end()) {
        if (!ex->is_array()) schema_error("$.excluded", "expected an array");
        for (std::size_t k = 0; k < ex->size(); ++k)
            s.excluded.push_back(static_cast<int>(json_integer((*ex)[k], 0, static_cast<long long>(inst->copy_count()) - 1,
                                                               "$.excluded[" + std::to_string(k) + "]")));
    }
    return s;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("error writing " + path.string());
}

}  // namespace gdrr
