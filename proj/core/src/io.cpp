#include "shallow/io.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>

#include "json_ranges.h"
#include "shallow/error.h"

namespace shallow {

namespace {

using detail::json;

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::kMalformedInput, what); }

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

bool parse_double(std::string_view s, double& out) {
    s = trim(s);
    if (s.empty()) return false;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc() && res.ptr == s.data() + s.size() && std::isfinite(out);
}

// Little-endian byte stream.
class Writer {
public:
    template <class T>
    void put(T v) {
        static_assert(std::is_arithmetic_v<T>);
        unsigned char b[sizeof(T)];
        std::memcpy(b, &v, sizeof(T));
        if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
        out_.append(reinterpret_cast<const char*>(b), sizeof(T));
    }
    void raw(const char* p, std::size_t n) { out_.append(p, n); }
    std::string take() { return std::move(out_); }

private:
    std::string out_;
};

class Reader {
public:
    explicit Reader(const std::string& in) : in_(in) {}
    template <class T>
    T get() {
        if (pos_ + sizeof(T) > in_.size()) malformed("index file truncated at byte " + std::to_string(pos_));
        unsigned char b[sizeof(T)];
        std::memcpy(b, in_.data() + pos_, sizeof(T));
        if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
        pos_ += sizeof(T);
        T v;
        std::memcpy(&v, b, sizeof(T));
        return v;
    }
    std::string raw(std::size_t n) {
        if (pos_ + n > in_.size()) malformed("index file truncated at byte " + std::to_string(pos_));
        std::string s = in_.substr(pos_, n);
        pos_ += n;
        return s;
    }
    bool done() const { return pos_ == in_.size(); }

private:
    const std::string& in_;
    std::size_t pos_ = 0;
};

void put_line(Writer& w, const Line2& l) {
    w.put(l.a());
    w.put(l.b());
    w.put(l.c());
}

Line2 get_line(Reader& r) {
    const double a = r.get<double>(), b = r.get<double>(), c = r.get<double>();
    try {
        return Line2::from_unit(a, b, c);
    } catch (const Error&) {
        malformed("degenerate line in index file");
    }
}

void put_curve(Writer& w, const Curve& c) {
    w.put(static_cast<std::uint8_t>(c.kind));
    put_line(w, c.line);
    w.put(c.circle.center.x);
    w.put(c.circle.center.y);
    w.put(c.circle.radius);
}

Curve get_curve(Reader& r) {
    Curve c;
    const auto kind = r.get<std::uint8_t>();
    if (kind > 2) malformed("bad curve kind in index file");
    c.kind = static_cast<Curve::Kind>(kind);
    c.line = get_line(r);
    c.circle.center.x = r.get<double>();
    c.circle.center.y = r.get<double>();
    c.circle.radius = r.get<double>();
    return c;
}

}  // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write '" + path + "'");
    out << data;
    if (!out) throw Error(ErrorCode::kInvalidArgument, "write failed for '" + path + "'");
}

std::vector<Point2> parse_points(const std::string& text) {
    const std::string_view body = trim(text);
    std::vector<Point2> P;
    if (!body.empty() && body.front() == '[') {
        json j;
        try {
            j = json::parse(body);
        } catch (const json::parse_error& e) {
            malformed(std::string("points JSON: ") + e.what());
        }
        if (!j.is_array()) malformed("points JSON must be an array");
        for (std::size_t k = 0; k < j.size(); ++k) {
            try {
                P.push_back(detail::point_from(j[k]));
            } catch (const Error& e) {
                malformed("point " + std::to_string(k) + ": " + e.message());
            }
        }
        return P;
    }
    std::istringstream in(text);
    std::string line;
    std::size_t no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++no;
        const std::string_view s = trim(line);
        if (s.empty() || s.front() == '#') continue;
        const auto comma = s.find(',');
        double x = 0, y = 0;
        if (comma == std::string_view::npos || !parse_double(s.substr(0, comma), x) ||
            !parse_double(s.substr(comma + 1), y)) {
            if (P.empty() && !header_seen && s.find_first_of("0123456789") == std::string_view::npos) {
                header_seen = true;
                continue;
            }
            malformed("line " + std::to_string(no) + ": expected 'x,y'");
        }
        P.push_back({x, y});
    }
    return P;
}

std::vector<Point2> read_points(const std::string& path) { return parse_points(read_file(path)); }

void write_points_csv(const std::string& path, const std::vector<Point2>& P) {
    std::string out = "x,y\n";
    char buf[64];
    for (const Point2& p : P) {
        auto r = std::to_chars(buf, buf + sizeof buf, p.x);
        *r.ptr++ = ',';
        r = std::to_chars(r.ptr, buf + sizeof buf, p.y);
        *r.ptr++ = '\n';
        out.append(buf, r.ptr);
    }
    write_file(path, out);
}

std::vector<Query> parse_queries(const std::string& text) {
    std::vector<Query> out;
    std::istringstream in(text);
    std::string line;
    std::size_t no = 0;
    while (std::getline(in, line)) {
        ++no;
        if (trim(line).empty()) continue;
        const std::string where = "line " + std::to_string(no) + ": ";
        Query q;
        q.line_no = no;
        q.text = std::string(trim(line));
        try {
            const json j = json::parse(q.text);
            if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) malformed("missing type");
            const std::string type = j["type"].get<std::string>();
            if (type == "nearest_above") {
                q.kind = Query::Kind::kNearest;
                if (!j.contains("q") || !j.contains("line")) malformed("nearest_above needs q and line");
                q.q = detail::point_from(j["q"]);
                q.line = detail::line_from(j["line"]);
            } else if (type == "approx_count") {
                q.kind = Query::Kind::kApproxCount;
                if (!j.contains("range")) malformed("approx_count needs a range");
                q.range = detail::range_from(j["range"]);
                if (j.contains("delta")) {
                    if (!j["delta"].is_number()) malformed("delta must be a number");
                    q.delta = j["delta"].get<double>();
                    if (!(q.delta > 0 && q.delta < 1)) malformed("delta must be in (0, 1)");
                }
            } else {
                q.range = detail::range_from(j);
            }
        } catch (const json::exception& e) {
            malformed(where + e.what());
        } catch (const Error& e) {
            if (e.code() == ErrorCode::kDegenerateTriangle) malformed(where + e.message());
            if (e.code() != ErrorCode::kMalformedInput) throw;
            malformed(where + e.message());
        }
        out.push_back(std::move(q));
    }
    return out;
}

std::vector<Query> read_queries(const std::string& path) { return parse_queries(read_file(path)); }

std::string range_to_jsonl(const Range& r) { return detail::range_json(r).dump(); }

std::string query_to_jsonl(const Query& q) {
    switch (q.kind) {
        case Query::Kind::kRange: return range_to_jsonl(q.range);
        case Query::Kind::kNearest:
            return json{{"type", "nearest_above"}, {"q", detail::point_json(q.q)}, {"line", detail::line_json(q.line)}}
                .dump();
        case Query::Kind::kApproxCount:
            return json{{"type", "approx_count"}, {"range", detail::range_json(q.range)}, {"delta", q.delta}}.dump();
    }
    return {};
}

std::string serialize_tree(const PartitionTree& t) {
    Writer w;
    w.raw("SHTR", 4);
    w.put(kIndexVersion);
    const TreeConfig& c = t.config;
    w.put(static_cast<std::uint32_t>(c.family));
    w.put(static_cast<std::uint32_t>(c.mode));
    w.put(c.r);
    w.put(static_cast<std::uint64_t>(c.leaf_size));
    w.put(c.alpha);
    w.put(c.cap.beta);
    w.put(c.cap.beta_min);
    w.put(c.cap.min_output_angle);
    w.put(c.net.q);
    w.put(c.net.a);
    w.put(c.net.delta_vc);
    w.put(c.net.c);
    w.put(static_cast<std::uint64_t>(c.test_budget));
    w.put(c.seed);
    w.put(c.partition.c_t);
    w.put(c.partition.c_kappa);
    w.put(static_cast<std::int32_t>(c.partition.retries));
    w.put(c.partition.cutting.c_s);
    w.put(static_cast<std::int32_t>(c.partition.cutting.max_rounds));
    w.put(t.bbox.xmin);
    w.put(t.bbox.ymin);
    w.put(t.bbox.xmax);
    w.put(t.bbox.ymax);
    w.put(static_cast<std::uint64_t>(t.points.size()));
    for (const Point2& p : t.points) {
        w.put(p.x);
        w.put(p.y);
    }
    for (std::uint32_t k : t.order) w.put(k);
    w.put(static_cast<std::uint64_t>(t.nodes.size()));
    for (const TreeNode& v : t.nodes) {
        w.put(v.cell.x_left);
        w.put(v.cell.x_right);
        put_curve(w, v.cell.bottom);
        put_curve(w, v.cell.top);
        w.put(v.cell.id);
        w.put(v.begin);
        w.put(v.end);
        w.put(v.q_size);
        w.put(v.max_crossing);
        w.put(v.fallbacks);
        w.put(v.kappa_thresh);
        w.put(static_cast<std::uint32_t>(v.children.size()));
        for (std::uint32_t ch : v.children) w.put(ch);
    }
    return w.take();
}

PartitionTree deserialize_tree(const std::string& bytes) {
    Reader r(bytes);
    if (r.raw(4) != "SHTR") malformed("not an index file (bad magic)");
    const auto version = r.get<std::uint32_t>();
    if (version != kIndexVersion) malformed("unsupported index version " + std::to_string(version));
    PartitionTree t;
    TreeConfig& c = t.config;
    const auto fam = r.get<std::uint32_t>();
    const auto mode = r.get<std::uint32_t>();
    if (fam > 1 || mode > 1) malformed("bad family or mode tag in index file");
    c.family = static_cast<Family>(fam);
    c.mode = static_cast<CoverMode>(mode);
    c.r = r.get<double>();
    c.leaf_size = r.get<std::uint64_t>();
    c.alpha = r.get<double>();
    c.cap.beta = r.get<double>();
    c.cap.beta_min = r.get<double>();
    c.cap.min_output_angle = r.get<double>();
    c.net.q = r.get<double>();
    c.net.a = r.get<double>();
    c.net.delta_vc = r.get<double>();
    c.net.c = r.get<double>();
    c.test_budget = r.get<std::uint64_t>();
    c.seed = r.get<std::uint64_t>();
    c.partition.c_t = r.get<double>();
    c.partition.c_kappa = r.get<double>();
    c.partition.retries = r.get<std::int32_t>();
    c.partition.cutting.c_s = r.get<double>();
    c.partition.cutting.max_rounds = r.get<std::int32_t>();
    t.bbox.xmin = r.get<double>();
    t.bbox.ymin = r.get<double>();
    t.bbox.xmax = r.get<double>();
    t.bbox.ymax = r.get<double>();
    const auto n = r.get<std::uint64_t>();
    if (n > bytes.size() / 16) malformed("point count exceeds file size");
    t.points.resize(n);
    for (Point2& p : t.points) {
        p.x = r.get<double>();
        p.y = r.get<double>();
    }
    t.order.resize(n);
    for (std::uint32_t& k : t.order) {
        k = r.get<std::uint32_t>();
        if (k >= n) malformed("point index out of range in index file");
    }
    const auto m = r.get<std::uint64_t>();
    if (m > bytes.size() / 8) malformed("node count exceeds file size");
    t.nodes.resize(m);
    for (std::size_t v = 0; v < m; ++v) {
        TreeNode& node = t.nodes[v];
        node.cell.x_left = r.get<double>();
        node.cell.x_right = r.get<double>();
        node.cell.bottom = get_curve(r);
        node.cell.top = get_curve(r);
        node.cell.id = r.get<std::uint32_t>();
        node.begin = r.get<std::uint32_t>();
        node.end = r.get<std::uint32_t>();
        node.q_size = r.get<std::uint32_t>();
        node.max_crossing = r.get<std::uint32_t>();
        node.fallbacks = r.get<std::uint32_t>();
        node.kappa_thresh = r.get<double>();
        const auto kids = r.get<std::uint32_t>();
        if (node.begin > node.end || node.end > n) malformed("bad point range in index file");
        for (std::uint32_t k = 0; k < kids; ++k) {
            const auto ch = r.get<std::uint32_t>();
            if (ch <= v || ch >= m) malformed("child index out of preorder in index file");
            node.children.push_back(ch);
        }
    }
    if (!r.done()) malformed("trailing bytes in index file");
    return t;
}

void save_tree(const PartitionTree& tree, const std::string& path) { write_file(path, serialize_tree(tree)); }

PartitionTree load_tree(const std::string& path) { return deserialize_tree(read_file(path)); }

std::string tree_config_json(const TreeConfig& c) {
    const json j = {{"family", family_name(c.family)},
                    {"mode", c.mode == CoverMode::kEmptiness ? "emptiness" : "reporting"},
                    {"r", c.r},
                    {"leaf_size", c.leaf_size},
                    {"alpha", c.alpha},
                    {"beta", c.cap.beta},
                    {"beta_min", c.cap.beta_min},
                    {"test_budget", c.test_budget},
                    {"seed", c.seed},
                    {"net", {{"q", c.net.q}, {"a", c.net.a}, {"delta_vc", c.net.delta_vc}, {"c", c.net.c}}},
                    {"partition",
                     {{"c_t", c.partition.c_t},
                      {"c_kappa", c.partition.c_kappa},
                      {"retries", c.partition.retries},
                      {"c_s", c.partition.cutting.c_s},
                      {"max_rounds", c.partition.cutting.max_rounds}}}};
    return j.dump();
}

std::string tree_stats_json(const PartitionTree& t) {
    std::size_t leaves = 0, fallbacks = 0, max_cross = 0, max_leaf = 0;
    for (const TreeNode& v : t.nodes) {
        if (v.is_leaf()) {
            ++leaves;
            max_leaf = std::max(max_leaf, v.size());
        }
        fallbacks += v.fallbacks;
        max_cross = std::max<std::size_t>(max_cross, v.max_crossing);
    }
    json root = {{"version", kIndexVersion},
                 {"config", json::parse(tree_config_json(t.config))},
                 {"n", t.points.size()},
                 {"nodes", t.nodes.size()},
                 {"leaves", leaves},
                 {"depth", t.depth()},
                 {"max_leaf_size", max_leaf},
                 {"max_test_crossing", max_cross},
                 {"slab_fallback_classes", fallbacks}};
    if (!t.nodes.empty()) {
        const TreeNode& v = t.nodes[0];
        root["root"] = {{"children", v.children.size()},
                        {"q_size", v.q_size},
                        {"max_crossing", v.max_crossing},
                        {"kappa_thresh", v.kappa_thresh}};
    }
    return root.dump(2);
}

}  // namespace shallow
