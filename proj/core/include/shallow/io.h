#pragma once

// Points files, query files and the binary index container.

#include <cstdint>
#include <string>
#include <vector>

#include "shallow/partition.h"

namespace shallow {

/// CSV "x,y" lines (blank lines and '#' comments skipped, optional "x,y" header)
/// or a JSON array of [x, y] pairs.
std::vector<Point2> parse_points(const std::string& text);
std::vector<Point2> read_points(const std::string& path);
void write_points_csv(const std::string& path, const std::vector<Point2>& P);

struct Query {
    enum class Kind { kRange, kNearest, kApproxCount };
    Kind kind = Kind::kRange;
    Range range;                 // kRange, kApproxCount
    Point2 q;                    // kNearest
    Line2 line;                  // kNearest
    double delta = 0.25;         // kApproxCount
    std::string text;            // the source line
    std::size_t line_no = 0;     // 1-based
};

/// One JSON object per line. Throws malformed-input naming the line.
std::vector<Query> parse_queries(const std::string& text);
std::vector<Query> read_queries(const std::string& path);
std::string query_to_jsonl(const Query& q);
std::string range_to_jsonl(const Range& r);

inline constexpr std::uint32_t kIndexVersion = 1;

std::string serialize_tree(const PartitionTree& tree);
PartitionTree deserialize_tree(const std::string& bytes);
void save_tree(const PartitionTree& tree, const std::string& path);
PartitionTree load_tree(const std::string& path);

/// Configuration and per-level build statistics.
std::string tree_config_json(const TreeConfig& cfg);
std::string tree_stats_json(const PartitionTree& tree);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& data);

}  // namespace shallow
