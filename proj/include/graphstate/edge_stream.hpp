#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace graphstate {

using NodeId = std::uint32_t;
using Timestamp = std::int64_t;  // seconds since epoch, >= 0

/// One undirected communication event. After normalization u < v.
struct TimedEdge {
  NodeId u = 0;
  NodeId v = 0;
  Timestamp t = 0;

  friend bool operator==(const TimedEdge&, const TimedEdge&) = default;
};

/// Thrown when an input line cannot be parsed; carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("parse error at line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Thrown when a line parses but violates a field constraint (e.g. negative timestamp).
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::size_t line, const std::string& what)
      : std::runtime_error("validation error at line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Normalized, time-ordered sequence of communication events.
///
/// Immutable after construction: edges are sorted by (t, u, v), endpoints are
/// in canonical order u < v, and self-loops have been removed (their count is
/// kept in self_loops_dropped()).
class EdgeStream {
 public:
  EdgeStream() = default;

  const std::vector<TimedEdge>& edges() const noexcept { return edges_; }
  std::size_t size() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return edges_.empty(); }

  /// Distinct node ids among retained edges.
  std::size_t node_count() const noexcept { return node_count_; }
  std::size_t self_loops_dropped() const noexcept { return self_loops_dropped_; }

  Timestamp t_min() const;
  Timestamp t_max() const;

  friend EdgeStream normalize_edges(std::vector<TimedEdge> raw);

 private:
  std::vector<TimedEdge> edges_;
  std::size_t node_count_ = 0;
  std::size_t self_loops_dropped_ = 0;
};

/// Canonicalize raw events into an EdgeStream: drop self-loops (tallied),
/// order endpoints u < v, stable-sort by (t, u, v). Duplicate (u, v, t)
/// triples are retained; multiplicity is resolved by the snapshot models.
EdgeStream normalize_edges(std::vector<TimedEdge> raw);

/// Parse `u,v,t` lines (integer fields). Lines starting with '#' are skipped,
/// as is an optional leading `src,dst,timestamp` header and blank lines.
EdgeStream parse_edge_stream(std::istream& in);
EdgeStream parse_edge_stream(const std::string& text);
EdgeStream load_edge_stream(const std::filesystem::path& file);

}  // namespace graphstate
