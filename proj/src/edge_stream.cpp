#include "graphstate/edge_stream.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <istream>
#include <sstream>
#include <string_view>
#include <unordered_set>

namespace graphstate {

Timestamp EdgeStream::t_min() const {
  if (edges_.empty()) throw std::logic_error("empty stream has no t_min");
  return edges_.front().t;
}

Timestamp EdgeStream::t_max() const {
  if (edges_.empty()) throw std::logic_error("empty stream has no t_max");
  return edges_.back().t;
}

EdgeStream normalize_edges(std::vector<TimedEdge> raw) {
  EdgeStream out;
  std::size_t kept = 0;
  for (const TimedEdge& e : raw) {
    if (e.u == e.v) {
      ++out.self_loops_dropped_;
      continue;
    }
    raw[kept++] = e.u < e.v ? e : TimedEdge{e.v, e.u, e.t};
  }
  raw.resize(kept);
  std::stable_sort(raw.begin(), raw.end(), [](const TimedEdge& a, const TimedEdge& b) {
    if (a.t != b.t) return a.t < b.t;
    if (a.u != b.u) return a.u < b.u;
    return a.v < b.v;
  });

  std::unordered_set<NodeId> nodes;
  for (const TimedEdge& e : raw) {
    nodes.insert(e.u);
    nodes.insert(e.v);
  }
  out.node_count_ = nodes.size();
  out.edges_ = std::move(raw);
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

// Whole-field integer parse; returns false on any leftover characters.
bool parse_int(std::string_view field, long long& value) {
  field = trim(field);
  if (field.empty()) return false;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  return ec == std::errc{} && ptr == last;
}

}  // namespace

EdgeStream parse_edge_stream(std::istream& in) {
  std::vector<TimedEdge> raw;
  std::string line;
  std::size_t line_no = 0;
  bool seen_data = false;

  while (std::getline(in, line)) {
    ++line_no;
    std::string_view sv = trim(line);
    if (sv.empty() || sv.front() == '#') continue;
    if (!seen_data && sv == "src,dst,timestamp") continue;
    seen_data = true;

    const std::size_t c1 = sv.find(',');
    const std::size_t c2 = c1 == std::string_view::npos ? std::string_view::npos
                                                        : sv.find(',', c1 + 1);
    if (c1 == std::string_view::npos || c2 == std::string_view::npos ||
        sv.find(',', c2 + 1) != std::string_view::npos) {
      throw ParseError(line_no, "expected three comma-separated fields, got '" +
                                    std::string(sv) + "'");
    }

    long long u = 0, v = 0, t = 0;
    if (!parse_int(sv.substr(0, c1), u) || !parse_int(sv.substr(c1 + 1, c2 - c1 - 1), v) ||
        !parse_int(sv.substr(c2 + 1), t)) {
      throw ParseError(line_no, "non-integer field in '" + std::string(sv) + "'");
    }
    if (u < 0 || v < 0) throw ValidationError(line_no, "negative node id");
    constexpr long long max_id = std::numeric_limits<NodeId>::max();
    if (u > max_id || v > max_id) throw ValidationError(line_no, "node id out of range");
    if (t < 0) throw ValidationError(line_no, "negative timestamp");

    raw.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v), t});
  }

  return normalize_edges(std::move(raw));
}

EdgeStream parse_edge_stream(const std::string& text) {
  std::istringstream in(text);
  return parse_edge_stream(in);
}

EdgeStream load_edge_stream(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open input file: " + file.string());
  return parse_edge_stream(in);
}

}  // namespace graphstate
