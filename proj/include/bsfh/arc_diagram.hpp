#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace bsfh {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ReebChord {
  int from = 0;
  int to = 0;
  auto operator<=>(const ReebChord&) const = default;
};

// Named chord element a(chords, completion); completion is a pair bitmask.
struct AliasSpec {
  std::string name;
  std::vector<ReebChord> chords;
  unsigned completion = 0;
};

// Points are numbered globally 0..2k-1 in segment order, then orientation order.
// Matched pairs are numbered 0..k-1 (printed 1-based).
struct ArcDiagram {
  std::string name;
  std::vector<std::string> segments;
  std::vector<std::string> point_names;
  std::vector<int> segment_of;
  std::vector<int> matching;  // pair index per point; empty for a bare segment list
  std::vector<AliasSpec> aliases;

  int num_points() const { return static_cast<int>(segment_of.size()); }
  int num_pairs() const;
  int num_segments() const { return static_cast<int>(segments.size()); }
  bool same_segment(int p, int q) const { return segment_of[p] == segment_of[q]; }
  std::vector<int> pair_points(int pair) const;
  int partner(int p) const;
  int point_index(const std::string& point_name) const;  // -1 if absent

  // Elementary intervals [p, p+1] with p, p+1 on one segment; indexed 0..
  int num_intervals() const { return num_points() - num_segments_with_points(); }
  int num_segments_with_points() const;
  int interval_after(int p) const;  // -1 if p is last on its segment
  int interval_start(int iv) const;

  // Aliases are presentation only and do not take part in equality.
  bool operator==(const ArcDiagram& o) const {
    return segments == o.segments && point_names == o.point_names &&
           segment_of == o.segment_of && matching == o.matching;
  }
};

using ArcPtr = std::shared_ptr<const ArcDiagram>;

// Bare extended-algebra ambient: segment sizes only, no matching.
ArcDiagram bare_segments(const std::vector<int>& sizes);

struct ValidationReport {
  bool ok = true;
  bool malformed = false;
  std::string message;
  std::vector<std::vector<int>> closed_cycles;  // matched pairs on each closed component
};

ValidationReport validate(const ArcDiagram& d);
void require_valid(const ArcDiagram& d);

ArcDiagram reverse(const ArcDiagram& d);
// Index of point p of d inside reverse(d).
int reversed_point(const ArcDiagram& d, int p);
ReebChord reverse_chord(const ArcDiagram& d, const ReebChord& c);

ArcDiagram arc_union(const ArcDiagram& a, const ArcDiagram& b);

ArcDiagram parse_arc_diagram(const std::string& text, const std::string& name = "");
ArcDiagram load_arc_diagram(const std::string& path);
std::string format_arc_diagram(const ArcDiagram& d);

}  // namespace bsfh
