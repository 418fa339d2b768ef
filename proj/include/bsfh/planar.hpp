#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bsfh/diagram.hpp"

namespace bsfh {

struct Pt {
  double x = 0, y = 0;
};

Pt polar(Pt c, double r, double deg);

// Marked point on a boundary polygon; name is the qualified Z_H point "label.point".
struct PlanarMark {
  std::string name;
  Pt at;
};

// Boundary component of a planar surface: the outer polygon or a hole.
struct PlanarBoundary {
  std::vector<Pt> polygon;
  bool outer = false;
  std::vector<PlanarMark> marks;
};

// Alpha arcs start and end at marks; closed curves repeat no point.
struct PlanarCurve {
  std::string name;
  EdgeKind kind = EdgeKind::Beta;
  std::vector<Pt> pts;
  bool closed = false;
};

struct PlanarSpec {
  std::string name;
  std::vector<BoundaryPart> parts;
  std::vector<PlanarBoundary> boundaries;
  std::vector<PlanarCurve> curves;
  std::vector<std::pair<std::string, Pt>> vertex_names;  // nearest crossing gets the name
  std::vector<std::pair<std::string, Pt>> region_names;  // region containing the point
};

PlanarBoundary circle_boundary(Pt c, double r, bool outer,
                               const std::vector<std::pair<std::string, double>>& marks_deg,
                               int samples = 96);
std::vector<Pt> circle_points(Pt c, double r, int samples = 96, double start_deg = 0);
std::vector<Pt> arc_points(Pt c, double r, double from_deg, double to_deg, int samples = 24);

// Computes the arrangement, traces the regions and returns the finalized diagram.
HeegaardDiagram build_planar(const PlanarSpec& spec);

}  // namespace bsfh
