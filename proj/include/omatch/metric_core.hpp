#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace omatch {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidPointError : Error {
  using Error::Error;
};
struct CapacityExceededError : Error {
  using Error::Error;
};
struct IllegalMoveError : Error {
  using Error::Error;
};
struct DesyncError : Error {
  using Error::Error;
};
struct TracePlanMismatchError : Error {
  using Error::Error;
};
struct InvalidPlanError : Error {
  using Error::Error;
};
struct OracleSizeError : Error {
  using Error::Error;
};
struct PreconditionError : Error {
  using Error::Error;
};
struct UnsupportedMetricError : Error {
  using Error::Error;
};

// A point is either a coordinate on the real line or an index into an
// explicit distance matrix, depending on the owning instance's metric kind.
struct Point {
  double coord = 0.0;
  int id = -1;

  static Point at(double c) { return Point{c, -1}; }
  static Point index(int i) { return Point{0.0, i}; }
};

struct Metric {
  enum class Kind { Line, Matrix };
  Kind kind = Kind::Line;
  std::vector<std::vector<double>> matrix;  // Matrix kind only
};

struct Server {
  Point pos;
  int capacity = 0;
};

enum class Variant { Omm2, Ofal, General };

struct Instance {
  Metric metric;
  std::vector<Server> servers;
  Variant variant = Variant::General;
  // Factor by which an OFAL instance was divided to bring the server
  // spacing to 1.  Costs are reported in the normalized units.
  double normalization_scale = 1.0;

  int total_capacity() const;
  double server_coord(int i) const { return servers[i].pos.coord; }
};

struct RequestSequence {
  std::vector<Point> requests;

  std::size_t size() const { return requests.size(); }
};

struct ValidationReport {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

double distance(const Instance& inst, const Point& a, const Point& b);

ValidationReport validate(const Instance& inst);

// Feasibility of a request sequence against an instance; throws
// CapacityExceededError or InvalidPointError.
void check_feasible(const Instance& inst, const RequestSequence& seq);

// Rescales an OFAL instance so consecutive servers are one unit apart.
// Returns the scale factor that was divided out (1.0 if already unit).
double normalize_ofal_spacing(Instance& inst);

}  // namespace omatch
