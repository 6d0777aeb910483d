#include "omatch/metric_core.hpp"

#include <cmath>
#include <cstdlib>

#include "omatch/config.hpp"

namespace omatch {

double tolerance() {
  static const double tol = [] {
    if (const char* env = std::getenv("OMATCH_TOLERANCE")) {
      char* end = nullptr;
      double v = std::strtod(env, &end);
      if (end != env && v > 0.0) return v;
    }
    return kDefaultTolerance;
  }();
  return tol;
}

int Instance::total_capacity() const {
  int total = 0;
  for (const auto& s : servers) total += s.capacity;
  return total;
}

double distance(const Instance& inst, const Point& a, const Point& b) {
  if (inst.metric.kind == Metric::Kind::Line) {
    return std::abs(a.coord - b.coord);
  }
  const auto& m = inst.metric.matrix;
  const int n = static_cast<int>(m.size());
  if (a.id < 0 || a.id >= n || b.id < 0 || b.id >= n) {
    throw InvalidPointError("point id out of range of the distance matrix");
  }
  return m[a.id][b.id];
}

namespace {

void validate_matrix(const std::vector<std::vector<double>>& m,
                     ValidationReport& report) {
  const std::size_t n = m.size();
  if (n == 0) {
    report.violations.push_back("distance matrix is empty");
    return;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) {
      report.violations.push_back("distance matrix is not square");
      return;
    }
  }
  const double tol = tolerance();
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(m[i][i]) > tol) {
      report.violations.push_back("nonzero diagonal entry in distance matrix");
      break;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (m[i][j] < 0.0 || !std::isfinite(m[i][j])) {
        report.violations.push_back("negative or non-finite distance entry");
        return;
      }
      if (std::abs(m[i][j] - m[j][i]) > tol) {
        report.violations.push_back("distance matrix is not symmetric");
        return;
      }
    }
  }
  // Exhaustive triangle inequality over all triples.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (m[i][k] > m[i][j] + m[j][k] + tol) {
          report.violations.push_back("triangle inequality violated");
          return;
        }
      }
    }
  }
}

}  // namespace

ValidationReport validate(const Instance& inst) {
  ValidationReport report;
  const double tol = tolerance();

  if (inst.metric.kind == Metric::Kind::Matrix) {
    validate_matrix(inst.metric.matrix, report);
  }

  if (inst.servers.empty()) {
    report.violations.push_back("instance has no servers");
    return report;
  }
  for (const auto& s : inst.servers) {
    if (s.capacity < 0) {
      report.violations.push_back("negative server capacity");
      break;
    }
  }
  if (inst.total_capacity() < 1) {
    report.violations.push_back("total capacity must be at least 1");
  }
  const int n = static_cast<int>(inst.metric.matrix.size());
  for (const auto& s : inst.servers) {
    if (inst.metric.kind == Metric::Kind::Line) {
      if (!std::isfinite(s.pos.coord)) {
        report.violations.push_back("non-finite server coordinate");
        break;
      }
    } else if (s.pos.id < 0 || s.pos.id >= n) {
      report.violations.push_back("server point id out of range");
      break;
    }
  }

  if (inst.variant == Variant::Omm2 && inst.servers.size() != 2) {
    report.violations.push_back("omm2 requires exactly 2 servers");
  }

  if (inst.variant == Variant::Ofal) {
    if (inst.metric.kind != Metric::Kind::Line) {
      report.violations.push_back("ofal requires the line metric");
      return report;
    }
    const auto& sv = inst.servers;
    for (std::size_t i = 0; i + 1 < sv.size(); ++i) {
      if (sv[i].pos.coord > sv[i + 1].pos.coord + tol) {
        report.violations.push_back("server positions not nondecreasing");
        break;
      }
    }
    if (sv.size() >= 2) {
      const double gap = sv[1].pos.coord - sv[0].pos.coord;
      for (std::size_t i = 1; i + 1 < sv.size(); ++i) {
        const double g = sv[i + 1].pos.coord - sv[i].pos.coord;
        if (std::abs(g - gap) > tol) {
          report.violations.push_back("unequal consecutive gaps");
          break;
        }
      }
    }
    for (std::size_t i = 1; i < sv.size(); ++i) {
      if (sv[i].capacity != sv[0].capacity) {
        report.violations.push_back("ofal requires equal server capacities");
        break;
      }
    }
  }

  return report;
}

void check_feasible(const Instance& inst, const RequestSequence& seq) {
  if (static_cast<int>(seq.size()) > inst.total_capacity()) {
    throw CapacityExceededError("request count exceeds total server capacity");
  }
  if (inst.metric.kind == Metric::Kind::Matrix) {
    const int n = static_cast<int>(inst.metric.matrix.size());
    for (const auto& r : seq.requests) {
      if (r.id < 0 || r.id >= n) {
        throw InvalidPointError("request point id out of range");
      }
    }
  }
}

double normalize_ofal_spacing(Instance& inst) {
  if (inst.variant != Variant::Ofal || inst.servers.size() < 2) return 1.0;
  const double gap = inst.servers[1].pos.coord - inst.servers[0].pos.coord;
  if (gap <= 0.0 || std::abs(gap - 1.0) <= tolerance()) return 1.0;
  for (auto& s : inst.servers) s.pos.coord /= gap;
  inst.normalization_scale = gap;
  return gap;
}

}  // namespace omatch
