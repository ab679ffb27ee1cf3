#include "rnv/model.hpp"

#include <algorithm>

namespace rnv {

void ProblemInstance::validate() const {
  if (!(cap > 0)) throw std::invalid_argument("instance invariant violated: cap > 0");
  if (!(backorder > 0)) throw std::invalid_argument("instance invariant violated: backorder > 0");
  if (horizon < 1) throw std::invalid_argument("instance invariant violated: horizon >= 1");
  if (mean < 0 || mean > cap)
    throw std::invalid_argument("instance invariant violated: 0 <= mean <= cap");
  if (x0 < 0 || x0 > cap)
    throw std::invalid_argument("instance invariant violated: 0 <= x0 <= cap");
}

Rational stage_cost(const Rational& level, const Rational& demand, const Rational& backorder) {
  if (demand > level) return backorder * (demand - level);
  return level - demand;
}

DiscreteMeasure DiscreteMeasure::make(std::vector<Atom> atoms) {
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return a.point < b.point; });
  DiscreteMeasure m;
  Rational total = 0;
  for (auto& a : atoms) {
    if (a.mass < 0) throw std::invalid_argument("measure invariant violated: mass >= 0");
    if (a.mass == 0) continue;
    total += a.mass;
    if (!m.atoms_.empty() && m.atoms_.back().point == a.point) {
      m.atoms_.back().mass += a.mass;  // coincident support points merge
    } else {
      m.atoms_.push_back(std::move(a));
    }
  }
  if (total != 1) throw std::invalid_argument("measure invariant violated: masses sum to 1");
  return m;
}

Rational DiscreteMeasure::mean() const {
  Rational out = 0;
  for (const auto& a : atoms_) out += a.point * a.mass;
  return out;
}

bool DiscreteMeasure::operator==(const DiscreteMeasure& other) const {
  if (atoms_.size() != other.atoms_.size()) return false;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (atoms_[i].point != other.atoms_[i].point) return false;
    if (atoms_[i].mass != other.atoms_[i].mass) return false;
  }
  return true;
}

Rational Trajectory::total_cost() const {
  Rational out = 0;
  for (const auto& s : steps) out += s.cost;
  return out;
}

void validate_trajectory(const Trajectory& traj, const ProblemInstance& inst) {
  for (std::size_t i = 0; i < traj.steps.size(); ++i) {
    const auto& s = traj.steps[i];
    if (s.x < 0 || s.x > inst.cap)
      throw std::invalid_argument("trajectory invariant violated: level within [0, cap]");
    if (s.d < 0 || s.d > inst.cap)
      throw std::invalid_argument("trajectory invariant violated: demand within [0, cap]");
    if (s.cost != stage_cost(s.x, s.d, inst.backorder))
      throw std::invalid_argument("trajectory invariant violated: cost = stage cost");
    if (i > 0) {
      const auto& p = traj.steps[i - 1];
      if (s.x < p.x - p.d)
        throw std::invalid_argument("trajectory invariant violated: nonnegative ordering");
      if (s.y != p.x - p.d)
        throw std::invalid_argument("trajectory invariant violated: carried level mismatch");
    }
  }
}

}  // namespace rnv
