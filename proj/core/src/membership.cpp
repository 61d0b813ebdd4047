#include "woe/membership.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "woe/error.hpp"

namespace woe {

MembershipFunction::MembershipFunction(std::vector<Breakpoint> breakpoints)
    : breakpoints_(std::move(breakpoints)) {
  if (breakpoints_.empty()) throw ValidationError("membership function needs at least one breakpoint");
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    const auto& bp = breakpoints_[i];
    if (!std::isfinite(bp.x)) throw ValidationError("membership breakpoint x must be finite");
    if (!(bp.grade >= 0.0 && bp.grade <= 1.0)) {
      throw ValidationError("membership grade " + std::to_string(bp.grade) + " outside [0,1]");
    }
    if (i > 0 && !(breakpoints_[i - 1].x < bp.x)) {
      throw ValidationError("membership breakpoints must be strictly increasing in x");
    }
  }
}

double MembershipFunction::operator()(double value) const {
  if (breakpoints_.empty()) return 0.0;
  if (value <= breakpoints_.front().x) return breakpoints_.front().grade;
  if (value >= breakpoints_.back().x) return breakpoints_.back().grade;
  auto hi = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), value,
                             [](double v, const Breakpoint& bp) { return v < bp.x; });
  auto lo = std::prev(hi);
  if (value == lo->x) return lo->grade;
  double t = (value - lo->x) / (hi->x - lo->x);
  return std::clamp(lo->grade + t * (hi->grade - lo->grade), 0.0, 1.0);
}

}  // namespace woe
