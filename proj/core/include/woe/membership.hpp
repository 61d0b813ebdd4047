#pragma once

#include <span>
#include <vector>

namespace woe {

struct Breakpoint {
  double x = 0.0;
  double grade = 0.0;

  bool operator==(const Breakpoint&) const = default;
};

// Piecewise-linear membership function. Grades are exact at breakpoints,
// linear in between and clamped to the end grades outside the range.
class MembershipFunction {
 public:
  MembershipFunction() = default;
  // Throws ValidationError unless the breakpoints are non-empty, strictly
  // increasing in x and have grades in [0,1].
  explicit MembershipFunction(std::vector<Breakpoint> breakpoints);

  double operator()(double value) const;

  std::span<const Breakpoint> breakpoints() const { return breakpoints_; }

  bool operator==(const MembershipFunction&) const = default;

 private:
  std::vector<Breakpoint> breakpoints_;
};

inline double membership(const MembershipFunction& mf, double value) { return mf(value); }

}  // namespace woe
