#ifndef SDM_PIECEWISE_HPP
#define SDM_PIECEWISE_HPP

#include <string>
#include <tuple>
#include <vector>

#include "sdm/rational.hpp"

namespace sdm {

// Step function on [-1,1] with rational breakpoints and rational values on
// the open cells. Stored canonically (strictly increasing breakpoints from
// -1 to 1, no two adjacent cells with equal value), so equality is equality
// almost everywhere.
class PiecewiseConstantFn {
 public:
  PiecewiseConstantFn();  // identically zero

  static PiecewiseConstantFn constant(const Rational& v);

  // Sum of weighted half-open indicators 1_[lo,hi); parts outside [-1,1]
  // are clipped away.
  static PiecewiseConstantFn from_indicators(
      const std::vector<std::tuple<Rational, Rational, Rational>>& items);

  const std::vector<Rational>& breakpoints() const { return breaks_; }
  const std::vector<Rational>& values() const { return values_; }

  Rational integral() const;
  Rational integral(Rational a, Rational b) const;  // over [a,b] clipped to [-1,1]
  // Value on the cell containing x; x must not be a breakpoint.
  Rational value_at(const Rational& x) const;
  bool nonnegative() const;

  PiecewiseConstantFn scaled(const Rational& c) const;

  bool operator==(const PiecewiseConstantFn& o) const {
    return breaks_ == o.breaks_ && values_ == o.values_;
  }

  std::string str() const;

 private:
  std::vector<Rational> breaks_;  // first -1, last 1
  std::vector<Rational> values_;  // one per cell
  void merge_cells();
};

}  // namespace sdm

#endif
