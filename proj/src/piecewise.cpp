#include "sdm/piecewise.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace sdm {

PiecewiseConstantFn::PiecewiseConstantFn() : breaks_{Rational(-1), Rational(1)}, values_{Rational(0)} {}

PiecewiseConstantFn PiecewiseConstantFn::constant(const Rational& v) {
  PiecewiseConstantFn f;
  f.values_[0] = v;
  return f;
}

PiecewiseConstantFn PiecewiseConstantFn::from_indicators(
    const std::vector<std::tuple<Rational, Rational, Rational>>& items) {
  std::map<Rational, Rational> delta;
  const Rational lo_clip(-1), hi_clip(1);
  delta[lo_clip];
  delta[hi_clip];
  for (const auto& [lo, hi, w] : items) {
    Rational a = std::max(lo, lo_clip), b = std::min(hi, hi_clip);
    if (a >= b || w == 0) continue;
    delta[a] += w;
    delta[b] -= w;
  }
  PiecewiseConstantFn f;
  f.breaks_.clear();
  f.values_.clear();
  Rational acc = 0;
  for (const auto& [x, d] : delta) {
    if (x == hi_clip) break;
    f.breaks_.push_back(x);
    acc += d;
    f.values_.push_back(acc);
  }
  f.breaks_.push_back(hi_clip);
  f.merge_cells();
  return f;
}

void PiecewiseConstantFn::merge_cells() {
  std::vector<Rational> nb{breaks_.front()};
  std::vector<Rational> nv;
  for (size_t i = 0; i < values_.size(); ++i) {
    if (!nv.empty() && nv.back() == values_[i]) continue;
    if (!nv.empty()) nb.push_back(breaks_[i]);
    nv.push_back(values_[i]);
  }
  nb.push_back(breaks_.back());
  breaks_ = std::move(nb);
  values_ = std::move(nv);
}

Rational PiecewiseConstantFn::integral() const {
  Rational s = 0;
  for (size_t i = 0; i < values_.size(); ++i) s += values_[i] * (breaks_[i + 1] - breaks_[i]);
  return s;
}

Rational PiecewiseConstantFn::integral(Rational a, Rational b) const {
  a = std::max(a, breaks_.front());
  b = std::min(b, breaks_.back());
  if (a >= b) return 0;
  Rational s = 0;
  for (size_t i = 0; i < values_.size(); ++i) {
    Rational lo = std::max(a, breaks_[i]), hi = std::min(b, breaks_[i + 1]);
    if (lo < hi) s += values_[i] * (hi - lo);
  }
  return s;
}

Rational PiecewiseConstantFn::value_at(const Rational& x) const {
  if (x < breaks_.front() || x > breaks_.back())
    throw std::domain_error("value_at: x outside [-1,1]");
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
  if (it == breaks_.begin() || it == breaks_.end()) {
    if (x == breaks_.front() || x == breaks_.back())
      throw std::domain_error("value_at: x is a breakpoint");
  }
  size_t cell = static_cast<size_t>(it - breaks_.begin()) - 1;
  if (breaks_[cell] == x) throw std::domain_error("value_at: x is a breakpoint");
  return values_[cell];
}

bool PiecewiseConstantFn::nonnegative() const {
  return std::all_of(values_.begin(), values_.end(), [](const Rational& v) { return v >= 0; });
}

PiecewiseConstantFn PiecewiseConstantFn::scaled(const Rational& c) const {
  PiecewiseConstantFn f = *this;
  for (auto& v : f.values_) v *= c;
  f.merge_cells();
  return f;
}

std::string PiecewiseConstantFn::str() const {
  std::string s;
  for (size_t i = 0; i < values_.size(); ++i) {
    if (i) s += " ";
    s += "[" + fraction_string(breaks_[i]) + "," + fraction_string(breaks_[i + 1]) + "):" +
         fraction_string(values_[i]);
  }
  return s;
}

}  // namespace sdm
