#include "sdm/measure.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>

#include "sdm/core_dynamics.hpp"

namespace sdm::measure {

namespace {

const Rational kHalf(1, 2);

struct OrbitWeights {
  // weight of 1_[-1, v) per distinct orbit value v, summed over all visits
  // with geometric weights 2^-(n+1); exact because the orbit is eventually
  // periodic.
  std::map<Rational, Rational> weight;
};

OrbitWeights orbit_indicator_weights(Rational y, const Rational& alpha) {
  std::map<Rational, long> first_seen;
  std::vector<Rational> points;
  Rational p = y;
  long cycle_start = -1;
  while (true) {
    auto it = first_seen.find(p);
    if (it != first_seen.end()) {
      cycle_start = it->second;
      break;
    }
    first_seen.emplace(p, static_cast<long>(points.size()));
    points.push_back(p);
    p = core::s_alpha_step(p, alpha).first;
  }
  long period = static_cast<long>(points.size()) - cycle_start;
  OrbitWeights w;
  Rational cycle_factor = Rational(1) / (1 - pow2(-period));
  for (long n = 0; n < static_cast<long>(points.size()); ++n) {
    Rational base = pow2(-(n + 1));
    w.weight[points[n]] += (n >= cycle_start) ? base * cycle_factor : base;
  }
  return w;
}

void append_series_terms(std::vector<std::tuple<Rational, Rational, Rational>>& items,
                         const Rational& y, const Rational& alpha, int sign) {
  OrbitWeights w = orbit_indicator_weights(y, alpha);
  for (const auto& [v, wt] : w.weight) items.emplace_back(Rational(-1), v, sign * wt);
}

}  // namespace

PiecewiseConstantFn invariant_density(const Rational& alpha) {
  if (alpha < 1 || alpha > 2) throw std::domain_error("invariant_density: alpha outside [1,2]");
  if (alpha == 1 || core::matching_index(alpha).matched()) return density_closed_form(alpha);
  return markov_density(alpha);
}

PiecewiseConstantFn markov_density(const Rational& alpha) {
  if (alpha < 1 || alpha > 2) throw std::domain_error("markov_density: alpha outside [1,2]");
  std::vector<std::tuple<Rational, Rational, Rational>> items;
  append_series_terms(items, alpha - 1, alpha, +1);
  append_series_terms(items, Rational(-1), alpha, -1);
  append_series_terms(items, Rational(1), alpha, +1);
  append_series_terms(items, 1 - alpha, alpha, -1);
  PiecewiseConstantFn f = PiecewiseConstantFn::from_indicators(items);
  Rational total = f.integral();
  if (total <= 0) throw std::logic_error("invariant_density: nonpositive total mass");
  f = f.scaled(1 / total);
  if (!f.nonnegative()) throw std::logic_error("invariant_density: negative cell");
  return f;
}

PiecewiseConstantFn density_closed_form(const Rational& alpha) {
  if (alpha == 1) return PiecewiseConstantFn::constant(kHalf);
  core::MatchingResult mi = core::matching_index(alpha);
  if (!mi.matched())
    throw std::domain_error("density_closed_form: no matching at alpha = " +
                            fraction_string(alpha) + "; use density_series");
  long m = mi.m;
  Rational inv_c = (1 / (2 * alpha)) * Rational(pow2i(m), pow2i(m) - 1);
  std::vector<std::tuple<Rational, Rational, Rational>> items;
  Rational top = 1, bot = 1 - alpha;
  for (long n = 0; n < m; ++n) {
    Rational w = inv_c * pow2(-(n + 1));
    items.emplace_back(bot, top, w);    // [S^n(1-a), S^n(1))
    items.emplace_back(-top, -bot, w);  // [S^n(-1), S^n(a-1)) by symmetry
    top = core::s_alpha_step(top, alpha).first;
    bot = core::s_alpha_step(bot, alpha).first;
  }
  PiecewiseConstantFn f = PiecewiseConstantFn::from_indicators(items);
  if (f.integral() != 1) throw std::logic_error("density_closed_form: integral != 1");
  return f;
}

SeriesDensity density_series(const Rational& alpha, long depth) {
  if (alpha <= 1 || alpha > 2) throw std::domain_error("density_series: alpha outside (1,2]");
  if (depth < 1) throw std::domain_error("density_series: depth >= 1 required");
  std::vector<std::tuple<Rational, Rational, Rational>> items;
  Rational pts[4] = {alpha - 1, Rational(-1), Rational(1), 1 - alpha};
  int signs[4] = {+1, -1, +1, -1};
  for (int k = 0; k < 4; ++k) {
    Rational p = pts[k];
    for (long n = 0; n < depth; ++n) {
      items.emplace_back(Rational(-1), p, signs[k] * pow2(-(n + 1)));
      p = core::s_alpha_step(p, alpha).first;
    }
  }
  PiecewiseConstantFn partial = PiecewiseConstantFn::from_indicators(items);
  Rational integral = partial.integral();
  Rational tau = pow2(1 - depth);  // sup-norm bound on the dropped tail
  if (integral <= 2 * tau)
    throw std::domain_error("density_series: depth too small to normalize");
  SeriesDensity out;
  out.depth = depth;
  out.density = partial.scaled(1 / integral);
  // |U/I - U_N/I_N| <= tau/I + sup|U_N| * |I - I_N| / (I * I_N), I >= I_N - 2 tau
  Rational sup_partial = 0;
  for (const auto& v : partial.values()) sup_partial = std::max(sup_partial, abs(v));
  Rational denom = integral - 2 * tau;
  out.sup_error = tau / denom + sup_partial * 2 * tau / (denom * integral);
  return out;
}

PiecewiseConstantFn pf_apply(const PiecewiseConstantFn& f, const Rational& alpha) {
  if (alpha < 1 || alpha > 2) throw std::domain_error("pf_apply: alpha outside [1,2]");
  const Rational wlo1 = alpha - 2, whi1 = alpha - 1;  // window of f((x-a)/2)
  const Rational wlo2 = 1 - alpha, whi2 = 2 - alpha;  // window of f((x+a)/2)
  std::vector<Rational> breaks;
  for (const Rational& b : f.breakpoints()) {
    breaks.push_back(2 * b);
    breaks.push_back(2 * b + alpha);
    breaks.push_back(2 * b - alpha);
  }
  breaks.insert(breaks.end(), {wlo1, whi1, wlo2, whi2, Rational(-1), Rational(1)});
  std::erase_if(breaks, [](const Rational& b) { return b < -1 || b > 1; });
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  std::vector<std::tuple<Rational, Rational, Rational>> items;
  for (size_t i = 0; i + 1 < breaks.size(); ++i) {
    Rational mid = (breaks[i] + breaks[i + 1]) / 2;
    Rational v = f.value_at(mid / 2);
    if (mid > wlo1 && mid < whi1) v += f.value_at((mid - alpha) / 2);
    if (mid > wlo2 && mid < whi2) v += f.value_at((mid + alpha) / 2);
    v /= 2;
    if (v != 0) items.emplace_back(breaks[i], breaks[i + 1], v);
  }
  return PiecewiseConstantFn::from_indicators(items);
}

long eta(const Word& w) {
  if (w.size() < 2) throw std::domain_error("eta: |w| >= 2 required");
  long zeros = 0, ones = 0;
  for (size_t n = 1; n + 1 < w.size(); ++n) (w[n] ? ones : zeros)++;
  return zeros - ones;
}

Rational k_omega(const Word& w) {
  long m = static_cast<long>(w.size());
  if (m < 3) throw std::domain_error("k_omega: |w| >= 3 required");
  Rational sum = 0;
  Int x = 0;
  for (long n = 1; n < m; ++n) {
    x = 2 * x + w[n - 1];
    Rational term(x, pow2i(n));
    sum += w[n - 1] ? term : -term;
    if (n == m - 1) sum += term;  // the extra x_{m-1}/2^{m-1}
  }
  return sum;
}

namespace {

Rational mu_formula(const Word& w, const Rational& alpha) {
  long m = static_cast<long>(w.size());
  return Rational(pow2i(m - 1), pow2i(m) - 1) * (Rational(eta(w)) / alpha + k_omega(w));
}

}  // namespace

Rational mu_zero(const Rational& alpha) {
  if (alpha < 1 || alpha > 2) throw std::domain_error("mu_zero: alpha outside [1,2]");
  Rational by_integral = invariant_density(alpha).integral(-kHalf, kHalf);
  Rational closed;
  bool have_closed = false;
  if (alpha == 1) {
    closed = kHalf;
    have_closed = true;
  } else {
    blocks::LocateResult loc = blocks::locate(alpha);
    if (loc.kind == blocks::LocateResult::Kind::HighRegion) {
      closed = 1 / alpha;
      have_closed = true;
    } else if (loc.kind == blocks::LocateResult::Kind::Interval) {
      closed = loc.interval.m == 2 ? Rational(2, 3) : mu_formula(loc.omega, alpha);
      have_closed = true;
    }
  }
  if (have_closed && closed != by_integral)
    throw std::logic_error("mu_zero: closed form disagrees with exact integration at alpha = " +
                           fraction_string(alpha));
  return by_integral;
}

std::pair<Rational, Rational> mu_range(const Word& w) {
  blocks::MatchingInterval J = blocks::matching_interval(w);
  if (J.m == 2) return {Rational(2, 3), Rational(2, 3)};
  Rational at_l = mu_formula(w, J.L), at_r = mu_formula(w, J.R);
  return at_l <= at_r ? std::make_pair(at_l, at_r) : std::make_pair(at_r, at_l);
}

Direction monotonicity_check(const Word& w) {
  if (w.size() < 3) throw std::domain_error("monotonicity_check: |w| >= 3 required");
  blocks::MatchingInterval J = blocks::matching_interval(w);
  Rational len = J.length();
  Rational a1 = J.L + len / 4, a2 = J.R - len / 4;
  Rational m1 = mu_zero(a1), m2 = mu_zero(a2);
  Direction observed =
      m1 < m2 ? Direction::Increasing : m1 > m2 ? Direction::Decreasing : Direction::Constant;
  long e = eta(w);
  Direction predicted =
      e < 0 ? Direction::Increasing : e > 0 ? Direction::Decreasing : Direction::Constant;
  if (observed != predicted)
    throw std::logic_error("monotonicity_check: observed direction contradicts eta sign for " +
                           w.str());
  return observed;
}

BirkhoffResult birkhoff_frequency(const Rational& alpha, const BirkhoffOptions& opt) {
  if (alpha < 1 || alpha > 2) throw std::domain_error("birkhoff_frequency: alpha outside [1,2]");
  if (opt.iterations < 1) throw std::domain_error("birkhoff_frequency: iterations >= 1");
  std::mt19937_64 gen(opt.seed);
  auto unit = [&gen] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
  BirkhoffResult res;
  res.iterations = opt.iterations;
  res.seed = opt.seed;
  long zeros = 0;
  if (opt.mode == BirkhoffOptions::Mode::Float) {
    res.mode = "float";
    double a = to_double(alpha);
    double x = 2 * unit() - 1;
    for (long i = 0; i < opt.iterations; ++i) {
      int d = x > 0.5 ? 1 : x < -0.5 ? -1 : 0;
      if (d == 0) ++zeros;
      // dither keeps the pseudo-orbit off exact dyadic lattices
      x = 2 * x - d * a + (unit() - 0.5) * 0x1.0p-46;
      if (x > 1) x = 1;
      if (x < -1) x = -1;
    }
  } else {
    res.mode = "exact";
    Int den = opt.lattice_scale * denominator(alpha);
    Int span = 2 * den + 1;
    Int num = Int(gen() % 0x7fffffffffffffffull) * Int(gen() % 0x7fffffffffffffffull) % span - den;
    Rational x(num, den);
    for (long i = 0; i < opt.iterations; ++i) {
      auto [next, d] = core::s_alpha_step(x, alpha);
      if (d == 0) ++zeros;
      x = next;
    }
  }
  res.frequency = static_cast<double>(zeros) / static_cast<double>(opt.iterations);
  return res;
}

FrequencyRecord frequency_record(const Rational& alpha) {
  FrequencyRecord rec;
  rec.alpha = alpha;
  rec.mu = mu_zero(alpha);
  if (alpha == 1) {
    rec.status = "alpha_one";
    return rec;
  }
  blocks::LocateResult loc = blocks::locate(alpha);
  switch (loc.kind) {
    case blocks::LocateResult::Kind::HighRegion:
      rec.status = "high_region";
      rec.m = 1;
      break;
    case blocks::LocateResult::Kind::Interval:
      rec.status = "matched";
      rec.m = loc.interval.m;
      rec.omega = loc.omega;
      rec.eta_value = eta(loc.omega);
      if (loc.interval.m >= 3) rec.k_value = k_omega(loc.omega);
      break;
    case blocks::LocateResult::Kind::Boundary:
      rec.status = "boundary";
      rec.omega = loc.omega;
      break;
    case blocks::LocateResult::Kind::NonMatching:
      rec.status = loc.match.hit_half ? "markov" : "cycle";
      break;
  }
  return rec;
}

std::vector<FrequencyRecord> sweep_grid(const Rational& lo, const Rational& hi,
                                        const Rational& step,
                                        const std::optional<BirkhoffOptions>& simulate) {
  if (step <= 0) throw std::domain_error("sweep_grid: step must be positive");
  std::vector<FrequencyRecord> out;
  for (Rational a = lo; a <= hi; a += step) {
    FrequencyRecord rec = frequency_record(a);
    if (simulate) {
      BirkhoffResult b = birkhoff_frequency(a, *simulate);
      rec.birkhoff_estimate = b.frequency;
      rec.seed = b.seed;
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<BlockRecord> sweep_blocks(int max_len) {
  std::vector<BlockRecord> out;
  for (const Word& w : blocks::enumerate_primitive(max_len)) {
    blocks::MatchingInterval J = blocks::matching_interval(w);
    BlockRecord rec;
    rec.omega = w;
    rec.m = J.m;
    rec.L = J.L;
    rec.R = J.R;
    rec.eta_value = eta(w);
    if (J.m >= 3) rec.k_value = k_omega(w);
    auto [mn, mx] = mu_range(w);
    rec.mu_min = mn;
    rec.mu_max = mx;
    out.push_back(std::move(rec));
  }
  return out;
}

ConjectureScanResult conjecture_scan(int max_len) {
  if (max_len < 4) throw std::domain_error("conjecture_scan: max_len >= 4 required");
  ConjectureScanResult res;
  res.global_max = 0;
  const Rational plateau_lo(6, 5), plateau_hi(3, 2), two_thirds(2, 3);
  res.max_only_in_plateau = true;
  for (int len = 2; len <= max_len; ++len) {
    std::vector<Word> words;
    for (Word& w : blocks::enumerate_primitive(len))
      if (static_cast<int>(w.size()) == len) words.push_back(std::move(w));
    std::vector<std::pair<Rational, Rational>> ranges;
    ranges.reserve(words.size());
    for (const Word& w : words) {
      auto r = mu_range(w);
      res.global_max = std::max(res.global_max, r.second);
      if (r.second >= two_thirds) {
        blocks::MatchingInterval J = blocks::matching_interval(w);
        if (!(J.L >= plateau_lo && J.R <= plateau_hi)) res.max_only_in_plateau = false;
      }
      ranges.push_back(std::move(r));
    }
    if (len < 4) continue;
    for (size_t i = 0; i < words.size(); ++i) {
      for (size_t j = i + 1; j < words.size(); ++j) {
        // words are in lex order: words[i] < words[j]
        if (ranges[i].first < ranges[j].second)
          res.violations.push_back({words[i], words[j], ranges[i].first, ranges[j].second});
      }
    }
  }
  res.max_is_two_thirds = res.global_max == two_thirds;
  return res;
}

Rational coverage(int max_len) {
  std::vector<Rational> terms;
  for (const Word& w : blocks::enumerate_primitive(max_len))
    terms.push_back(blocks::matching_interval(w).length());
  // pairwise summation keeps intermediate denominators small
  while (terms.size() > 1) {
    std::vector<Rational> next;
    next.reserve((terms.size() + 1) / 2);
    for (size_t i = 0; i + 1 < terms.size(); i += 2) next.push_back(terms[i] + terms[i + 1]);
    if (terms.size() % 2) next.push_back(terms.back());
    terms = std::move(next);
  }
  return terms.empty() ? Rational(0) : terms[0] / kHalf;
}

}  // namespace sdm::measure
