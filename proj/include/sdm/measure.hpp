#ifndef SDM_MEASURE_HPP
#define SDM_MEASURE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sdm/blocks.hpp"
#include "sdm/piecewise.hpp"
#include "sdm/rational.hpp"
#include "sdm/words.hpp"

// Invariant densities, the transfer operator, digit-0 frequencies
// mu_alpha([-1/2,1/2]), sweeps, coverage and the ordering scanner.
namespace sdm::measure {

// Exact invariant probability density for any rational alpha in [1,2]:
// the truncated closed form when alpha matches, the stabilized series
// otherwise.
PiecewiseConstantFn invariant_density(const Rational& alpha);

// The indicator series summed exactly over the eventually periodic orbits
// of +-1 and +-(alpha-1), then normalized. Works for every rational alpha
// in [1,2]; for matching alpha it reproduces density_closed_form.
PiecewiseConstantFn markov_density(const Rational& alpha);

// Truncated closed form for matching alpha (finite sum of 2m indicator
// windows); alpha = 1 gives the constant 1/2. Throws for non-matching
// alpha > 1: use density_series or invariant_density there.
PiecewiseConstantFn density_closed_form(const Rational& alpha);

struct SeriesDensity {
  PiecewiseConstantFn density;   // partial sum normalized by its own integral
  Rational sup_error;            // certified sup-norm distance to the true density
  long depth = 0;
};

// Exact partial sum of the indicator series through n = depth-1.
SeriesDensity density_series(const Rational& alpha, long depth);

// Exact image under the Perron-Frobenius operator of S_alpha.
PiecewiseConstantFn pf_apply(const PiecewiseConstantFn& f, const Rational& alpha);

// eta(w) = #{0s} - #{1s} over positions 2..m-1.
long eta(const Word& w);

// K_w = x_{m-1}/2^{m-1} + sum_{w_n=1} x_n/2^n - sum_{w_n=0} x_n/2^n,
// n = 1..m-1. pre: |w| >= 3.
Rational k_omega(const Word& w);

// mu_alpha([-1/2,1/2]), exact. Dispatches on locate(alpha) and always
// cross-checks the closed form against exact integration of the density.
Rational mu_zero(const Rational& alpha);

// Closure of the range of mu over J_w (the formula is monotone in alpha).
std::pair<Rational, Rational> mu_range(const Word& w);

enum class Direction { Increasing, Decreasing, Constant };

// Observed two-point direction of mu on J_w; verified against the sign
// prediction from eta(w). pre: |w| >= 3, w primitive.
Direction monotonicity_check(const Word& w);

struct BirkhoffOptions {
  long iterations = 1000000;
  uint64_t seed = 1;
  enum class Mode { Float, ExactLattice } mode = Mode::Float;
  Int lattice_scale = Int(1) << 40;  // exact mode denominator Q * q_alpha
};

struct BirkhoffResult {
  double frequency = 0;
  long iterations = 0;
  uint64_t seed = 0;
  std::string mode;
};

// Digit-0 frequency along a pseudo-random orbit. Float mode iterates
// doubles with a +-2^-47 dither so the orbit samples the physical measure
// even for dyadic alpha; exact mode iterates exact rationals on the
// lattice with denominator lattice_scale * q_alpha.
BirkhoffResult birkhoff_frequency(const Rational& alpha, const BirkhoffOptions& opt);

struct FrequencyRecord {
  Rational alpha;
  std::string status;  // matched | high_region | boundary | markov | cycle | alpha_one
  std::optional<long> m;
  std::optional<Word> omega;
  std::optional<long> eta_value;
  std::optional<Rational> k_value;
  Rational mu;
  std::optional<double> birkhoff_estimate;
  std::optional<uint64_t> seed;
};

FrequencyRecord frequency_record(const Rational& alpha);

// One record per grid point lo, lo+step, ..., <= hi.
std::vector<FrequencyRecord> sweep_grid(const Rational& lo, const Rational& hi,
                                        const Rational& step,
                                        const std::optional<BirkhoffOptions>& simulate = {});

struct BlockRecord {
  Word omega;
  long m;
  Rational L, R;
  long eta_value;
  std::optional<Rational> k_value;  // m >= 3
  Rational mu_min, mu_max;
};

// One record per primitive block of length <= max_len.
std::vector<BlockRecord> sweep_blocks(int max_len);

struct OrderViolation {
  Word lower, higher;          // lower < higher lexicographically, same length
  Rational lower_min, higher_max;  // mu ranges that overlap the wrong way
};

struct ConjectureScanResult {
  std::vector<OrderViolation> violations;
  Rational global_max;
  bool max_is_two_thirds = false;
  bool max_only_in_plateau = false;  // attained only by blocks inside [6/5, 3/2]
};

// Compares mu ranges of equal-length primitive blocks against the
// lexicographic order; reports violating pairs and the global maximum.
ConjectureScanResult conjecture_scan(int max_len);

// Total length of the matching intervals with |w| <= max_len as a fraction
// of the length 1/2 of (1, 3/2).
Rational coverage(int max_len);

}  // namespace sdm::measure

#endif
