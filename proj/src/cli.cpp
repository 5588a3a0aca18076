#include "sdm/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "sdm/blocks.hpp"
#include "sdm/cf_bridge.hpp"
#include "sdm/core_dynamics.hpp"
#include "sdm/measure.hpp"

namespace sdm::cli {

namespace {

using nlohmann::json;

struct Options {
  int precision_bits = 128;
  long depth = 64;
  int max_len = 8;
  std::string grid;
  uint64_t seed = 1;
  std::string mode = "float";
  std::string format = "csv";
  std::string out_path;
  long iterations = 1000000;
};

std::string echo_command(const std::vector<std::string>& args) {
  std::string s = "sdm";
  for (const auto& a : args) s += " " + a;
  return s;
}

// Machine output goes to --out when given; the human summary always goes to
// the primary stream.
class Sink {
 public:
  Sink(const Options& opt, std::ostream& primary) : primary_(primary) {
    if (!opt.out_path.empty()) {
      file_.open(opt.out_path, std::ios::binary | std::ios::trunc);
      if (!file_) throw std::ios_base::failure("cannot open output path: " + opt.out_path);
      machine_ = &file_;
    } else {
      machine_ = &primary_;
    }
  }
  std::ostream& machine() { return *machine_; }
  std::ostream& human() { return primary_; }
  bool split() const { return machine_ != &primary_; }

 private:
  std::ostream& primary_;
  std::ofstream file_;
  std::ostream* machine_ = nullptr;
};

struct Grid {
  Rational lo, hi, step;
};

Grid parse_grid(const std::string& spec) {
  auto c1 = spec.find(':');
  auto c2 = spec.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw std::invalid_argument("grid must be lo:hi:step");
  return {parse_rational(spec.substr(0, c1)), parse_rational(spec.substr(c1 + 1, c2 - c1 - 1)),
          parse_rational(spec.substr(c2 + 1))};
}

std::string csv_header(const std::string& command) {
  return "# sdm " + std::string(kVersion) + "\n# command: " + command + "\n";
}

void write_sweep_csv(std::ostream& os, const std::string& command,
                     const std::vector<measure::FrequencyRecord>& recs) {
  os << csv_header(command);
  os << "alpha_num,alpha_den,alpha_decimal,status,m,omega,eta,K_num,K_den,mu_num,mu_den,"
        "mu_decimal,birkhoff_estimate,seed\n";
  for (const auto& r : recs) {
    os << numerator(r.alpha) << "," << denominator(r.alpha) << "," << decimal_string(r.alpha)
       << "," << r.status << ",";
    if (r.m) os << *r.m;
    os << ",";
    if (r.omega) os << r.omega->str();
    os << ",";
    if (r.eta_value) os << *r.eta_value;
    os << ",";
    if (r.k_value) os << numerator(*r.k_value) << "," << denominator(*r.k_value);
    else os << ",";
    os << "," << numerator(r.mu) << "," << denominator(r.mu) << "," << decimal_string(r.mu) << ",";
    if (r.birkhoff_estimate) os << fixed_decimal_string(Rational(*r.birkhoff_estimate * 1e6, 1000000), 6);
    os << ",";
    if (r.seed) os << *r.seed;
    os << "\n";
  }
}

json sweep_json(const std::string& command, const std::vector<measure::FrequencyRecord>& recs) {
  json arr = json::array();
  for (const auto& r : recs) {
    json o;
    o["alpha"] = fraction_string(r.alpha);
    o["alpha_decimal"] = decimal_string(r.alpha);
    o["status"] = r.status;
    o["m"] = r.m ? json(*r.m) : json();
    o["omega"] = r.omega ? json(r.omega->str()) : json();
    o["eta"] = r.eta_value ? json(*r.eta_value) : json();
    o["K"] = r.k_value ? json(fraction_string(*r.k_value)) : json();
    o["mu"] = fraction_string(r.mu);
    o["mu_decimal"] = decimal_string(r.mu);
    o["birkhoff_estimate"] = r.birkhoff_estimate ? json(*r.birkhoff_estimate) : json();
    o["seed"] = r.seed ? json(*r.seed) : json();
    arr.push_back(std::move(o));
  }
  return json{{"tool", "sdm"}, {"version", kVersion}, {"command", command}, {"records", arr}};
}

int cmd_match(const Rational& alpha, const Options& opt, Sink& sink) {
  core::MatchingResult mi = core::matching_index(alpha);
  SignedDigitSeq d = core::signed_digit_sequence(1, alpha, opt.depth * 16);
  std::ostream& os = sink.human();
  os << "alpha = " << fraction_string(alpha) << " (" << decimal_string(alpha) << ")\n";
  switch (mi.kind) {
    case core::MatchingResult::Kind::Matched: {
      blocks::LocateResult loc = blocks::locate(alpha);
      os << "Matched m=" << mi.m << ", digits " << d.str();
      if (loc.kind == blocks::LocateResult::Kind::Interval)
        os << ", interval " << loc.omega.str() << " = (" << fraction_string(loc.interval.L)
           << ", " << fraction_string(loc.interval.R) << ")";
      else
        os << ", interval (3/2, 2] (m = 1 region)";
      os << "\n";
      break;
    }
    case core::MatchingResult::Kind::MarkovNoMatch:
      os << "MarkovNoMatch (orbit hits 1/2 exactly), preperiod=" << mi.preperiod
         << " period=" << mi.period << ", digits " << d.str() << "\n";
      break;
    case core::MatchingResult::Kind::CycleNoMatch:
      os << "CycleNoMatch, preperiod=" << mi.preperiod << " period=" << mi.period << ", digits "
         << d.str() << "\n";
      break;
  }
  return kOk;
}

int cmd_locate(const Rational& alpha, Sink& sink) {
  blocks::LocateResult loc = blocks::locate(alpha);
  std::ostream& os = sink.human();
  switch (loc.kind) {
    case blocks::LocateResult::Kind::Interval:
      os << "Interval " << loc.omega.str() << " = (" << fraction_string(loc.interval.L) << ", "
         << fraction_string(loc.interval.R) << "), m=" << loc.interval.m << "\n";
      break;
    case blocks::LocateResult::Kind::HighRegion:
      os << "HighRegion (3/2, 2], m=1\n";
      break;
    case blocks::LocateResult::Kind::Boundary:
      os << "Boundary " << loc.omega.str() << " ("
         << (loc.side == blocks::LocateResult::Side::Left ? "left" : "right") << " endpoint)\n";
      break;
    case blocks::LocateResult::Kind::NonMatching:
      os << "NonMatching\n";
      break;
  }
  return kOk;
}

int cmd_freq(const Rational& alpha, Sink& sink) {
  measure::FrequencyRecord rec = measure::frequency_record(alpha);
  sink.human() << fraction_string(rec.mu) << " (" << decimal_string(rec.mu) << ") [" << rec.status
               << (rec.omega ? ", omega " + rec.omega->str() : std::string()) << "]\n";
  return kOk;
}

int cmd_catalog(const Options& opt, const std::string& command, Sink& sink) {
  auto blocks_list = measure::sweep_blocks(opt.max_len);
  if (opt.format == "json") {
    json arr = json::array();
    for (const auto& b : blocks_list) {
      json o;
      o["omega"] = b.omega.str();
      o["m"] = b.m;
      o["L"] = fraction_string(b.L);
      o["R"] = fraction_string(b.R);
      o["eta"] = b.eta_value;
      o["K"] = b.k_value ? json(fraction_string(*b.k_value)) : json();
      o["mu_min"] = fraction_string(b.mu_min);
      o["mu_max"] = fraction_string(b.mu_max);
      arr.push_back(std::move(o));
    }
    json doc{{"tool", "sdm"}, {"version", kVersion}, {"command", command}, {"records", arr}};
    sink.machine() << doc.dump(2) << "\n";
  } else {
    std::ostream& os = sink.machine();
    os << csv_header(command);
    os << "omega,m,L_num,L_den,R_num,R_den,eta,K_num,K_den,mu_min,mu_max\n";
    for (const auto& b : blocks_list) {
      os << b.omega.str() << "," << b.m << "," << numerator(b.L) << "," << denominator(b.L) << ","
         << numerator(b.R) << "," << denominator(b.R) << "," << b.eta_value << ",";
      if (b.k_value) os << numerator(*b.k_value) << "," << denominator(*b.k_value);
      else os << ",";
      os << "," << decimal_string(b.mu_min) << "," << decimal_string(b.mu_max) << "\n";
    }
  }
  if (sink.split())
    sink.human() << "catalog: " << blocks_list.size() << " blocks up to length " << opt.max_len
                 << " -> " << opt.out_path << "\n";
  return kOk;
}

int cmd_sweep(const Options& opt, const std::string& command, bool simulate, Sink& sink) {
  std::optional<measure::BirkhoffOptions> sim;
  if (simulate) {
    measure::BirkhoffOptions b;
    b.iterations = opt.iterations;
    b.seed = opt.seed;
    b.mode = opt.mode == "exact" ? measure::BirkhoffOptions::Mode::ExactLattice
                                 : measure::BirkhoffOptions::Mode::Float;
    sim = b;
  }
  Grid g = parse_grid(opt.grid);
  auto recs = measure::sweep_grid(g.lo, g.hi, g.step, sim);
  if (opt.format == "json")
    sink.machine() << sweep_json(command, recs).dump(2) << "\n";
  else
    write_sweep_csv(sink.machine(), command, recs);
  if (sink.split())
    sink.human() << "sweep: " << recs.size() << " parameters -> " << opt.out_path << "\n";
  return kOk;
}

int cmd_simulate(const Rational& alpha, const Options& opt, Sink& sink) {
  measure::BirkhoffOptions b;
  b.iterations = opt.iterations;
  b.seed = opt.seed;
  b.mode = opt.mode == "exact" ? measure::BirkhoffOptions::Mode::ExactLattice
                               : measure::BirkhoffOptions::Mode::Float;
  measure::BirkhoffResult r = measure::birkhoff_frequency(alpha, b);
  Rational exact = measure::mu_zero(alpha);
  double diff = r.frequency - to_double(exact);
  sink.human() << "birkhoff " << r.mode << " estimate = " << r.frequency << " (n=" << r.iterations
               << ", seed=" << r.seed << ")\n"
               << "exact mu = " << fraction_string(exact) << " (" << decimal_string(exact) << ")\n"
               << "difference = " << (diff < 0 ? -diff : diff) << "\n";
  return kOk;
}

int cmd_conjecture(const Options& opt, const std::string& command, Sink& sink) {
  measure::ConjectureScanResult res = measure::conjecture_scan(opt.max_len);
  json arr = json::array();
  for (const auto& v : res.violations) {
    arr.push_back(json{{"lower", v.lower.str()},
                       {"higher", v.higher.str()},
                       {"lower_mu_min", fraction_string(v.lower_min)},
                       {"higher_mu_max", fraction_string(v.higher_max)}});
  }
  json doc{{"tool", "sdm"},
           {"version", kVersion},
           {"command", command},
           {"global_max", fraction_string(res.global_max)},
           {"max_is_two_thirds", res.max_is_two_thirds},
           {"max_only_in_plateau", res.max_only_in_plateau},
           {"violations", arr}};
  sink.machine() << doc.dump(2) << "\n";
  sink.human() << "ordering violations up to length " << opt.max_len << ": "
               << res.violations.size() << ", global max mu = " << fraction_string(res.global_max)
               << "\n";
  return kOk;
}

int cmd_coverage(const Options& opt, Sink& sink) {
  Rational c = measure::coverage(opt.max_len);
  sink.human() << "coverage of (1,3/2) by matching intervals, |omega| <= " << opt.max_len << ": "
               << fraction_string(c) << " (" << decimal_string(c) << ")\n";
  return kOk;
}

// --- verify: the cross-module invariant suite ----------------------------

struct VerifyRow {
  std::string name;
  bool pass;
  std::string note;
};

void add_row(std::vector<VerifyRow>& rows, const std::string& name,
             const std::function<void()>& body) {
  try {
    body();
    rows.push_back({name, true, ""});
  } catch (const std::exception& e) {
    rows.push_back({name, false, e.what()});
  }
}

void expect(bool cond, const std::string& what) {
  if (!cond) throw std::runtime_error(what);
}

int cmd_verify(const Options& opt, Sink& sink) {
  std::vector<VerifyRow> rows;
  const int len = opt.max_len;
  std::mt19937_64 gen(opt.seed);
  auto rand_rational = [&gen](long max_den, const Rational& lo, const Rational& hi) {
    long den = 2 + static_cast<long>(gen() % static_cast<uint64_t>(max_den - 1));
    Int lo_num = floor_rat(lo * den) + 1, hi_num = floor_rat(hi * den);
    if (hi * den == hi_num) --hi_num;
    if (hi_num < lo_num) return (lo + hi) / 2;
    Int span = hi_num - lo_num + 1;
    Int num = lo_num + Int(gen()) % span;
    return Rational(num, den);
  };

  add_row(rows, "orbit difference dichotomy", [&] {
    for (int i = 0; i < 40; ++i) {
      Rational a = rand_rational(60, Rational(1), Rational(3, 2));
      auto rep = core::verify_orbit_identities(a, 40);
      expect(rep.pass, "failed at alpha=" + fraction_string(a) + ": " + rep.detail);
    }
  });

  add_row(rows, "digit order reversal", [&] {
    for (int i = 0; i < 40; ++i) {
      Rational a1 = rand_rational(50, Rational(1), Rational(2));
      Rational a2 = rand_rational(50, Rational(1), Rational(2));
      if (a1 == a2) continue;
      if (a1 > a2) std::swap(a1, a2);
      auto d1 = core::signed_digit_sequence(1, a1, 200).prefix(128);
      auto d2 = core::signed_digit_sequence(1, a2, 200).prefix(128);
      size_t k = 0;
      while (k < std::min(d1.size(), d2.size()) && d1[k] == d2[k]) ++k;
      expect(k < std::min(d1.size(), d2.size()), "no digit difference found");
      expect(d2[k] < d1[k], "larger parameter must have smaller digit sequence");
    }
  });

  add_row(rows, "orbit reconstruction identity", [&] {
    for (int i = 0; i < 25; ++i) {
      Rational a = rand_rational(40, Rational(1), Rational(2));
      Rational x = rand_rational(40, Rational(-1), Rational(1));
      Rational p = x;
      std::vector<int> ds;
      for (int n = 1; n <= 60; ++n) {
        auto [next, d] = core::s_alpha_step(p, a);
        ds.push_back(d);
        p = next;
        Rational recon = pow2(n) * x;
        for (int k = 1; k <= n; ++k) recon -= Rational(ds[k - 1]) * pow2(n - k) * a;
        expect(p == recon, "reconstruction failed");
        expect(p >= -1 && p <= 1, "orbit left [-1,1]");
      }
    }
  });

  add_row(rows, "digit symmetry", [&] {
    for (int i = 0; i < 25; ++i) {
      Rational a = rand_rational(40, Rational(1), Rational(2));
      Rational x = rand_rational(40, Rational(-1), Rational(1));
      auto dp = core::signed_digit_sequence(x, a, 100).prefix(64);
      auto dn = core::signed_digit_sequence(-x, a, 100).prefix(64);
      for (size_t k = 0; k < std::min(dp.size(), dn.size()); ++k)
        expect(dn[k] == -dp[k], "d(-x) != -d(x)");
    }
  });

  add_row(rows, "matching vs lambda membership", [&] {
    for (long q = 2; q <= 120; ++q)
      for (long p = q + 1; 2 * p < 3 * q; ++p) {
        Rational a(p, q);
        if (denominator(a) != q) continue;
        bool nomatch = !core::matching_index(a).matched();
        expect(core::lambda_membership(1 / a) == nomatch,
               "lambda membership mismatch at " + fraction_string(a));
      }
  });

  add_row(rows, "psi properties", [&] {
    auto prim = blocks::enumerate_primitive(std::min(len, 10));
    for (const auto& w : prim) {
      expect(lex_compare(w, blocks::psi(w)) < 0, "w < psi(w) failed");
      expect(blocks::is_primitive(blocks::psi(w), blocks::PrimitivityMethod::Definition),
             "psi does not preserve primitivity");
    }
    for (const auto& a : prim)
      for (const auto& b : prim)
        if (lex_compare(a, b) < 0)
          expect(lex_compare(blocks::psi(a), blocks::psi(b)) < 0, "psi not order preserving");
  });

  add_row(rows, "primitivity three-way agreement", [&] {
    for (int m = 2; m <= len; ++m) {
      unsigned long count = 1ul << m;
      for (unsigned long mask = 0; mask < count; ++mask) {
        Word w;
        for (int i = m - 1; i >= 0; --i) w.bits.push_back(static_cast<uint8_t>((mask >> i) & 1));
        blocks::is_primitive_checked(w);
      }
    }
  });

  add_row(rows, "interval disjointness", [&] {
    auto prim = blocks::enumerate_primitive(len);
    std::vector<blocks::MatchingInterval> J;
    for (const auto& w : prim) J.push_back(blocks::matching_interval(w));
    std::sort(J.begin(), J.end(),
              [](const auto& a, const auto& b) { return a.L < b.L; });
    for (size_t i = 0; i + 1 < J.size(); ++i)
      expect(J[i].R <= J[i + 1].L, "intervals overlap: " + J[i].omega.str() + " vs " +
                                       J[i + 1].omega.str());
  });

  add_row(rows, "interval membership", [&] {
    for (const auto& w : blocks::enumerate_primitive(std::min(len, 10))) {
      auto J = blocks::matching_interval(w);
      for (int k : {1, 25, 50, 75, 99}) {
        Rational a = J.L + J.length() * k / 100;
        auto mi = core::matching_index(a);
        expect(mi.matched() && mi.m == J.m && mi.prefix == w,
               "membership failed in " + w.str());
      }
    }
  });

  add_row(rows, "cascade endpoint identity", [&] {
    for (const char* s : {"11", "111", "1101", "111011"})
      blocks::cascade(Word::parse(s), 4);
  });

  add_row(rows, "continued fraction bridge", [&] {
    for (const char* s : {"11", "1101", "111011", "11011"}) {
      auto rep = cf::bridge_verify(Word::parse(s), 50, opt.seed);
      std::string msg;
      for (const auto& f : rep.failures) msg += f + "; ";
      expect(rep.all_ok(), "bridge_verify(" + std::string(s) + "): " + msg);
    }
  });

  add_row(rows, "maximal quadratic reconstruction", [&] {
    std::function<void(std::vector<long>&, long)> rec = [&](std::vector<long>& q, long budget) {
      if (!q.empty() && q.back() >= 2) {
        Rational a = cf::cf_eval(q);
        if (cf::is_maximal_quadratic(a)) {
          Word w = cf::word_from_quotients(q);
          expect(blocks::is_primitive(w, blocks::PrimitivityMethod::Definition),
                 "reconstructed block not primitive");
          expect(cf::a_of_omega(w) == a, "a(omega) does not round-trip");
        }
      }
      for (long c = 1; c <= budget; ++c) {
        q.push_back(c);
        rec(q, budget - c);
        q.pop_back();
      }
    };
    std::vector<long> q;
    rec(q, 12);
  });

  add_row(rows, "transfer operator fixed point", [&] {
    for (const auto& w : blocks::enumerate_primitive(std::min(len, 8))) {
      auto J = blocks::matching_interval(w);
      Rational a = (J.L + J.R) / 2;
      auto h = measure::density_closed_form(a);
      expect(h.integral() == 1, "density not normalized");
      expect(measure::pf_apply(h, a) == h, "not a fixed point at " + fraction_string(a));
    }
  });

  add_row(rows, "measure formula vs integration", [&] {
    for (const auto& w : blocks::enumerate_primitive(std::min(len, 8))) {
      auto J = blocks::matching_interval(w);
      for (int k : {1, 2, 3}) {
        Rational a = J.L + J.length() * k / 4;
        measure::mu_zero(a);  // throws on closed-form/integral mismatch
      }
    }
  });

  add_row(rows, "monotonicity signs", [&] {
    for (const auto& w : blocks::enumerate_primitive(std::min(len, 8)))
      if (w.size() >= 3) measure::monotonicity_check(w);
  });

  add_row(rows, "plateau value", [&] {
    for (long q = 1; q <= 40; ++q)
      for (long p = q; p <= 2 * q; ++p) {
        Rational a(p, q);
        if (a < Rational(6, 5) || a > Rational(3, 2)) continue;
        expect(measure::mu_zero(a) == Rational(2, 3), "mu != 2/3 at " + fraction_string(a));
      }
  });

  add_row(rows, "boundary digit sequences", [&] {
    for (const auto& w : blocks::enumerate_primitive(std::min(len, 8)))
      blocks::boundary_sequences(w);
  });

  add_row(rows, "continuity probe", [&] {
    for (const char* s : {"111", "1101"}) {
      Word w = Word::parse(s);
      Rational e = blocks::matching_interval(w).L;
      Rational d1 = measure::mu_zero(e + Rational(1, 1000)) - measure::mu_zero(e - Rational(1, 1000));
      Rational d2 = measure::mu_zero(e + Rational(1, 10000)) - measure::mu_zero(e - Rational(1, 10000));
      expect(abs(d1) <= Rational(16, 1000), "jump too large at delta=1e-3");
      expect(abs(d2) <= Rational(16, 10000), "jump too large at delta=1e-4");
      if (d2 != 0) {
        Rational ratio = d1 / d2;
        expect(ratio > 6 && ratio < 14, "one-sided values do not scale linearly");
      }
    }
    Rational e = blocks::matching_interval(Word::parse("11")).L;
    expect(measure::mu_zero(e + Rational(1, 1000)) == measure::mu_zero(e - Rational(1, 1000)),
           "mu not locally constant across L(11)");
  });

  add_row(rows, "cascade limit enclosure", [&] {
    auto lim = blocks::cascade_limit(Word::parse("11"), opt.precision_bits);
    expect(lim.lo < lim.hi && lim.hi - lim.lo <= pow2(-opt.precision_bits),
           "enclosure too wide");
    auto lim2 = blocks::cascade_limit(Word::parse("1101"), opt.precision_bits);
    expect(!(lim2.hi < lim.lo || lim.hi < lim2.lo), "cascades from 11 and 1101 disagree");
  });

  bool all = true;
  size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.name.size());
  for (const auto& r : rows) {
    sink.human() << (r.pass ? "[PASS] " : "[FAIL] ") << r.name;
    if (!r.pass) sink.human() << std::string(width - r.name.size() + 2, ' ') << r.note;
    sink.human() << "\n";
    all = all && r.pass;
  }
  sink.human() << (all ? "verify: all invariants hold\n" : "verify: FAILURES present\n");
  return all ? kOk : kFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"symmetric doubling maps: matching intervals, invariant densities, digit-0 frequencies"};
  app.set_version_flag("--version", std::string(kVersion));
  Options opt;
  app.add_option("--precision-bits", opt.precision_bits, "enclosure precision")
      ->envname("SDM_PRECISION_BITS");
  app.add_option("--depth", opt.depth, "series truncation depth")->envname("SDM_DEPTH");
  app.add_option("--max-len", opt.max_len, "maximum block length")->envname("SDM_MAX_LEN");
  app.add_option("--grid", opt.grid, "grid lo:hi:step")->envname("SDM_GRID");
  app.add_option("--seed", opt.seed, "RNG seed")->envname("SDM_SEED");
  app.add_option("--mode", opt.mode, "float|exact")->envname("SDM_MODE");
  app.add_option("--format", opt.format, "csv|json")->envname("SDM_FORMAT");
  app.add_option("--out", opt.out_path, "output path")->envname("SDM_OUT");
  app.add_option("--iterations", opt.iterations, "simulation length")->envname("SDM_ITERATIONS");

  std::string alpha_str;
  auto* c_match = app.add_subcommand("match", "matching classification of alpha");
  c_match->add_option("alpha", alpha_str, "rational p/q")->required();
  auto* c_locate = app.add_subcommand("locate", "place alpha among the matching intervals");
  c_locate->add_option("alpha", alpha_str, "rational p/q")->required();
  auto* c_freq = app.add_subcommand("freq", "exact digit-0 frequency mu([-1/2,1/2])");
  c_freq->add_option("alpha", alpha_str, "rational p/q")->required();
  auto* c_catalog = app.add_subcommand("catalog", "primitive block / interval catalog");
  auto* c_sweep = app.add_subcommand("sweep", "frequency records over a parameter grid");
  bool sweep_sim = false;
  c_sweep->add_flag("--birkhoff", sweep_sim, "attach a simulation estimate per record");
  auto* c_verify = app.add_subcommand("verify", "run the invariant suite");
  auto* c_simulate = app.add_subcommand("simulate", "Birkhoff digit-0 frequency estimate");
  c_simulate->add_option("alpha", alpha_str, "rational p/q")->required();
  auto* c_conj = app.add_subcommand("conjecture", "scan mu ordering by block");
  auto* c_cov = app.add_subcommand("coverage", "matching-interval coverage of (1,3/2)");
  app.require_subcommand(1);
  for (auto* sc : app.get_subcommands([](const CLI::App*) { return true; })) sc->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help / --version
      out << app.help();
      return kOk;
    }
    err << "error: " << e.what() << "\n";
    return kBadInput;
  }

  const std::string command = echo_command(args);
  try {
    Sink sink(opt, out);
    if (*c_match) return cmd_match(parse_rational(alpha_str), opt, sink);
    if (*c_locate) return cmd_locate(parse_rational(alpha_str), sink);
    if (*c_freq) return cmd_freq(parse_rational(alpha_str), sink);
    if (*c_catalog) return cmd_catalog(opt, command, sink);
    if (*c_sweep) return cmd_sweep(opt, command, sweep_sim, sink);
    if (*c_verify) return cmd_verify(opt, sink);
    if (*c_simulate) return cmd_simulate(parse_rational(alpha_str), opt, sink);
    if (*c_conj) return cmd_conjecture(opt, command, sink);
    if (*c_cov) return cmd_coverage(opt, sink);
    err << "error: no subcommand\n";
    return kBadInput;
  } catch (const std::ios_base::failure& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kDomain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace sdm::cli
