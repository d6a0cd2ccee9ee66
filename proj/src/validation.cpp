// Copyright 2026 The iosim Authors
// SPDX-License-Identifier: Apache-2.0

#include "iosim/validation.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "iosim/optimizer.hpp"

namespace iosim {

namespace {

constexpr double kRelTol = 1e-12;

double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

Point3 random_unit(Rng& rng) {
  while (true) {
    const Point3 v{rng.standard_normal(), rng.standard_normal(), rng.standard_normal()};
    const double n = norm(v);
    if (n > 1e-6) return (1.0 / n) * v;
  }
}

int diodes_for(int s_a) {
  return std::max(1, static_cast<int>(std::bit_width(static_cast<unsigned>(s_a - 1))));
}

bool close(double a, double b, double tol = kRelTol) {
  return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1e-300});
}

// a >= b up to relative rounding.
bool at_least(double a, double b, double tol = kRelTol) { return a >= b - tol * std::abs(b); }

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Straight-line LoS amplitude, kept apart from the solver code paths.
double reference_amplitude(const LinkBudget& link, std::span<const int> idx) {
  const double step = kTwoPi / link.levels;
  cplx s{0.0, 0.0};
  for (std::size_t m = 0; m < link.size(); ++m) {
    s += std::polar(link.elements[m].amplitude, link.elements[m].base_phase - idx[m] * step);
  }
  return std::abs(s + link.direct_los);
}

double best_completion(const LinkBudget& link, const CandidateSets& cands, std::vector<int> idx) {
  std::vector<std::size_t> free;
  for (std::size_t m = 0; m < idx.size(); ++m) {
    if (idx[m] < 0) free.push_back(m);
  }
  double best = 0.0;
  std::function<void(std::size_t)> recurse = [&](std::size_t k) {
    if (k == free.size()) {
      best = std::max(best, reference_amplitude(link, idx));
      return;
    }
    for (int l : cands[free[k]]) {
      idx[free[k]] = l;
      recurse(k + 1);
    }
    idx[free[k]] = -1;
  };
  recurse(0);
  return best;
}

std::string join_detail(std::initializer_list<std::string> parts) {
  std::string out;
  for (const std::string& p : parts) {
    if (!out.empty()) out += "; ";
    out += p;
  }
  return out;
}

std::string kv(const std::string& key, double value) {
  std::ostringstream s;
  s << key << '=' << value;
  return s.str();
}

}  // namespace

LinkBudget RandomInstance::link(SurfaceKind kind) const { return build_link(panel, bs, mu, rf, kind); }

RandomInstance RandomInstance::with_levels(int s_a) const {
  RandomInstance out = *this;
  out.panel.s_a = s_a;
  out.panel.n_diodes = std::max(panel.n_diodes, diodes_for(s_a));
  return out;
}

RandomInstance random_instance(Rng& rng, const RandomInstanceOptions& options) {
  while (true) {
    RandomInstance inst;
    const std::size_t m = 1 + static_cast<std::size_t>(rng.below(options.max_elements));
    std::vector<std::size_t> divisors;
    for (std::size_t d = 1; d <= m; ++d) {
      if (m % d == 0) divisors.push_back(d);
    }
    inst.panel.rows = divisors[rng.below(divisors.size())];
    inst.panel.cols = m / inst.panel.rows;

    inst.rf.wavelength = uniform(rng, 0.01, 0.3);
    inst.panel.delta_x = inst.panel.delta_y = inst.rf.wavelength / 2.0;
    inst.panel.s_a = options.levels[rng.below(options.levels.size())];
    inst.panel.n_diodes = diodes_for(inst.panel.s_a);
    inst.panel.center = {uniform(rng, -5.0, 5.0), uniform(rng, -5.0, 5.0), uniform(rng, -5.0, 5.0)};
    inst.panel.normal = random_unit(rng);

    Point3 u;
    do {
      u = random_unit(rng);
    } while (dot(u, inst.panel.normal) < 0.2);
    inst.bs = inst.panel.center + uniform(rng, 5.0, 100.0) * u;
    do {
      u = random_unit(rng);
    } while (std::abs(dot(u, inst.panel.normal)) < 0.1);
    inst.mu = inst.panel.center + uniform(rng, 0.5, 10.0) * u;

    inst.rf.rician_kappa = options.kappas[rng.below(options.kappas.size())];
    inst.rf.epsilon = rng.uniform() < 0.1 ? 0.0 : uniform(rng, 0.1, 1.5);
    inst.rf.alpha = uniform(rng, 1.5, 4.0);
    inst.rf.nlos_ref_gain = free_space_gain_1m(inst.rf.wavelength);
    inst.rf.direct_blocked = rng.uniform() < options.blocked_probability;

    const LinkBudget unit = inst.link();
    double total = 0.0;
    for (const ElementPhasor& e : unit.elements) total += e.amplitude;
    if (total == 0.0) {
      if (options.require_surface) continue;
      return inst;
    }
    const double ratio = std::pow(10.0, uniform(rng, -1.0, 1.0));
    const double scale = ratio * std::abs(direct_los(inst.bs, inst.mu, inst.rf)) / total;
    inst.rf.element_gain = scale * scale;
    return inst;
  }
}

CheckResult check_oracle_equivalence(std::size_t instances, const RandomInstanceOptions& options,
                                     std::uint64_t seed) {
  const Timer timer;
  CheckResult r{"oracle_equivalence", true, "", 0.0};
  std::size_t comparisons = 0;
  std::size_t by_brute = 0;
  std::size_t by_sweep = 0;
  std::size_t mismatches = 0;
  std::string first;
  constexpr std::uint64_t kRelaxedLeafLimit = std::uint64_t{1} << 16;

  for (std::size_t i = 0; i < instances; ++i) {
    Rng rng = Rng::stream(seed, i);
    const RandomInstance inst = random_instance(rng, options);
    const LinkBudget link = inst.link();
    for (CandidateMode mode : {CandidateMode::bracketing, CandidateMode::full}) {
      const std::uint64_t leaves = leaf_count(candidate_sets(link, mode));
      const bool brute = leaves <= kBruteForceLeafLimit;
      const OptimizationResult oracle = brute ? brute_force(link, mode) : rotation_sweep(link, mode);
      ++(brute ? by_brute : by_sweep);

      std::vector<OptimizationResult> results;
      if (brute && leaves <= (std::uint64_t{1} << 20)) results.push_back(rotation_sweep(link, mode));
      for (BoundKind bound : {BoundKind::rotation, BoundKind::relaxed}) {
        if (bound == BoundKind::relaxed && leaves > kRelaxedLeafLimit) continue;
        BnbOptions o;
        o.mode = mode;
        o.bound = bound;
        o.init = i % 2 == 0 ? InitMode::nearest : InitMode::random;
        o.seed = i;
        results.push_back(branch_and_bound(link, o));
      }
      for (const OptimizationResult& got : results) {
        ++comparisons;
        if (got.phases == oracle.phases && close(got.se, oracle.se)) continue;
        ++mismatches;
        if (first.empty()) {
          first = "first mismatch at instance " + std::to_string(i) + " mode " + to_string(mode) +
                  " method " + to_string(got.method);
        }
      }
    }
  }
  r.passed = mismatches == 0;
  r.detail = join_detail({kv("instances", static_cast<double>(instances)),
                          kv("comparisons", static_cast<double>(comparisons)),
                          kv("brute_force_oracle", static_cast<double>(by_brute)),
                          kv("rotation_sweep_oracle", static_cast<double>(by_sweep)),
                          kv("mismatches", static_cast<double>(mismatches))});
  if (!first.empty()) r.detail += "; " + first;
  r.seconds = timer.seconds();
  return r;
}

CheckResult check_co_phasing(std::size_t geometries, std::size_t random_vectors,
                             const RandomInstanceOptions& options, std::uint64_t seed) {
  const Timer timer;
  CheckResult r{"co_phasing", true, "", 0.0};
  RandomInstanceOptions opts = options;
  opts.require_surface = true;
  opts.blocked_probability = 0.0;
  double worst_angle = 0.0;
  std::size_t dominance_failures = 0;
  for (std::size_t i = 0; i < geometries; ++i) {
    Rng rng = Rng::stream(seed, i);
    const RandomInstance inst = random_instance(rng, opts);
    const LinkBudget link = inst.link();
    const std::vector<double> psi = continuous_optimum(inst.panel, inst.bs, inst.mu, inst.rf);
    const double target = std::arg(link.direct_los);
    for (std::size_t m = 0; m < link.size(); ++m) {
      if (link.elements[m].amplitude == 0.0) continue;
      const double diff = std::remainder(std::arg(link.element_los(m, psi[m])) - target, kTwoPi);
      worst_angle = std::max(worst_angle, std::abs(diff));
    }
    const double best = std::abs(los_composite(link, psi));
    std::vector<double> trial(link.size());
    for (std::size_t v = 0; v < random_vectors; ++v) {
      for (double& p : trial) p = kTwoPi * rng.uniform();
      if (!(std::abs(los_composite(link, trial)) < best)) ++dominance_failures;
    }
  }
  r.passed = worst_angle <= 1e-9 && dominance_failures == 0;
  r.detail = join_detail({kv("geometries", static_cast<double>(geometries)),
                          kv("max_angle_error_rad", worst_angle),
                          kv("random_vectors", static_cast<double>(random_vectors)),
                          kv("dominance_failures", static_cast<double>(dominance_failures))});
  r.seconds = timer.seconds();
  return r;
}

CheckResult check_bound_admissibility(std::size_t nodes, const RandomInstanceOptions& options,
                                      std::uint64_t seed) {
  const Timer timer;
  CheckResult r{"bound_admissibility", true, "", 0.0};
  constexpr std::uint64_t kCompletionLimit = std::uint64_t{1} << 16;
  std::size_t relaxed_failures = 0;
  std::size_t rotation_failures = 0;
  std::size_t leaf_failures = 0;
  std::size_t leaves = 0;
  double min_slack = INFINITY;
  for (std::size_t i = 0; i < nodes; ++i) {
    Rng rng = Rng::stream(seed, i);
    const RandomInstance inst = random_instance(rng, options);
    const LinkBudget link = inst.link();
    const CandidateMode mode = rng.below(2) == 0 ? CandidateMode::bracketing : CandidateMode::full;
    const CandidateSets cands = candidate_sets(link, mode);

    std::vector<std::size_t> order(link.size());
    for (std::size_t m = 0; m < order.size(); ++m) order[m] = m;
    for (std::size_t m = order.size(); m > 1; --m) std::swap(order[m - 1], order[rng.below(m)]);
    const bool leaf = i % 5 == 0;
    std::size_t n_fixed = leaf ? order.size() : static_cast<std::size_t>(rng.below(order.size() + 1));
    auto completions = [&](std::size_t k) {
      std::uint64_t c = 1;
      for (std::size_t j = k; j < order.size(); ++j) c *= cands[order[j]].size();
      return c;
    };
    while (completions(n_fixed) > kCompletionLimit) ++n_fixed;

    std::vector<int> fixed(link.size(), -1);
    for (std::size_t j = 0; j < n_fixed; ++j) {
      const auto& c = cands[order[j]];
      fixed[order[j]] = c[rng.below(c.size())];
    }
    const double best_amp = best_completion(link, cands, fixed);
    const double best_se = spectral_efficiency(best_amp * best_amp, link.tx_power, link.noise_power);
    const double relaxed = node_upper_bound(make_node(link, fixed), inst.rf);
    const double rotation = rotation_upper_bound_amplitude(link, cands, fixed);

    if (!at_least(relaxed, best_se)) ++relaxed_failures;
    if (!close(rotation, best_amp)) ++rotation_failures;
    if (n_fixed == order.size()) {
      ++leaves;
      if (!close(relaxed, best_se)) ++leaf_failures;
    } else if (best_se > 0.0) {
      min_slack = std::min(min_slack, relaxed / best_se - 1.0);
    }
  }
  r.passed = relaxed_failures == 0 && rotation_failures == 0 && leaf_failures == 0;
  r.detail = join_detail({kv("nodes", static_cast<double>(nodes)),
                          kv("leaves", static_cast<double>(leaves)),
                          kv("relaxed_failures", static_cast<double>(relaxed_failures)),
                          kv("rotation_not_exact", static_cast<double>(rotation_failures)),
                          kv("leaf_not_tight", static_cast<double>(leaf_failures)),
                          kv("min_relative_slack", min_slack)});
  r.seconds = timer.seconds();
  return r;
}

CheckResult check_moments(std::size_t scenarios, std::size_t draws, double tolerance,
                          const RandomInstanceOptions& options, std::uint64_t seed) {
  const Timer timer;
  CheckResult r{"moment", true, "", 0.0};
  double worst = 0.0;
  for (std::size_t s = 0; s < scenarios; ++s) {
    Rng rng = Rng::stream(seed, s);
    RandomInstance inst = random_instance(rng, options);
    inst.rf.rician_kappa = options.kappas[s % options.kappas.size()];
    const LinkBudget link = inst.link();
    PhaseShiftVector phases = PhaseShiftVector::zeros(link.size(), link.levels);
    for (int& l : phases.indices) l = static_cast<int>(rng.below(static_cast<std::uint64_t>(link.levels)));

    double sum = 0.0;
    for (std::size_t k = 0; k < draws; ++k) {
      sum += std::norm(realize(link, phases, SmallScaleDraws::sample(rng, link.size())).total);
    }
    const double expected = expected_power(link, phases);
    const double err = std::abs(sum / static_cast<double>(draws) - expected) / expected;
    worst = std::max(worst, err);
  }
  r.passed = worst <= tolerance;
  r.detail = join_detail({kv("scenarios", static_cast<double>(scenarios)),
                          kv("draws", static_cast<double>(draws)), kv("max_rel_error", worst),
                          kv("tolerance", tolerance)});
  r.seconds = timer.seconds();
  return r;
}

CheckResult check_ordering(std::size_t instances, const RandomInstanceOptions& options,
                           std::uint64_t seed) {
  const Timer timer;
  CheckResult r{"ordering", true, "", 0.0};
  std::size_t failures = 0;
  for (std::size_t i = 0; i < instances; ++i) {
    Rng rng = Rng::stream(seed, i);
    const RandomInstance inst = random_instance(rng, options);
    const LinkBudget link = inst.link();
    BnbOptions o;
    o.mode = CandidateMode::full;
    const double full = branch_and_bound(link, o).se;
    o.mode = CandidateMode::bracketing;
    const double bracketing = branch_and_bound(link, o).se;
    const double nearest = nearest_quantized(link).se;
    const double amp = std::abs(los_composite(link, continuous_optimum(link)));
    const double continuous = spectral_efficiency(amp * amp, link.tx_power, link.noise_power);
    if (!(full >= bracketing && bracketing >= nearest && at_least(continuous, full))) ++failures;
  }
  r.passed = failures == 0;
  r.detail = join_detail({kv("instances", static_cast<double>(instances)),
                          kv("failures", static_cast<double>(failures))});
  r.seconds = timer.seconds();
  return r;
}

CheckResult check_nested_monotonicity(std::size_t instances, const RandomInstanceOptions& options,
                                      std::uint64_t seed) {
  const Timer timer;
  CheckResult r{"nested_monotonicity", true, "", 0.0};
  std::size_t failures = 0;
  std::size_t improvements = 0;
  const int coarse_levels[] = {1, 2, 4};
  for (std::size_t i = 0; i < instances; ++i) {
    Rng rng = Rng::stream(seed, i);
    const RandomInstance base = random_instance(rng, options);
    const int s_a = coarse_levels[rng.below(3)];
    BnbOptions o;
    o.mode = CandidateMode::full;
    const double coarse = branch_and_bound(base.with_levels(s_a).link(), o).se;
    const double fine = branch_and_bound(base.with_levels(2 * s_a).link(), o).se;
    if (!at_least(fine, coarse)) ++failures;
    if (fine > coarse * (1.0 + kRelTol)) ++improvements;
  }
  r.passed = failures == 0;
  r.detail = join_detail({kv("instances", static_cast<double>(instances)),
                          kv("failures", static_cast<double>(failures)),
                          kv("strict_improvements", static_cast<double>(improvements))});
  r.seconds = timer.seconds();
  return r;
}

BracketingAudit audit_bracketing(std::size_t instances, const RandomInstanceOptions& options,
                                 std::uint64_t seed) {
  const Timer timer;
  BracketingAudit a;
  a.instances = instances;
  for (std::size_t i = 0; i < instances; ++i) {
    Rng rng = Rng::stream(seed, i);
    const LinkBudget link = random_instance(rng, options).link();
    BnbOptions o;
    o.mode = CandidateMode::bracketing;
    const double bracketing = branch_and_bound(link, o).se;
    o.mode = CandidateMode::full;
    const double full = branch_and_bound(link, o).se;
    if (bracketing < full) ++a.discrepancies;
    if (bracketing > full) ++a.violations;
  }
  a.seconds = timer.seconds();
  return a;
}

bool ValidationReport::passed() const {
  return audit.violations == 0 &&
         std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

ValidationReport run_validation(bool quick, std::uint64_t seed) {
  RandomInstanceOptions base;
  base.max_elements = quick ? 8 : 10;
  auto sub = [&](std::uint64_t k) { return splitmix64(seed + k); };
  const std::size_t scale = quick ? 5 : 1;

  ValidationReport report;
  RandomInstanceOptions oracle = base;
  oracle.blocked_probability = 0.05;
  report.checks.push_back(check_oracle_equivalence(1000 / scale, oracle, sub(1)));
  report.checks.push_back(check_co_phasing(100 / scale, 10000 / scale, base, sub(2)));
  report.checks.push_back(check_bound_admissibility(200, base, sub(3)));
  report.checks.push_back(check_moments(quick ? 8 : 20, 100000, 0.02, base, sub(4)));
  report.checks.push_back(check_ordering(1000 / scale, base, sub(5)));
  report.checks.push_back(check_nested_monotonicity(500 / scale, base, sub(6)));

  RandomInstanceOptions audit = base;
  audit.max_elements = 8;
  audit.levels = {4};
  report.audit = audit_bracketing(1000 / scale, audit, sub(7));
  return report;
}

void write_validation_csv(std::ostream& out, const ValidationReport& report) {
  out << "check,status,detail\n";
  for (const CheckResult& c : report.checks) {
    out << c.name << ',' << (c.passed ? "PASS" : "FAIL") << ',' << c.detail << '\n';
  }
  const BracketingAudit& a = report.audit;
  out << "bracketing_audit," << (a.violations == 0 ? "PASS" : "FAIL") << ','
      << join_detail({kv("instances", static_cast<double>(a.instances)),
                      kv("discrepancies", static_cast<double>(a.discrepancies)),
                      kv("discrepancy_rate", a.rate()),
                      kv("full_below_bracketing", static_cast<double>(a.violations))})
      << '\n';
}

}  // namespace iosim
