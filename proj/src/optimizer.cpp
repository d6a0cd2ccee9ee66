// Copyright 2026 The iosim Authors
// SPDX-License-Identifier: Apache-2.0

#include "iosim/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace iosim {

const char* to_string(CandidateMode mode) {
  return mode == CandidateMode::bracketing ? "bracketing" : "full";
}

const char* to_string(InitMode mode) { return mode == InitMode::nearest ? "nearest" : "random"; }

const char* to_string(BoundKind kind) {
  return kind == BoundKind::relaxed ? "relaxed" : "rotation";
}

const char* to_string(Method method) {
  switch (method) {
    case Method::continuous: return "continuous";
    case Method::nearest: return "nearest";
    case Method::bracketing_bnb: return "bracketing-bnb";
    case Method::full_bnb: return "full-bnb";
    case Method::brute_force: return "brute-force";
    case Method::rotation_sweep: return "rotation-sweep";
  }
  return "?";
}

CandidateMode parse_candidate_mode(const std::string& s) {
  if (s == "bracketing") return CandidateMode::bracketing;
  if (s == "full") return CandidateMode::full;
  throw std::invalid_argument("candidate set must be 'bracketing' or 'full', got '" + s + "'");
}

InitMode parse_init_mode(const std::string& s) {
  if (s == "nearest") return InitMode::nearest;
  if (s == "random") return InitMode::random;
  throw std::invalid_argument("init mode must be 'nearest' or 'random', got '" + s + "'");
}

BoundKind parse_bound_kind(const std::string& s) {
  if (s == "relaxed") return BoundKind::relaxed;
  if (s == "rotation") return BoundKind::rotation;
  throw std::invalid_argument("bound must be 'relaxed' or 'rotation', got '" + s + "'");
}

std::vector<double> continuous_optimum(const PanelGeometry& panel, Point3 bs, Point3 mu,
                                       const RfConstants& rf) {
  const PanelFrame frame = panel_frame(panel);
  const double d_direct = distance(bs, mu);
  std::vector<double> psi(panel.size());
  for (std::size_t m = 0; m < panel.size(); ++m) {
    const ElementGeometry g = directions_at(frame, element_position(panel, m), bs, mu);
    const double cycles = (d_direct - g.d_src - g.d_dst) / rf.wavelength;
    psi[m] = wrap_phase(kTwoPi * (cycles - std::floor(cycles)));
  }
  return psi;
}

std::vector<double> continuous_optimum(const LinkBudget& link) {
  const double reference = std::abs(link.direct_los) > 0.0 ? std::arg(link.direct_los) : 0.0;
  std::vector<double> psi(link.size());
  for (std::size_t m = 0; m < link.size(); ++m) {
    psi[m] = wrap_phase(link.elements[m].base_phase - reference);
  }
  return psi;
}

BracketPair bracketing_candidates(double psi_star, int s_a) {
  if (s_a < 1) throw std::invalid_argument("s_a must be >= 1");
  const double step = kTwoPi / s_a;
  const double t = wrap_phase(psi_star) / step;
  const int low = static_cast<int>(std::floor(t)) % s_a;
  return {low, (low + 1) % s_a};
}

int quantize_nearest(double psi_star, int s_a) {
  const BracketPair b = bracketing_candidates(psi_star, s_a);
  if (b.low == b.high) return b.low;
  const double step = kTwoPi / s_a;
  const double p = wrap_phase(psi_star);
  auto cyclic = [&](int l) {
    const double d = std::abs(p - l * step);
    return std::min(d, kTwoPi - d);
  };
  const double dl = cyclic(b.low);
  const double dh = cyclic(b.high);
  if (dl < dh) return b.low;
  if (dh < dl) return b.high;
  return std::min(b.low, b.high);
}

CandidateSets candidate_sets(const LinkBudget& link, CandidateMode mode) {
  CandidateSets sets(link.size());
  if (mode == CandidateMode::full) {
    std::vector<int> all(static_cast<std::size_t>(link.levels));
    std::iota(all.begin(), all.end(), 0);
    std::fill(sets.begin(), sets.end(), all);
    return sets;
  }
  const std::vector<double> psi = continuous_optimum(link);
  for (std::size_t m = 0; m < link.size(); ++m) {
    const BracketPair b = bracketing_candidates(psi[m], link.levels);
    if (b.low == b.high) {
      sets[m] = {b.low};
    } else {
      sets[m] = {std::min(b.low, b.high), std::max(b.low, b.high)};
    }
  }
  return sets;
}

namespace {

cplx phasor_at(const ElementPhasor& e, int l, double step) {
  return std::polar(e.amplitude, e.base_phase - l * step);
}

double prune_slack(std::size_t terms) {
  return std::max(1e-12, 64.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(terms));
}

// Per-instance lookup tables shared by the discrete solvers.
class Problem {
 public:
  Problem(const LinkBudget& link, CandidateSets cands)
      : levels_(link.levels), size_(link.size()), direct_(link.direct_los), cands_(std::move(cands)) {
    if (cands_.size() != size_) throw std::invalid_argument("candidate sets length mismatch");
    const double step = kTwoPi / levels_;
    table_.resize(size_ * static_cast<std::size_t>(levels_));
    amplitude_.resize(size_);
    for (std::size_t e = 0; e < size_; ++e) {
      amplitude_[e] = link.elements[e].amplitude;
      for (int l = 0; l < levels_; ++l) table_[e * levels_ + l] = phasor_at(link.elements[e], l, step);
    }
  }

  std::size_t size() const { return size_; }
  int levels() const { return levels_; }
  cplx direct() const { return direct_; }
  double amplitude(std::size_t e) const { return amplitude_[e]; }
  const CandidateSets& candidates() const { return cands_; }
  cplx at(std::size_t e, int l) const { return table_[e * levels_ + l]; }

  double objective(std::span<const int> idx) const {
    cplx s{0.0, 0.0};
    for (std::size_t e = 0; e < size_; ++e) s += at(e, idx[e]);
    s += direct_;
    return std::abs(s);
  }

 private:
  int levels_;
  std::size_t size_;
  cplx direct_;
  CandidateSets cands_;
  std::vector<cplx> table_;
  std::vector<double> amplitude_;
};

bool lexicographically_less(std::span<const int> a, std::span<const int> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Sweeps a common rotation phi over [0, 2 pi). For each phi every free element
// takes the candidate whose phasor is closest in angle to phi; the state only
// changes at the angular bisectors between an element's candidates. The best
// completion is one of the visited states.
class RotationSweep {
 public:
  struct Event {
    double angle;
    std::size_t element;
    int from;
    int to;
  };

  RotationSweep(const Problem& p, std::span<const std::size_t> elements) : p_(p) {
    initial_.assign(p.size(), -1);
    for (std::size_t e : elements) {
      const auto& c = p.candidates()[e];
      if (c.size() == 1) {
        initial_[e] = c.front();
        continue;
      }
      std::vector<std::pair<double, int>> by_angle;
      for (int l : c) by_angle.emplace_back(wrap_phase(std::arg(p.at(e, l))), l);
      std::sort(by_angle.begin(), by_angle.end());
      const std::size_t k = by_angle.size();
      double last_angle = -1.0;
      for (std::size_t i = 0; i < k; ++i) {
        const auto& [a, from] = by_angle[i];
        const auto& [b, to] = by_angle[(i + 1) % k];
        double gap = b - a;
        if (gap <= 0.0) gap += kTwoPi;
        const double angle = wrap_phase(a + 0.5 * gap);
        events_.push_back({angle, e, from, to});
        if (angle > last_angle) {
          last_angle = angle;
          initial_[e] = to;
        }
      }
    }
    std::sort(events_.begin(), events_.end(), [](const Event& x, const Event& y) {
      return x.angle < y.angle || (x.angle == y.angle && x.element < y.element);
    });
  }

  std::size_t event_count() const { return events_.size(); }
  int initial(std::size_t e) const { return initial_[e]; }

  // Best |state| where `is_free(e)` selects the elements that follow the sweep
  // and everything else is folded into `partial`.
  template <class IsFree>
  double best_amplitude(cplx partial, std::span<const std::size_t> elements, IsFree is_free) const {
    cplx c = partial;
    for (std::size_t e : elements) {
      if (is_free(e)) c += p_.at(e, initial_[e]);
    }
    double best = std::norm(c);
    for (const Event& ev : events_) {
      if (!is_free(ev.element)) continue;
      c += p_.at(ev.element, ev.to) - p_.at(ev.element, ev.from);
      best = std::max(best, std::norm(c));
    }
    return std::sqrt(best);
  }

  // Visits every state's assignment whose running amplitude is within `floor`.
  template <class Visit>
  void for_each_state_above(std::vector<int> assign, std::span<const std::size_t> elements,
                            double floor, Visit visit) const {
    cplx c = p_.direct();
    for (std::size_t e = 0; e < p_.size(); ++e) {
      if (assign[e] >= 0) c += p_.at(e, assign[e]);
    }
    for (std::size_t e : elements) {
      assign[e] = initial_[e];
      c += p_.at(e, initial_[e]);
    }
    if (std::abs(c) >= floor) visit(assign);
    for (const Event& ev : events_) {
      c += p_.at(ev.element, ev.to) - p_.at(ev.element, ev.from);
      assign[ev.element] = ev.to;
      if (std::abs(c) >= floor) visit(assign);
    }
  }

 private:
  const Problem& p_;
  std::vector<Event> events_;
  std::vector<int> initial_;
};

OptimizationResult finish(const LinkBudget& link, std::vector<int> indices, double amplitude,
                          Method method) {
  OptimizationResult r;
  r.phases = {link.levels, std::move(indices)};
  r.amplitude = amplitude;
  r.se = spectral_efficiency(amplitude * amplitude, link.tx_power, link.noise_power);
  r.method = method;
  return r;
}

Method bnb_method(CandidateMode mode) {
  return mode == CandidateMode::bracketing ? Method::bracketing_bnb : Method::full_bnb;
}

}  // namespace

double los_amplitude(const LinkBudget& link, std::span<const int> indices) {
  if (indices.size() != link.size()) throw std::invalid_argument("index vector length mismatch");
  const double step = kTwoPi / link.levels;
  cplx s{0.0, 0.0};
  for (std::size_t e = 0; e < link.size(); ++e) s += phasor_at(link.elements[e], indices[e], step);
  s += link.direct_los;
  return std::abs(s);
}

BnbNode make_node(const LinkBudget& link, std::span<const int> fixed) {
  if (fixed.size() != link.size()) throw std::invalid_argument("node length mismatch");
  BnbNode node;
  node.fixed.assign(fixed.begin(), fixed.end());
  node.partial_phasor = link.direct_los;
  const double step = kTwoPi / link.levels;
  for (std::size_t e = 0; e < link.size(); ++e) {
    if (fixed[e] >= 0) {
      node.partial_phasor += phasor_at(link.elements[e], fixed[e], step);
    } else {
      node.remaining_amplitude += link.elements[e].amplitude;
    }
  }
  return node;
}

double node_upper_bound(const BnbNode& node, double tx_power, double noise_power) {
  const double amp = std::abs(node.partial_phasor) + node.remaining_amplitude;
  return spectral_efficiency(amp * amp, tx_power, noise_power);
}

double node_upper_bound(const BnbNode& node, const RfConstants& rf) {
  return node_upper_bound(node, rf.tx_power, rf.noise_power);
}

double rotation_upper_bound_amplitude(const LinkBudget& link, const CandidateSets& candidates,
                                      std::span<const int> fixed) {
  if (fixed.size() != link.size()) throw std::invalid_argument("node length mismatch");
  const Problem p(link, candidates);
  std::vector<std::size_t> free;
  cplx partial = link.direct_los;
  for (std::size_t e = 0; e < link.size(); ++e) {
    if (fixed[e] >= 0) {
      partial += p.at(e, fixed[e]);
    } else {
      free.push_back(e);
    }
  }
  const RotationSweep sweep(p, free);
  return sweep.best_amplitude(partial, free, [](std::size_t) { return true; });
}

OptimizationResult nearest_quantized(const LinkBudget& link) {
  const std::vector<double> psi = continuous_optimum(link);
  std::vector<int> idx(link.size());
  for (std::size_t m = 0; m < link.size(); ++m) idx[m] = quantize_nearest(psi[m], link.levels);
  const double amp = los_amplitude(link, idx);
  return finish(link, std::move(idx), amp, Method::nearest);
}

OptimizationResult branch_and_bound(const LinkBudget& link, const BnbOptions& options) {
  const Problem p(link, candidate_sets(link, options.mode));
  const auto& cands = p.candidates();
  const std::size_t m = p.size();

  // Zero-amplitude elements never change the objective: pin them to their
  // smallest index, which is what the lexicographic tie rule selects.
  std::vector<int> assign(m, -1);
  std::vector<std::size_t> order;
  for (std::size_t e = 0; e < m; ++e) {
    if (p.amplitude(e) > 0.0) {
      order.push_back(e);
    } else {
      assign[e] = cands[e].front();
    }
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return p.amplitude(a) > p.amplitude(b); });
  const std::size_t depth_max = order.size();
  std::vector<std::size_t> position(m, depth_max);
  for (std::size_t k = 0; k < depth_max; ++k) position[order[k]] = k;
  std::vector<double> suffix(depth_max + 1, 0.0);
  for (std::size_t k = depth_max; k-- > 0;) suffix[k] = suffix[k + 1] + p.amplitude(order[k]);

  // Incumbent.
  std::vector<int> best(m);
  if (options.init == InitMode::nearest) {
    const std::vector<double> psi = continuous_optimum(link);
    for (std::size_t e = 0; e < m; ++e) best[e] = quantize_nearest(psi[e], link.levels);
  } else {
    Rng rng(options.seed);
    for (std::size_t e = 0; e < m; ++e) best[e] = cands[e][rng.below(cands[e].size())];
  }
  for (std::size_t e = 0; e < m; ++e) {
    if (assign[e] >= 0) best[e] = assign[e];
  }
  double best_amp = p.objective(best);

  std::optional<RotationSweep> sweep;
  std::size_t terms = m + 2;
  if (options.bound == BoundKind::rotation) {
    sweep.emplace(p, order);
    terms += sweep->event_count();
  }
  const double keep = 1.0 - prune_slack(terms);

  // Bound of a node whose first `depth` branching elements are fixed.
  auto bound = [&](std::size_t depth, cplx partial) {
    if (!sweep) return std::abs(partial) + suffix[depth];
    return sweep->best_amplitude(partial, std::span(order).subspan(depth),
                                 [&](std::size_t e) { return position[e] >= depth; });
  };

  OptimizationResult result;
  auto consider_leaf = [&]() {
    const double v = p.objective(assign);
    if (v > best_amp || (v == best_amp && lexicographically_less(assign, best))) {
      best_amp = v;
      best = assign;
    }
  };

  struct Child {
    double bound;
    int cand;
    cplx partial;
  };
  struct Frame {
    std::size_t depth;
    std::vector<Child> children;
    std::size_t next = 0;
  };
  auto expand = [&](std::size_t depth, cplx partial) {
    Frame f{depth, {}, 0};
    const std::size_t e = order[depth];
    f.children.reserve(cands[e].size());
    for (int c : cands[e]) {
      const cplx child = partial + p.at(e, c);
      f.children.push_back({bound(depth + 1, child), c, child});
    }
    std::stable_sort(f.children.begin(), f.children.end(),
                     [](const Child& a, const Child& b) { return a.bound > b.bound; });
    return f;
  };

  const cplx root_partial = link.direct_los;
  result.nodes_visited = 1;
  if (depth_max == 0) {
    consider_leaf();
  } else if (bound(0, root_partial) < best_amp * keep) {
    result.nodes_pruned = 1;
  } else {
    std::vector<Frame> stack;
    stack.push_back(expand(0, root_partial));
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.next == f.children.size()) {
        stack.pop_back();
        continue;
      }
      const Child child = f.children[f.next++];
      if (child.bound < best_amp * keep) {
        // Children are sorted by bound, so the rest are pruned too.
        result.nodes_pruned += f.children.size() - f.next + 1;
        f.next = f.children.size();
        continue;
      }
      ++result.nodes_visited;
      const std::size_t depth = f.depth;
      assign[order[depth]] = child.cand;
      if (depth + 1 == depth_max) {
        consider_leaf();
      } else {
        stack.push_back(expand(depth + 1, child.partial));
      }
    }
  }

  OptimizationResult out = finish(link, std::move(best), best_amp, bnb_method(options.mode));
  out.nodes_visited = result.nodes_visited;
  out.nodes_pruned = result.nodes_pruned;
  return out;
}

OptimizationResult branch_and_bound(const PanelGeometry& panel, Point3 bs, Point3 mu,
                                    const RfConstants& rf, CandidateMode mode) {
  BnbOptions options;
  options.mode = mode;
  return branch_and_bound(build_link(panel, bs, mu, rf), options);
}

std::uint64_t leaf_count(const CandidateSets& candidates) {
  std::uint64_t n = 1;
  for (const auto& c : candidates) {
    if (c.empty()) return 0;
    if (n > std::numeric_limits<std::uint64_t>::max() / c.size()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    n *= c.size();
  }
  return n;
}

OptimizationResult brute_force(const LinkBudget& link, CandidateMode mode,
                               std::uint64_t max_leaves) {
  const Problem p(link, candidate_sets(link, mode));
  const auto& cands = p.candidates();
  const std::size_t m = p.size();
  const std::uint64_t leaves = leaf_count(cands);
  if (leaves > max_leaves) {
    throw std::length_error("brute force over " + std::to_string(leaves) +
                            " leaves exceeds the limit of " + std::to_string(max_leaves));
  }

  // Odometer in lexicographic order; the prefix sums repeat exactly the
  // additions Problem::objective performs, so scores are bit-identical.
  std::vector<std::size_t> digit(m, 0);
  std::vector<int> idx(m);
  std::vector<cplx> prefix(m + 1, cplx{0.0, 0.0});
  for (std::size_t e = 0; e < m; ++e) {
    idx[e] = cands[e][0];
    prefix[e + 1] = prefix[e] + p.at(e, idx[e]);
  }
  std::vector<int> best = idx;
  double best_amp = -1.0;
  std::uint64_t evaluated = 0;
  while (true) {
    ++evaluated;
    const double v = std::abs(prefix[m] + p.direct());
    if (v > best_amp) {
      best_amp = v;
      best = idx;
    }
    std::size_t e = m;
    bool done = true;
    while (e-- > 0) {
      if (++digit[e] < cands[e].size()) {
        done = false;
        break;
      }
      digit[e] = 0;
    }
    if (done) break;
    for (std::size_t j = e; j < m; ++j) {
      idx[j] = cands[j][digit[j]];
      prefix[j + 1] = prefix[j] + p.at(j, idx[j]);
    }
  }

  OptimizationResult out = finish(link, std::move(best), best_amp, Method::brute_force);
  out.nodes_visited = evaluated;
  return out;
}

OptimizationResult brute_force(const PanelGeometry& panel, Point3 bs, Point3 mu,
                               const RfConstants& rf, CandidateMode mode) {
  return brute_force(build_link(panel, bs, mu, rf), mode);
}

OptimizationResult rotation_sweep(const LinkBudget& link, CandidateMode mode) {
  const Problem p(link, candidate_sets(link, mode));
  const auto& cands = p.candidates();
  std::vector<int> assign(p.size(), -1);
  std::vector<std::size_t> free;
  for (std::size_t e = 0; e < p.size(); ++e) {
    if (p.amplitude(e) > 0.0) {
      free.push_back(e);
    } else {
      assign[e] = cands[e].front();
    }
  }
  const RotationSweep sweep(p, free);
  cplx partial = p.direct();
  for (std::size_t e = 0; e < p.size(); ++e) {
    if (assign[e] >= 0) partial += p.at(e, assign[e]);
  }
  const double top = sweep.best_amplitude(partial, free, [](std::size_t) { return true; });
  const double floor = top * (1.0 - prune_slack(p.size() + sweep.event_count() + 2));

  std::vector<int> best;
  double best_amp = -1.0;
  sweep.for_each_state_above(assign, free, floor, [&](const std::vector<int>& state) {
    const double v = p.objective(state);
    if (v > best_amp || (v == best_amp && lexicographically_less(state, best))) {
      best_amp = v;
      best = state;
    }
  });
  OptimizationResult out = finish(link, std::move(best), best_amp, Method::rotation_sweep);
  out.nodes_visited = sweep.event_count() + 1;
  return out;
}

}  // namespace iosim
