#include "skein/gammastar.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "skein/error.hpp"

namespace skein {

std::uint64_t guard_override(std::uint64_t default_value) {
  const char* raw = std::getenv("SKEIN_GUARD_OVERRIDE");
  if (!raw || !*raw) return default_value;
  char* end = nullptr;
  unsigned long long v = std::strtoull(raw, &end, 10);
  if (end == raw || *end != '\0' || v == 0) return default_value;
  return std::max<std::uint64_t>(default_value, v);
}

namespace {

/// Union of open intervals. Components merge only on strict overlap; touching
/// intervals stay separate because the shared endpoint is missing from both.
class OpenUnion {
public:
  void add(const OpenInterval& iv) {
    if (iv.empty()) return;
    OpenInterval merged = iv;
    std::vector<OpenInterval> next;
    for (const auto& c : parts_) {
      if (intersects(c, merged)) {
        merged.left = min(merged.left, c.left);
        merged.right = max(merged.right, c.right);
      } else {
        next.push_back(c);
      }
    }
    next.push_back(merged);
    std::sort(next.begin(), next.end(),
              [](const OpenInterval& a, const OpenInterval& b) { return a.left < b.left; });
    parts_ = std::move(next);
  }

  bool contains_gap(const OpenInterval& g) const {
    for (const auto& c : parts_)
      if (contains(c, g)) return true;
    return false;
  }

private:
  std::vector<OpenInterval> parts_;
};

struct FamilyState {
  FamilyThread thread;
  const GammaStarOptions* options;
  const Rational* eps;

  const OpenInterval& gap(std::size_t n) {
    while (thread.stream.emitted_count() < n) {
      if (thread.stream.emitted_count() >= options->deepening_budget)
        fail(Errc::DeepeningExhausted,
             thread.name + " needs gap " + std::to_string(n) + " past the deepening budget of " +
                 std::to_string(options->deepening_budget));
      thread.stream.next();
      Rational measure(1);
      for (const auto& g : thread.stream.emitted()) measure -= g.length();
      if (measure <= *eps)
        fail(Errc::MeasureViolation, thread.name + " truncation measure dropped to " +
                                         measure.str() + ", not above eps");
    }
    return thread.stream.emitted()[n - 1];
  }
};

}  // namespace

GammaStarRun gamma_star_prefix(std::vector<FamilyThread> family, const Rational& k,
                               const Rational& eps, std::size_t k_max,
                               const GammaStarOptions& options) {
  if (family.empty()) fail(Errc::InvalidArgument, "empty family");
  if (k < Rational(1)) fail(Errc::InvalidArgument, "K must be at least 1");
  if (eps.sign() <= 0) fail(Errc::InvalidArgument, "eps must be positive");
  std::size_t guard = static_cast<std::size_t>(guard_override(options.factorial_guard));
  if (k_max > guard)
    fail(Errc::FactorialGuard, "k_max " + std::to_string(k_max) + " exceeds the guard " +
                                   std::to_string(guard));

  std::vector<FamilyState> states;
  states.reserve(family.size());
  for (auto& f : family) {
    if (f.width.sign() <= 0 || f.width > Rational(1))
      fail(Errc::InvalidArgument, "family width must satisfy 0 < a <= 1");
    states.push_back({std::move(f), &options, &eps});
  }

  GammaStarRun run;
  run.k = k;
  run.eps = eps;
  run.k_max = k_max;

  for (std::size_t step = 1; step <= k_max; ++step) {
    std::size_t target = (step - 1) % states.size();
    FamilyState& t = states[target];

    StepTrace st;
    st.step = step;
    st.target_index = target;
    st.bound_term = Rational::pow2(-static_cast<int>(step) - 1) * eps / k;

    std::size_t n_omega = 1;
    if (step > 1) {
      std::size_t prior = step - 1;
      std::vector<std::size_t> sigma(prior);
      std::iota(sigma.begin(), sigma.end(), 1);
      do {
        OrderingTrace ot;
        ot.sigma = sigma;
        OpenUnion swept;
        std::size_t n_prev = 1;
        for (std::size_t j : sigma) {
          SweepSelection sel;
          sel.j = j;
          sel.radius = k * run.produced[j - 1];
          sel.swept_gap = t.gap(n_prev);
          sel.sweep = sweeping(sel.swept_gap, sel.radius);
          swept.add(sel.sweep);
          std::size_t n = n_prev + 1;
          while (swept.contains_gap(t.gap(n))) ++n;
          sel.chosen_n = n;
          sel.chosen_gap = t.gap(n);
          sel.alpha = sel.chosen_gap.length();
          ot.steps.push_back(sel);
          n_prev = n;
        }
        ot.n_sigma = n_prev;
        n_omega = std::max(n_omega, ot.n_sigma);
        st.orderings.push_back(std::move(ot));
      } while (std::next_permutation(sigma.begin(), sigma.end()));
    }

    st.n_omega = n_omega;
    st.alpha_omega = t.gap(n_omega).length();
    // rho = 1/2 midpoints the open bound; the min with the previous value
    // keeps the produced sequence strictly decreasing.
    Rational bound = min(st.bound_term, st.alpha_omega / k);
    if (!run.produced.empty()) bound = min(bound, run.produced.back());
    st.gamma_star = bound / Rational(2);
    run.produced.push_back(st.gamma_star);
    run.trace.push_back(std::move(st));
  }

  for (auto& s : states) {
    run.family_names.push_back(s.thread.name);
    run.family_widths.push_back(s.thread.width);
    run.family_gaps.push_back(s.thread.stream.emitted());
  }
  return run;
}

std::optional<std::string> recheck_trace(const GammaStarRun& run) {
  auto err = [](const std::string& m) { return std::optional<std::string>(m); };
  if (run.trace.size() != run.produced.size() || run.trace.size() != run.k_max)
    return err("trace length disagrees with the produced prefix");
  for (std::size_t s = 1; s <= run.trace.size(); ++s) {
    const StepTrace& st = run.trace[s - 1];
    std::string where = "step " + std::to_string(s) + ": ";
    if (st.step != s) return err(where + "step index mismatch");
    if (st.target_index != (s - 1) % run.family_gaps.size())
      return err(where + "target index mismatch");
    const auto& gaps = run.family_gaps[st.target_index];
    if (st.bound_term != Rational::pow2(-static_cast<int>(s) - 1) * run.eps / run.k)
      return err(where + "bound term mismatch");
    for (std::size_t i = 1; i < gaps.size(); ++i)
      if (gaps[i].length() >= gaps[i - 1].length())
        return err(where + "target gaps not strictly decreasing in length");

    std::size_t expect_orderings = 1;
    for (std::size_t i = 2; i < s; ++i) expect_orderings *= i;
    if (s == 1 && !st.orderings.empty()) return err(where + "step 1 must have no orderings");
    if (s > 1 && st.orderings.size() != expect_orderings)
      return err(where + "wrong number of orderings");

    std::size_t n_omega = 1;
    for (const OrderingTrace& ot : st.orderings) {
      std::vector<std::size_t> sorted = ot.sigma;
      std::sort(sorted.begin(), sorted.end());
      for (std::size_t i = 0; i < sorted.size(); ++i)
        if (sorted[i] != i + 1) return err(where + "sigma is not an ordering of {1..k}");
      if (ot.sigma.size() != s - 1 || ot.steps.size() != s - 1)
        return err(where + "ordering arity mismatch");

      OpenUnion swept;
      std::size_t n_prev = 1;
      Rational alpha_floor = gaps.at(0).length();
      for (std::size_t i = 0; i < ot.steps.size(); ++i) {
        const SweepSelection& sel = ot.steps[i];
        if (sel.j != ot.sigma[i]) return err(where + "selection j disagrees with sigma");
        if (sel.radius != run.k * run.produced[sel.j - 1])
          return err(where + "sweeping radius mismatch");
        if (!(sel.swept_gap == gaps.at(n_prev - 1)))
          return err(where + "swept gap is not the previous selection");
        if (!(sel.sweep == sweeping(sel.swept_gap, sel.radius)))
          return err(where + "sweeping interval mismatch");
        swept.add(sel.sweep);
        if (sel.chosen_n <= n_prev) return err(where + "chosen index does not advance");
        if (sel.chosen_n > gaps.size()) return err(where + "chosen index beyond the trace gaps");
        for (std::size_t n = n_prev + 1; n < sel.chosen_n; ++n)
          if (!swept.contains_gap(gaps.at(n - 1)))
            return err(where + "skipped gap " + std::to_string(n) + " escapes the sweepings");
        if (swept.contains_gap(gaps.at(sel.chosen_n - 1)))
          return err(where + "selected gap " + std::to_string(sel.chosen_n) +
                     " lies inside the sweepings");
        if (!(sel.chosen_gap == gaps.at(sel.chosen_n - 1)))
          return err(where + "selected gap interval mismatch");
        if (sel.alpha != sel.chosen_gap.length()) return err(where + "alpha mismatch");
        if (sel.alpha >= alpha_floor)
          return err(where + "alpha fails to drop below the earlier selections");
        alpha_floor = sel.alpha;
        n_prev = sel.chosen_n;
      }
      if (ot.n_sigma != n_prev) return err(where + "n_sigma mismatch");
      n_omega = std::max(n_omega, ot.n_sigma);
    }
    if (s > 1 && st.n_omega != n_omega) return err(where + "n_omega is not the maximum");
    if (s == 1 && st.n_omega != 1) return err(where + "step 1 must select the biggest gap");
    if (st.alpha_omega != gaps.at(st.n_omega - 1).length())
      return err(where + "alpha_omega mismatch");
    Rational bound = min(st.bound_term, st.alpha_omega / run.k);
    if (s > 1) bound = min(bound, run.produced[s - 2]);
    if (st.gamma_star != bound / Rational(2) || st.gamma_star != run.produced[s - 1])
      return err(where + "produced value mismatch");
    if (st.gamma_star >= Rational::pow2(-static_cast<int>(s) - 1) / run.k * run.eps)
      return err(where + "property (1) bound fails");
  }
  return std::nullopt;
}

namespace {

struct AssignmentSearch {
  const std::vector<OpenInterval>* by_position;
  const std::vector<Rational>* budgets;
  const Rational* k;
  std::uint64_t explored = 0;
  std::vector<std::size_t> slot_of;  // per position index, 1-based slot
  bool found = false;

  // Covers targets[from..] with contiguous blocks mapped to unused slots.
  void run(std::size_t from, std::uint32_t used) {
    if (found) return;
    ++explored;
    if (from == by_position->size()) {
      found = true;
      return;
    }
    for (std::size_t slot = 0; slot < budgets->size() && !found; ++slot) {
      if (used & (1u << slot)) continue;
      Rational cap = *k * (*budgets)[slot];
      for (std::size_t end = from; end < by_position->size(); ++end) {
        Rational span = end == from
                            ? (*by_position)[from].length()
                            : (*by_position)[end].right - (*by_position)[from].left;
        if (cap < span) break;  // spans only grow with the block
        for (std::size_t i = from; i <= end; ++i) slot_of[i] = slot + 1;
        run(end + 1, used | (1u << slot));
        if (found) return;
      }
    }
  }
};

}  // namespace

JumpCertificate jump_infeasibility(const Thread& target, const std::vector<Rational>& budgets,
                                   const Rational& k, std::size_t m) {
  if (k.sign() <= 0) fail(Errc::PreconditionFailed, "K must be positive");
  if (budgets.size() > 32) fail(Errc::PreconditionFailed, "more than 32 budget slots");
  for (const auto& b : budgets) {
    if (b.sign() <= 0) fail(Errc::PreconditionFailed, "budgets must be positive");
    if (b * k >= target.width())
      fail(Errc::PreconditionFailed, "budget " + b.str() + " reaches a_target/K");
  }
  auto by_length = target.gaps_by_length();
  if (m > by_length.size())
    fail(Errc::PreconditionFailed, "m exceeds the available target gaps");
  by_length.resize(m);

  JumpCertificate cert;
  cert.target_gaps = by_length;
  cert.budgets = budgets;
  cert.k = k;
  cert.m = m;
  if (m == 0) {
    cert.feasible = true;  // vacuous
    return cert;
  }

  std::vector<OpenInterval> by_position = by_length;
  std::sort(by_position.begin(), by_position.end(),
            [](const OpenInterval& a, const OpenInterval& b) { return a.left < b.left; });

  AssignmentSearch search;
  search.by_position = &by_position;
  search.budgets = &budgets;
  search.k = &k;
  search.slot_of.assign(m, 0);
  search.run(0, 0);

  cert.explored = search.explored;
  cert.feasible = search.found;
  if (search.found) {
    cert.assignment.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      auto it = std::find_if(by_position.begin(), by_position.end(),
                             [&](const OpenInterval& g) { return g == by_length[i]; });
      cert.assignment[i] = search.slot_of[static_cast<std::size_t>(it - by_position.begin())];
    }
  }
  return cert;
}

std::optional<PLMap> brute_force_map_search(const Thread& source, const Thread& target,
                                            const Rational& k, const Rational& grid_step,
                                            const BruteForceOptions& options) {
  std::vector<Rational> xs = source.support_points(grid_step);
  std::vector<Rational> vs = target.support_points(grid_step);
  std::uint64_t guard = guard_override(options.state_guard);
  if (static_cast<std::uint64_t>(xs.size()) * vs.size() > guard)
    fail(Errc::SearchGuard, "state space " + std::to_string(xs.size()) + " x " +
                                std::to_string(vs.size()) + " exceeds the guard");

  // Endpoint-fixing needs d(0, l_target) = a_target <= K * a_source.
  if (target.width() > k * source.width()) return std::nullopt;

  const std::size_t n = xs.size(), vn = vs.size();
  // Non-decreasing values make the pairwise straight-line bounds follow from
  // the consecutive ones (telescoping when every step is straight; a single
  // wrap-dominated step bounds every pair across it), so reachability over
  // (support index, value index) decides exhaustively.
  std::vector<std::vector<Rational>> dist(vn);
  for (std::size_t a = 0; a < vn; ++a) {
    dist[a].resize(vn - a);
    for (std::size_t b = a; b < vn; ++b) dist[a][b - a] = target.distance(vs[a], vs[b]);
  }
  auto step_ok = [&](std::size_t a, std::size_t b, const Rational& cap) {
    return dist[a][b - a] <= cap;
  };

  std::vector<std::vector<char>> back(n, std::vector<char>(vn, 0));
  back[n - 1][vn - 1] = 1;  // the last support point must carry l_target
  for (std::size_t i = n - 1; i-- > 0;) {
    Rational cap = k * (xs[i + 1] - xs[i]);
    for (std::size_t a = 0; a < vn; ++a) {
      for (std::size_t b = a; b < vn; ++b) {
        if (back[i + 1][b] && step_ok(a, b, cap)) {
          back[i][a] = 1;
          break;
        }
      }
    }
  }
  if (!back[0][0]) return std::nullopt;

  std::vector<Rational> values;
  values.reserve(n);
  std::size_t at = 0;
  values.push_back(vs[0]);
  for (std::size_t i = 1; i < n; ++i) {
    Rational cap = k * (xs[i] - xs[i - 1]);
    bool advanced = false;
    for (std::size_t b = at; b < vn; ++b) {
      if (back[i][b] && step_ok(at, b, cap)) {
        at = b;
        values.push_back(vs[b]);
        advanced = true;
        break;
      }
    }
    if (!advanced) fail(Errc::SearchGuard, "internal: reconstruction lost the certified path");
  }
  return PLMap(source, target, std::move(xs), std::move(values));
}

}  // namespace skein
