#include "skein/verify.hpp"

#include <algorithm>
#include <sstream>

#include "skein/attachment.hpp"
#include "skein/emit.hpp"
#include "skein/error.hpp"
#include "skein/gammastar.hpp"

namespace skein {

std::size_t VerificationReport::failures() const {
  std::size_t n = 0;
  for (const auto& r : results)
    if (!r.passed) ++n;
  return n;
}

Json VerificationReport::to_json() const {
  Json suites = Json::array();
  for (const auto& r : results)
    suites.push_back(Json{{"name", r.name},
                          {"status", r.passed ? "pass" : "fail"},
                          {"witness", r.witness}});
  return Json{{"seed", seed}, {"suites", suites}, {"failures", failures()}};
}

Thread fixture_line() { return Thread(Rational(1), Rational(1), {}); }
Thread fixture_half() { return Thread(Rational(1), Rational(1, 2), {}); }
Thread fixture_ta() { return build_thread(GammaSequence::half_bound(), 3, Rational(1, 2)); }

namespace {

std::vector<Thread> fixture_pool() {
  return {fixture_line(), fixture_half(), fixture_ta(),
          build_thread(GammaSequence::half_bound(), 4, Rational(1, 3))};
}

std::string pair_str(const Rational& a, const Rational& b) {
  return "(" + a.str() + ", " + b.str() + ")";
}

}  // namespace

PLMap random_endpoint_fixing_map(Prng& rng) {
  static const std::vector<Thread> pool = fixture_pool();
  const Thread& domain = rng.pick(pool);
  const Thread& codomain = rng.pick(pool);
  std::vector<Rational> support = domain.mandatory_points();
  for (const Rational& g : domain.support_points(Rational(1, 16)))
    if (rng.coin()) support.push_back(g);
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());

  std::vector<Rational> value_pool = codomain.support_points(Rational(1, 32));
  std::vector<Rational> values(support.size());
  values.front() = Rational(0);
  values.back() = codomain.length();
  for (std::size_t i = 1; i + 1 < support.size(); ++i) values[i] = rng.pick(value_pool);
  return PLMap(domain, codomain, std::move(support), std::move(values));
}

namespace {

// ---- exactnum ----

std::optional<std::string> exact_field_axioms(std::uint64_t seed) {
  Prng rng(seed);
  for (int i = 0; i < 250; ++i) {
    Rational a = rng.unit_rational(60) - rng.unit_rational(60);
    Rational b = rng.unit_rational(60) - rng.unit_rational(60);
    Rational c = rng.unit_rational(60) - rng.unit_rational(60);
    if ((a + b) + c != a + (b + c)) return "associativity fails at " + a.str();
    if (a * (b + c) != a * b + a * c) return "distributivity fails at " + a.str();
    if (a + b != b + a || a * b != b * a) return "commutativity fails at " + a.str();
    if (!b.is_zero() && (a / b) * b != a) return "division fails at " + a.str();
  }
  return std::nullopt;
}

std::optional<std::string> exact_lowest_terms(std::uint64_t seed) {
  Prng rng(seed);
  for (int i = 0; i < 250; ++i) {
    Rational a = rng.unit_rational(90) * rng.unit_rational(90) + rng.unit_rational(90);
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.raw().get_num().get_mpz_t(), a.raw().get_den().get_mpz_t());
    if (g != 1 && a.raw().get_num() != 0) return "not in lowest terms: " + a.str();
    if (a.raw().get_den() <= 0) return "non-positive denominator: " + a.str();
    if (a.is_zero() && a.str() != "0/1") return "zero not canonical: " + a.str();
  }
  return std::nullopt;
}

std::optional<std::string> exact_total_order(std::uint64_t seed) {
  Prng rng(seed);
  for (int i = 0; i < 250; ++i) {
    Rational a = rng.unit_rational(75) - rng.unit_rational(75);
    Rational b = rng.unit_rational(75) - rng.unit_rational(75);
    mpz_class lhs = a.raw().get_num() * b.raw().get_den();
    mpz_class rhs = b.raw().get_num() * a.raw().get_den();
    bool lt = lhs < rhs;
    if (lt != (a < b)) return "cross-multiplication disagrees at " + pair_str(a, b);
    if ((a < b) && (b < a)) return "order not antisymmetric at " + pair_str(a, b);
  }
  return std::nullopt;
}

// ---- thread ----

std::vector<Rational> metric_grid(const Thread& t) {
  return t.support_points(t.length() / Rational(64));
}

std::optional<std::string> thread_metric_axioms() {
  for (const Thread& t : {fixture_ta(), fixture_line(), fixture_half()}) {
    std::vector<Rational> pts = metric_grid(t);
    const std::size_t n = pts.size();
    std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = t.distance(pts[i], pts[j]);
    for (std::size_t i = 0; i < n; ++i) {
      if (!d[i][i].is_zero()) return "identity fails at " + pts[i].str();
      for (std::size_t j = i + 1; j < n; ++j) {
        if (d[i][j] != d[j][i]) return "symmetry fails at " + pair_str(pts[i], pts[j]);
        if (d[i][j].sign() <= 0) return "positivity fails at " + pair_str(pts[i], pts[j]);
      }
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t m = 0; m < n; ++m)
          if (d[i][j] > d[i][m] + d[m][j])
            return "triangle fails at " + pair_str(pts[i], pts[j]) + " via " + pts[m].str();
  }
  return std::nullopt;
}

std::optional<std::string> thread_local_isometry() {
  for (const Thread& t : {fixture_ta(), fixture_half()}) {
    std::vector<Rational> pts = metric_grid(t);
    for (const auto& x : pts)
      for (const auto& y : pts) {
        Rational d = t.distance(x, y);
        if (d < t.width() && d != abs(x - y))
          return "local isometry fails at " + pair_str(x, y);
      }
  }
  return std::nullopt;
}

std::optional<std::string> thread_endpoint_width() {
  for (const Thread& t : {fixture_ta(), fixture_line(), fixture_half()})
    if (t.distance(Rational(0), t.length()) != t.width())
      return "d(0,l) != width for width " + t.width().str();
  return std::nullopt;
}

std::optional<std::string> thread_segment_isometry() {
  Thread t = fixture_line();  // width == length
  std::vector<Rational> pts = metric_grid(t);
  for (const auto& x : pts)
    for (const auto& y : pts)
      if (t.distance(x, y) != abs(x - y)) return "segment isometry fails at " + pair_str(x, y);
  return std::nullopt;
}

std::optional<std::string> thread_subthread_metric() {
  Thread t = fixture_ta();
  const std::vector<std::pair<Rational, Rational>> windows = {
      {Rational(1, 3), Rational(2, 3)}, {Rational(0), Rational(1)}, {Rational(1, 4), Rational(1)}};
  for (const auto& [x, y] : windows) {
    Thread sub = t.subthread(x, y);
    for (const Rational& u : metric_grid(t)) {
      if (u < x || u > y || !sub.is_point(u - x)) continue;
      for (const Rational& v : metric_grid(t)) {
        if (v < x || v > y || !sub.is_point(v - x)) continue;
        if (sub.distance(u - x, v - x) != t.distance(u, v))
          return "subthread metric differs at " + pair_str(u, v) + " in window " + pair_str(x, y);
      }
    }
  }
  return std::nullopt;
}

std::optional<std::string> thread_gap_ordering() {
  Thread t = fixture_ta();
  auto sorted = t.gaps_by_length();
  if (sorted.size() != t.gaps().size()) return "gap count changed";
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i].length() > sorted[i - 1].length()) return "lengths increase";
    if (sorted[i].length() == sorted[i - 1].length() && sorted[i].left < sorted[i - 1].left)
      return "tie-break not by left endpoint";
  }
  for (const auto& g : t.gaps())
    if (std::find(sorted.begin(), sorted.end(), g) == sorted.end())
      return "not a permutation of the stored gaps";
  return std::nullopt;
}

// ---- cantor ----

std::optional<std::string> cantor_enumeration() {
  const std::vector<Rational> expect = {
      Rational(1, 2), Rational(1, 3), Rational(2, 3), Rational(1, 4), Rational(3, 4),
      Rational(1, 5), Rational(2, 5), Rational(3, 5), Rational(4, 5), Rational(1, 6),
      Rational(5, 6), Rational(1, 7)};
  RationalEnumerator e;
  for (std::size_t i = 0; i < expect.size(); ++i) {
    Rational q = e.next();
    if (q != expect[i])
      return "element " + std::to_string(i + 1) + " is " + q.str() + ", expected " +
             expect[i].str();
  }
  std::set<std::string> seen;
  RationalEnumerator e2;
  for (int i = 0; i < 200; ++i) {
    Rational q = e2.next();
    if (q.sign() <= 0 || q >= Rational(1)) return "enumeration left (0,1) at " + q.str();
    if (!seen.insert(q.str()).second) return "enumeration repeats " + q.str();
  }
  return std::nullopt;
}

std::optional<std::string> cantor_prefix_properties() {
  GapStream stream(GammaSequence::half_bound());
  std::vector<OpenInterval> prev;
  for (std::size_t k = 1; k <= 16; ++k) {
    OpenInterval g = stream.next();
    auto gamma_k = *GammaSequence::half_bound().at(k);
    if (g.length() != gamma_k) return "gap " + std::to_string(k) + " has a wrong length";
    for (const auto& h : prev)
      if (intersects(g, h)) return "gap " + std::to_string(k) + " intersects an earlier gap";
    if (g.left <= Rational(0) || g.right >= Rational(1))
      return "gap " + std::to_string(k) + " covers 0 or 1";
    prev.push_back(g);
    // Prefix monotonicity: a fresh stream reproduces the same first k gaps.
    GapStream replay(GammaSequence::half_bound());
    for (std::size_t i = 0; i < k; ++i)
      if (!(replay.next() == prev[i])) return "stream is not prefix-monotone at " +
                                              std::to_string(k);
    Thread t = build_thread(GammaSequence::half_bound(), k, Rational(1, 2));
    for (const auto& h : t.gaps())
      if (!t.is_point(h.left) || !t.is_point(h.right))
        return "gap endpoint swallowed at depth " + std::to_string(k);
    Rational bound(1);
    for (std::size_t i = 1; i <= k; ++i) bound -= Rational::pow2(-static_cast<int>(i) - 1);
    if (t.measure() < bound || t.measure() <= Rational(1, 2))
      return "measure bound fails at depth " + std::to_string(k);
  }
  return std::nullopt;
}

// ---- lipmap ----

std::optional<std::string> lipmap_regularize(std::uint64_t seed, std::size_t n_maps) {
  Prng rng(seed);
  for (std::size_t i = 0; i < n_maps; ++i) {
    PLMap f = random_endpoint_fixing_map(rng);
    Rational before = lip_const(f);
    PLMap g = monotone_regularize(f);
    if (!g.non_decreasing()) return "map " + std::to_string(i) + ": result not non-decreasing";
    if (!g.endpoint_fixing()) return "map " + std::to_string(i) + ": endpoints moved";
    Rational after = lip_const(g);
    if (after > before)
      return "map " + std::to_string(i) + ": lip rose from " + before.str() + " to " +
             after.str();
    bool running_max = f.max_spacing() * before < f.codomain().width();
    if (running_max) {
      for (std::size_t p = 0; p < f.size(); ++p)
        if (g.values()[p] < f.values()[p])
          return "map " + std::to_string(i) + ": running max dropped below F";
    }
  }
  return std::nullopt;
}

std::optional<std::string> lipmap_jumping_gap(std::uint64_t seed, std::size_t n_maps) {
  Prng rng(seed);
  std::size_t checked = 0;
  for (std::size_t i = 0; i < n_maps; ++i) {
    PLMap g = monotone_regularize(random_endpoint_fixing_map(rng));
    for (const auto& cs : g.codomain().gaps()) {
      OpenInterval ct = find_jumping_gap(g, cs);
      if (!jumps_over(g, ct, cs))
        return "map " + std::to_string(i) + ": found gap does not jump " +
               pair_str(cs.left, cs.right);
      ++checked;
    }
  }
  if (checked == 0) return "suite never exercised a codomain gap";
  return std::nullopt;
}

std::optional<std::string> lipmap_jump_bound(std::uint64_t seed, std::size_t n_maps) {
  Prng rng(seed);
  std::size_t witnesses = 0;
  for (std::size_t i = 0; i < n_maps; ++i) {
    PLMap g = monotone_regularize(random_endpoint_fixing_map(rng));
    if (g.codomain().gaps().empty()) continue;
    for (const auto& record : jump_records(g)) {
      for (long kk : {1L, 2L, 3L}) {
        Rational k(kk);
        if (record.domain_gap.length() * k >= g.codomain().width()) continue;
        auto w = jump_bound_violation(g, record.domain_gap, record.codomain_gaps, k);
        if (w) {
          ++witnesses;
          if (check_interval_criterion(g, k).accepted)
            return "map " + std::to_string(i) + ": witness but criterion accepts K=" + k.str();
          if (w->bound >= w->span) return "witness with a non-violating bound";
        }
      }
    }
  }
  if (witnesses == 0) return "suite never produced a jump-bound witness";
  return std::nullopt;
}

std::optional<std::string> lipmap_clip(std::uint64_t seed, std::size_t n_maps) {
  Prng rng(seed);
  std::size_t clipped = 0;
  for (std::size_t i = 0; i < n_maps; ++i) {
    PLMap f = random_endpoint_fixing_map(rng);
    // Re-point the extremes at an inner window [A,B] of the codomain.
    std::vector<Rational> values = f.values();
    std::vector<Rational> pool = f.codomain().support_points(Rational(1, 8));
    if (pool.size() < 4) continue;
    Rational a = pool[1], b = pool[pool.size() - 2];
    if (a >= b) continue;
    values.front() = a;
    values.back() = b;
    PLMap g = f.with_values(std::move(values));
    if (g.max_spacing() * lip_const(g) >= g.codomain().width()) {
      try {
        clip(g, a, b);
        return "map " + std::to_string(i) + ": PRECONDITION_GAP not raised";
      } catch (const Error& e) {
        if (e.code() != Errc::PreconditionGap) return "wrong clip error";
      }
      continue;
    }
    PLMap c = clip(g, a, b);
    ++clipped;
    if (lip_const(c) > lip_const(g))
      return "map " + std::to_string(i) + ": clip raised the constant";
    for (std::size_t p = 0; p < c.size(); ++p) {
      Rational v = g.values()[p] <= a ? a : g.values()[p] >= b ? b : g.values()[p];
      if (c.values()[p] != v - a) return "map " + std::to_string(i) + ": clamp formula broken";
    }
  }
  if (clipped == 0) return "suite never clipped a map";
  return std::nullopt;
}

std::optional<std::string> lipmap_collapse() {
  Thread dom = fixture_line();
  Thread cod = fixture_line();
  std::vector<Rational> xs = {Rational(0), Rational(1, 4), Rational(1, 2), Rational(3, 4),
                              Rational(1)};
  std::vector<Rational> vs = {Rational(0), Rational(1, 4), Rational(1, 8), Rational(3, 4),
                              Rational(1)};
  PLMap f(dom, cod, xs, vs);
  auto band = [](const Rational& v) { return Rational(1, 8) <= v && v <= Rational(1, 4); };
  ExtendedInterval i = maximal_interval(f, band, Rational(1, 4));
  if (i.kind != ExtendedInterval::Kind::Inner || i.p != Rational(1, 4) || i.q != Rational(1, 2))
    return "maximal interval miscomputed";
  PLMap g = collapse_maximal(f, i, Rational(1, 4));
  if (g.values()[1] != Rational(1, 4) || g.values()[2] != Rational(1, 4))
    return "collapse did not rewrite the interval";
  if (lip_const(g) > lip_const(f)) return "collapse raised the constant";
  auto low = [](const Rational& v) { return v <= Rational(1, 4); };
  ExtendedInterval i2 = maximal_interval(f, low, Rational(0));
  try {
    collapse_maximal(f, i2, Rational(0));
    return "LIP_INCREASED not raised for a wrong anchor";
  } catch (const Error& e) {
    if (e.code() != Errc::LipIncreased) return "wrong collapse error";
  }
  return std::nullopt;
}

std::optional<std::string> lipmap_lip_oracle(std::uint64_t seed) {
  Prng rng(seed);
  for (int i = 0; i < 120; ++i) {
    PLMap f = random_endpoint_fixing_map(rng);
    if (f.size() > 6) continue;
    // Independent recomputation straight from the metric formula.
    Rational best(0);
    const Rational &lt = f.codomain().length(), &at = f.codomain().width();
    const Rational &ls = f.domain().length(), &as = f.domain().width();
    for (std::size_t a = 0; a < f.size(); ++a)
      for (std::size_t b = a + 1; b < f.size(); ++b) {
        const Rational &x = f.support()[a], &y = f.support()[b];
        const Rational &u = f.values()[a], &v = f.values()[b];
        Rational dn = min(abs(u - v), min(u + (lt - v) + at, v + (lt - u) + at));
        Rational dd = min(abs(x - y), min(x + (ls - y) + as, y + (ls - x) + as));
        if (!dn.is_zero()) best = max(best, dn / dd);
      }
    if (best != lip_const(f)) return "oracle disagrees on map " + std::to_string(i);
  }
  return std::nullopt;
}

// ---- gammastar ----

std::vector<FamilyThread> small_family() {
  std::vector<FamilyThread> family;
  family.push_back({GapStream(GammaSequence::half_bound()), Rational(1, 2), "T1"});
  family.push_back({GapStream(GammaSequence::half_bound()), Rational(1, 3), "T2"});
  return family;
}

std::optional<std::string> gammastar_run_properties() {
  GammaStarRun run = gamma_star_prefix(small_family(), Rational(2), Rational(1, 4), 3);
  if (run.produced.size() != 3) return "wrong prefix length";
  for (std::size_t i = 0; i < run.produced.size(); ++i) {
    if (run.produced[i].sign() <= 0) return "non-positive gamma*";
    if (i > 0 && run.produced[i] >= run.produced[i - 1]) return "gamma* not decreasing";
    Rational bound = Rational::pow2(-static_cast<int>(i) - 2) * run.eps / run.k;
    if (run.produced[i] >= bound) return "property (1) bound fails at " + std::to_string(i + 1);
  }
  GammaStarRun rerun = gamma_star_prefix(small_family(), Rational(2), Rational(1, 4), 3);
  if (dump(to_json(run)) != dump(to_json(rerun))) return "runs are not byte-identical";
  return std::nullopt;
}

std::optional<std::string> gammastar_trace_recheck() {
  GammaStarRun run = gamma_star_prefix(small_family(), Rational(2), Rational(1, 4), 3);
  if (auto bad = recheck_trace(run)) return "clean trace rejected: " + *bad;
  GammaStarRun tampered = run;
  tampered.produced[1] = tampered.produced[1] / Rational(3);
  if (!recheck_trace(tampered)) return "tampered produced value escaped the checker";
  GammaStarRun tampered2 = run;
  tampered2.trace[1].orderings[0].steps[0].chosen_n += 1;
  if (!recheck_trace(tampered2)) return "tampered selection escaped the checker";
  return std::nullopt;
}

std::optional<std::string> gammastar_certificate_soundness() {
  Thread target = fixture_ta();
  std::vector<Rational> budgets = {Rational(1, 64), Rational(1, 128)};
  JumpCertificate cert = jump_infeasibility(target, budgets, Rational(2), 2);
  if (cert.feasible) return "tiny budgets unexpectedly feasible";
  Thread source = build_thread(GammaSequence::values(budgets), 2, Rational(1, 2));
  // The grid must keep K * spacing below the biggest analyzed target gap, so
  // the sampled domain is itself a thread within the certified budgets.
  if (brute_force_map_search(source, target, Rational(2), Rational(1, 64)))
    return "brute force found a map against an INFEASIBLE certificate";
  JumpCertificate loose = jump_infeasibility(target, {Rational(1, 8)}, Rational(1), 1);
  if (!loose.feasible) return "boundary assignment not found";
  return std::nullopt;
}

// ---- skein ----

std::optional<std::string> skein_attachment_axioms() {
  FiniteMetricSpace base({"A", "B"}, {{Rational(0), Rational(1, 2)},
                                      {Rational(1, 2), Rational(0)}});
  FiniteMetricSpace path({"p0", "p1", "p2"},
                         {{Rational(0), Rational(1, 4), Rational(1, 2)},
                          {Rational(1, 4), Rational(0), Rational(1, 4)},
                          {Rational(1, 2), Rational(1, 4), Rational(0)}});
  FiniteMetricSpace glued = attach(base, {{path, {"p0"}, {"A"}}});
  if (glued.distance("p2", "B") != Rational(1))
    return "single-anchor distance should be d(p2,p0)+d(A,B)";
  FiniteMetricSpace path2({"q0", "q1", "q2"},
                          {{Rational(0), Rational(1, 4), Rational(1, 2)},
                           {Rational(1, 4), Rational(0), Rational(1, 4)},
                           {Rational(1, 2), Rational(1, 4), Rational(0)}});
  FiniteMetricSpace two = attach(base, {{path, {"p0"}, {"A"}}, {path2, {"q0"}, {"B"}}});
  if (two.distance("p1", "q1") != Rational(1))
    return "cross-piece distance should pass both anchors";
  try {
    FiniteMetricSpace bad({"q0", "q1"}, {{Rational(0), Rational(1, 3)},
                                         {Rational(1, 3), Rational(0)}});
    attach(base, {{bad, {"q0", "q1"}, {"A", "B"}}});
    return "non-isometric glue accepted";
  } catch (const Error& e) {
    if (e.code() != Errc::GlueNotIsometric) return "wrong attach error";
  }
  return std::nullopt;
}

std::optional<std::string> skein_oracle_agreement(const SkeinBuildConfig& config) {
  SkeinTruncation tr = SkeinTruncation::build(config);
  auto table = shortest_path_table(tr);
  SkeinDistance dist(tr);
  const int n = static_cast<int>(tr.points().size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (dist(i, j) != table[i][j])
        return "recursion and shortest paths disagree at (" + tr.address(i) + ", " +
               tr.address(j) + ")";
  return std::nullopt;
}

std::optional<std::string> skein_thread_embedding(const SkeinBuildConfig& config) {
  SkeinTruncation tr = SkeinTruncation::build(config);
  SkeinDistance dist(tr);
  for (const auto& inst : tr.threads()) {
    std::vector<std::pair<int, Rational>> nodes;
    nodes.emplace_back(inst.anchor1, Rational(0));
    for (int p : inst.points) nodes.emplace_back(p, tr.points()[p].coordinate);
    nodes.emplace_back(inst.anchor2, Rational(1));
    for (std::size_t i = 0; i < nodes.size(); ++i)
      for (std::size_t j = i + 1; j < nodes.size(); ++j)
        if (dist(nodes[i].first, nodes[j].first) !=
            inst.thread.distance(nodes[i].second, nodes[j].second))
          return "thread does not embed isometrically at " + tr.address(nodes[i].first);
  }
  return std::nullopt;
}

std::vector<int> in_ball_points(const SkeinTruncation& tr, int beta) {
  SkeinDistance dist(tr);
  std::vector<int> low = tr.generation_upto(beta);
  std::vector<int> out;
  for (int p = 0; p < static_cast<int>(tr.points().size()); ++p) {
    std::optional<Rational> nearest;
    for (int z : low) {
      Rational d = dist(p, z);
      if (!nearest || d < *nearest) nearest = d;
    }
    if (nearest && *nearest < Rational(1, 8)) out.push_back(p);
  }
  return out;
}

std::optional<std::string> skein_ancestor_retraction(const SkeinBuildConfig& config, int beta) {
  SkeinTruncation tr = SkeinTruncation::build(config);
  SkeinDistance dist(tr);
  std::vector<int> ball = in_ball_points(tr, beta);
  for (int p : ball) {
    int a = ancestor(tr, p, beta);
    if (tr.order_of(a) > beta) return "ancestor exceeded the requested order";
    if (tr.order_of(p) <= beta && a != p) return "ancestor moved a fixed point";
  }
  for (std::size_t i = 0; i < ball.size(); ++i)
    for (std::size_t j = i + 1; j < ball.size(); ++j) {
      int pa = ancestor(tr, ball[i], beta);
      int qa = ancestor(tr, ball[j], beta);
      if (dist(pa, qa) > dist(ball[i], ball[j]))
        return "ancestor map expands (" + tr.address(ball[i]) + ", " + tr.address(ball[j]) + ")";
    }
  return std::nullopt;
}

std::optional<std::string> skein_stability(const SkeinBuildConfig& config, int beta) {
  SkeinTruncation tr = SkeinTruncation::build(config);
  std::vector<int> ball = in_ball_points(tr, beta);
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t i = 0; i < ball.size(); ++i)
    for (std::size_t j = i + 1; j < ball.size(); ++j) pairs.emplace_back(ball[i], ball[j]);
  StabilityVerdict v = stability_report(tr, beta, pairs);
  if (!v.accepted)
    return v.reason + " at (" + tr.address(v.witness->first) + ", " +
           tr.address(v.witness->second) + ")";
  return std::nullopt;
}

std::optional<std::string> skein_chain_steps(const SkeinBuildConfig& config, std::uint64_t seed,
                                             std::size_t n_pairs) {
  SkeinTruncation tr = SkeinTruncation::build(config);
  SkeinDistance dist(tr);
  Prng rng(seed);
  const std::size_t n = tr.points().size();
  for (std::size_t i = 0; i < n_pairs; ++i) {
    int p = static_cast<int>(rng.below(n));
    int q = static_cast<int>(rng.below(n));
    std::vector<int> c = chain(tr, p, q);
    if (c.front() != p || c.back() != q) return "chain endpoints wrong";
    for (std::size_t s = 1; s < c.size(); ++s)
      if (dist(c[s - 1], c[s]) > Rational(1, 2))
        return "chain step exceeds 1/2 between " + tr.address(c[s - 1]) + " and " +
               tr.address(c[s]);
  }
  return std::nullopt;
}

std::optional<std::string> skein_registry_cover(const SkeinBuildConfig& config) {
  SkeinTruncation tr = SkeinTruncation::build(config);
  if (auto bad = tr.registry_check()) return *bad;
  return std::nullopt;
}

// ---- cli ----

std::optional<std::string> cli_round_trip(const SkeinBuildConfig& config, std::uint64_t seed) {
  Thread t = fixture_ta();
  if (dump(to_json(thread_from_json(to_json(t)))) != dump(to_json(t)))
    return "thread round-trip drifts";
  Prng rng(seed);
  PLMap f = random_endpoint_fixing_map(rng);
  if (dump(to_json(plmap_from_json(to_json(f)))) != dump(to_json(f)))
    return "map round-trip drifts";
  GammaStarRun run = gamma_star_prefix(small_family(), Rational(2), Rational(1, 4), 2);
  if (dump(to_json(run_from_json(to_json(run)))) != dump(to_json(run)))
    return "run round-trip drifts";
  JumpCertificate cert =
      jump_infeasibility(fixture_ta(), {Rational(1, 64)}, Rational(2), 1);
  if (dump(to_json(certificate_from_json(to_json(cert)))) != dump(to_json(cert)))
    return "certificate round-trip drifts";
  SkeinTruncation tr = SkeinTruncation::build(config);
  if (dump(to_json(truncation_from_json(to_json(tr)))) != dump(to_json(tr)))
    return "truncation round-trip drifts";
  return std::nullopt;
}

}  // namespace

std::vector<Property> verification_suite(const VerifyConfig& config) {
  const std::uint64_t seed = config.seed;
  std::vector<Property> suite;
  suite.push_back({"exactnum.field_axioms", [=] { return exact_field_axioms(seed); }});
  suite.push_back({"exactnum.lowest_terms", [=] { return exact_lowest_terms(seed + 1); }});
  suite.push_back({"exactnum.total_order", [=] { return exact_total_order(seed + 2); }});
  suite.push_back({"thread.metric_axioms", [] { return thread_metric_axioms(); }});
  suite.push_back({"thread.local_isometry", [] { return thread_local_isometry(); }});
  suite.push_back({"thread.endpoint_width", [] { return thread_endpoint_width(); }});
  suite.push_back({"thread.segment_isometry", [] { return thread_segment_isometry(); }});
  suite.push_back({"thread.subthread_metric", [] { return thread_subthread_metric(); }});
  suite.push_back({"thread.gap_ordering", [] { return thread_gap_ordering(); }});
  suite.push_back({"cantor.enumeration", [] { return cantor_enumeration(); }});
  suite.push_back({"cantor.prefix_properties", [] { return cantor_prefix_properties(); }});
  std::size_t maps = config.random_maps;
  suite.push_back({"lipmap.regularize", [=] { return lipmap_regularize(seed + 3, maps); }});
  suite.push_back({"lipmap.jumping_gap", [=] { return lipmap_jumping_gap(seed + 4, maps); }});
  suite.push_back({"lipmap.jump_bound", [=] { return lipmap_jump_bound(seed + 5, maps); }});
  suite.push_back({"lipmap.clip", [=] { return lipmap_clip(seed + 6, maps); }});
  suite.push_back({"lipmap.collapse", [] { return lipmap_collapse(); }});
  suite.push_back({"lipmap.lip_oracle", [=] { return lipmap_lip_oracle(seed + 7); }});
  suite.push_back({"gammastar.run_properties", [] { return gammastar_run_properties(); }});
  suite.push_back({"gammastar.trace_recheck", [] { return gammastar_trace_recheck(); }});
  suite.push_back(
      {"gammastar.certificate_soundness", [] { return gammastar_certificate_soundness(); }});
  suite.push_back({"skein.attachment_axioms", [] { return skein_attachment_axioms(); }});
  SkeinBuildConfig sk = config.skein;
  suite.push_back({"skein.oracle_agreement", [=] { return skein_oracle_agreement(sk); }});
  suite.push_back({"skein.thread_embedding", [=] { return skein_thread_embedding(sk); }});
  suite.push_back({"skein.ancestor_retraction", [=] { return skein_ancestor_retraction(sk, 1); }});
  suite.push_back({"skein.stability", [=] { return skein_stability(sk, 1); }});
  std::size_t pairs = config.chain_pairs;
  suite.push_back({"skein.chain_steps", [=] { return skein_chain_steps(sk, seed + 8, pairs); }});
  suite.push_back({"skein.registry_cover", [=] { return skein_registry_cover(sk); }});
  suite.push_back({"cli.round_trip", [=] { return cli_round_trip(sk, seed + 9); }});
  return suite;
}

VerificationReport run_verification(const VerifyConfig& config) {
  VerificationReport report;
  report.seed = config.seed;
  for (const auto& property : verification_suite(config)) {
    PropertyResult result;
    result.name = property.name;
    try {
      auto witness = property.run();
      result.passed = !witness.has_value();
      if (witness) result.witness = *witness;
    } catch (const std::exception& e) {
      result.passed = false;
      result.witness = std::string("exception: ") + e.what();
    }
    report.results.push_back(std::move(result));
  }
  return report;
}

}  // namespace skein
