#include "skein/skein_space.hpp"

#include <algorithm>

#include "skein/error.hpp"
#include "skein/gammastar.hpp"

namespace skein {

namespace {

/// d_{1,a} on coordinates of a length-1 thread.
Rational d1a(const Rational& x, const Rational& y, const Rational& a) {
  Rational straight = abs(x - y);
  Rational around = min(x + (Rational(1) - y) + a, y + (Rational(1) - x) + a);
  return min(straight, around);
}

}  // namespace

ThreadingSpace::ThreadingSpace(Rational width, std::vector<std::pair<std::string, Thread>> threads)
    : width_(std::move(width)), threads_(std::move(threads)) {
  if (width_.sign() <= 0 || width_ > Rational(1, 2))
    fail(Errc::InvalidArgument, "threading width must satisfy 0 < a <= 1/2");
  std::set<std::string> ids;
  for (const auto& [id, t] : threads_) {
    if (!ids.insert(id).second) fail(Errc::InvalidArgument, "duplicate thread id '" + id + "'");
    if (t.length() != Rational(1)) fail(Errc::InvalidArgument, "threads must have length 1");
    if (t.width() != width_) fail(Errc::InvalidArgument, "thread width differs from the anchors");
  }
}

Rational threading_distance(const ThreadingSpace& ts, ThreadingPoint p, ThreadingPoint q) {
  auto canonical = [&](ThreadingPoint x) {
    if (x.thread >= 0) {
      if (x.thread >= static_cast<int>(ts.threads().size()))
        fail(Errc::InvalidPoint, "no such thread");
      ts.threads()[x.thread].second.require_point(x.coordinate);
      if (x.coordinate == Rational(0) || x.coordinate == Rational(1)) x.thread = -1;
    } else if (x.coordinate != Rational(0) && x.coordinate != Rational(1)) {
      fail(Errc::InvalidPoint, "anchor coordinate must be 0 or 1");
    }
    return x;
  };
  p = canonical(p);
  q = canonical(q);
  const Rational& a = ts.width();
  if (p.thread < 0 && q.thread < 0)
    return p.coordinate == q.coordinate ? Rational(0) : a;
  if (p.thread >= 0 && q.thread >= 0 && p.thread == q.thread)
    return d1a(p.coordinate, q.coordinate, a);
  if (p.thread < 0) std::swap(p, q);
  Rational via_a = d1a(p.coordinate, Rational(0), a);
  Rational via_b = d1a(p.coordinate, Rational(1), a);
  if (q.thread < 0)
    return q.coordinate == Rational(0) ? min(via_a, via_b + a) : min(via_b, via_a + a);
  return min(via_a + d1a(Rational(0), q.coordinate, a), via_b + d1a(Rational(1), q.coordinate, a));
}

int SkeinTruncation::add_base(char label) {
  Point pt;
  pt.base = label;
  pt.order = 0;
  points_.push_back(std::move(pt));
  return static_cast<int>(points_.size()) - 1;
}

int SkeinTruncation::add_inner(int instance, const Rational& coordinate) {
  const ThreadInstance& t = threads_[instance];
  Point pt;
  pt.parent1 = t.anchor1;
  pt.parent2 = t.anchor2;
  pt.thread = instance;
  pt.coordinate = coordinate;
  pt.order = 1 + std::max(points_[t.anchor1].order, points_[t.anchor2].order);
  points_.push_back(std::move(pt));
  return static_cast<int>(points_.size()) - 1;
}

SkeinTruncation SkeinTruncation::build(const SkeinBuildConfig& config) {
  if (config.gammas_per_pair == 0) fail(Errc::InvalidArgument, "need at least one gamma");
  SkeinTruncation tr;
  tr.config_ = config;
  for (std::size_t m = 0; m < config.gammas_per_pair; ++m) {
    // Preset family g<m>: gamma_i = 2^-(i+2+m); materialize the configured
    // prefix so the sequences serialize explicitly.
    GapStream probe(GammaSequence::half_bound(Rational::pow2(-static_cast<int>(m))));
    std::vector<Rational> values;
    for (std::size_t i = 1; i <= config.gaps_per_thread; ++i)
      values.push_back(*probe.gamma().at(i));
    tr.gammas_.emplace_back("g" + std::to_string(m), GammaSequence::values(values));
  }

  tr.add_base('A');
  tr.add_base('B');

  std::uint64_t guard = guard_override(config.point_guard);
  for (std::size_t lambda = 0; lambda < config.depth; ++lambda) {
    SkeinDistance dist(tr);
    std::vector<std::pair<int, int>> eligible;
    const int n = static_cast<int>(tr.points_.size());
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        int omax = std::max(tr.points_[i].order, tr.points_[j].order);
        if (omax != static_cast<int>(lambda)) continue;
        Rational d = dist(i, j);
        if (d.sign() <= 0) fail(Errc::InvalidArgument, "coincident registry points");
        if (d <= Rational(1, 2)) eligible.emplace_back(i, j);
      }
    }
    if (config.pair_budget && eligible.size() > *config.pair_budget)
      eligible.resize(*config.pair_budget);

    for (auto [i, j] : eligible) {
      Rational width = dist(i, j);
      for (const auto& [gid, gamma] : tr.gammas_) {
        Thread thread = build_thread(gamma, config.gaps_per_thread, width);
        std::vector<Rational> coords = thread.support_points(config.grid);
        int instance = static_cast<int>(tr.threads_.size());
        tr.threads_.push_back(ThreadInstance{i, j, gid, std::move(thread), {}});
        for (const Rational& c : coords) {
          if (c == Rational(0) || c == Rational(1)) continue;
          tr.threads_[instance].points.push_back(tr.add_inner(instance, c));
          if (tr.points_.size() > guard)
            fail(Errc::SearchGuard, "materialized points exceed the guard of " +
                                        std::to_string(guard));
        }
      }
    }
  }
  if (auto bad = tr.registry_check()) fail(Errc::InvalidArgument, *bad);
  return tr;
}

int SkeinTruncation::order_of(int p) const {
  if (p < 0 || p >= static_cast<int>(points_.size()))
    fail(Errc::NotMaterialized, "no point " + std::to_string(p));
  return points_[p].order;
}

std::string SkeinTruncation::address(int p) const {
  const Point& pt = points_.at(p);
  if (pt.base) return std::string(1, pt.base);
  const ThreadInstance& t = threads_[pt.thread];
  return "(" + address(t.anchor1) + "," + address(t.anchor2) + ")#" + t.gamma_id + "@" +
         pt.coordinate.str();
}

namespace {

struct AddressParser {
  const std::string& text;
  std::size_t at = 0;

  char peek() const { return at < text.size() ? text[at] : '\0'; }
  void expect(char c) {
    if (peek() != c)
      fail(Errc::ParseError, "address '" + text + "': expected '" + std::string(1, c) +
                                 "' at offset " + std::to_string(at));
    ++at;
  }

  struct Node {
    char base = 0;
    std::string gamma;
    std::string coordinate;
    std::vector<Node> parents;
  };

  Node parse() {
    Node n;
    if (peek() == 'A' || peek() == 'B') {
      n.base = text[at++];
      return n;
    }
    expect('(');
    n.parents.push_back(parse());
    expect(',');
    n.parents.push_back(parse());
    expect(')');
    expect('#');
    while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')
      n.gamma.push_back(text[at++]);
    expect('@');
    while (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '/' || peek() == '-')
      n.coordinate.push_back(text[at++]);
    if (n.gamma.empty() || n.coordinate.empty())
      fail(Errc::ParseError, "address '" + text + "': missing gamma id or coordinate");
    return n;
  }
};

}  // namespace

int SkeinTruncation::resolve(const std::string& addr) const {
  AddressParser parser{addr};
  AddressParser::Node node = parser.parse();
  if (parser.at != addr.size()) fail(Errc::ParseError, "trailing garbage in address '" + addr + "'");
  // Match by re-serialized address; registry order is topological, so a
  // linear scan with string equality is exact.
  for (std::size_t i = 0; i < points_.size(); ++i)
    if (address(static_cast<int>(i)) == addr) return static_cast<int>(i);
  fail(Errc::NotMaterialized, "address '" + addr + "' is not materialized");
}

std::vector<int> SkeinTruncation::generation_upto(int beta) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < points_.size(); ++i)
    if (points_[i].order <= beta) out.push_back(static_cast<int>(i));
  return out;
}

std::optional<std::string> SkeinTruncation::registry_check() const {
  std::size_t base = 0;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const Point& pt = points_[i];
    if (pt.base) {
      ++base;
      if (pt.parent1 != -1 || pt.thread != -1)
        return "base point " + std::to_string(i) + " carries parents";
      continue;
    }
    if (pt.thread < 0 || pt.thread >= static_cast<int>(threads_.size()))
      return "inner point " + std::to_string(i) + " lacks a thread";
    const ThreadInstance& t = threads_[pt.thread];
    if (pt.parent1 != t.anchor1 || pt.parent2 != t.anchor2)
      return "inner point " + std::to_string(i) + " disagrees with its thread anchors";
    if (!(Rational(0) < pt.coordinate && pt.coordinate < Rational(1)))
      return "inner point " + std::to_string(i) + " has a non-interior coordinate";
    if (!t.thread.is_point(pt.coordinate))
      return "inner point " + std::to_string(i) + " sits inside a gap";
    if (pt.order != 1 + std::max(points_[t.anchor1].order, points_[t.anchor2].order))
      return "inner point " + std::to_string(i) + " has a wrong order";
    // Interior of exactly one materialized thread: its own.
    std::size_t owners = 0;
    for (const auto& inst : threads_)
      for (int q : inst.points)
        if (q == static_cast<int>(i)) ++owners;
    if (owners != 1) return "inner point " + std::to_string(i) + " owned by " +
                            std::to_string(owners) + " threads";
  }
  if (base != 2) return "expected exactly the two base points";
  return std::nullopt;
}

SkeinTruncation SkeinTruncation::from_parts(
    SkeinBuildConfig config, std::vector<std::pair<std::string, GammaSequence>> gammas,
    const std::vector<std::string>& addresses,
    const std::vector<std::tuple<std::string, std::string, std::string, Rational>>& threads) {
  SkeinTruncation tr;
  tr.config_ = std::move(config);
  tr.gammas_ = std::move(gammas);

  std::map<std::string, int> by_address;
  auto gamma_of = [&](const std::string& id) -> const GammaSequence& {
    for (const auto& [gid, g] : tr.gammas_)
      if (gid == id) return g;
    fail(Errc::ParseError, "unknown gamma id '" + id + "'");
  };

  std::map<std::string, int> instance_of;  // "a|b|gamma" -> thread index

  // Points arrive in registry order; create thread instances on first use.
  for (const std::string& addr : addresses) {
    AddressParser parser{addr};
    auto node = parser.parse();
    if (parser.at != addr.size())
      fail(Errc::ParseError, "trailing garbage in address '" + addr + "'");
    if (node.base) {
      by_address[addr] = tr.add_base(node.base);
      continue;
    }
    // Reconstruct the parent addresses textually.
    std::size_t split = 0;
    int depth = 0;
    for (std::size_t i = 1; i + 1 < addr.size(); ++i) {
      if (addr[i] == '(') ++depth;
      if (addr[i] == ')') --depth;
      if (addr[i] == ',' && depth == 0) {
        split = i;
        break;
      }
    }
    std::size_t hash = addr.rfind('#');
    std::size_t atp = addr.rfind('@');
    std::string a1 = addr.substr(1, split - 1);
    std::string a2 = addr.substr(split + 1, hash - split - 2);
    std::string gid = addr.substr(hash + 1, atp - hash - 1);
    Rational coord = Rational::parse(addr.substr(atp + 1));

    auto pa = by_address.find(a1);
    auto pb = by_address.find(a2);
    if (pa == by_address.end() || pb == by_address.end())
      fail(Errc::ParseError, "address '" + addr + "' references unseen parents");
    std::string key = a1 + "|" + a2 + "|" + gid;
    auto it = instance_of.find(key);
    if (it == instance_of.end()) {
      auto match = std::find_if(threads.begin(), threads.end(), [&](const auto& t) {
        return std::get<0>(t) == a1 && std::get<1>(t) == a2 && std::get<2>(t) == gid;
      });
      if (match == threads.end())
        fail(Errc::ParseError, "no thread record for '" + key + "'");
      Thread built = build_thread(gamma_of(gid), tr.config_.gaps_per_thread, std::get<3>(*match));
      it = instance_of.emplace(key, static_cast<int>(tr.threads_.size())).first;
      tr.threads_.push_back(ThreadInstance{pa->second, pb->second, gid, std::move(built), {}});
    }
    int idx = tr.add_inner(it->second, coord);
    tr.threads_[it->second].points.push_back(idx);
    by_address[addr] = idx;
  }

  // Stored widths must agree with the reconstructed metric.
  SkeinDistance dist(tr);
  for (const auto& inst : tr.threads_) {
    if (dist(inst.anchor1, inst.anchor2) != inst.thread.width())
      fail(Errc::ParseError, "stored thread width disagrees with the metric");
  }
  if (auto bad = tr.registry_check()) fail(Errc::ParseError, *bad);
  return tr;
}

Rational SkeinDistance::operator()(int p, int q) {
  const auto& pts = tr_.points_;
  if (p < 0 || q < 0 || p >= static_cast<int>(pts.size()) || q >= static_cast<int>(pts.size()))
    fail(Errc::NotMaterialized, "distance query outside the registry");
  if (p == q) return Rational(0);
  std::pair<int, int> key{std::min(p, q), std::max(p, q)};
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;

  const SkeinTruncation::Point& a = pts[p];
  const SkeinTruncation::Point& b = pts[q];
  Rational result;
  if (a.base && b.base) {
    result = Rational(1, 2);
  } else if (a.thread >= 0 && a.thread == b.thread) {
    result = d1a(a.coordinate, b.coordinate, tr_.threads_[a.thread].thread.width());
  } else {
    // Descend the endpoint of higher order; everything outside its thread is
    // reached through the thread's anchors.
    int x = p, y = q;
    if (pts[y].order > pts[x].order || (pts[x].base && !pts[y].base)) std::swap(x, y);
    const SkeinTruncation::Point& px = pts[x];
    const SkeinTruncation::ThreadInstance& t = tr_.threads_[px.thread];
    const Rational& w = t.thread.width();
    Rational via1 = d1a(px.coordinate, Rational(0), w) + (*this)(t.anchor1, y);
    Rational via2 = d1a(px.coordinate, Rational(1), w) + (*this)(t.anchor2, y);
    result = min(via1, via2);
  }
  memo_.emplace(key, result);
  return result;
}

std::vector<std::vector<Rational>> shortest_path_table(const SkeinTruncation& tr) {
  const std::size_t n = tr.points().size();
  // Direct edges: the base pair plus each thread's complete subgraph.
  std::vector<std::vector<std::optional<Rational>>> d(n, std::vector<std::optional<Rational>>(n));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = Rational(0);
  auto relax_edge = [&](std::size_t i, std::size_t j, const Rational& w) {
    if (!d[i][j] || w < *d[i][j]) {
      d[i][j] = w;
      d[j][i] = w;
    }
  };
  relax_edge(0, 1, Rational(1, 2));
  for (const auto& inst : tr.threads()) {
    std::vector<std::pair<int, Rational>> nodes;
    nodes.emplace_back(inst.anchor1, Rational(0));
    for (int p : inst.points) nodes.emplace_back(p, tr.points()[p].coordinate);
    nodes.emplace_back(inst.anchor2, Rational(1));
    for (std::size_t i = 0; i < nodes.size(); ++i)
      for (std::size_t j = i + 1; j < nodes.size(); ++j)
        relax_edge(nodes[i].first, nodes[j].first,
                   d1a(nodes[i].second, nodes[j].second, inst.thread.width()));
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      if (!d[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (!d[k][j]) continue;
        Rational via = *d[i][k] + *d[k][j];
        if (!d[i][j] || via < *d[i][j]) d[i][j] = via;
      }
    }
  std::vector<std::vector<Rational>> out(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!d[i][j]) fail(Errc::InvalidArgument, "disconnected registry");
      out[i][j] = *d[i][j];
    }
  return out;
}

namespace {

// True when z or any of its transitive parents sits in the interior of the
// given thread instance.
bool ancestry_meets_thread(const SkeinTruncation& tr, int z, int instance) {
  while (z >= 0) {
    const auto& pt = tr.points()[z];
    if (pt.thread == instance) return true;
    if (pt.base) return false;
    if (ancestry_meets_thread(tr, pt.parent1, instance)) return true;
    z = pt.parent2;
  }
  return false;
}

}  // namespace

bool is_bound(const SkeinTruncation& tr, int p, int anchor) {
  const auto& pt = tr.points().at(p);
  if (pt.base) fail(Errc::InvalidArgument, "base points are not inside a thread");
  if (anchor != pt.parent1 && anchor != pt.parent2)
    fail(Errc::InvalidArgument, "anchor is not a parent of the point");
  const auto& inst = tr.threads()[pt.thread];
  const Rational& a = inst.thread.width();
  Rational to_anchor1 = d1a(pt.coordinate, Rational(0), a);
  Rational to_anchor2 = d1a(pt.coordinate, Rational(1), a);
  Rational to_s = anchor == pt.parent1 ? to_anchor1 : to_anchor2;
  Rational to_other = anchor == pt.parent1 ? to_anchor2 : to_anchor1;
  bool closed_form = to_s < to_other && to_s * Rational(2) <= Rational(1) - a;

  // Extensional check over every materialized point outside the thread whose
  // ancestry avoids the thread's interior (descendants of the interior reach
  // p without passing an anchor, so the routing identity cannot apply).
  SkeinDistance dist(tr);
  bool extensional = true;
  for (std::size_t z = 0; z < tr.points().size(); ++z) {
    int zi = static_cast<int>(z);
    if (zi == p || zi == inst.anchor1 || zi == inst.anchor2) continue;
    if (tr.points()[z].thread == pt.thread) continue;
    if (!tr.points()[z].base && ancestry_meets_thread(tr, zi, pt.thread)) continue;
    if (dist(p, zi) != to_s + dist(anchor, zi)) {
      extensional = false;
      break;
    }
  }
  if (closed_form != extensional)
    fail(Errc::CriterionMismatch, "closed-form and extensional boundness disagree at point " +
                                      std::to_string(p));
  return closed_form;
}

namespace {

int nearer_parent(const SkeinTruncation& tr, int p, bool tie_is_error) {
  const auto& pt = tr.points().at(p);
  const auto& inst = tr.threads()[pt.thread];
  const Rational& a = inst.thread.width();
  Rational d1 = d1a(pt.coordinate, Rational(0), a);
  Rational d2 = d1a(pt.coordinate, Rational(1), a);
  if (d1 == d2 && tie_is_error)
    fail(Errc::Ambiguous, "point " + std::to_string(p) + " is equidistant from its parents");
  return d1 <= d2 ? pt.parent1 : pt.parent2;
}

}  // namespace

int ancestor(const SkeinTruncation& tr, int p, int beta) {
  if (tr.order_of(p) <= beta) return p;
  SkeinDistance dist(tr);
  std::optional<Rational> nearest;
  int witness = -1;
  bool tie = false;
  for (int z : tr.generation_upto(beta)) {
    Rational d = dist(p, z);
    if (!nearest || d < *nearest) {
      nearest = d;
      witness = z;
      tie = false;
    } else if (d == *nearest) {
      tie = true;
    }
  }
  if (!nearest || *nearest >= Rational(1, 8))
    fail(Errc::OutsideStabilityBall, "point " + std::to_string(p) +
                                         " is not within 1/8 of the order-" +
                                         std::to_string(beta) + " skein");
  if (tie) fail(Errc::Ambiguous, "two candidates tie inside the stability ball");
  int cur = p;
  while (tr.order_of(cur) > beta) cur = nearer_parent(tr, cur, true);
  if (cur != witness)
    fail(Errc::Ambiguous, "parent descent disagrees with the nearest point of the skein");
  return cur;
}

int pseudo_ancestor(const SkeinTruncation& tr, int p) {
  const auto& pt = tr.points().at(p);
  if (pt.base) fail(Errc::InvalidArgument, "base points have no pseudo-ancestor");
  int near = nearer_parent(tr, p, true);
  return near == pt.parent1 ? pt.parent2 : pt.parent1;
}

StabilityVerdict stability_report(const SkeinTruncation& tr, int beta,
                                  const std::vector<std::pair<int, int>>& sample) {
  StabilityVerdict verdict;
  SkeinDistance dist(tr);
  for (const auto& [p, q] : sample) {
    int pa = ancestor(tr, p, beta);
    int qa = ancestor(tr, q, beta);
    ++verdict.pairs_checked;
    Rational dpq = dist(p, q);
    if (dist(pa, qa) > dpq) {
      verdict.accepted = false;
      verdict.witness = {p, q};
      verdict.reason = "ancestor map expands the pair";
      return verdict;
    }
    if (pa != qa) {
      Rational lhs = dist(p, pa) + dist(pa, qa) + dist(qa, q);
      if (lhs != dpq) {
        verdict.accepted = false;
        verdict.witness = {p, q};
        verdict.reason = "three-term decomposition fails: " + dpq.str() + " vs " + lhs.str();
        return verdict;
      }
    }
  }
  return verdict;
}

std::vector<int> chain(const SkeinTruncation& tr, int p, int q) {
  tr.order_of(p);
  tr.order_of(q);
  if (p == q) return {p};
  const auto& pts = tr.points();
  if (pts[p].base && pts[q].base) return {p, q};
  int p2 = pts[p].base ? p : nearer_parent(tr, p, false);
  int q2 = pts[q].base ? q : nearer_parent(tr, q, false);
  std::vector<int> inner = chain(tr, p2, q2);
  std::vector<int> out;
  if (p2 != p) out.push_back(p);
  out.insert(out.end(), inner.begin(), inner.end());
  if (q2 != q) out.push_back(q);
  return out;
}

std::vector<int> ancestor_closure(const SkeinTruncation& tr, const std::vector<int>& sample) {
  std::set<int> closed(sample.begin(), sample.end());
  std::vector<int> work(closed.begin(), closed.end());
  SkeinDistance dist(tr);
  while (!work.empty()) {
    int x = work.back();
    work.pop_back();
    for (int beta = 0; beta < tr.order_of(x); ++beta) {
      std::optional<Rational> nearest;
      for (int z : tr.generation_upto(beta)) {
        Rational d = dist(x, z);
        if (!nearest || d < *nearest) nearest = d;
      }
      if (nearest && *nearest < Rational(1, 8)) {
        int a = ancestor(tr, x, beta);
        if (closed.insert(a).second) work.push_back(a);
      }
    }
  }
  return {closed.begin(), closed.end()};
}

ObstructionRecipe isolated_point_obstruction(const SkeinTruncation& tr,
                                             const std::vector<int>& s, int p,
                                             const Rational& k) {
  if (k.sign() <= 0) fail(Errc::InvalidArgument, "K must be positive");
  if (s.size() < 2) fail(Errc::NotIsolated, "S needs at least two points");
  if (std::find(s.begin(), s.end(), p) == s.end())
    fail(Errc::InvalidArgument, "p must belong to S");
  SkeinDistance dist(tr);
  std::optional<Rational> eps;
  int partner = -1;
  for (int z : s) {
    if (z == p) continue;
    Rational d = dist(p, z);
    if (d.is_zero()) fail(Errc::NotIsolated, "p duplicates another member of S");
    if (!eps || d < *eps) {
      eps = d;
      partner = z;
    }
  }
  ObstructionRecipe recipe;
  recipe.isolated = p;
  recipe.partner = partner;
  recipe.epsilon = *eps;
  recipe.gap_budget = *eps / k;
  recipe.chain = chain(tr, p, partner);
  return recipe;
}

}  // namespace skein
