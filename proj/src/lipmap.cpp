#include "skein/lipmap.hpp"

#include <algorithm>

#include "skein/error.hpp"

namespace skein {

PLMap::PLMap(Thread domain, Thread codomain, std::vector<Rational> support,
             std::vector<Rational> values)
    : domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      support_(std::move(support)),
      values_(std::move(values)) {
  if (support_.size() != values_.size())
    fail(Errc::InvalidArgument, "support and value counts differ");
  if (support_.size() < 2) fail(Errc::InvalidArgument, "support needs at least 2 points");
  for (std::size_t i = 0; i < support_.size(); ++i) {
    domain_.require_point(support_[i]);
    codomain_.require_point(values_[i]);
    if (i > 0 && support_[i - 1] >= support_[i])
      fail(Errc::InvalidArgument, "support must be strictly increasing");
  }
  if (support_.front() != Rational(0) || support_.back() != domain_.length())
    fail(Errc::InvalidArgument, "support must contain 0 and the domain length");
  for (const auto& g : domain_.gaps()) {
    if (!support_index(g.left) || !support_index(g.right))
      fail(Errc::InvalidArgument, "support must contain every domain gap endpoint");
  }
}

std::optional<std::size_t> PLMap::support_index(const Rational& x) const {
  auto it = std::lower_bound(support_.begin(), support_.end(), x);
  if (it == support_.end() || *it != x) return std::nullopt;
  return static_cast<std::size_t>(it - support_.begin());
}

const Rational& PLMap::value_at(const Rational& x) const {
  auto i = support_index(x);
  if (!i) fail(Errc::InvalidPoint, x.str() + " is not a support point");
  return values_[*i];
}

bool PLMap::non_decreasing() const {
  for (std::size_t i = 1; i < values_.size(); ++i)
    if (values_[i] < values_[i - 1]) return false;
  return true;
}

bool PLMap::endpoint_fixing() const {
  return values_.front() == Rational(0) && values_.back() == codomain_.length();
}

Rational PLMap::max_spacing() const {
  Rational m(0);
  for (std::size_t i = 1; i < support_.size(); ++i) m = max(m, support_[i] - support_[i - 1]);
  return m;
}

PLMap PLMap::with_values(std::vector<Rational> values) const {
  return PLMap(domain_, codomain_, support_, std::move(values));
}

Rational lip_const(const PLMap& f) {
  const auto& xs = f.support();
  const auto& vs = f.values();
  Rational best(0);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      Rational num = f.codomain().distance(vs[i], vs[j]);
      if (num.is_zero()) continue;
      Rational ratio = num / f.domain().distance(xs[i], xs[j]);
      best = max(best, ratio);
    }
  }
  return best;
}

CriterionVerdict check_interval_criterion(const PLMap& f, const Rational& k) {
  const auto& xs = f.support();
  const auto& vs = f.values();
  if (f.codomain().distance(vs.front(), vs.back()) > k * f.domain().width())
    return {false, std::make_pair(xs.front(), xs.back())};
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j)
      if (f.codomain().distance(vs[i], vs[j]) > k * (xs[j] - xs[i]))
        return {false, std::make_pair(xs[i], xs[j])};
  return {true, std::nullopt};
}

PLMap monotone_regularize(const PLMap& f) {
  if (!f.endpoint_fixing())
    fail(Errc::NotEndpointFixing, "monotone_regularize needs F(0)=0 and F(l)=l_codomain");
  const auto& xs = f.support();
  const auto& vs = f.values();
  Rational k = lip_const(f);

  // Two-step branch: a spacing of length >= a_codomain/K lets the map drop to
  // the constant 0 before it and the constant l_codomain after it.
  std::optional<std::size_t> wide;  // index of the left end of the widest qualifying spacing
  Rational widest(0);
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    Rational spacing = xs[i + 1] - xs[i];
    if (spacing * k >= f.codomain().width() && spacing > widest) {
      widest = spacing;
      wide = i;
    }
  }
  if (wide) {
    std::vector<Rational> out(vs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
      out[i] = i <= *wide ? Rational(0) : f.codomain().length();
    return f.with_values(std::move(out));
  }

  std::vector<Rational> out = vs;
  for (std::size_t i = 1; i < out.size(); ++i) out[i] = max(out[i], out[i - 1]);
  return f.with_values(std::move(out));
}

PLMap clip(const PLMap& f, const Rational& a, const Rational& b) {
  f.codomain().require_point(a);
  f.codomain().require_point(b);
  if (a >= b) fail(Errc::InvalidArgument, "clip needs A < B");
  const auto& vs = f.values();
  if (vs.front() != a || vs.back() != b)
    fail(Errc::InvalidArgument, "clip needs F(0)=A and F(l)=B");
  Rational k = lip_const(f);
  if (f.max_spacing() * k >= f.codomain().width())
    fail(Errc::PreconditionGap, "a support spacing reaches a_codomain/K");
  Thread target = f.codomain().subthread(a, b);
  std::vector<Rational> out(vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i) {
    Rational v = vs[i] <= a ? a : vs[i] >= b ? b : vs[i];
    out[i] = v - a;
  }
  return PLMap(f.domain(), std::move(target), f.support(), std::move(out));
}

namespace {

// A gap of the finite thread: two consecutive support points.
void require_support_gap(const PLMap& f, const OpenInterval& ct) {
  auto li = f.support_index(ct.left);
  auto ri = f.support_index(ct.right);
  if (!li || !ri || *ri != *li + 1)
    fail(Errc::InvalidArgument, "(" + ct.left.str() + "," + ct.right.str() +
                                    ") does not join consecutive support points");
}

void require_codomain_gap(const PLMap& f, const OpenInterval& cs) {
  for (const auto& g : f.codomain().gaps())
    if (g == cs) return;
  fail(Errc::InvalidArgument, "(" + cs.left.str() + "," + cs.right.str() +
                                  ") is not a codomain gap");
}

}  // namespace

bool jumps_over(const PLMap& f, const OpenInterval& ct, const OpenInterval& cs) {
  if (!f.non_decreasing()) fail(Errc::NotMonotone, "jumps_over needs a non-decreasing map");
  require_support_gap(f, ct);
  require_codomain_gap(f, cs);
  return f.value_at(ct.left) <= cs.left && f.value_at(ct.right) >= cs.right;
}

OpenInterval find_jumping_gap(const PLMap& f, const OpenInterval& cs) {
  if (!f.non_decreasing()) fail(Errc::NotMonotone, "find_jumping_gap needs a non-decreasing map");
  if (!f.endpoint_fixing())
    fail(Errc::NotEndpointFixing, "find_jumping_gap needs an endpoint-fixing map");
  require_codomain_gap(f, cs);
  const auto& xs = f.support();
  const auto& vs = f.values();
  // e- = max attained value <= left(cs), e+ = min attained value >= right(cs);
  // x- = last preimage of e-, y+ = first preimage of e+. Monotone values make
  // these single scans.
  std::size_t x_minus = 0, y_plus = xs.size() - 1;
  for (std::size_t i = 0; i < vs.size(); ++i)
    if (vs[i] <= cs.left) x_minus = i;
  for (std::size_t i = vs.size(); i-- > 0;)
    if (vs[i] >= cs.right) y_plus = i;
  if (y_plus != x_minus + 1)
    fail(Errc::InvalidArgument, "values inside the codomain gap (" + cs.left.str() + "," +
                                    cs.right.str() + ")");
  return {xs[x_minus], xs[y_plus]};
}

std::vector<JumpRecord> jump_records(const PLMap& f) {
  std::vector<JumpRecord> out;
  for (const auto& cs : f.codomain().gaps()) {
    OpenInterval ct = find_jumping_gap(f, cs);
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const JumpRecord& r) { return r.domain_gap == ct; });
    if (it == out.end())
      out.push_back({ct, {cs}});
    else
      it->codomain_gaps.push_back(cs);
  }
  return out;
}

Rational jump_span(const std::vector<OpenInterval>& gaps) {
  if (gaps.empty()) fail(Errc::InvalidArgument, "span of an empty gap set");
  if (gaps.size() == 1) return gaps.front().length();
  Rational best(0);
  for (std::size_t j = 0; j < gaps.size(); ++j)
    for (std::size_t j2 = 0; j2 < gaps.size(); ++j2)
      if (j != j2) best = max(best, abs(gaps[j].right - gaps[j2].left));
  return best;
}

std::optional<JumpBoundWitness> jump_bound_violation(const PLMap& f, const OpenInterval& ct,
                                                     const std::vector<OpenInterval>& jumped,
                                                     const Rational& k) {
  if (!f.non_decreasing()) fail(Errc::PreconditionFailed, "map is not non-decreasing");
  if (!f.endpoint_fixing()) fail(Errc::PreconditionFailed, "map is not endpoint-fixing");
  if (k.sign() <= 0) fail(Errc::PreconditionFailed, "K must be positive");
  if (ct.length() * k >= f.codomain().width())
    fail(Errc::PreconditionFailed, "length(ct) must be below a_codomain/K");
  if (jumped.empty()) fail(Errc::PreconditionFailed, "no jumped gaps supplied");
  for (const auto& cs : jumped)
    if (!jumps_over(f, ct, cs))
      fail(Errc::PreconditionFailed, "(" + cs.left.str() + "," + cs.right.str() +
                                         ") is not jumped by the supplied gap");
  Rational span = jump_span(jumped);
  Rational bound = k * ct.length();
  if (bound >= span) return std::nullopt;
  JumpBoundWitness w;
  w.source_gap = ct;
  w.span = span;
  w.bound = bound;
  w.span_from = jumped.front();
  w.span_to = jumped.front();
  if (jumped.size() > 1) {
    for (std::size_t j = 0; j < jumped.size(); ++j)
      for (std::size_t j2 = 0; j2 < jumped.size(); ++j2)
        if (j != j2 && abs(jumped[j].right - jumped[j2].left) == span) {
          w.span_from = jumped[j];
          w.span_to = jumped[j2];
          return w;
        }
  }
  return w;
}

std::optional<SeparationWitness> separation_violation(const PLMap& f, const Rational& split_point,
                                                      const Rational& eps, const Rational& k) {
  if (eps.sign() <= 0 || k.sign() <= 0)
    fail(Errc::PreconditionFailed, "eps and K must be positive");
  Rational limit = eps / k;
  if (f.max_spacing() >= limit)
    fail(Errc::PreconditionFailed, "a support spacing reaches eps/K");
  // The split must sit against a codomain gap, else the two sides touch.
  const Thread& s = f.codomain();
  std::optional<OpenInterval> cut;
  for (const auto& g : s.gaps())
    if (g.left < split_point && split_point <= g.right) cut = g;
  if (!cut) fail(Errc::PreconditionFailed, "split point is not shielded by a codomain gap");
  if (eps > min(cut->length(), s.width()))
    fail(Errc::PreconditionFailed, "eps exceeds the separation of the two sides");
  const auto& vs = f.values();
  if (vs.front() >= split_point) fail(Errc::PreconditionFailed, "F(0) must lie in S1");
  for (std::size_t i = 1; i < vs.size(); ++i) {
    if (vs[i] >= split_point) {
      SeparationWitness w;
      w.x = f.support()[i - 1];
      w.p = f.support()[i];
      w.domain_dist = f.domain().distance(w.x, w.p);
      w.value_dist = s.distance(vs[i - 1], vs[i]);
      return w;
    }
  }
  return std::nullopt;
}

ExtendedInterval maximal_interval(const PLMap& f,
                                  const std::function<bool(const Rational&)>& in_n,
                                  const Rational& t) {
  auto ti = f.support_index(t);
  if (!ti) fail(Errc::InvalidPoint, t.str() + " is not a support point");
  const auto& xs = f.support();
  const auto& vs = f.values();
  if (!in_n(vs[*ti])) fail(Errc::NotInN, "F(" + t.str() + ") is not in N");

  std::size_t lo = *ti, hi = *ti;
  while (lo > 0 && in_n(vs[lo - 1])) --lo;
  while (hi + 1 < xs.size() && in_n(vs[hi + 1])) ++hi;

  if (lo == 0 && hi == xs.size() - 1)
    return {ExtendedInterval::Kind::Inner, xs.front(), xs.back()};
  if (lo == 0 && in_n(vs.back())) {
    std::size_t top = xs.size() - 1;
    while (in_n(vs[top - 1])) --top;  // stops above hi since the block is not everything
    return {ExtendedInterval::Kind::Outer, xs[hi], xs[top]};
  }
  if (hi == xs.size() - 1 && in_n(vs.front())) {
    std::size_t bottom = 0;
    while (in_n(vs[bottom + 1])) ++bottom;
    return {ExtendedInterval::Kind::Outer, xs[bottom], xs[lo]};
  }
  return {ExtendedInterval::Kind::Inner, xs[lo], xs[hi]};
}

PLMap collapse_maximal(const PLMap& f, const ExtendedInterval& i, const Rational& s) {
  f.codomain().require_point(s);
  Rational before = lip_const(f);
  std::vector<Rational> out = f.values();
  for (std::size_t j = 0; j < out.size(); ++j)
    if (i.contains(f.support()[j])) out[j] = s;
  PLMap collapsed = f.with_values(std::move(out));
  Rational after = lip_const(collapsed);
  if (after > before)
    fail(Errc::LipIncreased, "collapse raised the Lipschitz constant from " + before.str() +
                                 " to " + after.str());
  return collapsed;
}

ExtremeReplacement replace_extremes(const PLMap& f, const std::vector<Rational>& d1,
                                    const std::vector<Rational>& d2, const Rational& eps) {
  if (eps.sign() <= 0) fail(Errc::InvalidArgument, "eps must be positive");
  const Thread& t = f.domain();
  if (t.gaps().empty())
    fail(Errc::NotSeparableAtTruncation, "domain truncation has no gaps to cut at");
  const OpenInterval& left_gap = t.gaps().front();
  const OpenInterval& right_gap = t.gaps().back();
  Rational p = left_gap.left;
  Rational q = right_gap.right;
  // Exact separation of [0,P]_T (resp. [Q,l]_T) from the rest: the cut gap
  // against the wrap through the width.
  Rational delta_p = min(left_gap.length(), t.width());
  Rational delta_q = min(right_gap.length(), t.width());

  const Rational& fp = f.value_at(p);
  const Rational& fq = f.value_at(q);
  auto pick = [&](const std::vector<Rational>& cands, const Rational& near,
                  const Rational& tol) -> Rational {
    for (const auto& c : cands) {
      f.codomain().require_point(c);
      if (f.codomain().distance(near, c) * Rational(2) <= eps * tol) return c;
    }
    fail(Errc::NoNearbyPoint, "no replacement within eps*delta/2 of " + near.str());
  };
  Rational a_hat = pick(d1, fp, delta_p);
  Rational b_hat = pick(d2, fq, delta_q);

  Thread sub = t.subthread(p, q);
  std::vector<Rational> xs, vs;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Rational& x = f.support()[i];
    if (x < p || x > q) continue;
    xs.push_back(x - p);
    vs.push_back(x == p ? a_hat : x == q ? b_hat : f.values()[i]);
  }
  return {p, q, PLMap(std::move(sub), f.codomain(), std::move(xs), std::move(vs))};
}

}  // namespace skein
