#include "skein/json_io.hpp"

#include <fstream>

#include "skein/error.hpp"

namespace skein {

Json to_json(const Rational& r) { return r.str(); }

Rational rational_from_json(const Json& j) {
  if (!j.is_string()) fail(Errc::ParseError, "rational must be a \"p/q\" string");
  return Rational::parse(j.get<std::string>());
}

Json to_json(const OpenInterval& iv) { return Json::array({to_json(iv.left), to_json(iv.right)}); }

OpenInterval interval_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) fail(Errc::ParseError, "interval must be a 2-array");
  return {rational_from_json(j[0]), rational_from_json(j[1])};
}

Json to_json(const Thread& t) {
  Json gaps = Json::array();
  for (const auto& g : t.gaps()) gaps.push_back(to_json(g));
  return Json{{"length", to_json(t.length())}, {"width", to_json(t.width())}, {"gaps", gaps}};
}

Thread thread_from_json(const Json& j) {
  std::vector<OpenInterval> gaps;
  for (const auto& g : j.at("gaps")) gaps.push_back(interval_from_json(g));
  return Thread(rational_from_json(j.at("length")), rational_from_json(j.at("width")),
                std::move(gaps));
}

Json to_json(const PLMap& f) {
  Json points = Json::array();
  for (std::size_t i = 0; i < f.size(); ++i)
    points.push_back(Json::array({to_json(f.support()[i]), to_json(f.values()[i])}));
  return Json{{"domain", to_json(f.domain())},
              {"codomain", to_json(f.codomain())},
              {"points", points}};
}

PLMap plmap_from_json(const Json& j) {
  std::vector<Rational> xs, vs;
  for (const auto& p : j.at("points")) {
    if (!p.is_array() || p.size() != 2) fail(Errc::ParseError, "map point must be a 2-array");
    xs.push_back(rational_from_json(p[0]));
    vs.push_back(rational_from_json(p[1]));
  }
  return PLMap(thread_from_json(j.at("domain")), thread_from_json(j.at("codomain")),
               std::move(xs), std::move(vs));
}

Json to_json(const GammaSequence& g) {
  if (g.finite()) {
    Json values = Json::array();
    for (const auto& v : g.prefix()) values.push_back(to_json(v));
    return Json{{"values", values}};
  }
  return Json{{"rule", "half-bound"}, {"scale", to_json(*g.rule_scale())}};
}

GammaSequence gamma_from_json(const Json& j) {
  if (j.contains("values")) {
    std::vector<Rational> values;
    for (const auto& v : j.at("values")) values.push_back(rational_from_json(v));
    return GammaSequence::values(std::move(values));
  }
  if (j.at("rule").get<std::string>() != "half-bound")
    fail(Errc::ParseError, "unknown gamma rule");
  return GammaSequence::half_bound(
      j.contains("scale") ? rational_from_json(j.at("scale")) : Rational(1));
}

Json to_json(const GammaStarRun& run) {
  Json produced = Json::array();
  for (const auto& g : run.produced) produced.push_back(to_json(g));
  Json family = Json::array();
  for (std::size_t i = 0; i < run.family_gaps.size(); ++i) {
    Json gaps = Json::array();
    for (const auto& g : run.family_gaps[i]) gaps.push_back(to_json(g));
    family.push_back(Json{{"name", run.family_names[i]},
                          {"width", to_json(run.family_widths[i])},
                          {"gaps", gaps}});
  }
  Json trace = Json::array();
  for (const auto& st : run.trace) {
    Json orderings = Json::array();
    for (const auto& ot : st.orderings) {
      Json steps = Json::array();
      for (const auto& sel : ot.steps)
        steps.push_back(Json{{"j", sel.j},
                             {"radius", to_json(sel.radius)},
                             {"swept", to_json(sel.swept_gap)},
                             {"sweep", to_json(sel.sweep)},
                             {"n", sel.chosen_n},
                             {"gap", to_json(sel.chosen_gap)},
                             {"alpha", to_json(sel.alpha)}});
      orderings.push_back(Json{{"sigma", ot.sigma}, {"steps", steps}, {"n_sigma", ot.n_sigma}});
    }
    trace.push_back(Json{{"step", st.step},
                         {"target", st.target_index},
                         {"orderings", orderings},
                         {"n_omega", st.n_omega},
                         {"alpha_omega", to_json(st.alpha_omega)},
                         {"bound_term", to_json(st.bound_term)},
                         {"gamma_star", to_json(st.gamma_star)}});
  }
  return Json{{"K", to_json(run.k)},  {"eps", to_json(run.eps)}, {"k_max", run.k_max},
              {"produced", produced}, {"family", family},       {"trace", trace}};
}

GammaStarRun run_from_json(const Json& j) {
  GammaStarRun run;
  run.k = rational_from_json(j.at("K"));
  run.eps = rational_from_json(j.at("eps"));
  run.k_max = j.at("k_max").get<std::size_t>();
  for (const auto& g : j.at("produced")) run.produced.push_back(rational_from_json(g));
  for (const auto& f : j.at("family")) {
    run.family_names.push_back(f.at("name").get<std::string>());
    run.family_widths.push_back(rational_from_json(f.at("width")));
    std::vector<OpenInterval> gaps;
    for (const auto& g : f.at("gaps")) gaps.push_back(interval_from_json(g));
    run.family_gaps.push_back(std::move(gaps));
  }
  for (const auto& s : j.at("trace")) {
    StepTrace st;
    st.step = s.at("step").get<std::size_t>();
    st.target_index = s.at("target").get<std::size_t>();
    st.n_omega = s.at("n_omega").get<std::size_t>();
    st.alpha_omega = rational_from_json(s.at("alpha_omega"));
    st.bound_term = rational_from_json(s.at("bound_term"));
    st.gamma_star = rational_from_json(s.at("gamma_star"));
    for (const auto& o : s.at("orderings")) {
      OrderingTrace ot;
      ot.sigma = o.at("sigma").get<std::vector<std::size_t>>();
      ot.n_sigma = o.at("n_sigma").get<std::size_t>();
      for (const auto& sel : o.at("steps")) {
        SweepSelection sw;
        sw.j = sel.at("j").get<std::size_t>();
        sw.radius = rational_from_json(sel.at("radius"));
        sw.swept_gap = interval_from_json(sel.at("swept"));
        sw.sweep = interval_from_json(sel.at("sweep"));
        sw.chosen_n = sel.at("n").get<std::size_t>();
        sw.chosen_gap = interval_from_json(sel.at("gap"));
        sw.alpha = rational_from_json(sel.at("alpha"));
        ot.steps.push_back(std::move(sw));
      }
      st.orderings.push_back(std::move(ot));
    }
    run.trace.push_back(std::move(st));
  }
  return run;
}

Json to_json(const JumpCertificate& cert) {
  Json gaps = Json::array();
  for (const auto& g : cert.target_gaps) gaps.push_back(to_json(g));
  Json budgets = Json::array();
  for (const auto& b : cert.budgets) budgets.push_back(to_json(b));
  Json out{{"target_gaps", gaps},
           {"budgets", budgets},
           {"K", to_json(cert.k)},
           {"m", cert.m},
           {"outcome", cert.feasible ? "FEASIBLE" : "INFEASIBLE"},
           {"explored", cert.explored}};
  if (cert.feasible) out["assignment"] = cert.assignment;
  return out;
}

JumpCertificate certificate_from_json(const Json& j) {
  JumpCertificate cert;
  for (const auto& g : j.at("target_gaps")) cert.target_gaps.push_back(interval_from_json(g));
  for (const auto& b : j.at("budgets")) cert.budgets.push_back(rational_from_json(b));
  cert.k = rational_from_json(j.at("K"));
  cert.m = j.at("m").get<std::size_t>();
  cert.feasible = j.at("outcome").get<std::string>() == "FEASIBLE";
  cert.explored = j.at("explored").get<std::uint64_t>();
  if (cert.feasible) cert.assignment = j.at("assignment").get<std::vector<std::size_t>>();
  return cert;
}

Json to_json(const SkeinTruncation& tr) {
  const auto& c = tr.config();
  Json config{{"depth", c.depth},
              {"gammas_per_pair", c.gammas_per_pair},
              {"grid", to_json(c.grid)},
              {"gaps_per_thread", c.gaps_per_thread},
              {"point_guard", c.point_guard}};
  config["pair_budget"] = c.pair_budget ? Json(*c.pair_budget) : Json(nullptr);
  Json gammas = Json::array();
  for (const auto& [id, g] : tr.gammas()) {
    Json entry = to_json(g);
    entry["id"] = id;
    gammas.push_back(entry);
  }
  Json points = Json::array();
  for (std::size_t i = 0; i < tr.points().size(); ++i)
    points.push_back(tr.address(static_cast<int>(i)));
  Json threads = Json::array();
  for (const auto& inst : tr.threads())
    threads.push_back(Json{{"a", tr.address(inst.anchor1)},
                           {"b", tr.address(inst.anchor2)},
                           {"gamma", inst.gamma_id},
                           {"width", to_json(inst.thread.width())}});
  return Json{{"config", config}, {"gammas", gammas}, {"points", points}, {"threads", threads}};
}

SkeinTruncation truncation_from_json(const Json& j) {
  const Json& c = j.at("config");
  SkeinBuildConfig config;
  config.depth = c.at("depth").get<std::size_t>();
  config.gammas_per_pair = c.at("gammas_per_pair").get<std::size_t>();
  config.grid = rational_from_json(c.at("grid"));
  config.gaps_per_thread = c.at("gaps_per_thread").get<std::size_t>();
  config.point_guard = c.at("point_guard").get<std::uint64_t>();
  if (!c.at("pair_budget").is_null())
    config.pair_budget = c.at("pair_budget").get<std::size_t>();
  std::vector<std::pair<std::string, GammaSequence>> gammas;
  for (const auto& g : j.at("gammas"))
    gammas.emplace_back(g.at("id").get<std::string>(), gamma_from_json(g));
  std::vector<std::string> addresses = j.at("points").get<std::vector<std::string>>();
  std::vector<std::tuple<std::string, std::string, std::string, Rational>> threads;
  for (const auto& t : j.at("threads"))
    threads.emplace_back(t.at("a").get<std::string>(), t.at("b").get<std::string>(),
                         t.at("gamma").get<std::string>(), rational_from_json(t.at("width")));
  return SkeinTruncation::from_parts(std::move(config), std::move(gammas), addresses, threads);
}

Json to_json(const ThreadingSpace& ts) {
  Json threads = Json::array();
  for (const auto& [id, t] : ts.threads())
    threads.push_back(Json{{"id", id}, {"thread", to_json(t)}});
  return Json{{"width", to_json(ts.width())}, {"threads", threads}};
}

ThreadingSpace threading_from_json(const Json& j) {
  std::vector<std::pair<std::string, Thread>> threads;
  for (const auto& t : j.at("threads"))
    threads.emplace_back(t.at("id").get<std::string>(), thread_from_json(t.at("thread")));
  return ThreadingSpace(rational_from_json(j.at("width")), std::move(threads));
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::InvalidArgument, "cannot open '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    fail(Errc::ParseError, std::string("invalid JSON in '") + path + "': " + e.what());
  }
  return j;
}

void save_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) fail(Errc::InvalidArgument, "cannot open '" + path + "' for writing");
  out << dump(j);
}

}  // namespace skein
