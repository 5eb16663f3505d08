// skeintool: build, transform and verify exact-arithmetic thread and skein
// spaces from the command line. All file I/O is JSON; every output is
// byte-deterministic for fixed inputs.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "skein/emit.hpp"
#include "skein/error.hpp"
#include "skein/gammastar.hpp"
#include "skein/json_io.hpp"
#include "skein/verify.hpp"

namespace {

using namespace skein;

std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  if (!text.empty() && text.front() == '[') {
    for (const auto& v : Json::parse(text)) out.push_back(rational_from_json(v));
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(Rational::parse(item));
  }
  return out;
}

GammaSequence parse_gamma(const std::string& gamma, const std::string& rule) {
  if (!rule.empty()) {
    if (rule != "half-bound") fail(Errc::InvalidArgument, "unknown gamma rule '" + rule + "'");
    return GammaSequence::half_bound();
  }
  if (gamma.empty()) fail(Errc::InvalidArgument, "need --gamma or --gamma-rule");
  return GammaSequence::values(parse_rational_list(gamma));
}

void write_or_print(const std::string& out, const Json& j) {
  if (out.empty())
    std::cout << dump(j);
  else
    save_json_file(out, j);
}

void write_text(const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) fail(Errc::InvalidArgument, "cannot open '" + out + "' for writing");
  f << text;
}

int run_app(int argc, char** argv) {
  CLI::App app{"exact thread / skein metric space toolkit"};
  app.require_subcommand(1);
  int exit_code = 0;

  // ---- thread ----
  auto* thread_cmd = app.add_subcommand("thread", "thread metric operations");
  thread_cmd->require_subcommand(1);
  {
    auto* dist = thread_cmd->add_subcommand("dist", "distance between two points");
    auto file = std::make_shared<std::string>();
    auto x = std::make_shared<std::string>(), y = std::make_shared<std::string>();
    dist->add_option("--thread", *file, "thread JSON file")->required();
    dist->add_option("--x", *x, "first coordinate p/q")->required();
    dist->add_option("--y", *y, "second coordinate p/q")->required();
    dist->callback([=] {
      Thread t = thread_from_json(load_json_file(*file));
      std::cout << t.distance(Rational::parse(*x), Rational::parse(*y)).str() << "\n";
    });

    auto* measure = thread_cmd->add_subcommand("measure", "length minus total gap length");
    auto mfile = std::make_shared<std::string>();
    measure->add_option("--thread", *mfile)->required();
    measure->callback([=] {
      std::cout << thread_from_json(load_json_file(*mfile)).measure().str() << "\n";
    });

    auto* sub = thread_cmd->add_subcommand("subthread", "restriction [x,y] re-based to 0");
    auto sfile = std::make_shared<std::string>(), sx = std::make_shared<std::string>(),
         sy = std::make_shared<std::string>(), sout = std::make_shared<std::string>();
    sub->add_option("--thread", *sfile)->required();
    sub->add_option("--x", *sx)->required();
    sub->add_option("--y", *sy)->required();
    sub->add_option("--out", *sout, "output file (stdout when omitted)");
    sub->callback([=] {
      Thread t = thread_from_json(load_json_file(*sfile));
      write_or_print(*sout, to_json(t.subthread(Rational::parse(*sx), Rational::parse(*sy))));
    });

    auto* gaps = thread_cmd->add_subcommand("gaps", "gaps by decreasing length");
    auto gfile = std::make_shared<std::string>();
    gaps->add_option("--thread", *gfile)->required();
    gaps->callback([=] {
      Json out = Json::array();
      for (const auto& g : thread_from_json(load_json_file(*gfile)).gaps_by_length())
        out.push_back(to_json(g));
      std::cout << dump(out);
    });

    auto* split = thread_cmd->add_subcommand("split", "separating split between two points");
    auto pfile = std::make_shared<std::string>(), pp = std::make_shared<std::string>(),
         pq = std::make_shared<std::string>();
    split->add_option("--thread", *pfile)->required();
    split->add_option("--p", *pp)->required();
    split->add_option("--q", *pq)->required();
    split->callback([=] {
      Thread t = thread_from_json(load_json_file(*pfile));
      SeparatingSplit s = t.separating_split(Rational::parse(*pp), Rational::parse(*pq));
      std::cout << dump(Json{{"s1", Json::array({"0/1", s.low_end.str()})},
                             {"s2", Json::array({s.high_start.str(), t.length().str()})}});
    });
  }

  // ---- cantor ----
  auto* cantor_cmd = app.add_subcommand("cantor", "greedy gap construction");
  cantor_cmd->require_subcommand(1);
  {
    auto* build = cantor_cmd->add_subcommand("build", "build a truncated thread");
    auto gamma = std::make_shared<std::string>(), rule = std::make_shared<std::string>(),
         width = std::make_shared<std::string>("1/2"), out = std::make_shared<std::string>();
    auto k = std::make_shared<std::size_t>(0);
    build->add_option("--gamma", *gamma, "gamma prefix, JSON list or comma separated");
    build->add_option("--gamma-rule", *rule, "preset rule: half-bound (2^-(i+2))");
    build->add_option("--k", *k, "number of gaps")->required();
    build->add_option("--width", *width, "thread width p/q");
    build->add_option("--out", *out);
    build->callback([=] {
      Thread t = build_thread(parse_gamma(*gamma, *rule), *k, Rational::parse(*width));
      write_or_print(*out, to_json(t));
    });

    auto* rat = cantor_cmd->add_subcommand("rational-at", "n-th rational of the enumeration");
    auto n = std::make_shared<std::size_t>(1);
    rat->add_option("--n", *n)->required();
    rat->callback([=] { std::cout << rational_at(*n).str() << "\n"; });

    auto* val = cantor_cmd->add_subcommand("validate", "check a gamma prefix");
    auto vgamma = std::make_shared<std::string>();
    val->add_option("--gamma", *vgamma)->required();
    val->callback([=, &exit_code] {
      GammaVerdict v = validate_gamma(parse_rational_list(*vgamma));
      std::cout << dump(Json{{"verdict", v.accepted ? "ACCEPT" : "REJECT"},
                             {"reason", v.reason},
                             {"index", v.index}});
      if (!v.accepted) exit_code = 1;
    });
  }

  // ---- lipmap ----
  auto* lipmap_cmd = app.add_subcommand("lipmap", "Lipschitz map operations");
  lipmap_cmd->require_subcommand(1);
  {
    auto* lc = lipmap_cmd->add_subcommand("lipconst", "exact Lipschitz constant");
    auto file = std::make_shared<std::string>();
    lc->add_option("--map", *file)->required();
    lc->callback([=] {
      std::cout << lip_const(plmap_from_json(load_json_file(*file))).str() << "\n";
    });

    auto* reg = lipmap_cmd->add_subcommand("regularize", "monotone regularization");
    auto rfile = std::make_shared<std::string>(), rout = std::make_shared<std::string>();
    reg->add_option("--map", *rfile)->required();
    reg->add_option("--out", *rout);
    reg->callback([=] {
      write_or_print(*rout, to_json(monotone_regularize(plmap_from_json(load_json_file(*rfile)))));
    });

    auto* jumps = lipmap_cmd->add_subcommand("jumps", "jumping gaps for every codomain gap");
    auto jfile = std::make_shared<std::string>(), jout = std::make_shared<std::string>();
    jumps->add_option("--map", *jfile)->required();
    jumps->add_option("--out", *jout);
    jumps->callback([=] {
      PLMap f = plmap_from_json(load_json_file(*jfile));
      Json out = Json::array();
      for (const auto& r : jump_records(f)) {
        Json cs = Json::array();
        for (const auto& g : r.codomain_gaps) cs.push_back(to_json(g));
        out.push_back(Json{{"domain_gap", to_json(r.domain_gap)}, {"codomain_gaps", cs}});
      }
      write_or_print(*jout, out);
    });
  }

  // ---- gammastar ----
  auto* gs_cmd = app.add_subcommand("gammastar", "diagonal sequence machinery");
  gs_cmd->require_subcommand(1);
  {
    auto* run = gs_cmd->add_subcommand("run", "produce a gamma* prefix with full trace");
    auto families = std::make_shared<std::vector<std::string>>();
    auto kk = std::make_shared<std::string>(), eps = std::make_shared<std::string>(),
         out = std::make_shared<std::string>(), rule = std::make_shared<std::string>();
    auto kmax = std::make_shared<std::size_t>(0);
    auto deepening = std::make_shared<std::size_t>(64);
    run->add_option("--family", *families, "family thread JSON files")->required()
        ->expected(-1);
    run->add_option("--K", *kk)->required();
    run->add_option("--eps", *eps)->required();
    run->add_option("--k", *kmax)->required();
    run->add_option("--deepening", *deepening, "max gaps materialized per thread");
    run->add_option("--gamma-rule", *rule,
                    "rule continuing the family gamma sequences past the serialized "
                    "gaps (half-bound); without it deepening stops at the files");
    run->add_option("--out", *out);
    run->callback([=] {
      std::vector<FamilyThread> family;
      for (const auto& path : *families) {
        Thread t = thread_from_json(load_json_file(path));
        // Resume the stream behind the file: regenerate the greedy prefix and
        // insist the serialized gaps are exactly its output, so the stream
        // invariant survives deepening.
        std::vector<OpenInterval> by_length = t.gaps_by_length();
        std::vector<Rational> lengths;
        for (const auto& g : by_length) lengths.push_back(g.length());
        GammaSequence gs =
            rule->empty() ? GammaSequence::values(lengths) : parse_gamma("", *rule);
        GapStream stream(gs);
        for (std::size_t i = 1; i <= by_length.size(); ++i) {
          if (!(stream.gap(i) == by_length[i - 1]))
            fail(Errc::InvalidArgument,
                 path + ": gap " + std::to_string(i) +
                     " does not follow the greedy construction for the given gammas");
        }
        family.push_back({std::move(stream), t.width(), path});
      }
      GammaStarOptions options;
      options.deepening_budget = *deepening;
      GammaStarRun r = gamma_star_prefix(std::move(family), Rational::parse(*kk),
                                         Rational::parse(*eps), *kmax, options);
      write_or_print(*out, to_json(r));
    });

    auto* cert = gs_cmd->add_subcommand("certify", "jump-assignment infeasibility certificate");
    auto tfile = std::make_shared<std::string>(), budgets = std::make_shared<std::string>(),
         ck = std::make_shared<std::string>(), cout_file = std::make_shared<std::string>();
    auto m = std::make_shared<std::size_t>(0);
    cert->add_option("--target", *tfile)->required();
    cert->add_option("--budgets", *budgets, "source gap-length bounds")->required();
    cert->add_option("--K", *ck)->required();
    cert->add_option("--m", *m, "analyzed target gaps")->required();
    cert->add_option("--out", *cout_file);
    cert->callback([=] {
      JumpCertificate c = jump_infeasibility(thread_from_json(load_json_file(*tfile)),
                                             parse_rational_list(*budgets),
                                             Rational::parse(*ck), *m);
      write_or_print(*cout_file, to_json(c));
    });

    auto* brute = gs_cmd->add_subcommand("brute", "grid brute-force map search");
    auto sfile = std::make_shared<std::string>(), tfile2 = std::make_shared<std::string>(),
         bk = std::make_shared<std::string>(), grid = std::make_shared<std::string>(),
         bout = std::make_shared<std::string>();
    brute->add_option("--source", *sfile)->required();
    brute->add_option("--target", *tfile2)->required();
    brute->add_option("--K", *bk)->required();
    brute->add_option("--grid", *grid)->required();
    brute->add_option("--out", *bout);
    brute->callback([=] {
      auto found = brute_force_map_search(thread_from_json(load_json_file(*sfile)),
                                          thread_from_json(load_json_file(*tfile2)),
                                          Rational::parse(*bk), Rational::parse(*grid));
      if (found)
        write_or_print(*bout, Json{{"outcome", "FOUND"}, {"map", to_json(*found)}});
      else
        write_or_print(*bout, Json{{"outcome", "NONE"}});
    });

    auto* recheck = gs_cmd->add_subcommand("recheck", "re-validate a run trace");
    auto rfile = std::make_shared<std::string>();
    recheck->add_option("--run", *rfile)->required();
    recheck->callback([=, &exit_code] {
      auto bad = recheck_trace(run_from_json(load_json_file(*rfile)));
      std::cout << dump(Json{{"verdict", bad ? "REJECT" : "ACCEPT"},
                             {"reason", bad ? *bad : ""}});
      if (bad) exit_code = 1;
    });
  }

  // ---- skein ----
  auto* skein_cmd = app.add_subcommand("skein", "finite skein truncations");
  skein_cmd->require_subcommand(1);
  {
    auto* build = skein_cmd->add_subcommand("build", "materialize a truncation");
    auto depth = std::make_shared<std::size_t>(1), gammas = std::make_shared<std::size_t>(2),
         gaps = std::make_shared<std::size_t>(3);
    auto grid = std::make_shared<std::string>("1/16"), out = std::make_shared<std::string>();
    auto budget = std::make_shared<long>(-1);
    build->add_option("--depth", *depth)->required();
    build->add_option("--gammas", *gammas, "gamma prefixes per expanded pair");
    build->add_option("--grid", *grid, "dyadic sampling step p/q");
    build->add_option("--gaps", *gaps, "gaps per thread");
    build->add_option("--pair-budget", *budget, "expanded pairs per depth step (-1: all)");
    build->add_option("--out", *out);
    build->callback([=] {
      SkeinBuildConfig config;
      config.depth = *depth;
      config.gammas_per_pair = *gammas;
      config.grid = Rational::parse(*grid);
      config.gaps_per_thread = *gaps;
      if (*budget >= 0) config.pair_budget = static_cast<std::size_t>(*budget);
      write_or_print(*out, to_json(SkeinTruncation::build(config)));
    });

    auto* dist = skein_cmd->add_subcommand("dist", "distance between two addresses");
    auto space = std::make_shared<std::string>(), p = std::make_shared<std::string>(),
         q = std::make_shared<std::string>();
    dist->add_option("--space", *space)->required();
    dist->add_option("--p", *p)->required();
    dist->add_option("--q", *q)->required();
    dist->callback([=] {
      SkeinTruncation tr = truncation_from_json(load_json_file(*space));
      SkeinDistance d(tr);
      std::cout << d(tr.resolve(*p), tr.resolve(*q)).str() << "\n";
    });

    auto* verify = skein_cmd->add_subcommand("verify", "oracle, stability and registry checks");
    auto vspace = std::make_shared<std::string>();
    auto beta = std::make_shared<int>(1);
    verify->add_option("--space", *vspace)->required();
    verify->add_option("--beta", *beta);
    verify->callback([=, &exit_code] {
      SkeinTruncation tr = truncation_from_json(load_json_file(*vspace));
      Json checks = Json::array();
      auto add = [&](const std::string& name, const std::optional<std::string>& witness) {
        checks.push_back(Json{{"name", name},
                              {"status", witness ? "fail" : "pass"},
                              {"witness", witness ? *witness : ""}});
        if (witness) exit_code = 1;
      };
      add("registry", tr.registry_check());
      auto table = shortest_path_table(tr);
      SkeinDistance d(tr);
      std::optional<std::string> oracle;
      const int n = static_cast<int>(tr.points().size());
      for (int i = 0; i < n && !oracle; ++i)
        for (int j = i + 1; j < n && !oracle; ++j)
          if (d(i, j) != table[i][j])
            oracle = "mismatch at (" + tr.address(i) + ", " + tr.address(j) + ")";
      add("oracle_agreement", oracle);
      std::vector<int> ball;
      {
        std::vector<int> low = tr.generation_upto(*beta);
        for (int i = 0; i < n; ++i) {
          std::optional<Rational> nearest;
          for (int z : low) {
            Rational dd = d(i, z);
            if (!nearest || dd < *nearest) nearest = dd;
          }
          if (nearest && *nearest < Rational(1, 8)) ball.push_back(i);
        }
      }
      std::vector<std::pair<int, int>> pairs;
      for (std::size_t i = 0; i < ball.size(); ++i)
        for (std::size_t j = i + 1; j < ball.size(); ++j) pairs.emplace_back(ball[i], ball[j]);
      StabilityVerdict sv = stability_report(tr, *beta, pairs);
      add("stability", sv.accepted ? std::nullopt
                                   : std::optional<std::string>(sv.reason));
      std::cout << dump(Json{{"beta", *beta}, {"checks", checks}});
    });

    auto* chain_sub = skein_cmd->add_subcommand("chain", "short-step chain between addresses");
    auto cspace = std::make_shared<std::string>(), cp = std::make_shared<std::string>(),
         cq = std::make_shared<std::string>();
    chain_sub->add_option("--space", *cspace)->required();
    chain_sub->add_option("--p", *cp)->required();
    chain_sub->add_option("--q", *cq)->required();
    chain_sub->callback([=] {
      SkeinTruncation tr = truncation_from_json(load_json_file(*cspace));
      Json out = Json::array();
      for (int s : chain(tr, tr.resolve(*cp), tr.resolve(*cq))) out.push_back(tr.address(s));
      std::cout << dump(out);
    });
  }

  // ---- verify ----
  {
    auto* verify = app.add_subcommand("verify", "run the property suites");
    auto all = std::make_shared<bool>(false);
    auto seed = std::make_shared<std::uint64_t>(7);
    auto maps = std::make_shared<std::size_t>(120);
    auto out = std::make_shared<std::string>();
    verify->add_flag("--all", *all, "run every suite");
    verify->add_option("--seed", *seed, "deterministic seed (echoed in the report)");
    verify->add_option("--maps", *maps, "random maps per lipmap suite");
    verify->add_option("--out", *out, "also write the report to a file");
    verify->callback([=, &exit_code] {
      if (!*all) fail(Errc::InvalidArgument, "only --all runs are supported");
      VerifyConfig config;
      config.seed = *seed;
      config.random_maps = *maps;
      auto t0 = std::chrono::steady_clock::now();
      VerificationReport report = run_verification(config);
      auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
      // Timing is diagnostic only; the report itself stays byte-deterministic.
      std::cerr << "verify: " << report.results.size() << " suites, " << report.failures()
                << " failures, " << ms << " ms\n";
      std::cout << dump(report.to_json());
      if (!out->empty()) save_json_file(*out, report.to_json());
      if (report.failures() > 0) exit_code = 1;
    });
  }

  // ---- emit ----
  {
    auto* emit = app.add_subcommand("emit", "render SVG diagrams or CSV tables");
    auto svg = std::make_shared<bool>(false), csv = std::make_shared<bool>(false);
    auto in = std::make_shared<std::string>(), out = std::make_shared<std::string>();
    auto grid = std::make_shared<std::string>("1/16");
    emit->add_flag("--svg", *svg, "emit an SVG diagram");
    emit->add_flag("--csv", *csv, "emit a CSV distance matrix (threads only)");
    emit->add_option("--in", *in, "input JSON object")->required();
    emit->add_option("--out", *out, "output file (stdout when omitted)");
    emit->add_option("--grid", *grid, "grid step for CSV matrices");
    emit->callback([=] {
      if (*svg == *csv) fail(Errc::InvalidArgument, "pick exactly one of --svg/--csv");
      Json j = load_json_file(*in);
      if (*csv) {
        write_text(*out, thread_distance_csv(thread_from_json(j), Rational::parse(*grid)));
        return;
      }
      if (j.contains("length"))
        write_text(*out, thread_svg(thread_from_json(j)));
      else if (j.contains("points"))
        write_text(*out, skein_svg(truncation_from_json(j)));
      else if (j.contains("width"))
        write_text(*out, threading_svg(threading_from_json(j)));
      else
        fail(Errc::InvalidArgument, "unrecognized object in '" + *in + "'");
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage errors exit 2, --help exits 0
  }
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_app(argc, argv);
  } catch (const skein::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case skein::Errc::InvalidArgument:
      case skein::Errc::ParseError:
        return 2;
      default:
        return 1;
    }
  } catch (const CLI::Error&) {
    return 2;  // CLI11_PARSE already reported
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
