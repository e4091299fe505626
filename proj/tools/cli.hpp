#pragma once

// Command-line front end. `run` is kept free of process state (streams and
// the TTY flag are passed in) so tests can drive it directly.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nbx/nbx.hpp"

namespace nbx::cli {

enum ExitCode : int { kOk = 0, kFailed = 1, kUsage = 2 };

struct Io {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
  bool tty = false;
};

enum class Format { Human, Tsv, Json };

inline Format pick_format(bool json, bool tsv, bool tty) {
  if (json) return Format::Json;
  if (tsv) return Format::Tsv;
  return tty ? Format::Human : Format::Tsv;
}

inline Family load_family(const std::string& path, std::istream& in) {
  if (path == "-") return read_nbx(in);
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  return read_nbx(f);
}

inline Json load_json(const std::string& path, std::istream& in) {
  if (path == "-") return Json::parse(in);
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  return Json::parse(f);
}

inline std::size_t default_threads() {
  if (const char* s = std::getenv("NBX_THREADS")) {
    try {
      return static_cast<std::size_t>(std::stoul(s));
    } catch (...) {
    }
  }
  return 0;
}

inline void write_bounds(std::ostream& out, const std::vector<BoundsEntry>& rows, Format fmt) {
  if (fmt == Format::Json) {
    out << to_json(rows).dump(2) << '\n';
    return;
  }
  if (fmt == Format::Tsv) {
    out << "k\td\tlower\tlower_method\tupper\tupper_method\texact\n";
    for (const auto& e : rows)
      out << e.k << '\t' << e.d << '\t' << e.lower.value << '\t' << e.lower.method << '\t'
          << e.upper.value << '\t' << e.upper.method << '\t' << (e.exact ? "true" : "false")
          << '\n';
    return;
  }
  out << std::left << std::setw(4) << "k" << std::setw(4) << "d" << std::setw(22) << "lower"
      << std::setw(30) << "upper" << "exact\n";
  for (const auto& e : rows) {
    std::ostringstream lo, up;
    lo << e.lower.value << " (" << e.lower.method << ")";
    up << e.upper.value << " (" << e.upper.method << ")";
    out << std::left << std::setw(4) << e.k << std::setw(4) << e.d << std::setw(22) << lo.str()
        << std::setw(30) << up.str() << (e.exact ? "yes" : "") << '\n';
  }
}

inline std::vector<std::size_t> parse_list(const std::string& s) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    std::size_t pos = 0;
    unsigned long v = std::stoul(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument("bad list entry '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

inline int run(std::vector<std::string> args, Io io) {
  CLI::App app{"Neighborly box families: constructions, bounds and exact search", "nbx"};
  app.require_subcommand(1);
  app.fallthrough(false);

  bool json = false, tsv = false;
  auto add_fmt = [&](CLI::App* sc, bool with_tsv) {
    sc->add_flag("--json", json, "JSON output");
    if (with_tsv) sc->add_flag("--tsv", tsv, "TSV output");
  };

  // construct
  auto* construct = app.add_subcommand("construct", "Emit a family in .nbx form");
  construct->require_subcommand(1);
  std::size_t ck = 0, cd = 0;
  std::string fa, fb;
  std::size_t fm = 0;
  std::string fav;
  auto* c_can = construct->add_subcommand("canonical", "C_d, 1-neighborly, size d+1");
  c_can->add_option("d", cd)->required();
  auto* c_ball = construct->add_subcommand("ball", "Hamming ball of radius floor(k/2)");
  c_ball->add_option("k", ck)->required();
  c_ball->add_option("d", cd)->required();
  auto* c_prod = construct->add_subcommand("product", "All concatenations of two families");
  c_prod->add_option("first", fa)->required();
  c_prod->add_option("second", fb)->required();
  auto* c_frag = construct->add_subcommand("fragmented", "Fragmented construction");
  c_frag->add_option("k", ck)->required();
  c_frag->add_option("d", cd)->required();
  c_frag->add_option("--m", fm, "number of fragments (default: optimal)");
  c_frag->add_option("--a", fav, "comma-separated block lengths");
  auto* c_ext = construct->add_subcommand("extremal", "(d-1)-neighborly family of size 3*2^(d-2)");
  c_ext->add_option("d", cd)->required();
  auto* c_mbar = construct->add_subcommand("mbar", "Best product of fragmented constructions");
  c_mbar->add_option("k", ck)->required();
  c_mbar->add_option("d", cd)->required();

  // verify
  auto* verify = app.add_subcommand("verify", "Check k-neighborliness of a .nbx family");
  std::string vpath;
  std::size_t vk = 0;
  bool vstruct = false;
  verify->add_option("file", vpath, "path or - for stdin")->required();
  verify->add_option("k", vk)->required();
  verify->add_flag("--structure", vstruct, "also report partition/lamination facts");
  add_fmt(verify, false);

  // bounds / table / audit
  auto* bounds = app.add_subcommand("bounds", "Best lower and upper bound for n(k,d)");
  std::size_t bk = 0, bd = 0;
  bounds->add_option("k", bk)->required();
  bounds->add_option("d", bd)->required();
  add_fmt(bounds, true);

  auto* table = app.add_subcommand("table", "Bounds grid for k <= kmax, d <= dmax");
  std::size_t kmax = 8, dmax = 8;
  table->add_option("--kmax", kmax);
  table->add_option("--dmax", dmax);
  add_fmt(table, true);

  auto* audit = app.add_subcommand("audit", "Pascal-triangle consistency audit of the bounds grid");
  audit->add_option("--kmax", kmax);
  audit->add_option("--dmax", dmax);
  add_fmt(audit, false);

  // search
  auto* search = app.add_subcommand("search", "Exact maximum family search");
  std::size_t sk = 0, sd = 0;
  SearchConfig cfg;
  cfg.threads = default_threads();
  bool no_joker = false, no_sym = false, no_bounds = false, enumerate = false, force = false;
  search->add_option("k", sk)->required();
  search->add_option("d", sd)->required();
  search->add_option("--budget-nodes", cfg.node_budget);
  search->add_option("--budget-secs", cfg.time_budget_secs);
  search->add_option("--threads", cfg.threads);
  search->add_option("--enumeration-cap", cfg.enumeration_cap);
  search->add_flag("--no-joker-prune", no_joker);
  search->add_flag("--no-symmetry", no_sym);
  search->add_flag("--no-bounds", no_bounds, "no construction seed, no bound cutoff");
  search->add_flag("--deterministic", cfg.deterministic);
  search->add_flag("--enumerate", enumerate, "list every maximum family");
  search->add_flag("--force", force, "lift the candidate capacity limit");

  // mkd
  auto* mkd = app.add_subcommand("mkd", "m(k,d) or, with --bar, the product optimum");
  std::size_t mk = 0, md = 0;
  bool bar = false;
  mkd->add_option("k", mk)->required();
  mkd->add_option("d", md)->required();
  mkd->add_flag("--bar", bar);

  // convert
  auto* convert = app.add_subcommand("convert", "Translate between families and biclique covers");
  convert->require_subcommand(1);
  std::string cpath;
  auto* to_cover = convert->add_subcommand("to-cover", ".nbx -> cover JSON");
  to_cover->add_option("file", cpath)->required();
  auto* to_family = convert->add_subcommand("to-family", "cover JSON -> .nbx");
  to_family->add_option("file", cpath)->required();

  // reduce
  auto* reduce = app.add_subcommand("reduce", "Twin-merge trace of a partition down to *^d");
  std::string rpath;
  reduce->add_option("file", rpath)->required();

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    io.out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    io.err << "nbx: " << e.what() << '\n';
    auto* failing = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    io.err << failing->help();
    return kUsage;
  }

  const Format fmt = pick_format(json, tsv, io.tty);
  try {
    if (construct->parsed()) {
      Family f;
      if (c_can->parsed()) f = canonical(cd);
      else if (c_ball->parsed()) f = ball_family(ck, cd);
      else if (c_prod->parsed()) f = product(load_family(fa, io.in), load_family(fb, io.in));
      else if (c_ext->parsed()) f = extremal_dminus1(cd);
      else if (c_mbar->parsed()) f = realize_mbar(ck, cd);
      else if (c_frag->parsed()) {
        FragmentPlan plan;
        if (fm == 0 && fav.empty()) {
          plan = m_value(ck, cd).parts.front();
        } else {
          plan = FragmentPlan{ck, cd, fm, parse_list(fav)};
          if (plan.m == 0) plan.m = plan.a.size();
        }
        f = fragmented(plan);
      }
      write_nbx(io.out, f);
      return kOk;
    }

    if (verify->parsed()) {
      Family f = load_family(vpath, io.in);
      auto rep = verify_neighborly(f, vk);
      if (fmt == Format::Json) {
        Json j = to_json(rep);
        if (vstruct) {
          j["size"] = f.size();
          j["volume"] = to_json(volume(f));
          j["partition"] = is_partition(f);
          auto lam = is_lamination(f);
          j["lamination"] = lam ? Json(*lam + 1) : Json(nullptr);
          j["total_lamination"] = is_total_lamination(f);
        }
        io.out << j.dump(2) << '\n';
      } else {
        io.out << (rep.is_valid ? "valid" : "invalid") << " k=" << vk << " size=" << f.size();
        if (rep.min_distance)
          io.out << " min_distance=" << *rep.min_distance << " max_distance=" << *rep.max_distance;
        io.out << '\n';
        for (const auto& v : rep.violations)
          io.out << "violation " << f[v.first].str() << ' ' << f[v.second].str()
                 << " distance=" << v.distance << '\n';
        if (vstruct) {
          auto lam = is_lamination(f);
          io.out << "volume=" << volume(f) << " partition=" << (is_partition(f) ? "yes" : "no")
                 << " lamination="
                 << (lam ? "coordinate " + std::to_string(*lam + 1) : std::string("no"))
                 << " total_lamination=" << (is_total_lamination(f) ? "yes" : "no") << '\n';
        }
      }
      return rep.is_valid ? kOk : kFailed;
    }

    if (bounds->parsed()) {
      write_bounds(io.out, {best_bounds(bk, bd)}, fmt);
      return kOk;
    }

    if (table->parsed()) {
      write_bounds(io.out, bounds_table(kmax, dmax), fmt);
      return kOk;
    }

    if (audit->parsed()) {
      auto findings = pascal_audit(bounds_table(kmax, dmax));
      bool bad = std::any_of(findings.begin(), findings.end(),
                             [](const PascalFinding& f) { return f.violation; });
      if (fmt == Format::Json) {
        Json j = Json::array();
        for (const auto& f : findings) j.push_back(to_json(f));
        io.out << j.dump(2) << '\n';
      } else {
        io.out << "k\td\tlower\trhs\tslack\tviolation\n";
        for (const auto& f : findings)
          io.out << f.k << '\t' << f.d << '\t' << f.lhs << '\t' << f.rhs << '\t'
                 << (f.violation ? std::string("-") : f.slack.str()) << '\t'
                 << (f.violation ? "yes" : "no") << '\n';
      }
      return bad ? kFailed : kOk;
    }

    if (search->parsed()) {
      cfg.joker_prune = !no_joker;
      cfg.symmetry = !no_sym;
      cfg.use_bounds = !no_bounds;
      if (force) cfg.capacity = SIZE_MAX;
      if (enumerate) {
        auto e = enumerate_max_families(sk, sd, cfg);
        Json fams = Json::array();
        for (const auto& f : e.families) {
          Json one = Json::array();
          for (const auto& x : f) one.push_back(x.str());
          fams.push_back(std::move(one));
        }
        io.out << Json{{"k", sk},
                       {"d", sd},
                       {"optimum", e.optimum},
                       {"complete", e.complete},
                       {"count", e.families.size()},
                       {"families", std::move(fams)}}
                      .dump(2)
               << '\n';
        return kOk;
      }
      auto r = max_family(sk, sd, cfg);
      io.out << to_json(r).dump(2) << '\n';
      return kOk;
    }

    if (mkd->parsed()) {
      io.out << to_json(bar ? mbar_value(mk, md) : m_value(mk, md)).dump(2) << '\n';
      return kOk;
    }

    if (to_cover->parsed()) {
      io.out << to_json(family_to_cover(load_family(cpath, io.in))).dump(2) << '\n';
      return kOk;
    }
    if (to_family->parsed()) {
      write_nbx(io.out, cover_to_family(cover_from_json(load_json(cpath, io.in))));
      return kOk;
    }

    if (reduce->parsed()) {
      auto trace = reduce_to_trivial(load_family(rpath, io.in));
      for (std::size_t i = 0; i < trace.size(); ++i) {
        io.out << "# step " << i << " size " << trace[i].size() << '\n';
        write_nbx(io.out, trace[i]);
      }
      return kOk;
    }
  } catch (const std::invalid_argument& e) {
    io.err << "nbx: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    io.err << "nbx: " << e.what() << '\n';
    return kUsage;
  } catch (const Json::exception& e) {
    io.err << "nbx: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    io.err << "nbx: " << e.what() << '\n';
    return kFailed;
  }
  return kUsage;
}

}  // namespace nbx::cli
