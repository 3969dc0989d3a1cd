// Copyright (c) 2026 The trianguloids authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TRG_CLI_HPP
#define TRG_CLI_HPP

#include <chrono>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "trg/compat.hpp"
#include "trg/graph.hpp"
#include "trg/json_io.hpp"
#include "trg/lattice.hpp"
#include "trg/search.hpp"
#include "trg/tiling.hpp"
#include "trg/triangulation.hpp"
#include "trg/trianguloid.hpp"

namespace trg::cli {

// exit codes: 0 success / predicate true, 1 validation negative, 2 usage or IO
inline constexpr int kOk = 0;
inline constexpr int kNegative = 1;
inline constexpr int kUsage = 2;

namespace detail {

inline std::string point_csv(const Point& p) {
  std::ostringstream os;
  for (std::size_t k = 0; k < p.size(); ++k) os << (k ? "," : "") << p[k];
  return os.str();
}

inline Point parse_point(const std::string& s) {
  Point p;
  std::istringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    try {
      p.push_back(std::stoi(tok));
    } catch (...) {
      throw Error(Errc::InvalidInput, "bad point literal: " + s);
    }
  }
  if (p.empty()) throw Error(Errc::InvalidInput, "empty point literal");
  return p;
}

inline Json vertex_json(const VertexRef& v) {
  return Json{{"side", v.right ? "right" : "left"}, {"index", v.index}};
}

inline Json report_json(const ValidationReport& rep) {
  Json j{{"ok", rep.ok}};
  if (!rep.ok) {
    j["error"] = errc_name(rep.error);
    j["message"] = rep.message;
    if (rep.tree_index >= 0) j["tree_index"] = rep.tree_index;
    if (!rep.b1.empty()) j["b"] = rep.b1;
    if (!rep.b2.empty()) j["b2"] = rep.b2;
    if (!rep.missing.empty()) j["missing"] = rep.missing;
    if (!rep.extra.empty()) j["extra"] = rep.extra;
    if (!rep.witness.empty()) {
      Json w = Json::array();
      for (const VertexRef& v : rep.witness) w.push_back(vertex_json(v));
      j["witness"] = std::move(w);
    }
  }
  return j;
}

inline Json axiom_json(const AxiomReport& rep) {
  Json v = Json::array();
  for (const AxiomViolation& violation : rep.violations) {
    v.push_back(Json{{"axiom", violation.axiom},
                     {"at", violation.at},
                     {"dirs", violation.dirs},
                     {"detail", violation.detail}});
  }
  return Json{{"t1", rep.t1},
              {"t2", rep.t2},
              {"t3", rep.t3},
              {"t4", rep.t4},
              {"partition", rep.partition},
              {"is_pre", rep.is_pre()},
              {"is_trianguloid", rep.is_trianguloid()},
              {"violations", std::move(v)}};
}

inline void emit(std::ostream& out, const std::string& path, const std::string& text) {
  if (path.empty())
    out << text;
  else
    save_text(path, text);
}

struct Loaded {
  std::optional<Triangulation> tau;
  std::optional<Trianguloid> loid;
};

inline Loaded load_as(const std::string& kind, const std::string& path) {
  Loaded l;
  Json j = load_json(path);
  if (kind == "triangulation") {
    l.tau = triangulation_from_json(j);
  } else if (kind == "trianguloid") {
    l.loid = trianguloid_from_json(j);
  } else if (kind == "coloring") {
    EdgeColoring c = coloring_from_json(j);
    l.loid = decode_coloring(c.graph, c);
  } else {
    throw Error(Errc::InvalidInput, "unknown representation: " + kind);
  }
  return l;
}

}  // namespace detail

/// Dispatch one invocation; argv excludes the program name.
inline int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"triangulations of root polytopes and their trianguloids"};
  app.require_subcommand(1);

  // ---- lattice-points ----
  auto* sc_lattice = app.add_subcommand("lattice-points", "lattice points of P_G, P_G^- or P_G^+-");
  std::string lp_graph, lp_poly = "pg";
  sc_lattice->add_option("--graph", lp_graph, "graph JSON file")->required();
  sc_lattice->add_option("--polytope", lp_poly, "pg | pgminus | pgpm")
      ->check(CLI::IsMember({"pg", "pgminus", "pgpm"}));

  // ---- compat ----
  auto* sc_compat = app.add_subcommand("compat", "forest compatibility test");
  std::string cp_graph;
  std::vector<std::string> cp_forests;
  sc_compat->add_option("--graph", cp_graph, "graph JSON file")->required();
  sc_compat->add_option("--forest", cp_forests, "forest JSON file (give twice)")
      ->required()
      ->expected(2);

  // ---- validate ----
  auto* sc_validate = app.add_subcommand("validate", "validate a triangulation file");
  std::string va_file;
  sc_validate->add_option("--triangulation", va_file, "triangulation JSON file")->required();

  // ---- phi ----
  auto* sc_phi = app.add_subcommand("phi", "print the degree-vector bijection of a triangulation");
  std::string ph_file;
  sc_phi->add_option("--triangulation", ph_file, "triangulation JSON file")->required();

  // ---- reconstruct ----
  auto* sc_rec = app.add_subcommand("reconstruct", "rebuild a triangulation from a forest collection");
  std::string rc_coll, rc_kind, rc_out;
  sc_rec->add_option("--collection", rc_coll, "collection JSON file")->required();
  sc_rec->add_option("--kind", rc_kind, "trees | rsm | lsm | pm")
      ->required()
      ->check(CLI::IsMember({"trees", "rsm", "lsm", "pm"}));
  sc_rec->add_option("--out", rc_out, "output file (stdout when omitted)");

  // ---- convert ----
  auto* sc_conv = app.add_subcommand("convert", "convert between representations");
  std::string cv_from, cv_to, cv_in, cv_out;
  sc_conv->add_option("--from", cv_from, "triangulation | trianguloid | coloring")
      ->required()
      ->check(CLI::IsMember({"triangulation", "trianguloid", "coloring"}));
  sc_conv->add_option("--to", cv_to, "triangulation | trianguloid | coloring")
      ->required()
      ->check(CLI::IsMember({"triangulation", "trianguloid", "coloring"}));
  sc_conv->add_option("--in", cv_in, "input file")->required();
  sc_conv->add_option("--out", cv_out, "output file (stdout when omitted)");

  // ---- check ----
  auto* sc_check = app.add_subcommand("check", "axiom report for a trianguloid file");
  std::string ck_file;
  sc_check->add_option("--trianguloid", ck_file, "trianguloid JSON file")->required();

  // ---- enumerate ----
  auto* sc_enum = app.add_subcommand("enumerate", "exhaustive search for triangulations / trianguloids");
  std::string en_graph, en_method = "both", en_emit;
  std::size_t en_limit = 0;
  int en_jobs = 1;
  sc_enum->add_option("--graph", en_graph, "graph JSON file")->required();
  sc_enum->add_option("--method", en_method, "trees | axioms | both")
      ->check(CLI::IsMember({"trees", "axioms", "both"}));
  sc_enum->add_option("--limit", en_limit, "truncate after this many results");
  sc_enum->add_option("--emit", en_emit, "directory for canonical result files");
  sc_enum->add_option("--jobs", en_jobs, "worker threads (default 1)");

  // ---- render ----
  auto* sc_render = app.add_subcommand("render", "render an m=3 trianguloid as SVG");
  std::string rd_file, rd_out, rd_layers = "tiling,pseudolines";
  sc_render->add_option("--trianguloid", rd_file, "trianguloid JSON file")->required();
  sc_render->add_option("--out", rd_out, "output SVG file (stdout when omitted)");
  sc_render->add_option("--layers", rd_layers, "csv of tiling,pseudolines,trianguloid");

  // ---- flip ----
  auto* sc_flip = app.add_subcommand("flip", "one-edge exchange inside a triangulation");
  std::string fl_file, fl_at, fl_edge;
  sc_flip->add_option("--triangulation", fl_file, "triangulation JSON file")->required();
  sc_flip->add_option("--at", fl_at, "index point b, comma separated")->required();
  sc_flip->add_option("--edge", fl_edge, "edge i,j to remove")->required();

  try {
    std::vector<std::string> rev(argv.rbegin(), argv.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return kOk;
    }
    err << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*sc_lattice) {
      BipartiteGraph g = graph_from_json(load_json(lp_graph));
      LatticeContext ctx(g);
      const PointSet& pts = lp_poly == "pg" ? ctx.pg()
                           : lp_poly == "pgminus" ? ctx.pgminus()
                                                  : ctx.pgpm();
      for (const Point& p : pts) out << detail::point_csv(p) << "\n";
      return kOk;
    }

    if (*sc_compat) {
      BipartiteGraph g = graph_from_json(load_json(cp_graph));
      Subgraph a = subgraph_from_file_json(g, load_json(cp_forests[0]));
      Subgraph b = subgraph_from_file_json(g, load_json(cp_forests[1]));
      CompatResult res = is_compatible_witness(a, b);
      if (res.compatible) {
        out << "compatible\n";
        return kOk;
      }
      out << "incompatible\n";
      std::ostringstream cyc;
      for (std::size_t k = 0; k < res.witness.size(); ++k) {
        const VertexRef& v = res.witness[k];
        cyc << (k ? " -> " : "") << (v.right ? "R" : "L") << v.index;
      }
      out << cyc.str() << "\n";
      return kNegative;
    }

    if (*sc_validate) {
      auto [g, trees] = triangulation_input_from_json(load_json(va_file));
      ValidationReport rep = validate_report(std::make_shared<LatticeContext>(g), trees);
      out << canonical_dump(detail::report_json(rep));
      return rep.ok ? kOk : kNegative;
    }

    if (*sc_phi) {
      Triangulation tau = triangulation_from_json(load_json(ph_file));
      PhiMap map = phi(tau);
      for (std::size_t k = 0; k < map.domain.size(); ++k)
        out << detail::point_csv(map.domain[k]) << " -> " << detail::point_csv(map.values[k]) << "\n";
      return kOk;
    }

    if (*sc_rec) {
      Collection coll = collection_from_json(load_json(rc_coll));
      CollectionKind kind = rc_kind == "trees" ? CollectionKind::Trees
                            : rc_kind == "rsm" ? CollectionKind::Rsm
                            : rc_kind == "lsm" ? CollectionKind::Lsm
                                               : CollectionKind::Pm;
      Triangulation tau = reconstruct(coll.graph, coll.subgraphs, kind);
      detail::emit(out, rc_out, canonical_dump(to_json(tau)));
      return kOk;
    }

    if (*sc_conv) {
      detail::Loaded l = detail::load_as(cv_from, cv_in);
      std::string text;
      if (cv_to == "triangulation") {
        Triangulation tau = l.tau ? *l.tau : to_triangulation(*l.loid);
        text = canonical_dump(to_json(tau));
      } else if (cv_to == "trianguloid") {
        Trianguloid t = l.loid ? *l.loid : from_triangulation(*l.tau);
        text = canonical_dump(to_json(t));
      } else {
        Trianguloid t = l.loid ? *l.loid : from_triangulation(*l.tau);
        text = canonical_dump(to_json(encode_coloring(t)));
      }
      detail::emit(out, cv_out, text);
      return kOk;
    }

    if (*sc_check) {
      Trianguloid t = trianguloid_from_json(load_json(ck_file));
      AxiomReport rep = check_axioms(t);
      out << canonical_dump(detail::axiom_json(rep));
      return rep.is_trianguloid() ? kOk : kNegative;
    }

    if (*sc_enum) {
      BipartiteGraph g = graph_from_json(load_json(en_graph));
      auto ctx = std::make_shared<LatticeContext>(g);
      EnumOptions opts;
      if (en_limit > 0) opts.limit = en_limit;
      opts.jobs = en_jobs;

      Json report{{"graph", Json{{"m", g.left_count()},
                                 {"n", g.right_count()},
                                 {"edges", g.edge_count()}}},
                  {"method", en_method}};
      std::vector<Triangulation> taus;
      std::vector<Trianguloid> loids;
      bool trunc_t = false, trunc_a = false;
      auto t0 = std::chrono::steady_clock::now();
      if (en_method == "trees" || en_method == "both")
        taus = enumerate_triangulations(ctx, opts, &trunc_t);
      if (en_method == "axioms" || en_method == "both")
        loids = enumerate_trianguloids(ctx, opts, &trunc_a);
      auto t1 = std::chrono::steady_clock::now();
      report["elapsed_ms"] = std::chrono::duration<double, std::milli>(t1 - t0).count();

      bool agree = true;
      if (en_method == "trees") {
        report["count"] = taus.size();
        report["truncated"] = trunc_t;
      } else if (en_method == "axioms") {
        report["count"] = loids.size();
        report["truncated"] = trunc_a;
      } else {
        report["counts"] = Json{{"trees", taus.size()}, {"axioms", loids.size()}};
        report["truncated"] = trunc_t || trunc_a;
        agree = taus.size() == loids.size();
        if (agree && !trunc_t && !trunc_a) {
          // element-wise: images of the tree search must be the axiom results
          std::set<std::vector<Mask>> a, b;
          for (const Triangulation& tau : taus) a.insert(from_triangulation(tau).entries());
          for (const Trianguloid& t : loids) b.insert(t.entries());
          agree = a == b;
        }
        report["counts_agree"] = agree;
      }

      if (!en_emit.empty()) {
        std::filesystem::create_directories(en_emit);
        Json files = Json::array();
        char name[32];
        for (std::size_t k = 0; k < taus.size(); ++k) {
          std::snprintf(name, sizeof name, "tri_%05zu.json", k);
          std::string path = (std::filesystem::path(en_emit) / name).string();
          save_text(path, canonical_dump(to_json(taus[k])));
          files.push_back(name);
        }
        for (std::size_t k = 0; k < loids.size(); ++k) {
          std::snprintf(name, sizeof name, "loid_%05zu.json", k);
          std::string path = (std::filesystem::path(en_emit) / name).string();
          save_text(path, canonical_dump(to_json(loids[k])));
          files.push_back(name);
        }
        report["files"] = std::move(files);
      }
      out << canonical_dump(report);
      return agree ? kOk : kNegative;
    }

    if (*sc_render) {
      Trianguloid t = trianguloid_from_json(load_json(rd_file));
      RenderStyle style;
      style.layer_tiling = rd_layers.find("tiling") != std::string::npos;
      style.layer_pseudolines = rd_layers.find("pseudolines") != std::string::npos;
      style.layer_trianguloid = rd_layers.find("trianguloid") != std::string::npos;
      detail::emit(out, rd_out, render_svg(t, style));
      return kOk;
    }

    if (*sc_flip) {
      Triangulation tau = triangulation_from_json(load_json(fl_file));
      Point b = detail::parse_point(fl_at);
      Point e = detail::parse_point(fl_edge);
      if (e.size() != 2) throw Error(Errc::InvalidInput, "--edge expects i,j");
      Point b2 = flip(tau, b, Edge{e[0], e[1]});
      out << canonical_dump(Json{{"b", b}, {"edge", Json::array({e[0], e[1]})}, {"b_prime", b2}});
      return kOk;
    }
  } catch (const Error& e) {
    Json j{{"error", errc_name(e.code())}, {"message", e.what()}};
    out << canonical_dump(j);
    err << e.what() << "\n";
    return e.code() == Errc::InvalidInput ? kUsage : kNegative;
  }
  return kUsage;
}

}  // namespace trg::cli

#endif  // TRG_CLI_HPP
