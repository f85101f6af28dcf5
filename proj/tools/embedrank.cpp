#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "embedrank/code.hpp"
#include "embedrank/design.hpp"
#include "embedrank/design_io.hpp"
#include "embedrank/embedding.hpp"
#include "embedrank/error.hpp"
#include "embedrank/geometry.hpp"
#include "embedrank/iso.hpp"
#include "embedrank/pipeline.hpp"
#include "embedrank/resolve.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace embedrank;

namespace {

struct Options {
  int workers = 0;
  bool json_out = false;
  std::string data_dir = EMBEDRANK_DATA_DIR;
};

void emit_design(const IncidenceStructure& d, const std::string& out) {
  if (out.empty()) {
    std::cout << to_des(d);
  } else {
    write_design(out, d);
  }
}

std::string join(const std::vector<std::size_t>& xs, const char* sep = " ") {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(xs[i]);
  }
  return s;
}

void print_distribution(const WeightDistribution& wd) {
  std::cout << "weight,count\n";
  for (const auto& [w, c] : wd.counts) std::cout << w << ',' << c << '\n';
}

std::vector<int> bent_truth_table(std::size_t m) {
  const std::size_t n = std::size_t{1} << (2 * m);
  std::vector<int> tt(n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    int f = 0;
    for (std::size_t i = 0; i < m; ++i) f ^= static_cast<int>(((x >> (2 * i)) & 1U) & ((x >> (2 * i + 1)) & 1U));
    tt[x] = f;
  }
  return tt;
}

/// Expected-versus-computed ledger for the reproduce targets.
class Ledger {
 public:
  void check(const std::string& name, const json& computed, const json& expected) {
    // key order is irrelevant to the comparison
    const bool ok = nlohmann::json::parse(computed.dump()) == nlohmann::json::parse(expected.dump());
    rows_.push_back({name, computed, expected, ok});
  }
  bool ok() const {
    return std::all_of(rows_.begin(), rows_.end(), [](const Row& r) { return r.ok; });
  }
  void print(bool as_json) const {
    if (as_json) {
      json j = json::array();
      for (const auto& r : rows_) j.push_back({{"check", r.name}, {"computed", r.computed}, {"expected", r.expected}, {"ok", r.ok}});
      std::cout << j.dump(2) << '\n';
      return;
    }
    std::size_t width = 0;
    for (const auto& r : rows_) width = std::max(width, r.name.size());
    for (const auto& r : rows_) {
      std::cout << (r.ok ? "ok       " : "MISMATCH ") << r.name << std::string(width - r.name.size() + 2, ' ')
                << r.computed.dump();
      if (!r.ok) std::cout << "  expected " << r.expected.dump();
      std::cout << '\n';
    }
  }

 private:
  struct Row {
    std::string name;
    json computed;
    json expected;
    bool ok;
  };
  std::vector<Row> rows_;
};

json load_expected(const Options& opt, const std::string& name) {
  const auto path = fs::path(opt.data_dir) / "expected" / (name + ".json");
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  return json::parse(in);
}

json sizes_json(const OrbitPartition& orbits) { return orbit_sizes(orbits); }

int reproduce_table(const Options& opt, const std::string& target) {
  const auto expected = load_expected(opt, target);
  IncidenceStructure d = ag_design(3, 4, 2).design;
  std::size_t block = 0;
  if (target == "table2") {
    d = discover_family(opt.workers).e1;
    block = *block_in_orbit(d, 3);
  }
  const auto gb = good_block(d, block);
  if (!gb) throw Error(ErrorCode::NotGoodBlock, "block is not good");
  const auto code = LinearCode::from_rows(gb->substructure.incidence(2));
  const auto wd = weight_distribution(code, opt.workers);
  if (!opt.json_out) print_distribution(wd);

  Ledger ledger;
  ledger.check("length", code.length(), expected["length"]);
  ledger.check("dimension", code.dimension(), expected["dimension"]);
  for (const auto& [w, c] : expected["weights"].items()) {
    ledger.check("A_" + w, wd.at(std::stoul(w)), c);
  }
  for (const auto& s : expected["weight_sums"]) {
    std::uint64_t total = 0;
    std::string name = "sum";
    for (const auto& w : s["weights"]) {
      total += wd.at(w.get<std::size_t>());
      name += "_" + std::to_string(w.get<std::size_t>());
    }
    ledger.check(name, total, s["total"]);
  }
  ledger.check("total", wd.total(), std::uint64_t{1} << code.dimension());
  if (opt.json_out) {
    ledger.print(true);
  } else {
    // CSV on stdout, comparison on stderr
    std::streambuf* saved = std::cout.rdbuf(std::cerr.rdbuf());
    ledger.print(false);
    std::cout.rdbuf(saved);
  }
  return ledger.ok() ? 0 : 1;
}

int reproduce_section5(const Options& opt) {
  const auto expected = load_expected(opt, "section5");
  Ledger ledger;
  const auto fam = discover_family(opt.workers);
  const auto& ag = fam.ag;
  ledger.check("rank_ag", rank(ag.incidence(2)), expected["rank_ag"]);
  ledger.check("rank_pg", rank(pg_design(3, 4, 2).incidence(2)), expected["rank_pg"]);
  ledger.check("rank_residual", rank(residual(ag, 0).incidence(2)), expected["rank_residual"]);

  const auto gb = *good_block(ag, 0);
  const auto classes = parallel_classes(gb.substructure, opt.workers);
  const auto res = resolutions_from_classes(gb.substructure, classes, std::nullopt, opt.workers);
  ledger.check("substructure_classes", classes.size(), expected["substructure_classes"]);
  ledger.check("substructure_resolutions", res.size(), expected["substructure_resolutions"]);
  const auto g = automorphism_group(gb.substructure);
  ledger.check("substructure_aut_order", g.order, expected["substructure_aut_order"]);
  const auto orbits = resolution_orbits(g, res);
  ledger.check("resolution_orbits", sizes_json(orbits), expected["resolution_orbits"]);
  const auto code = LinearCode::from_rows(gb.substructure.incidence(2));
  json counts = json::object();
  for (const auto& orbit : orbits) {
    counts[std::to_string(orbit.size())] =
        parallel_union_codewords(code, res[orbit.front()], 32, opt.workers).count;
  }
  ledger.check("parallel_union_counts", counts, expected["parallel_union_counts"]);
  ledger.check("thm5_required", thm5_necessary(ag, 0, std::nullopt, opt.workers).required, expected["thm5_required"]);

  const auto& first = fam.first.result;
  ledger.check("candidates", first.candidates_examined, expected["candidates"]);
  ledger.check("viable", first.viable_codes, expected["viable"]);
  const auto ag_cert = canonical_cert(ag);
  json stage = json::object();
  for (const auto& c : first.iso_classes) stage[c.cert == ag_cert ? "AG" : "E1"] = c.multiplicity;
  ledger.check("first_stage_classes", stage, expected["first_stage_classes"]);

  const auto gag = automorphism_group(ag);
  const auto g1 = automorphism_group(fam.e1);
  const auto g2 = automorphism_group(fam.e2);
  ledger.check("aut_ag", gag.order, expected["aut_ag"]);
  ledger.check("aut_e1", g1.order, expected["aut_e1"]);
  ledger.check("aut_e2", g2.order, expected["aut_e2"]);
  ledger.check("e1_block_orbits", sizes_json(block_orbits(g1)), expected["e1_block_orbits"]);
  ledger.check("e2_block_orbits", sizes_json(block_orbits(g2)), expected["e2_block_orbits"]);
  ledger.check("rank_e2", rank(fam.e2.incidence(2)), expected["rank_e2"]);
  ledger.print(opt.json_out);
  return ledger.ok() ? 0 : 1;
}

int reproduce_section6(const Options& opt) {
  const auto expected = load_expected(opt, "section6");
  Ledger ledger;
  const auto fam = discover_family(opt.workers);
  const std::vector<std::pair<std::string, const IncidenceStructure*>> designs = {
      {"AG", &fam.ag}, {"E1", &fam.e1}, {"E2", &fam.e2}};
  const auto code = sym_embedding_code(fam.ag, 2);
  ledger.check("sym_code_length", code.length(), expected["sym_code_length"]);
  ledger.check("sym_code_dimension", code.dimension(), expected["sym_code_dimension"]);
  json words = json::object();
  json found = json::object();
  json taf = json::object();
  std::uint64_t required = 0;
  const auto pg_cert = canonical_cert(pg_design(3, 4, 2));
  for (const auto& [name, d] : designs) {
    const auto s = sym_embedding_search(*d, 2, opt.workers);
    words[name] = s.weight_words;
    std::size_t iso_pg = 0;
    for (const auto& e : s.designs) iso_pg += canonical_cert(e) == pg_cert;
    found[name] = iso_pg;
    const auto t = thm_taf_necessary(*d, 2, opt.workers);
    taf[name] = t.found;
    required = t.required;
  }
  ledger.check("sym_weight_words", words, expected["sym_weight_words"]);
  ledger.check("sym_designs", found, expected["sym_designs"]);
  ledger.check("taf_required", required, expected["taf_required"]);
  ledger.check("taf_found", taf, expected["taf_found"]);
  ledger.check("johnson_85_32_21", johnson_restricted(85, 32, 21).value_or(0), expected["johnson_85_32_21"]);
  ledger.print(opt.json_out);
  return ledger.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Designs from finite geometries, p-ranks, codes and linear embeddability"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--workers", opt.workers, "worker threads (0 = all)");
  app.add_flag("--json", opt.json_out, "machine-readable output");
  app.add_option("--data", opt.data_dir, "directory holding expected/*.json");

  std::function<int()> action;
  int p = 2;
  std::string path, path2, out;
  std::size_t block = 0;

  auto* gen = app.add_subcommand("gen", "generate a design (.des to stdout or -o)");
  gen->require_subcommand(1);
  std::size_t gn = 0, gq = 0, gd = 0, gm = 0, gr = 0;
  for (const char* fam : {"ag", "pg"}) {
    auto* sub = gen->add_subcommand(fam, std::string(fam) == "ag" ? "AG_d(n,q)" : "PG_d(n,q)");
    sub->add_option("n", gn)->required();
    sub->add_option("q", gq)->required();
    sub->add_option("d", gd)->required();
    sub->add_option("-o,--out", out, "output file (default stdout)");
    const std::string kind = fam;
    sub->callback([&, kind] {
      action = [&, kind] {
        emit_design(kind == "ag" ? ag_design(gn, gq, gd).design : pg_design(gn, gq, gd), out);
        return 0;
      };
    });
  }
  auto* gsdp = gen->add_subcommand("sdp", "symmetric SDP design from x1x2 + x3x4 + ... on 2m variables");
  gsdp->add_option("m", gm)->required();
  gsdp->add_option("-o,--out", out, "output file (default stdout)");
  gsdp->callback([&] {
    action = [&] {
      emit_design(min_weight_design(sdp_code(bent_truth_table(gm)), opt.workers), out);
      return 0;
    };
  });
  auto* grm = gen->add_subcommand("rm", "minimum-weight design of RM(r,m)");
  grm->add_option("r", gr)->required();
  grm->add_option("m", gm)->required();
  grm->add_option("-o,--out", out, "output file (default stdout)");
  grm->callback([&] {
    action = [&] {
      emit_design(min_weight_design(rm_code(gr, gm), opt.workers), out);
      return 0;
    };
  });

  auto* rk = app.add_subcommand("rank", "p-rank of the incidence matrix");
  rk->add_option("design", path)->required();
  rk->add_option("-p", p, "field characteristic (default 2)");
  rk->callback([&] {
    action = [&] {
      std::cout << rank(read_design(path).incidence(p)) << '\n';
      return 0;
    };
  });

  auto* wd = app.add_subcommand("wdist", "weight distribution as CSV");
  bool cols = false, rows_flag = false;
  wd->add_option("design", path)->required();
  wd->add_flag("--rows", rows_flag, "code spanned by the point rows (default)");
  wd->add_flag("--cols", cols, "code spanned by the block columns");
  wd->add_option("-p", p, "field characteristic (default 2)");
  wd->callback([&] {
    action = [&] {
      const auto m = read_design(path).incidence(p);
      const auto code = cols ? LinearCode::from_cols(m) : LinearCode::from_rows(m);
      print_distribution(weight_distribution(code, opt.workers));
      return 0;
    };
  });

  bool keep_empty = false;
  for (const char* name : {"residual", "derived"}) {
    auto* sub = app.add_subcommand(name, std::string(name) + " design with respect to a block");
    sub->add_option("design", path)->required();
    sub->add_option("block", block)->required();
    sub->add_flag("--keep-empty", keep_empty, "keep empty blocks");
    sub->add_option("-o,--out", out, "output file (default stdout)");
    const std::string kind = name;
    sub->callback([&, kind] {
      action = [&, kind] {
        const auto d = read_design(path);
        emit_design(kind == "residual" ? residual(d, block, keep_empty) : derived(d, block, keep_empty), out);
        return 0;
      };
    });
  }

  std::optional<std::size_t> limit;
  auto* rs = app.add_subcommand("resolutions", "parallel classes and resolutions");
  rs->add_option("design", path)->required();
  rs->add_option("--limit", limit, "print at most this many resolutions");
  rs->callback([&] {
    action = [&] {
      const auto d = read_design(path);
      const auto classes = parallel_classes(d, opt.workers);
      const auto res = resolutions_from_classes(d, classes, limit, opt.workers);
      if (opt.json_out) {
        json j;
        j["classes"] = classes;
        json rj = json::array();
        for (const auto& r : res) rj.push_back(r.classes);
        j["resolutions"] = rj;
        std::cout << j.dump(2) << '\n';
      } else {
        std::cout << "parallel classes: " << classes.size() << "\nresolutions: " << res.size() << '\n';
      }
      return 0;
    };
  });

  auto* gbk = app.add_subcommand("goodblocks", "blocks satisfying the good-block condition");
  gbk->add_option("design", path)->required();
  gbk->callback([&] {
    action = [&] {
      const auto d = read_design(path);
      std::vector<std::size_t> good;
      for (std::size_t j = 0; j < d.b(); ++j) {
        if (good_block(d, j)) good.push_back(j);
      }
      if (opt.json_out) {
        std::cout << json(good).dump() << '\n';
      } else {
        std::cout << "good blocks: " << good.size() << " of " << d.b() << '\n' << join(good) << '\n';
      }
      return 0;
    };
  });

  auto* emb = app.add_subcommand("embeddable", "rank test for linear embeddability");
  emb->add_option("design", path)->required();
  emb->add_option("block", block)->required();
  emb->add_option("-p", p, "field characteristic (default 2)");
  emb->callback([&] {
    action = [&] {
      const auto r = embeddability(read_design(path), block, p);
      if (opt.json_out) {
        std::cout << json{{"rank_full", r.rank_full}, {"rank_residual", r.rank_residual}, {"embeddable", r.embeddable}}
                         .dump()
                  << '\n';
      } else {
        std::cout << "rank " << r.rank_full << ", residual rank " << r.rank_residual << ": "
                  << (r.embeddable ? "embeddable" : "not embeddable") << '\n';
      }
      return 0;
    };
  });

  std::optional<std::size_t> res_index;
  auto* t5 = app.add_subcommand("thm5", "parallel-union codeword count against C(q^(n-1), 2)");
  t5->add_option("design", path)->required();
  t5->add_option("block", block)->required();
  t5->add_option("--resolution", res_index, "index into the resolutions of D'' instead of the induced one");
  t5->callback([&] {
    action = [&] {
      const auto d = read_design(path);
      std::optional<Resolution> r;
      if (res_index) {
        const auto gb = good_block(d, block);
        if (!gb) throw Error(ErrorCode::NotGoodBlock, "block is not good");
        const auto all = resolutions(gb->substructure, std::nullopt, opt.workers);
        if (*res_index >= all.size()) throw Error(ErrorCode::BadIndex, "resolution index out of range");
        r = all[*res_index];
      }
      const auto c = thm5_necessary(d, block, r, opt.workers);
      if (opt.json_out) {
        std::cout << json{{"required", c.required}, {"found", c.found}, {"passes", c.passes}}.dump() << '\n';
      } else {
        std::cout << "required " << c.required << ", found " << c.found << ": " << (c.passes ? "passes" : "fails")
                  << '\n';
      }
      return 0;
    };
  });

  auto* es = app.add_subcommand("embed-search", "search for affine resolvable designs containing the residual");
  es->add_option("design", path)->required();
  es->add_option("block", block)->required();
  es->add_option("--out", out, "directory for the found designs");
  es->callback([&] {
    action = [&] {
      const auto res = embedding_search(read_design(path), block, std::nullopt, opt.workers);
      std::cout << search_report_json(res);
      if (!out.empty()) {
        fs::create_directories(out);
        for (std::size_t i = 0; i < res.designs.size(); ++i) {
          write_design(fs::path(out) / ("design_" + std::to_string(res.designs[i].candidate) + ".des"),
                       res.designs[i].design);
        }
      }
      return 0;
    };
  });

  auto* se = app.add_subcommand("sym-embed", "embedding into a symmetric design");
  se->add_option("design", path)->required();
  se->add_option("-p", p, "field characteristic (default 2)");
  se->add_option("-o,--out", out, "write the symmetric design found");
  se->callback([&] {
    action = [&] {
      const auto s = sym_embedding_search(read_design(path), p, opt.workers);
      if (opt.json_out) {
        std::cout << json{{"weight", s.weight}, {"needed", s.needed}, {"weight_words", s.weight_words},
                          {"designs", s.designs.size()}}
                         .dump()
                  << '\n';
      } else {
        std::cout << "weight-" << s.weight << " codewords: " << s.weight_words << " (" << s.needed << " needed)\n"
                  << "symmetric designs: " << s.designs.size() << '\n';
      }
      if (!out.empty() && !s.designs.empty()) write_design(out, s.designs.front());
      return 0;
    };
  });

  auto* is = app.add_subcommand("iso", "isomorphism test via canonical certificates");
  is->add_option("design1", path)->required();
  is->add_option("design2", path2)->required();
  is->callback([&] {
    action = [&] {
      const auto a = canonical_cert(read_design(path));
      const auto b = canonical_cert(read_design(path2));
      if (opt.json_out) {
        std::cout << json{{"isomorphic", a == b}, {"cert1", a.hex()}, {"cert2", b.hex()}}.dump() << '\n';
      } else {
        std::cout << (a == b ? "isomorphic" : "not isomorphic") << '\n' << a.hex() << '\n' << b.hex() << '\n';
      }
      return 0;
    };
  });

  std::string orbit_kind;
  auto* au = app.add_subcommand("aut", "automorphism group order and orbits");
  au->add_option("design", path)->required();
  au->add_option("--orbits", orbit_kind)->check(CLI::IsMember({"points", "blocks", "resolutions"}));
  au->callback([&] {
    action = [&] {
      const auto d = read_design(path);
      const auto g = automorphism_group(d);
      json j;
      j["order"] = g.order;
      j["generators"] = g.generators.size();
      if (!orbit_kind.empty()) {
        OrbitPartition orbits;
        if (orbit_kind == "points") {
          orbits = point_orbits(g);
        } else if (orbit_kind == "blocks") {
          orbits = block_orbits(g);
        } else {
          orbits = resolution_orbits(g, resolutions(d, std::nullopt, opt.workers));
        }
        j["orbit_sizes"] = orbit_sizes(orbits);
        j["orbits"] = orbits;
      }
      if (opt.json_out) {
        std::cout << j.dump(2) << '\n';
      } else {
        std::cout << "order " << g.order << '\n';
        if (!orbit_kind.empty()) std::cout << orbit_kind << " orbit sizes: " << join(orbit_sizes(j["orbits"].get<OrbitPartition>())) << '\n';
      }
      return 0;
    };
  });

  std::string target;
  auto* rp = app.add_subcommand("reproduce", "run a stored computation and compare with the expected values");
  rp->add_option("target", target)->required()->check(CLI::IsMember({"table1", "table2", "section5", "section6"}));
  rp->callback([&] {
    action = [&] {
      if (target == "section5") return reproduce_section5(opt);
      if (target == "section6") return reproduce_section6(opt);
      return reproduce_table(opt, target);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  try {
    return action ? action() : 2;
  } catch (const Error& e) {
    std::cerr << json{{"error", error_name(e.code())}, {"message", e.what()}}.dump() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "Exception"}, {"message", e.what()}}.dump() << '\n';
    return 1;
  }
}
