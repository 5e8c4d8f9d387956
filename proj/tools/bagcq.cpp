#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bagcq/bageval/eval.hpp"
#include "bagcq/lab/lemmas.hpp"
#include "bagcq/lab/search.hpp"
#include "bagcq/polyrep/polynomial.hpp"
#include "bagcq/reductions/reductions.hpp"
#include "bagcq/relcore/text.hpp"
#include "bagcq/xform/transform.hpp"
#include "bagcq/xform/trips.hpp"

namespace {

using namespace bagcq;

constexpr int kExitHold = 0;
constexpr int kExitCounterexample = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;

class UsageError : public Error {
 public:
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

UCQ load_query(const std::string& path) {
  QueryParseOptions opts;
  opts.allow_aliens = true;
  return parse_query(read_file(path), std::nullopt, opts);
}

CQ load_cq(const std::string& path) {
  UCQ q = load_query(path);
  if (q.size() != 1) throw UsageError("'" + path + "' must hold a single conjunctive query");
  return q[0];
}

Structure load_structure(const std::string& path) { return parse_structure(read_file(path)); }

Polynomial load_polynomial(const std::string& path) { return parse_polynomial(read_file(path)); }

std::string trip_images(const std::vector<VertexId>& images, const Structure& d) {
  std::string out;
  for (std::size_t j = 0; j < images.size(); ++j)
    out += (j ? "," : "") + alien_name(j + 1) + "=" + d.name(images[j]);
  return out;
}

std::string destinations(const TripClass& cls, const Structure& d) {
  std::string out;
  for (auto v : cls.destinations) out += (out.empty() ? "" : ",") + d.name(v);
  return out.empty() ? "-" : out;
}

struct Options {
  std::string format = "text";
  bool tsv() const { return format == "tsv"; }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bag-semantics conjunctive query toolkit"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"text", "tsv"}));

  std::function<int()> run;

  // eval
  std::string query_path, structure_path;
  bool naive = false;
  auto* eval_cmd = app.add_subcommand("eval", "Count homomorphisms of a (U)CQ into a structure");
  eval_cmd->add_option("--query", query_path)->required();
  eval_cmd->add_option("--structure", structure_path)->required();
  eval_cmd->add_flag("--naive", naive, "Use the enumeration oracle");
  eval_cmd->callback([&] {
    run = [&] {
      UCQ q = load_query(query_path);
      Structure d = load_structure(structure_path);
      Count n = naive ? apply_naive(q, d) : apply(q, d);
      std::cout << (opt.tsv() ? "count\t" : "") << n << "\n";
      return kExitHold;
    };
  });

  // contain
  std::string ratio = "1", qs_path, qb_path;
  auto* contain_cmd = app.add_subcommand("contain", "Check r * qs <= qb on one structure");
  contain_cmd->add_option("--r", ratio, "Scale as N/D");
  contain_cmd->add_option("--qs", qs_path)->required();
  contain_cmd->add_option("--qb", qb_path)->required();
  contain_cmd->add_option("--structure", structure_path)->required();
  contain_cmd->callback([&] {
    run = [&] {
      ScaledCheck r = check_scaled_containment_at(parse_rational(ratio), load_query(qs_path),
                                                  load_query(qb_path), load_structure(structure_path));
      const char* verdict = r.holds ? "HOLDS" : "VIOLATED";
      if (opt.tsv()) std::cout << verdict << "\t" << r.lhs << "\t" << r.rhs << "\n";
      else std::cout << verdict << "\nqs: " << r.lhs << "\nqb: " << r.rhs << "\n";
      return r.holds ? kExitHold : kExitCounterexample;
    };
  });

  // cqize
  auto* cqize_cmd = app.add_subcommand("cqize", "CQ-ize a pleasant UCQ");
  cqize_cmd->add_option("--query", query_path)->required();
  cqize_cmd->callback([&] {
    run = [&] {
      std::cout << to_text_with_signature(UCQ(cqize(load_query(query_path))));
      return kExitHold;
    };
  });

  // marsify
  auto* marsify_cmd = app.add_subcommand("marsify", "Embed a structure as the view from mars");
  marsify_cmd->add_option("--structure", structure_path)->required();
  marsify_cmd->callback([&] {
    run = [&] {
      std::cout << to_string(marsify(load_structure(structure_path)));
      return kExitHold;
    };
  });

  // relativize
  std::string at;
  auto* rel_cmd = app.add_subcommand("relativize", "Relativize a CQ to a variable or @constant");
  rel_cmd->add_option("--at", at)->required();
  rel_cmd->add_option("--query", query_path)->required();
  rel_cmd->callback([&] {
    run = [&] {
      Term x = at.starts_with("@") ? Term::constant(at.substr(1)) : Term::var(at);
      std::cout << to_text_with_signature(UCQ(relativize(x, load_cq(query_path))));
      return kExitHold;
    };
  });

  // trips
  std::size_t arity = 1;
  std::string trips_query;
  auto* trips_cmd = app.add_subcommand("trips", "List the trips of a good structure");
  trips_cmd->add_option("--arity", arity)->required();
  trips_cmd->add_option("--structure", structure_path)->required();
  trips_cmd->add_option("--query", trips_query, "Pleasant UCQ whose per-trip counts to print");
  trips_cmd->callback([&] {
    run = [&] {
      Structure d = load_structure(structure_path);
      std::optional<UCQ> q;
      if (!trips_query.empty()) {
        q = load_query(trips_query);
        arity = q->size();
      }
      std::optional<TripEvaluator> eval;
      if (q) eval.emplace(*q, d);
      Count total = 0;
      std::size_t n = 0;
      for_each_trip(arity, d, [&](const std::vector<VertexId>& images) {
        TripClass cls = classify_trip(images, d);
        std::string count;
        if (eval) {
          Count v = eval->value(images);
          total += v;
          count = v.str();
        }
        if (opt.tsv())
          std::cout << trip_images(images, d) << "\t" << to_string(cls.kind) << "\t" << destinations(cls, d)
                    << (eval ? "\t" + count : "") << "\n";
        else
          std::cout << trip_images(images, d) << "  " << to_string(cls.kind) << "  destinations "
                    << destinations(cls, d) << (eval ? "  count " + count : "") << "\n";
        ++n;
        return true;
      });
      if (opt.tsv()) std::cout << "trips\t" << n << (eval ? "\ttotal\t" + total.str() : "") << "\n";
      else std::cout << n << " trips" << (eval ? ", total " + total.str() : "") << "\n";
      return kExitHold;
    };
  });

  // poly2ucq
  std::string poly_text, poly_path;
  auto* p2u_cmd = app.add_subcommand("poly2ucq", "Encode a polynomial as a UCQ over unary relations");
  auto* poly_opt = p2u_cmd->add_option("--poly", poly_text, "Polynomial text");
  p2u_cmd->add_option("--poly-file", poly_path)->excludes(poly_opt);
  p2u_cmd->callback([&] {
    run = [&] {
      if (poly_text.empty() && poly_path.empty()) throw UsageError("give --poly or --poly-file");
      Polynomial p = poly_path.empty() ? parse_polynomial(poly_text) : load_polynomial(poly_path);
      std::cout << to_text_with_signature(poly_to_ucq(p));
      return kExitHold;
    };
  });

  // reduce
  std::string which, eps = "1", out_prefix;
  std::vector<std::string> inputs;
  auto* reduce_cmd = app.add_subcommand("reduce", "Build a reduction instance and write it out");
  reduce_cmd->add_option("construction", which)
      ->required()
      ->check(CLI::IsMember({"thm1", "thm2", "thm3", "cor5", "pleasantize"}));
  reduce_cmd->add_option("--eps", eps, "Epsilon for thm3 as N/D");
  reduce_cmd->add_option("--in", inputs, "Input files")->required();
  reduce_cmd->add_option("--out", out_prefix, "Output path prefix")->required();
  reduce_cmd->callback([&] {
    run = [&] {
      auto need = [&](std::size_t k) {
        if (inputs.size() != k)
          throw UsageError(which + " takes " + std::to_string(k) + " input file(s)");
      };
      nlohmann::json manifest;
      manifest["construction"] = which;
      if (which == "pleasantize") {
        need(1);
        write_file(out_prefix + ".q", to_text_with_signature(pleasantize(load_query(inputs[0]))));
        manifest["files"] = {{"q", out_prefix + ".q"}};
      } else {
        std::optional<ReductionInstance> inst;
        if (which == "thm1") {
          need(2);
          inst = build_thm1(load_cq(inputs[0]), load_query(inputs[1]));
        } else if (which == "thm2") {
          need(2);
          inst = build_thm2(load_polynomial(inputs[0]), load_polynomial(inputs[1]));
        } else if (which == "thm3") {
          need(2);
          inst = build_thm3(load_polynomial(inputs[0]), load_polynomial(inputs[1]), parse_rational(eps));
        } else {
          need(2);
          inst = cor5_compose(load_cq(inputs[0]), load_cq(inputs[1]));
        }
        write_file(out_prefix + ".qs", to_text_with_signature(inst->qs));
        write_file(out_prefix + ".qb", to_text_with_signature(inst->qb));
        manifest["theorem"] = inst->provenance;
        manifest["mode"] = to_string(inst->mode);
        manifest["scale"] = to_string(inst->scale);
        manifest["parameters"] = inst->params;
        manifest["files"] = {{"qs", out_prefix + ".qs"}, {"qb", out_prefix + ".qb"}};
      }
      manifest["inputs"] = inputs;
      write_file(out_prefix + ".manifest.json", manifest.dump(2) + "\n");
      std::cout << manifest.dump(opt.tsv() ? -1 : 2) << "\n";
      return kExitHold;
    };
  });

  // check-lemma
  GenConfig cfg;
  std::string lemma;
  std::size_t max_size = 3;
  bool list = false;
  auto* lemma_cmd = app.add_subcommand("check-lemma", "Run one registered property check");
  auto* name_opt = lemma_cmd->add_option("--name", lemma, "Lemma id, or 'all'");
  lemma_cmd->add_flag("--list", list, "Print the registered ids")->excludes(name_opt);
  lemma_cmd->add_option("--seed", cfg.seed);
  lemma_cmd->add_option("--max-size", max_size, "Largest structure size");
  lemma_cmd->add_option("--samples", cfg.samples);
  lemma_cmd->add_flag("--exhaustive", cfg.exhaustive, "Enumerate structures instead of sampling");
  lemma_cmd->add_flag("--iso", cfg.iso_reduce, "One structure per isomorphism class");
  lemma_cmd->callback([&] {
    run = [&] {
      if (list) {
        for (const auto& id : lemma_ids()) std::cout << id << "\n";
        return kExitHold;
      }
      if (lemma.empty()) throw UsageError("give --name or --list");
      cfg.max_vertices = max_size;
      std::cout << "# cfg " << to_string(cfg) << "\n";
      std::vector<std::string> ids = lemma == "all" ? lemma_ids() : std::vector<std::string>{lemma};
      bool all_passed = true;
      for (const auto& id : ids) {
        LemmaReport r = check_lemma(id, cfg);
        all_passed = all_passed && !r.counterexample;
        if (opt.tsv()) {
          std::cout << r.id << "\t" << r.run << "\t" << r.passed << "\t" << r.elapsed.count() << "\n";
        } else {
          std::cout << to_string(r) << "\n";
        }
      }
      return all_passed ? kExitHold : kExitCounterexample;
    };
  });

  // search
  bool nontrivial = false;
  GenConfig search_cfg;
  std::size_t search_size = 3;
  auto* search_cmd = app.add_subcommand("search", "Look for a structure violating r * qs <= qb");
  search_cmd->add_option("--qs", qs_path)->required();
  search_cmd->add_option("--qb", qb_path)->required();
  search_cmd->add_option("--r", ratio, "Scale as N/D");
  search_cmd->add_option("--max-size", search_size);
  search_cmd->add_flag("--nontrivial", nontrivial, "Only structures with mars != venus");
  search_cmd->add_option("--seed", search_cfg.seed);
  search_cmd->add_option("--samples", search_cfg.samples);
  search_cmd->add_flag("--exhaustive", search_cfg.exhaustive);
  search_cmd->add_option("--cap", search_cfg.fact_space_cap, "Largest free fact space to enumerate");
  search_cmd->callback([&] {
    run = [&] {
      ReductionInstance inst{load_query(qs_path), load_query(qb_path)};
      inst.scale = parse_rational(ratio);
      inst.mode = nontrivial ? ContainmentMode::NonTrivialOnly : ContainmentMode::AllStructures;
      search_cfg.max_vertices = search_size;
      std::cout << "# cfg " << to_string(search_cfg) << " mode=" << to_string(inst.mode) << "\n";
      auto hit = search_counterexample(inst, search_cfg);
      if (!hit) {
        std::cout << (opt.tsv() ? "none\n" : "no counterexample within bounds\n");
        return kExitHold;
      }
      if (opt.tsv()) std::cout << "VIOLATED\t" << hit->lhs << "\t" << hit->rhs << "\n";
      else std::cout << "VIOLATED\nqs: " << hit->lhs << "\nqb: " << hit->rhs << "\n";
      std::cout << to_string(hit->d);
      return kExitCounterexample;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }
  try {
    return run();
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kExitCap;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
