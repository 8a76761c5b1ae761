// Command-line front door: generators, folds, unfoldings, checks, exports.
// Exit codes: 0 success, 1 domain error or failed check (with a WITNESS
// line), 2 usage error.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "orbifold/dot.hpp"
#include "orbifold/flat.hpp"
#include "orbifold/json_io.hpp"
#include "orbifold/musicgen.hpp"
#include "orbifold/partialcat.hpp"
#include "orbifold/unfolding.hpp"

using namespace orbifold;

namespace {

int fail_with_witness(const std::string& kind, const std::string& witness) {
  std::cout << "WITNESS: kind=" << kind << " " << witness << "\n";
  return 1;
}

std::vector<GroupElem> parse_window(const AnnotationGroup& g,
                                    const std::string& spec) {
  // "z:-1..1" or "c0:-1..1,c1:0..2": one range per free coordinate.
  std::vector<std::pair<long long, long long>> ranges;
  std::size_t pos = 0;
  while (pos < spec.size()) {
    std::size_t comma = spec.find(',', pos);
    if (comma == std::string::npos) comma = spec.size();
    std::string part = spec.substr(pos, comma - pos);
    auto colon = part.find(':');
    auto dots = part.find("..");
    if (colon == std::string::npos || dots == std::string::npos)
      throw DomainError(ErrorKind::BadInput, "bad window spec " + part);
    long long lo = std::stoll(part.substr(colon + 1, dots - colon - 1));
    long long hi = std::stoll(part.substr(dots + 2));
    ranges.push_back({lo, hi});
    pos = comma + 1;
  }
  return box_window(g, ranges);
}

std::string strip_json_suffix(const std::string& path) {
  const std::string suffix = ".json";
  if (path.size() > suffix.size() &&
      path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0)
    return path.substr(0, path.size() - suffix.size());
  return path;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"orbifold: fold, annotate, unfold and check small categories"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "emit a generated fixture");
  std::string fixture, gen_out = "out.json";
  int n = 12, k = 3, h = 4, m = 3, k2 = 2, h2 = 1, p = 4, q = 3, w1 = 7,
      w2 = 7, third = 3;
  long long dmax = 24;
  gen->add_option("--fixture", fixture,
                  "fix_k|chain_bundle|grid_bundle|groupoid|groupoid_chain|"
                  "zn_fold|shepard|diatonic|tonnetz|lattice_window|glued_tiles")
      ->required();
  gen->add_option("-o,--out", gen_out);
  gen->add_option("--n", n);
  gen->add_option("--k", k);
  gen->add_option("--h", h);
  gen->add_option("--m", m);
  gen->add_option("--k2", k2);
  gen->add_option("--h2", h2);
  gen->add_option("--dmax", dmax);
  gen->add_option("--p", p);
  gen->add_option("--q", q);
  gen->add_option("--w1", w1);
  gen->add_option("--w2", w2);
  gen->add_option("--third-period", third);

  auto* fold = app.add_subcommand("fold", "orbit category + natural annotation");
  std::string fold_in, fold_out = "rep.json", fold_transversal;
  fold->add_option("--action", fold_in)->required();
  fold->add_option("-o,--out", fold_out);
  fold->add_option("--transversal", fold_transversal,
                   "comma separated vertex names (default: first)");

  auto* unf = app.add_subcommand("unfold", "unfold a representation");
  std::string unf_in, unf_out = "unfolded.json", unf_window, unf_dot;
  unf->add_option("--rep", unf_in)->required();
  unf->add_option("-o,--out", unf_out);
  unf->add_option("--window", unf_window, "box window, e.g. z:-1..1");
  unf->add_option("--dot", unf_dot);

  auto* flat = app.add_subcommand("flatten",
                                  "flat orbit category / flat representation");
  std::string flat_cat, flat_action, flat_vertex, flat_out = "flat.json";
  flat->add_option("--category", flat_cat, "flat orbit category of a category");
  flat->add_option("--action", flat_action,
                   "flat representation of a right-normal action");
  flat->add_option("--vertex", flat_vertex, "base vertex for G (with --action)");
  flat->add_option("-o,--out", flat_out);

  auto* check = app.add_subcommand("check", "validity and predicate checks");
  std::string check_in, check_group, check_reference, check_flags;
  bool chk_category = false, chk_action = false, chk_foldable = false,
       chk_semiregular = false, chk_translative = false,
       chk_right_normal = false, chk_annotation = false, chk_flat = false;
  std::uint64_t budget = default_budget();
  int max_len = 6;
  check->add_option("--input", check_in)->required();
  check->add_flag("--category", chk_category);
  check->add_flag("--action", chk_action);
  check->add_flag("--foldable", chk_foldable);
  check->add_flag("--semiregular", chk_semiregular);
  check->add_flag("--translative", chk_translative);
  check->add_flag("--right-normal", chk_right_normal);
  check->add_flag("--annotation", chk_annotation);
  check->add_flag("--flat", chk_flat);
  check->add_option("--flags", check_flags, "all: property catalogue table");
  check->add_option("--group", check_group, "S action JSON for the catalogue");
  check->add_option("--reference", check_reference,
                    "reference category for completion checks");
  check->add_option("--budget", budget);
  check->add_option("--max-len", max_len);

  auto* iso = app.add_subcommand("iso", "isomorphism search");
  std::string iso_a, iso_b;
  std::uint64_t iso_budget = default_budget();
  iso->add_option("--a", iso_a)->required();
  iso->add_option("--b", iso_b)->required();
  iso->add_option("--budget", iso_budget);

  auto* exp = app.add_subcommand("export", "DOT export");
  std::string exp_in, exp_out = "out.dot";
  bool exp_ids = false;
  exp->add_option("--input", exp_in)->required();
  exp->add_option("-o,--out", exp_out);
  exp->add_flag("--include-identities", exp_ids);

  auto* demo = app.add_subcommand("demo", "end-to-end demonstrations");
  std::string demo_name = "roundtrip", demo_fixture = "chain_bundle";
  demo->add_option("name", demo_name, "roundtrip");
  demo->add_option("--fixture", demo_fixture);
  demo->add_option("--k", k);
  demo->add_option("--h", h);
  demo->add_option("--m", m);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    if (*gen) {
      if (fixture == "fix_k") {
        FixK fk = gen_fix_k();
        std::string base = strip_json_suffix(gen_out);
        save_json_file(base + ".json", category_to_json(fk.cat));
        Json actions;
        actions["klein"] = action_to_json(fk.klein);
        actions["cyclic"] = action_to_json(fk.cyclic);
        save_json_file(base + ".actions.json", actions);
        std::cout << base << ".json\n" << base << ".actions.json\n";
      } else if (fixture == "chain_bundle") {
        save_json_file(gen_out, action_to_json(gen_chain_bundle(k, h)));
      } else if (fixture == "grid_bundle") {
        save_json_file(gen_out, action_to_json(gen_grid_bundle(k, h, k2, h2)));
      } else if (fixture == "groupoid") {
        save_json_file(gen_out, action_to_json(gen_cyclic_groupoid(m)));
      } else if (fixture == "groupoid_chain") {
        save_json_file(gen_out, action_to_json(gen_groupoid_chain(m, h)));
      } else if (fixture == "zn_fold") {
        ZnFold zn = gen_zn_fold(n, dmax);
        Json j;
        j["window"] = category_to_json(zn.window);
        j["representation"] = representation_to_json(zn.rep);
        j["flat"] = flat_rep_to_json(zn.flat);
        save_json_file(gen_out, j);
      } else if (fixture == "shepard") {
        save_json_file(gen_out, flat_rep_to_json(gen_shepard(n)));
      } else if (fixture == "diatonic") {
        DiatonicEmbedding d = gen_diatonic();
        Json j;
        j["scale"] = category_to_json(d.scale);
        j["target"] = category_to_json(d.target);
        Json vm = Json::object(), am = Json::object();
        for (VertexId v = 0; v < static_cast<VertexId>(d.scale.vertex_count());
             ++v)
          vm[d.scale.vertex_name(v)] = d.target.vertex_name(d.emb.vmap[v]);
        for (ArrowId a = 0; a < static_cast<ArrowId>(d.scale.arrow_count());
             ++a)
          am[d.scale.arrow_name(a)] = d.target.arrow_name(d.emb.amap[a]);
        j["embedding"] = Json{{"vertices", vm}, {"arrows", am}};
        save_json_file(gen_out, j);
      } else if (fixture == "tonnetz") {
        save_json_file(gen_out, flat_rep_to_json(gen_tonnetz(third)));
      } else if (fixture == "lattice_window") {
        save_json_file(
            gen_out, category_to_json(gen_lattice_window(p, q, w1, w2).window));
      } else if (fixture == "glued_tiles") {
        ToneSystem t = gen_glued_tiles();
        Json j;
        j["tones"] = t.tones;
        j["group"] = annotation_group_to_json(t.group);
        Json rows = Json::array();
        for (std::size_t i = 0; i < t.tones.size(); ++i)
          for (std::size_t jj = 0; jj < t.tones.size(); ++jj)
            rows.push_back(Json::array(
                {t.tones[i], t.tones[jj], t.group.to_string(t.delta[i][jj])}));
        j["delta"] = rows;
        save_json_file(gen_out, j);
      } else {
        std::cerr << "unknown fixture " << fixture << "\n";
        return 2;
      }
      return 0;
    }

    if (*fold) {
      CategoryAction a = action_from_json(load_json_file(fold_in));
      Transversal t;
      if (fold_transversal.empty()) {
        t = choose_transversal(a);
      } else {
        std::vector<VertexId> given;
        std::size_t pos = 0;
        while (pos < fold_transversal.size()) {
          std::size_t comma = fold_transversal.find(',', pos);
          if (comma == std::string::npos) comma = fold_transversal.size();
          given.push_back(
              a.category.vertex(fold_transversal.substr(pos, comma - pos)));
          pos = comma + 1;
        }
        t = choose_transversal(a, given);
      }
      Representation rep = build_representation(a, t);
      save_json_file(fold_out, representation_to_json(rep));
      std::cout << "folded: " << rep.cat.vertex_count() << " classes, "
                << rep.cat.arrow_count() << " arrow classes\n";
      return 0;
    }

    if (*unf) {
      Representation rep = representation_from_json(load_json_file(unf_in));
      Unfolding u =
          unf_window.empty()
              ? unfold(rep)
              : bounded_unfold(rep, parse_window(rep.ann.group, unf_window));
      save_json_file(unf_out, category_to_json(u.cat));
      if (!unf_dot.empty()) {
        std::ofstream dotfile(unf_dot);
        dotfile << to_dot(u.cat);
      }
      std::cout << "unfolded: " << u.cat.vertex_count() << " vertices, "
                << u.cat.arrow_count() << " arrows\n";
      return 0;
    }

    if (*flat) {
      if (!flat_cat.empty()) {
        Category c = category_from_json(load_json_file(flat_cat));
        FlatOrbit fo = flat_orbit_category(c);
        save_json_file(flat_out, category_to_json(fo.cat));
      } else if (!flat_action.empty()) {
        CategoryAction a = action_from_json(load_json_file(flat_action));
        Transversal t = choose_transversal(a);
        VertexId x = flat_vertex.empty() ? t.chosen.front()
                                         : a.category.vertex(flat_vertex);
        FlatRep f = flat_rep_from_orbit(a, t, x);
        save_json_file(flat_out, flat_rep_to_json(f));
      } else {
        std::cerr << "flatten needs --category or --action\n";
        return 2;
      }
      return 0;
    }

    if (*check) {
      Json j = load_json_file(check_in);
      int failures = 0;
      if (chk_category) {
        auto rep = validate_category(
            category_from_json(j.contains("category") ? j.at("category") : j));
        std::cout << "category: " << (rep.ok() ? "valid" : "invalid") << "\n";
        if (!rep.ok()) {
          ++failures;
          fail_with_witness("InvalidCategory",
                            rep.violations.front().law + " " +
                                rep.violations.front().witness);
        }
      }
      if (chk_action || chk_foldable || chk_semiregular || chk_translative ||
          chk_right_normal) {
        CategoryAction a = action_from_json(j);
        if (chk_action) {
          auto rep = validate_category(a.category);
          auto arep = check_action(a);
          bool ok = rep.ok() && arep.ok();
          std::cout << "action: " << (ok ? "valid" : "invalid") << "\n";
          if (!ok) {
            ++failures;
            const auto& v =
                rep.ok() ? arep.violations.front() : rep.violations.front();
            fail_with_witness("InvalidAction", v.law + " " + v.witness);
          }
        }
        if (chk_foldable) {
          auto res = is_foldable(a);
          std::cout << "foldable: " << (res.ok ? "true" : "false") << "\n";
          if (!res.ok) {
            ++failures;
            fail_with_witness("NotFoldable", res.witness);
          }
        }
        if (chk_semiregular) {
          auto res = is_semiregular(a);
          std::cout << "semiregular: " << (res.ok ? "true" : "false") << "\n";
          if (!res.ok) {
            ++failures;
            fail_with_witness("NotSemiRegular", res.witness);
          }
        }
        if (chk_translative) {
          auto res = is_translative(a, budget);
          std::cout << "translative: " << (res.ok ? "true" : "false") << "\n";
          if (!res.ok) {
            ++failures;
            fail_with_witness("NotTranslative", res.witness);
          }
        }
        if (chk_right_normal) {
          auto res = is_right_normal(a, budget);
          std::cout << "right-normal: " << (res.ok ? "true" : "false") << "\n";
          if (!res.ok) {
            ++failures;
            fail_with_witness("NotRightNormal", res.witness);
          }
        }
      }
      if (chk_annotation) {
        Representation rep = representation_from_json(j);
        auto report = check_annotation(rep.cat, rep.ann);
        std::cout << "annotation: " << (report.ok() ? "valid" : "invalid")
                  << "\n";
        if (!report.ok()) {
          ++failures;
          fail_with_witness("InvalidAnnotation",
                            report.violations.front().law + " " +
                                report.violations.front().witness);
        }
      }
      if (chk_flat) {
        FlatRep f = flat_rep_from_json(j);
        auto report = check_flat_rep(f);
        std::cout << "flat-representation: "
                  << (report.ok() ? "valid" : "invalid") << "\n";
        if (!report.ok()) {
          ++failures;
          fail_with_witness("InvalidFlatRep",
                            report.violations.front().law + " " +
                                report.violations.front().witness);
        }
      }
      if (check_flags == "all") {
        FlatRep f = flat_rep_from_json(j);
        CategoryAction s;
        CategoryAction* sp = nullptr;
        if (!check_group.empty()) {
          s = action_from_json(load_json_file(check_group));
          sp = &s;
        }
        Category ref = check_reference.empty()
                           ? f.base
                           : category_from_json(load_json_file(check_reference));
        PropertyFlags flags =
            property_catalogue(f.base, f.ann, sp, &ref, max_len, budget);
        std::cout << to_string(flags) << "\n";
      }
      return failures == 0 ? 0 : 1;
    }

    if (*iso) {
      Category a = category_from_json(load_json_file(iso_a));
      Category b = category_from_json(load_json_file(iso_b));
      auto res = find_isomorphism(a, b, iso_budget);
      if (res.status == SearchStatus::Found) {
        std::cout << "isomorphic; vertex map:\n";
        for (VertexId v = 0; v < static_cast<VertexId>(a.vertex_count()); ++v)
          std::cout << "  " << a.vertex_name(v) << " -> "
                    << b.vertex_name(res.iso.vmap[v]) << "\n";
        return 0;
      }
      if (res.status == SearchStatus::Exhausted)
        return fail_with_witness("BudgetExhausted",
                                 "steps=" + std::to_string(res.steps));
      std::cout << "no isomorphism\n";
      return 1;
    }

    if (*exp) {
      Json j = load_json_file(exp_in);
      Category c =
          category_from_json(j.contains("category") ? j.at("category") : j);
      std::ofstream out(exp_out);
      out << to_dot(c, exp_ids);
      return 0;
    }

    if (*demo) {
      if (demo_name != "roundtrip") {
        std::cerr << "unknown demo " << demo_name << "\n";
        return 2;
      }
      CategoryAction a;
      if (demo_fixture == "chain_bundle") {
        a = gen_chain_bundle(k, h);
      } else if (demo_fixture == "groupoid") {
        a = gen_cyclic_groupoid(m);
      } else if (demo_fixture == "grid_bundle") {
        a = gen_grid_bundle(k, h, k2, h2);
      } else {
        std::cerr << "unknown fixture " << demo_fixture << "\n";
        return 2;
      }
      Transversal t = choose_transversal(a);
      RoundtripResult r = verify_roundtrips(a, t);
      std::cout << "unfold_ok: " << (r.unfold_ok ? "true" : "false") << "\n";
      std::cout << "refold_ok: " << (r.refold_ok ? "true" : "false") << "\n";
      if (r.unfold_ok) {
        Representation rep = build_representation(a, t);
        Unfolding u = unfold(rep);
        std::cout << "unfolding witness (vertices):\n";
        for (VertexId v = 0; v < static_cast<VertexId>(u.cat.vertex_count());
             ++v)
          std::cout << "  " << u.cat.vertex_name(v) << " -> "
                    << a.category.vertex_name(r.unfold_witness.vmap[v]) << "\n";
      }
      if (r.refold_ok) {
        Representation rep = build_representation(a, t);
        Unfolding u = unfold(rep);
        CategoryAction ind = induced_action(u);
        OrbitCategory refolded = orbit_category(ind);
        std::cout << "refold witness (classes):\n";
        for (VertexId v = 0;
             v < static_cast<VertexId>(refolded.cat.vertex_count()); ++v)
          std::cout << "  " << refolded.cat.vertex_name(v) << " -> "
                    << rep.cat.vertex_name(r.refold_witness.vmap[v]) << "\n";
      }
      if (!r.unfold_ok || !r.refold_ok)
        return fail_with_witness("RoundtripFailed", r.witness);
      return 0;
    }
  } catch (const DomainError& e) {
    return fail_with_witness(error_kind_name(e.kind()), e.witness());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
