// forge: command-line front end.  Reports go to stdout, one check per line
// ending in PASS or FAIL; diagnostics go to stderr.  Exit status: 0 when
// every check passes, 1 when one fails, 2 for usage and input errors.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "forge/adjoint.hpp"
#include "forge/catalog.hpp"
#include "forge/formats.hpp"

namespace {

  using namespace forge;

  std::string read_file(std::string const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw Error("cannot open '" + path + "'");
    }
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  // "CLASS:name" for a catalog algebra, anything else is a file path.
  FiniteAlgebra load_algebra(std::string const& ref) {
    if (auto colon = ref.find(':'); colon != std::string::npos) {
      auto cls = ref.substr(0, colon);
      for (auto const& c : catalog::classes()) {
        if (c.name == cls) {
          return catalog::find_algebra(cls, ref.substr(colon + 1));
        }
      }
    }
    return parse_algebra(read_file(ref));
  }

  // A catalog name or a translation file.
  catalog::TranslationEntry load_translation(std::string const& ref) {
    for (auto const& t : catalog::translations()) {
      if (t.name == ref) {
        return t;
      }
    }
    auto file = parse_translation(read_file(ref));
    return {ref, file.source, file.target, file.ct};
  }

  RightAdjointSpec adjoint_spec(catalog::TranslationEntry const& t) {
    return make_right_adjoint(t.ct, catalog::find_class(t.source).battery,
                              catalog::find_class(t.target).battery);
  }

  // The catalog algebra isomorphic to a, as "CLASS:name".
  std::string identify(FiniteAlgebra const& a) {
    auto cls = catalog_class_of(a.signature());
    if (cls.empty()) {
      return "";
    }
    for (auto const& named : catalog::find_class(cls).algebras) {
      if (are_isomorphic(a, named.algebra)) {
        return cls + ":" + named.name;
      }
    }
    return "";
  }

  std::string tuple_string(std::vector<Element> const& coords) {
    std::string out = "(";
    for (std::size_t i = 0; i < coords.size(); ++i) {
      out += (i == 0 ? "" : ", ") + std::to_string(coords[i]);
    }
    return out + ")";
  }

  void print_generated(FreeAlgebra const& f) {
    auto const& sig = f.algebra.signature();
    for (std::size_t e = 0; e < f.terms.size(); ++e) {
      std::cout << "# element " << e << " = " << to_string(f.terms[e], sig)
                << '\n';
    }
    std::cout << format_algebra(f.algebra);
  }

  void print_theta_sub(ThetaSub const& g, std::size_t base_size) {
    for (std::size_t e = 0; e < g.elements.size(); ++e) {
      std::cout << "# element " << e << " = "
                << tuple_string(
                       matrix_coordinates(base_size, g.kappa, g.elements[e]))
                << '\n';
    }
    if (auto name = identify(g.algebra); !name.empty()) {
      std::cout << "# isomorphic to " << name << '\n';
    }
    std::cout << format_algebra(g.algebra);
  }

  // Accumulates "CHECK <name> <details> PASS|FAIL" lines and the exit status.
  struct Report {
    bool ok = true;
    void line(std::string const& check, std::string const& details, bool pass) {
      ok = ok && pass;
      std::cout << "CHECK " << check << (details.empty() ? "" : " " + details)
                << (pass ? " PASS" : " FAIL") << '\n';
    }
    int status() const {
      return ok ? 0 : 1;
    }
  };

  std::string in_quotes(std::string const& s) {
    return "\"" + s + "\"";
  }

  // ---- commands -----------------------------------------------------------

  int alg_check(std::string const& ref, std::string cls) {
    Report r;
    auto   a = load_algebra(ref);
    r.line("load", "size " + std::to_string(a.size()), true);
    if (cls.empty()) {
      cls = catalog_class_of(a.signature());
    }
    if (cls.empty()) {
      return r.status();
    }
    auto const& k = catalog::find_class(cls).battery;
    if (!(k.signature() == a.signature())) {
      r.line("signature", cls, false);
      return r.status();
    }
    auto const& sig = k.signature();
    for (auto const& ax : k.axioms()) {
      std::string text;
      for (auto const& p : ax.premises) {
        text += to_string(p, sig) + "; ";
      }
      if (!ax.premises.empty()) {
        text = text.substr(0, text.size() - 2) + " => ";
      }
      text += to_string(ax.conclusion, sig);
      r.line("axiom", in_quotes(text), !find_violation(a, ax));
    }
    // A lies in the quasi-variety iff homomorphisms into the battery
    // separate its points.
    auto separated = cgK(k, a, {}) == Congruence::identity(a);
    r.line("quasivariety", cls, separated);
    return r.status();
  }

  int free_cmd(std::string const& cls, std::size_t gens,
               std::string const& relations) {
    auto const& k = catalog::find_class(cls).battery;
    if (relations.empty()) {
      print_generated(free_algebra(k, gens));
    } else {
      auto p = parse_presentation(std::to_string(gens) + "; " + relations,
                                  k.signature());
      print_generated(present_algebra(k, p));
    }
    return 0;
  }

  int homs_cmd(std::string const& src, std::string const& tgt, bool count) {
    auto a = load_algebra(src);
    auto b = load_algebra(tgt);
    if (!(a.signature() == b.signature())) {
      throw Error("algebras have different signatures");
    }
    if (count) {
      std::cout << "count " << count_homs(a, b) << '\n';
      return 0;
    }
    auto homs = enumerate_homs(a, b);
    for (std::size_t h = 0; h < homs.size(); ++h) {
      std::cout << "hom " << h << ":";
      for (auto v : homs[h].map()) {
        std::cout << ' ' << v;
      }
      std::cout << '\n';
    }
    std::cout << "count " << homs.size() << '\n';
    return 0;
  }

  int entails_cmd(std::string const& cls, std::size_t vars,
                  std::vector<std::string> const& premises,
                  std::string const&              conclusion) {
    auto const&           k = catalog::find_class(cls).battery;
    std::vector<Equation> prem;
    for (auto const& p : premises) {
      prem.push_back(parse_equation(p, k.signature()));
    }
    auto concl = parse_equation(conclusion, k.signature());
    for (auto const& e : prem) {
      vars = std::max(vars, variable_bound(e));
    }
    vars = std::max(vars, variable_bound(concl));
    Report r;
    if (auto ce = find_counterexample(k, prem, concl, vars)) {
      std::string details = "counterexample generator "
                            + std::to_string(ce->generator) + " assignment";
      for (auto v : ce->assignment) {
        details += " " + std::to_string(v);
      }
      r.line("entails", details, false);
    } else {
      r.line("entails", "", true);
    }
    return r.status();
  }

  int matpow_cmd(std::string const& ref, std::size_t kappa,
                 std::string const& translation, bool plain) {
    auto           a = load_algebra(ref);
    MatrixLanguage lang;
    if (translation.empty()) {
      lang = pointwise_language(a.signature(), kappa, !plain);
    } else {
      lang = adjoint_spec(load_translation(translation)).lang;
    }
    std::cout << format_algebra(matrix_power(a, lang));
    return 0;
  }

  int theta_sub_cmd(std::string const& translation, std::string const& ref) {
    auto spec = adjoint_spec(load_translation(translation));
    auto b    = load_algebra(ref);
    auto g    = theta_sub(b, spec.theta);
    // Print with the source class's symbol names so the result can be
    // checked directly as an algebra of that class.
    g.algebra = g.algebra.relabel(spec.x.signature());
    print_theta_sub(g, b.size());
    return 0;
  }

  int translate_check(std::string const& translation) {
    auto        t = load_translation(translation);
    auto const& x = catalog::find_class(t.source).battery;
    auto const& y = catalog::find_class(t.target).battery;
    Report      r;
    if (auto f = find_condition2_failure(t.ct, y)) {
      r.line("condition2",
             "symbol " + t.ct.tau.source().op(f->symbol).name + " "
                 + in_quotes(to_string(f->equation, y.signature())),
             false);
    } else {
      r.line("condition2", "", true);
    }
    auto nt = check_nontrivial(t.ct, y);
    std::string details;
    if (nt.nontrivial && nt.index) {
      details = "index " + std::to_string(*nt.index);
    } else if (nt.vacuous) {
      details = "no ground solution of the context";
    }
    r.line("nontrivial", details, nt.nontrivial);
    std::size_t verified = 0, valid = 0;
    for (auto const& d : sample_deductions(x)) {
      auto c = check_condition1(t.ct, x, y, d);
      valid += c.holds_in_source ? 1 : 0;
      verified += c.passes() ? 1 : 0;
      if (!c.passes()) {
        r.line("condition1", "deduction "
                                 + in_quotes(to_string(d.conclusion, x.signature()))
                                 + " not transferred",
               false);
      }
    }
    r.line("condition1",
           "verified on " + std::to_string(valid) + " valid deductions",
           verified == sample_deductions(x).size());
    return r.status();
  }

  int translate_apply(std::string const& translation, std::string const& term,
                      std::string const& presentation) {
    auto        t    = load_translation(translation);
    auto const& xsig = t.ct.tau.source();
    auto const& ysig = t.ct.tau.target();
    if (!term.empty()) {
      auto comps = lift_term(t.ct.tau, parse_term(term, xsig));
      for (std::size_t i = 0; i < comps.size(); ++i) {
        std::cout << "component " << i << " = " << to_string(comps[i], ysig)
                  << '\n';
      }
    }
    if (!presentation.empty()) {
      auto spec = adjoint_spec(t);
      auto left = apply_left_adjoint(spec, parse_presentation(presentation, xsig));
      std::cout << format_presentation(left.presentation, ysig) << '\n';
    }
    return 0;
  }

  int translate_derive(std::string const& translation, std::string const& from) {
    auto t    = load_translation(translation);
    auto spec = adjoint_spec(t);
    auto data = from == "translation" ? functor_data(spec)
                                      : functor_data_from_right_adjoint(spec);
    auto ct   = derive_translation(spec.x, spec.y, t.ct.tau.kappa(), data.pi1,
                                   data.fops);
    std::cout << format_translation({t.source, t.target, ct});
    return 0;
  }

  int adjoint_right(std::string const& translation, std::string const& ref) {
    auto spec = adjoint_spec(load_translation(translation));
    auto b    = load_algebra(ref);
    print_theta_sub(apply_right_adjoint(spec, b), b.size());
    return 0;
  }

  int adjoint_left(std::string const& translation, std::string const& pres) {
    auto spec = adjoint_spec(load_translation(translation));
    auto left = apply_left_adjoint(
        spec, parse_presentation(pres, spec.x.signature()));
    std::cout << "# presentation "
              << format_presentation(left.presentation, spec.y.signature())
              << '\n';
    print_generated(left.algebra);
    return 0;
  }

  int adjoint_verify(std::string const& translation, std::string const& pres,
                     std::string const& ref) {
    auto t    = load_translation(translation);
    auto spec = adjoint_spec(t);
    std::vector<std::pair<std::string, Presentation>> ps;
    std::vector<std::pair<std::string, FiniteAlgebra>> bs;
    if (pres.empty()) {
      for (auto const& p : catalog::find_class(t.source).presentations) {
        ps.emplace_back(p.text, p.presentation);
      }
    } else {
      ps.emplace_back(pres, parse_presentation(pres, spec.x.signature()));
    }
    if (ref.empty()) {
      for (auto const& b : catalog::find_class(t.target).algebras) {
        bs.emplace_back(t.target + ":" + b.name, b.algebra);
      }
    } else {
      bs.emplace_back(ref, load_algebra(ref));
    }
    Report r;
    bool   single = ps.size() == 1 && bs.size() == 1;
    for (auto const& [ptext, p] : ps) {
      for (auto const& [bname, b] : bs) {
        auto h = verify_homset_bijection(spec, p, b);
        std::string details = "countLeft " + std::to_string(h.count_left)
                              + " countRight " + std::to_string(h.count_right);
        if (!h.correspondence) {
          details += " correspondence broken";
        }
        r.line(single ? "homset"
                      : "homset P=" + in_quotes(ptext) + " B=" + bname,
               details, h.passes());
      }
    }
    return r.status();
  }

  int adjoint_sigma(std::string const& translation, std::string const& ref) {
    auto t    = load_translation(translation);
    auto spec = adjoint_spec(t);
    auto data = functor_data(spec);
    std::vector<std::pair<std::string, FiniteAlgebra>> bs;
    if (ref.empty()) {
      for (auto const& b : catalog::find_class(t.target).algebras) {
        bs.emplace_back(t.target + ":" + b.name, b.algebra);
      }
    } else {
      bs.emplace_back(ref, load_algebra(ref));
    }
    Report r;
    for (auto const& [name, b] : bs) {
      auto s = verify_sigma_iso(spec, data, b);
      r.line("sigma B=" + name,
             "homs " + std::to_string(s.homs) + " solutions "
                 + std::to_string(s.solutions)
                 + (s.bijective ? "" : " not bijective")
                 + (s.bijective && !s.homomorphism ? " not a homomorphism" : ""),
             s.passes());
    }
    return r.status();
  }

  int catalog_list() {
    for (auto const& c : catalog::classes()) {
      auto const& sig = c.battery.signature();
      std::cout << "class " << c.name << " ops";
      for (auto const& op : sig.ops()) {
        std::cout << ' ' << op.name << '/' << op.arity;
      }
      std::cout << "\n  battery";
      for (auto const& g : c.battery.generators()) {
        std::cout << ' ' << (identify(g).empty() ? "?" : identify(g));
      }
      std::cout << "\n  algebras";
      for (auto const& a : c.algebras) {
        std::cout << ' ' << a.name << '(' << a.algebra.size() << ')';
      }
      std::cout << "\n  presentations";
      for (auto const& p : c.presentations) {
        std::cout << ' ' << in_quotes(p.text);
      }
      std::cout << '\n';
    }
    for (auto const& t : catalog::translations()) {
      std::cout << "translation " << t.name << " " << t.source << " -> "
                << t.target << " kappa " << t.ct.tau.kappa() << '\n';
    }
    return 0;
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite universal algebra and contextual translations"};
  app.require_subcommand(1);
  std::function<int()> run;

  std::string ref, ref2, cls, relations, translation, term, presentation;
  std::string conclusion, from = "adjoint";
  std::vector<std::string> premises;
  std::size_t gens = 0, vars = 0, kappa = 2;
  bool count = false, plain = false;

  auto* alg = app.add_subcommand("alg", "Inspect an algebra");
  alg->require_subcommand(1);
  auto* alg_check_cmd = alg->add_subcommand("check", "Validate an algebra");
  alg_check_cmd->add_option("algebra", ref, "CLASS:name or file")->required();
  alg_check_cmd->add_option("--class", cls, "Check membership in a class");
  alg_check_cmd->callback([&] { run = [&] { return alg_check(ref, cls); }; });
  auto* alg_show = alg->add_subcommand("show", "Print an algebra");
  alg_show->add_option("algebra", ref, "CLASS:name or file")->required();
  alg_show->callback([&] {
    run = [&] {
      std::cout << format_algebra(load_algebra(ref));
      return 0;
    };
  });

  auto* free = app.add_subcommand("free", "Free or finitely presented algebra");
  free->add_option("--class", cls, "Catalog class")->required();
  free->add_option("--gens", gens, "Number of generators")->required();
  free->add_option("--relations", relations, "Relations '<eq>; <eq>'");
  free->callback([&] { run = [&] { return free_cmd(cls, gens, relations); }; });

  auto* homs = app.add_subcommand("homs", "Enumerate homomorphisms");
  homs->add_option("source", ref, "CLASS:name or file")->required();
  homs->add_option("target", ref2, "CLASS:name or file")->required();
  homs->add_flag("--count", count, "Only print the number");
  homs->callback([&] { run = [&] { return homs_cmd(ref, ref2, count); }; });

  auto* ent = app.add_subcommand("entails", "Relative consequence in a class");
  ent->add_option("--class", cls, "Catalog class")->required();
  ent->add_option("--premise", premises, "Premise equation (repeatable)");
  ent->add_option("--conclusion", conclusion, "Conclusion equation")->required();
  ent->add_option("--vars", vars, "Number of variables (default: as used)");
  ent->callback([&] {
    run = [&] { return entails_cmd(cls, vars, premises, conclusion); };
  });

  auto* mp = app.add_subcommand("matpow", "Matrix power of an algebra");
  mp->add_option("algebra", ref, "CLASS:name or file")->required();
  mp->add_option("--kappa", kappa, "Power (default 2)");
  mp->add_option("--translation", translation, "Use a translation's language");
  mp->add_flag("--plain", plain, "Coordinatewise operations only");
  mp->callback([&] {
    run = [&] { return matpow_cmd(ref, kappa, translation, plain); };
  });

  auto* ts = app.add_subcommand("theta-sub", "Solutions of a context in B^k");
  ts->add_option("--translation", translation, "Catalog name or file")->required();
  ts->add_option("--algebra", ref, "CLASS:name or file")->required();
  ts->callback([&] { run = [&] { return theta_sub_cmd(translation, ref); }; });

  auto* tr = app.add_subcommand("translate", "Contextual translations");
  tr->require_subcommand(1);
  auto* tr_check = tr->add_subcommand("check", "Translation conditions");
  tr_check->add_option("--translation", translation, "Catalog name or file")
      ->required();
  tr_check->callback([&] { run = [&] { return translate_check(translation); }; });
  auto* tr_apply = tr->add_subcommand("apply", "Translate a term or presentation");
  tr_apply->add_option("--translation", translation, "Catalog name or file")
      ->required();
  auto* term_opt = tr_apply->add_option("--term", term, "Source term");
  auto* pres_opt =
      tr_apply->add_option("--presentation", presentation, "Source presentation");
  tr_apply->callback([&] {
    if (term_opt->count() + pres_opt->count() == 0) {
      throw CLI::RequiredError("--term or --presentation");
    }
    run = [&] { return translate_apply(translation, term, presentation); };
  });
  auto* tr_derive =
      tr->add_subcommand("derive", "Recover a translation from its left adjoint");
  tr_derive->add_option("--translation", translation, "Catalog name or file")
      ->required();
  tr_derive
      ->add_option("--from", from,
                   "Functor data from the right adjoint or the translation")
      ->check(CLI::IsMember({"adjoint", "translation"}));
  tr_derive->callback(
      [&] { run = [&] { return translate_derive(translation, from); }; });

  auto* adj = app.add_subcommand("adjoint", "The induced adjunction");
  adj->require_subcommand(1);
  auto* adj_right = adj->add_subcommand("right", "Right adjoint G(B)");
  adj_right->add_option("--translation", translation, "Catalog name or file")
      ->required();
  adj_right->add_option("--algebra", ref, "CLASS:name or file")->required();
  adj_right->callback(
      [&] { run = [&] { return adjoint_right(translation, ref); }; });
  auto* adj_left = adj->add_subcommand("left", "Left adjoint F(P)");
  adj_left->add_option("--translation", translation, "Catalog name or file")
      ->required();
  adj_left->add_option("--presentation", presentation, "'<n>; <eq>; ...'")
      ->required();
  adj_left->callback(
      [&] { run = [&] { return adjoint_left(translation, presentation); }; });
  auto* adj_verify = adj->add_subcommand(
      "verify", "Hom-set bijection (all catalog pairs by default)");
  adj_verify->add_option("--translation", translation, "Catalog name or file")
      ->required();
  adj_verify->add_option("--presentation", presentation, "'<n>; <eq>; ...'");
  adj_verify->add_option("--algebra", ref, "CLASS:name or file");
  adj_verify->callback([&] {
    run = [&] { return adjoint_verify(translation, presentation, ref); };
  });
  auto* adj_sigma = adj->add_subcommand(
      "sigma", "Decomposition isomorphism (all catalog algebras by default)");
  adj_sigma->add_option("--translation", translation, "Catalog name or file")
      ->required();
  adj_sigma->add_option("--algebra", ref, "CLASS:name or file");
  adj_sigma->callback(
      [&] { run = [&] { return adjoint_sigma(translation, ref); }; });

  auto* cat = app.add_subcommand("catalog", "Built-in objects");
  cat->require_subcommand(1);
  cat->add_subcommand("list", "List the catalog")->callback([&] {
    run = [] { return catalog_list(); };
  });

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::CallForAllHelp const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    return 2;
  }
  try {
    return run();
  } catch (forge::Error const& e) {
    std::cerr << "forge: " << e.what() << '\n';
    return 2;
  }
}
