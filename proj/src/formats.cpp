#include "forge/formats.hpp"

#include <charconv>
#include <map>
#include <sstream>

#include "forge/catalog.hpp"

namespace forge {

  namespace {
    std::string_view trim(std::string_view s) {
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
      }
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
      }
      return s;
    }

    struct Line {
      std::size_t      number;
      std::string_view keyword;
      std::string_view rest;
    };

    // Non-blank, non-comment lines split into keyword and remainder.
    std::vector<Line> lines_of(std::string_view text) {
      std::vector<Line> out;
      std::size_t       number = 0;
      while (!text.empty()) {
        ++number;
        auto             nl   = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        line = trim(line);
        if (line.empty() || line.front() == '#') {
          continue;
        }
        auto sp = line.find_first_of(" \t");
        if (sp == std::string_view::npos) {
          out.push_back({number, line, {}});
        } else {
          out.push_back({number, line.substr(0, sp), trim(line.substr(sp))});
        }
      }
      return out;
    }

    [[noreturn]] void fail(Line const& l, std::string const& message) {
      throw ParseError("line " + std::to_string(l.number) + ": " + message,
                       l.number);
    }

    std::size_t number_of(Line const& l, std::string_view s) {
      s                 = trim(s);
      std::size_t value = 0;
      auto [p, ec]      = std::from_chars(s.data(), s.data() + s.size(), value);
      if (ec != std::errc() || p != s.data() + s.size() || s.empty()) {
        fail(l, "expected a number, found '" + std::string(s) + "'");
      }
      return value;
    }

    std::vector<std::string_view> words(std::string_view s) {
      std::vector<std::string_view> out;
      while (true) {
        s = trim(s);
        if (s.empty()) {
          return out;
        }
        auto sp = s.find_first_of(" \t");
        out.push_back(s.substr(0, sp));
        if (sp == std::string_view::npos) {
          return out;
        }
        s.remove_prefix(sp);
      }
    }

    // Splits on commas outside parentheses.
    std::vector<std::string_view> split_top_level(std::string_view s) {
      std::vector<std::string_view> out;
      int                           depth = 0;
      std::size_t                   start = 0;
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') {
          ++depth;
        } else if (s[i] == ')') {
          --depth;
        } else if (s[i] == ',' && depth == 0) {
          out.push_back(trim(s.substr(start, i - start)));
          start = i + 1;
        }
      }
      out.push_back(trim(s.substr(start)));
      return out;
    }

    template <typename F>
    auto at_line(Line const& l, F&& f) -> decltype(f()) {
      try {
        return f();
      } catch (ParseError const&) {
        throw;
      } catch (Error const& e) {
        fail(l, e.what());
      }
    }

    template <typename F>
    auto parsing(Line const& l, F&& f) -> decltype(f()) {
      try {
        return at_line(l, f);
      } catch (ParseError const& e) {
        if (std::string_view(e.what()).substr(0, 5) == "line ") {
          throw;
        }
        fail(l, e.what());
      }
    }

    Signature class_signature(Line const& l, std::string_view name) {
      return at_line(l, [&] {
        return catalog::find_class(name).battery.signature();
      });
    }
  }  // namespace

  Signature parse_signature(std::string_view text, std::string name) {
    std::vector<OpSymbol> ops;
    for (auto const& l : lines_of(text)) {
      if (l.keyword != "op") {
        fail(l, "expected 'op <name> <arity>'");
      }
      auto w = words(l.rest);
      if (w.size() != 2) {
        fail(l, "expected 'op <name> <arity>'");
      }
      ops.push_back({std::string(w[0]), number_of(l, w[1])});
    }
    return Signature(std::move(name), std::move(ops));
  }

  std::string format_signature(Signature const& sig) {
    std::ostringstream out;
    for (auto const& op : sig.ops()) {
      out << "op " << op.name << ' ' << op.arity << '\n';
    }
    return out.str();
  }

  std::string catalog_class_of(Signature const& sig) {
    for (auto const& c : catalog::classes()) {
      if (c.name == sig.name() && c.battery.signature() == sig) {
        return c.name;
      }
    }
    return "";
  }

  FiniteAlgebra parse_algebra(std::string_view text) {
    std::optional<Signature>                  sig;
    std::vector<OpSymbol>                     ops;
    std::optional<std::size_t>                size;
    std::map<std::string, std::vector<Element>> tables;
    Line                                      last{0, {}, {}};
    for (auto const& l : lines_of(text)) {
      last = l;
      if (l.keyword == "signature") {
        if (sig || !ops.empty()) {
          fail(l, "signature given twice");
        }
        sig = class_signature(l, l.rest);
      } else if (l.keyword == "op") {
        if (sig && ops.empty()) {
          fail(l, "op lines cannot follow a signature line");
        }
        auto w = words(l.rest);
        if (w.size() != 2) {
          fail(l, "expected 'op <name> <arity>'");
        }
        ops.push_back({std::string(w[0]), number_of(l, w[1])});
      } else if (l.keyword == "size") {
        if (size) {
          fail(l, "size given twice");
        }
        size = number_of(l, l.rest);
      } else if (l.keyword == "table") {
        auto w = words(l.rest);
        if (w.empty()) {
          fail(l, "expected 'table <name> <entries>'");
        }
        std::vector<Element> entries;
        for (std::size_t i = 1; i < w.size(); ++i) {
          entries.push_back(static_cast<Element>(number_of(l, w[i])));
        }
        if (!tables.emplace(std::string(w[0]), std::move(entries)).second) {
          fail(l, "table '" + std::string(w[0]) + "' given twice");
        }
      } else {
        fail(l, "unknown keyword '" + std::string(l.keyword) + "'");
      }
    }
    if (!size) {
      throw ParseError("algebra has no size line", last.number);
    }
    Signature s = sig ? *sig : at_line(last, [&] {
      return Signature("custom", ops);
    });
    std::vector<std::vector<Element>> ordered;
    for (auto const& op : s.ops()) {
      auto it = tables.find(op.name);
      if (it == tables.end()) {
        throw ParseError("missing table for '" + op.name + "'", last.number);
      }
      ordered.push_back(std::move(it->second));
      tables.erase(it);
    }
    if (!tables.empty()) {
      throw ParseError("table for unknown symbol '" + tables.begin()->first + "'",
                       last.number);
    }
    return FiniteAlgebra(std::move(s), *size, std::move(ordered));
  }

  std::string format_algebra(FiniteAlgebra const& a) {
    std::ostringstream out;
    auto const&        sig = a.signature();
    if (auto cls = catalog_class_of(sig); !cls.empty()) {
      out << "signature " << cls << '\n';
    } else {
      out << format_signature(sig);
    }
    out << "size " << a.size() << '\n';
    for (std::size_t op = 0; op < sig.size(); ++op) {
      out << "table " << sig.op(op).name;
      for (auto v : a.table(op)) {
        out << ' ' << v;
      }
      out << '\n';
    }
    return out.str();
  }

  Presentation parse_presentation(std::string_view text, Signature const& sig) {
    Presentation p;
    auto         semi = text.find(';');
    auto         head = trim(text.substr(0, semi));
    Line         l{1, {}, {}};
    p.num_generators = number_of(l, head);
    if (semi != std::string_view::npos) {
      text.remove_prefix(semi + 1);
      while (!text.empty()) {
        auto next = text.find(';');
        auto part = trim(text.substr(0, next));
        if (!part.empty()) {
          p.relations.push_back(parse_equation(part, sig));
        }
        text.remove_prefix(next == std::string_view::npos ? text.size()
                                                          : next + 1);
      }
    }
    check_presentation(sig, p);
    return p;
  }

  std::string format_presentation(Presentation const& p, Signature const& sig) {
    std::string out = std::to_string(p.num_generators) + ";";
    for (std::size_t i = 0; i < p.relations.size(); ++i) {
      out += (i == 0 ? " " : "; ") + to_string(p.relations[i], sig);
    }
    return out;
  }

  TranslationFile parse_translation(std::string_view text) {
    TranslationFile                            out;
    std::optional<std::size_t>                 kappa;
    std::optional<Signature>                   source, target;
    std::map<std::string, std::vector<Term>>   maps;
    std::vector<Equation>                      context;
    Line                                       last{0, {}, {}};
    auto need_header = [&](Line const& l) {
      if (!kappa || !source || !target) {
        fail(l, "kappa, source and target must precede maps and context");
      }
    };
    for (auto const& l : lines_of(text)) {
      last = l;
      if (l.keyword == "kappa") {
        kappa = number_of(l, l.rest);
        if (*kappa == 0) {
          fail(l, "kappa must be positive");
        }
      } else if (l.keyword == "source") {
        out.source = std::string(l.rest);
        source     = class_signature(l, l.rest);
      } else if (l.keyword == "target") {
        out.target = std::string(l.rest);
        target     = class_signature(l, l.rest);
      } else if (l.keyword == "map") {
        need_header(l);
        auto def = l.rest.find(":=");
        if (def == std::string_view::npos) {
          fail(l, "expected 'map <name> := <term>, ...'");
        }
        std::string name(trim(l.rest.substr(0, def)));
        if (!source->find(name)) {
          fail(l, "'" + name + "' is not a symbol of " + out.source);
        }
        std::vector<Term> comps;
        for (auto part : split_top_level(l.rest.substr(def + 2))) {
          comps.push_back(
              parsing(l, [&] { return parse_term(part, *target, *kappa); }));
        }
        if (!maps.emplace(name, std::move(comps)).second) {
          fail(l, "'" + name + "' mapped twice");
        }
      } else if (l.keyword == "context") {
        need_header(l);
        context.push_back(
            parsing(l, [&] { return parse_equation(l.rest, *target, *kappa); }));
      } else {
        fail(l, "unknown keyword '" + std::string(l.keyword) + "'");
      }
    }
    if (!kappa || !source || !target) {
      throw ParseError("translation needs kappa, source and target lines",
                       last.number);
    }
    std::vector<std::vector<Term>> images;
    for (auto const& op : source->ops()) {
      auto it = maps.find(op.name);
      if (it == maps.end()) {
        throw ParseError("no map for '" + op.name + "'", last.number);
      }
      images.push_back(std::move(it->second));
    }
    out.ct.tau = at_line(last, [&] {
      return Translation(*kappa, *source, *target, std::move(images));
    });
    out.ct.context = std::move(context);
    at_line(last, [&] {
      check_contextual(out.ct);
      return 0;
    });
    return out;
  }

  std::string format_translation(TranslationFile const& t) {
    std::ostringstream out;
    auto const&        tau = t.ct.tau;
    out << "kappa " << tau.kappa() << '\n'
        << "source " << t.source << '\n'
        << "target " << t.target << '\n';
    for (std::size_t s = 0; s < tau.source().size(); ++s) {
      out << "map " << tau.source().op(s).name << " :=";
      auto const& comps = tau.image(s);
      for (std::size_t i = 0; i < comps.size(); ++i) {
        out << (i == 0 ? " " : ", ") << to_string(comps[i], tau.target());
      }
      out << '\n';
    }
    for (auto const& e : t.ct.context) {
      out << "context " << to_string(e, tau.target()) << '\n';
    }
    return out.str();
  }

}  // namespace forge
