#include "forge/terms.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace forge {

  ParseError::ParseError(std::string const& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)),
        position_(position) {}

  namespace {
    bool is_ident_start(char c) {
      return std::isalpha(static_cast<unsigned char>(c)) != 0;
    }

    bool is_ident_char(char c) {
      return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
    }

    // x<digits>, optionally followed by _<digits>
    bool looks_like_variable(std::string_view s) {
      if (s.size() < 2 || s[0] != 'x') {
        return false;
      }
      std::size_t i = 1;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        ++i;
      }
      if (i == 1) {
        return false;
      }
      if (i == s.size()) {
        return true;
      }
      if (s[i] != '_' || i + 1 == s.size()) {
        return false;
      }
      ++i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        ++i;
      }
      return i == s.size();
    }
  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // Signature
  ////////////////////////////////////////////////////////////////////////

  Signature::Signature(std::string name, std::vector<OpSymbol> ops)
      : name_(std::move(name)), ops_(std::move(ops)) {
    std::set<std::string_view> seen;
    for (auto const& op : ops_) {
      if (op.name.empty() || !is_ident_start(op.name[0])
          || !std::all_of(op.name.begin(), op.name.end(), is_ident_char)) {
        throw Error("malformed operation symbol '" + op.name + "'");
      }
      if (looks_like_variable(op.name)) {
        throw Error("operation symbol '" + op.name
                    + "' clashes with the variable syntax");
      }
      if (!seen.insert(op.name).second) {
        throw Error("duplicate operation symbol '" + op.name + "'");
      }
    }
  }

  std::optional<std::size_t> Signature::find(std::string_view symbol) const {
    for (std::size_t i = 0; i < ops_.size(); ++i) {
      if (ops_[i].name == symbol) {
        return i;
      }
    }
    return std::nullopt;
  }

  std::size_t Signature::index_of(std::string_view symbol) const {
    if (auto i = find(symbol)) {
      return *i;
    }
    throw Error("unknown symbol '" + std::string(symbol) + "' in signature "
                + name_);
  }

  bool Signature::has_constants() const {
    return std::any_of(
        ops_.begin(), ops_.end(), [](auto const& op) { return op.arity == 0; });
  }

  std::size_t Signature::max_arity() const {
    std::size_t m = 0;
    for (auto const& op : ops_) {
      m = std::max(m, op.arity);
    }
    return m;
  }

  ////////////////////////////////////////////////////////////////////////
  // Term
  ////////////////////////////////////////////////////////////////////////

  Term Term::var(std::size_t index) {
    Term t;
    t.is_var_ = true;
    t.index_  = index;
    return t;
  }

  Term Term::app(std::size_t symbol, std::vector<Term> args) {
    Term t;
    t.is_var_ = false;
    t.index_  = symbol;
    t.args_   = std::move(args);
    if (!t.args_.empty()) {
      std::size_t d = 0;
      for (auto const& a : t.args_) {
        d = std::max(d, a.depth_);
      }
      t.depth_ = d + 1;
    }
    return t;
  }

  bool operator==(Term const& a, Term const& b) {
    return a.is_var_ == b.is_var_ && a.index_ == b.index_
           && a.args_ == b.args_;
  }

  std::strong_ordering operator<=>(Term const& a, Term const& b) {
    if (auto c = a.depth_ <=> b.depth_; c != 0) {
      return c;
    }
    if (a.is_var_ != b.is_var_) {
      return a.is_var_ ? std::strong_ordering::less
                       : std::strong_ordering::greater;
    }
    if (auto c = a.index_ <=> b.index_; c != 0) {
      return c;
    }
    return std::lexicographical_compare_three_way(
        a.args_.begin(), a.args_.end(), b.args_.begin(), b.args_.end());
  }

  void check_term(Signature const& sig, Term const& t) {
    if (t.is_var()) {
      return;
    }
    if (t.index() >= sig.size()) {
      throw Error("term uses symbol #" + std::to_string(t.index())
                  + " outside signature " + sig.name());
    }
    if (t.args().size() != sig.arity(t.index())) {
      throw Error("arity mismatch: '" + sig.op(t.index()).name + "' expects "
                  + std::to_string(sig.arity(t.index())) + " arguments, got "
                  + std::to_string(t.args().size()));
    }
    for (auto const& a : t.args()) {
      check_term(sig, a);
    }
  }

  void check_equation(Signature const& sig, Equation const& e) {
    check_term(sig, e.lhs);
    check_term(sig, e.rhs);
  }

  Term make_term(Signature const&  sig,
                 std::string_view  symbol,
                 std::vector<Term> args) {
    auto i = sig.index_of(symbol);
    if (args.size() != sig.arity(i)) {
      throw Error("arity mismatch: '" + std::string(symbol) + "' expects "
                  + std::to_string(sig.arity(i)) + " arguments, got "
                  + std::to_string(args.size()));
    }
    return Term::app(i, std::move(args));
  }

  ////////////////////////////////////////////////////////////////////////
  // Parsing and printing
  ////////////////////////////////////////////////////////////////////////

  namespace {
    class TermParser {
     public:
      TermParser(std::string_view text, Signature const& sig, std::size_t bw)
          : text_(text), sig_(sig), block_width_(bw) {}

      Term parse_all() {
        Term t = parse();
        skip_space();
        if (pos_ != text_.size()) {
          throw ParseError("unexpected trailing input", pos_);
        }
        return t;
      }

      Term parse() {
        skip_space();
        std::size_t start = pos_;
        if (pos_ >= text_.size() || !is_ident_start(text_[pos_])) {
          throw ParseError("expected a variable or symbol", pos_);
        }
        while (pos_ < text_.size() && is_ident_char(text_[pos_])) {
          ++pos_;
        }
        std::string_view ident = text_.substr(start, pos_ - start);
        if (looks_like_variable(ident)) {
          return variable(ident, start);
        }
        auto sym = sig_.find(ident);
        if (!sym) {
          throw ParseError("unknown symbol '" + std::string(ident) + "'",
                           start);
        }
        std::vector<Term> args;
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == '(') {
          ++pos_;
          args.push_back(parse());
          skip_space();
          while (pos_ < text_.size() && text_[pos_] == ',') {
            ++pos_;
            args.push_back(parse());
            skip_space();
          }
          if (pos_ >= text_.size() || text_[pos_] != ')') {
            throw ParseError("expected ',' or ')'", pos_);
          }
          ++pos_;
        }
        if (args.size() != sig_.arity(*sym)) {
          throw ParseError("arity mismatch: '" + std::string(ident)
                               + "' expects "
                               + std::to_string(sig_.arity(*sym))
                               + " arguments, got "
                               + std::to_string(args.size()),
                           start);
        }
        return Term::app(*sym, std::move(args));
      }

      std::size_t position() const {
        return pos_;
      }
      void skip_space() {
        while (pos_ < text_.size()
               && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
          ++pos_;
        }
      }
      void advance() {
        ++pos_;
      }

     private:
      Term variable(std::string_view ident, std::size_t start) {
        auto        us    = ident.find('_');
        std::size_t major = std::stoull(std::string(ident.substr(1, us - 1)));
        if (us == std::string_view::npos) {
          return Term::var(major);
        }
        if (block_width_ == 0) {
          throw ParseError("block variables x<j>_<i> are not allowed here",
                           start);
        }
        std::size_t minor = std::stoull(std::string(ident.substr(us + 1)));
        if (minor >= block_width_) {
          throw ParseError("component index " + std::to_string(minor)
                               + " out of range for width "
                               + std::to_string(block_width_),
                           start);
        }
        return Term::var(major * block_width_ + minor);
      }

      std::string_view text_;
      Signature const& sig_;
      std::size_t      block_width_;
      std::size_t      pos_ = 0;
    };

    void print(Term const& t, Signature const& sig, std::string& out) {
      if (t.is_var()) {
        out += 'x';
        out += std::to_string(t.index());
        return;
      }
      out += sig.op(t.index()).name;
      if (t.args().empty()) {
        return;
      }
      out += '(';
      bool first = true;
      for (auto const& a : t.args()) {
        if (!first) {
          out += ", ";
        }
        first = false;
        print(a, sig, out);
      }
      out += ')';
    }
  }  // namespace

  Term parse_term(std::string_view text,
                  Signature const& sig,
                  std::size_t      block_width) {
    return TermParser(text, sig, block_width).parse_all();
  }

  Equation parse_equation(std::string_view text,
                          Signature const& sig,
                          std::size_t      block_width) {
    TermParser p(text, sig, block_width);
    Term       lhs = p.parse();
    p.skip_space();
    if (p.position() >= text.size() || text[p.position()] != '=') {
      throw ParseError("expected '='", p.position());
    }
    p.advance();
    Term rhs = p.parse();
    p.skip_space();
    if (p.position() != text.size()) {
      throw ParseError("unexpected trailing input", p.position());
    }
    return {std::move(lhs), std::move(rhs)};
  }

  std::string to_string(Term const& t, Signature const& sig) {
    std::string out;
    print(t, sig, out);
    return out;
  }

  std::string to_string(Equation const& e, Signature const& sig) {
    return to_string(e.lhs, sig) + " = " + to_string(e.rhs, sig);
  }

  ////////////////////////////////////////////////////////////////////////
  // Substitution and variables
  ////////////////////////////////////////////////////////////////////////

  Term substitute(Term const& t, std::map<std::size_t, Term> const& images) {
    if (t.is_var()) {
      auto it = images.find(t.index());
      return it == images.end() ? t : it->second;
    }
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (auto const& a : t.args()) {
      args.push_back(substitute(a, images));
    }
    return Term::app(t.index(), std::move(args));
  }

  Term substitute(Term const& t, std::span<Term const> images) {
    if (t.is_var()) {
      return t.index() < images.size() ? images[t.index()] : t;
    }
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (auto const& a : t.args()) {
      args.push_back(substitute(a, images));
    }
    return Term::app(t.index(), std::move(args));
  }

  Term substitute(Signature const&                   sig,
                  Term const&                        t,
                  std::map<std::size_t, Term> const& images) {
    check_term(sig, t);
    for (auto const& [v, image] : images) {
      check_term(sig, image);
    }
    return substitute(t, images);
  }

  Equation substitute(Equation const& e, std::span<Term const> images) {
    return {substitute(e.lhs, images), substitute(e.rhs, images)};
  }

  namespace {
    void collect(Term const& t, std::vector<std::size_t>& out) {
      if (t.is_var()) {
        out.push_back(t.index());
        return;
      }
      for (auto const& a : t.args()) {
        collect(a, out);
      }
    }

    void sort_unique(std::vector<std::size_t>& v) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    }
  }  // namespace

  std::vector<std::size_t> variables_of(Term const& t) {
    std::vector<std::size_t> out;
    collect(t, out);
    sort_unique(out);
    return out;
  }

  std::vector<std::size_t> variables_of(Equation const& e) {
    std::vector<std::size_t> out;
    collect(e.lhs, out);
    collect(e.rhs, out);
    sort_unique(out);
    return out;
  }

  std::size_t variable_bound(Term const& t) {
    auto v = variables_of(t);
    return v.empty() ? 0 : v.back() + 1;
  }

  std::size_t variable_bound(Equation const& e) {
    return std::max(variable_bound(e.lhs), variable_bound(e.rhs));
  }

  std::vector<Term> variables(std::size_t n, std::size_t first) {
    std::vector<Term> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      out.push_back(Term::var(first + i));
    }
    return out;
  }

  Term shift_variables(Term const& t, std::size_t offset) {
    if (t.is_var()) {
      return Term::var(t.index() + offset);
    }
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (auto const& a : t.args()) {
      args.push_back(shift_variables(a, offset));
    }
    return Term::app(t.index(), std::move(args));
  }

  Equation shift_variables(Equation const& e, std::size_t offset) {
    return {shift_variables(e.lhs, offset), shift_variables(e.rhs, offset)};
  }

}  // namespace forge
