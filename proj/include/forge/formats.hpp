// Plain-text formats.  Lines starting with '#' and blank lines are ignored.
//
//   signature:     op <name> <arity>                      (one per symbol)
//   algebra:       signature <CLASS>  |  op lines
//                  size <n>
//                  table <name> <n^arity entries, row-major>
//   translation:   kappa <k>
//                  source <CLASS>
//                  target <CLASS>
//                  map <name> := <term>, ..., <term>     (k terms)
//                  context <term> = <term>
//   presentation:  <lambda>; <eq>; <eq>; ...
//
// Translation terms may name variables x<j>_<i> (coordinate i of argument j)
// or use the flattened x<j*k+i>.

#ifndef FORGE_FORMATS_HPP
#define FORGE_FORMATS_HPP

#include <string>
#include <string_view>

#include "forge/classes.hpp"
#include "forge/finalg.hpp"
#include "forge/xlate.hpp"

namespace forge {

  Signature   parse_signature(std::string_view text, std::string name = "custom");
  std::string format_signature(Signature const& sig);

  FiniteAlgebra parse_algebra(std::string_view text);
  std::string   format_algebra(FiniteAlgebra const& a);

  Presentation parse_presentation(std::string_view text, Signature const& sig);
  std::string  format_presentation(Presentation const& p, Signature const& sig);

  struct TranslationFile {
    std::string           source;
    std::string           target;
    ContextualTranslation ct;
  };
  TranslationFile parse_translation(std::string_view text);
  std::string     format_translation(TranslationFile const& t);

  // The catalog class with exactly this signature, or "" if there is none.
  std::string catalog_class_of(Signature const& sig);

}  // namespace forge

#endif  // FORGE_FORMATS_HPP
