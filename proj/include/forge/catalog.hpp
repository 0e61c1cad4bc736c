// Built-in classes, algebras, presentations and translations.
//
// Classes: DL01 (bounded distributive lattices), KA (Kleene algebras), BA
// (Boolean algebras), HA (Heyting algebras), IA (interior algebras).  Each
// stands for the quasi-variety generated by a fixed finite battery; the
// batteries for HA and IA are conventions of this tool, chosen so that the
// open (regular) elements of every IA (HA) battery member again lie in the
// HA (BA) battery.

#ifndef FORGE_CATALOG_HPP
#define FORGE_CATALOG_HPP

#include <string>
#include <string_view>
#include <vector>

#include "forge/classes.hpp"
#include "forge/xlate.hpp"

namespace forge::catalog {

  struct NamedAlgebra {
    std::string   name;
    FiniteAlgebra algebra;
  };

  struct NamedPresentation {
    std::string  text;  // "<lambda>; <eq>; ..."
    Presentation presentation;
  };

  struct ClassEntry {
    std::string                    name;
    ClassBattery                   battery;
    std::vector<NamedAlgebra>      algebras;
    std::vector<NamedPresentation> presentations;
  };

  struct TranslationEntry {
    std::string           name;
    std::string           source;  // class names
    std::string           target;
    ContextualTranslation ct;
  };

  // In catalog order: DL01, KA, BA, HA, IA.
  std::vector<ClassEntry> const& classes();
  // In catalog order: kleene, godel, kolmogorov.
  std::vector<TranslationEntry> const& translations();

  // Throw Error for unknown names.
  ClassEntry const&       find_class(std::string_view name);
  FiniteAlgebra const&    find_algebra(std::string_view cls, std::string_view name);
  TranslationEntry const& find_translation(std::string_view name);

}  // namespace forge::catalog

#endif  // FORGE_CATALOG_HPP
