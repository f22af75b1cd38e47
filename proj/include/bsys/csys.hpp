#pragma once

// The category of contexts and substitutions rebuilt from a unital B-system.
// A morphism Y -> X (X at level m) is the list of its m sections, each a
// judgement over a context of level l(Y)+1.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bsys/ops.hpp"

namespace bsys {

struct Morph {
  Elt src;
  Elt dst;
  std::vector<TElt> sections;

  bool operator==(const Morph&) const = default;
};

std::string describe(const Morph& f);

/// Inductive morphism predicate. Throws LevelMismatch when the number of
/// sections differs from l(X); a section at the wrong level gives false.
bool is_morphism(const BSysView& v, const Elt& y, const Elt& x, const std::vector<TElt>& sections);
bool is_morphism(const BSysView& v, const Morph& f);

/// The canonical projection X -> ft^i(X).
Morph projection(const BSysView& v, const Elt& x, std::size_t i);
Morph identity(const BSysView& v, const Elt& x);

/// Pulls a judgement s over X back along f : Y -> ft(X).
TElt pull_section(const BSysView& v, const Morph& f, const TElt& s);

/// g : Z -> Y, f : Y -> X; returns the composite Z -> X.
Morph compose(const BSysView& v, const Morph& g, const Morph& f);

/// f^*(X) for f : Y -> ft(X), and the canonical morphism f^*(X) -> X.
Elt pull_object(const BSysView& v, const Morph& f, const Elt& x);
Morph q_morphism(const BSysView& v, const Morph& f, const Elt& x);

/// Finite fragment of the category: objects of level <= cutoff with all
/// morphisms between them, identities, composition, projections and
/// pullbacks. Morphisms and objects are referred to by index.
struct FinCat {
  using Idx = std::uint32_t;
  static constexpr Idx none = ~Idx{0};

  std::size_t cutoff = 0;
  std::vector<Elt> objects;
  std::vector<Morph> morphisms;
  std::vector<Idx> morph_src, morph_dst;                 // object indices
  std::map<std::pair<Idx, Idx>, std::vector<Idx>> hom;  // (src, dst) -> morphisms
  std::vector<Idx> identity;                            // per object
  std::vector<Idx> projection;                          // per object of level >= 1: X -> ft X
  std::unordered_map<std::uint64_t, Idx> composition;   // key (g << 32 | f) -> g then f
  std::unordered_map<std::uint64_t, Idx> pullback;      // key (f << 32 | X) -> object f^*X
  std::unordered_map<std::uint64_t, Idx> q;             // key (f << 32 | X) -> q(f, X)

  static std::uint64_t key(Idx a, Idx b) { return (std::uint64_t{a} << 32) | b; }

  Idx object_index(const std::string& id) const;
  const std::vector<Idx>& homs(Idx src, Idx dst) const;
  /// g then f; `none` when not composable.
  Idx comp(Idx g, Idx f) const;
};

struct CategoryCheck {
  std::size_t associativity = 0;
  std::size_t units = 0;
  std::size_t squares = 0;
  std::optional<std::string> failure;
};

struct BuildOptions {
  std::size_t budget = 1'000'000;  // candidate section tuples
  bool verify = true;
};

/// Throws CutoffTooLarge when enumeration exceeds the budget, NotACategory
/// when verification fails, NotUnital on a non-unital view.
FinCat build_category(const BSysView& v, std::size_t cutoff, const BuildOptions& opts = {});

/// Associativity, both unit laws and commutation of every pullback square.
CategoryCheck check_category(const FinCat& cat);

/// The B-system of the category, built from its tables alone. Judgements are
/// sections of projections; each is named by its last component.
FinBSys ub_of(const FinCat& cat);

std::string fincat_to_json(const FinCat& cat);

}  // namespace bsys
