#pragma once

#include <vector>

#include "msa/algebra.hpp"

namespace msa {

// A one-hole, one-operation context: an operation symbol, the hole position,
// and frozen carrier elements at every other position. Induces a map from the
// hole sort's carrier to the coarity's carrier. Nullary symbols yield none.
struct ElementaryTranslation {
    int op = -1;
    int hole = -1;
    std::vector<int> frozen; // parallel to the arity; the hole slot is ignored
    int hole_sort = -1;
    int target_sort = -1;

    bool operator==(const ElementaryTranslation&) const = default;
};

// A composite of elementary translations, or the adjoined identity at a sort.
// The identity carries an explicit flag rather than an empty chain, since
// chains are nonempty by definition. The induced function over the source
// carrier is cached; translations are compared and deduplicated by it.
struct Translation {
    int source_sort = -1;
    int target_sort = -1;
    bool identity = false;
    std::vector<ElementaryTranslation> chain; // outermost last; empty iff identity
    std::vector<int> table;                   // source carrier index -> target carrier index

    static Translation make_identity(const FiniteAlgebra& a, int sort);
    static Translation from_chain(const FiniteAlgebra& a, std::vector<ElementaryTranslation> chain);
};

int apply(const FiniteAlgebra& a, const ElementaryTranslation& t, int x);
int apply(const FiniteAlgebra& a, const Translation& t, int x);

// All elementary translations with the given hole sort, grouped by target
// sort; for each (op, position) the frozen tuples run in mixed-radix order.
std::vector<std::vector<ElementaryTranslation>> enumerate_elementary(const FiniteAlgebra& a,
                                                                     int hole_sort);

// Closure of {identity} ∪ elementary translations under post-composition with
// elementary translations, deduplicated by induced function. Grouped by
// target sort. Finite because there are finitely many functions between the
// carriers; chains record one derivation of each function.
std::vector<std::vector<Translation>> enumerate_translations(const FiniteAlgebra& a,
                                                             int source_sort);

// The translation on b intertwining with t along the homomorphism f:
// frozen arguments are pushed through f componentwise.
Translation transport(const FiniteAlgebra& a, const FiniteAlgebra& b, const SortedMap& f,
                      const Translation& t);

// For surjective f : a ↠ b, a translation on a transported to the given one.
// Frozen preimages are chosen by least carrier index.
Translation lift_translation(const FiniteAlgebra& a, const FiniteAlgebra& b, const SortedMap& f,
                             const Translation& u);

// T^{-1}[L]: a delta at the hole sort collecting the x with T(x) in L.
SortedSubset inverse_image_translation(const FiniteAlgebra& a, const Translation& t,
                                       const SortedSubset& l);

} // namespace msa
