#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "msa/sorted.hpp"

namespace msa {

// An operation symbol: arity word and coarity are sort indices into the
// owning signature's sort list.
struct OpSym {
    std::string name;
    std::vector<int> arity;
    int coarity = -1;

    bool operator==(const OpSym&) const = default;
};

// A finite many-sorted signature. The sort list is nonempty and its order
// is canonical for every sorted object built over the signature.
struct Signature {
    std::vector<std::string> sorts;
    std::vector<OpSym> ops;

    int sort_count() const { return static_cast<int>(sorts.size()); }
    int op_count() const { return static_cast<int>(ops.size()); }
    int sort_index(std::string_view name) const;
    int op_index(std::string_view name) const;

    std::vector<std::string> validate() const;

    bool operator==(const Signature&) const = default;
};

// Generator sets are plain sorted sets whose sort list matches the signature.
using GeneratorSet = SortedSet;

// Empty sorted set / generator set over the signature's sorts.
SortedSet empty_sorted_set(const Signature& sig);

// The sorts at which terms over the given generators exist: least set of
// sorts containing supp(gens) and closed under the operation symbols.
std::vector<int> free_support(const Signature& sig, const SortedSet& gens);

} // namespace msa
