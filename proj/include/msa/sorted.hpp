#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "msa/error.hpp"

namespace msa {

// A finite family of carriers indexed by a fixed, ordered list of sort names.
// Empty carriers are legal and load-bearing; nothing may assume nonemptiness.
// The list order of each carrier is the canonical order used for all
// deterministic iteration, representative choice, and printing.
struct SortedSet {
    std::vector<std::string> sorts;
    std::vector<std::vector<std::string>> carriers; // parallel to sorts

    SortedSet() = default;
    SortedSet(std::vector<std::string> sorts_, std::vector<std::vector<std::string>> carriers_)
        : sorts(std::move(sorts_)), carriers(std::move(carriers_)) {}

    int sort_count() const { return static_cast<int>(sorts.size()); }
    int sort_index(std::string_view name) const;
    int size(int s) const { return static_cast<int>(carriers[s].size()); }
    int total_size() const;
    // -1 when the name is not in the carrier
    int element_index(int s, std::string_view name) const;
    const std::string& element(int s, int i) const { return carriers[s][i]; }

    std::vector<std::string> validate() const;

    bool operator==(const SortedSet&) const = default;
};

// A subset of a sorted set, stored as strictly increasing element indices per sort.
struct SortedSubset {
    SortedSet ambient;
    std::vector<std::vector<int>> members;

    SortedSubset() = default;

    static SortedSubset empty(const SortedSet& a);
    static SortedSubset full(const SortedSet& a);
    // delta of Kronecker: the given elements at one sort, empty elsewhere
    static SortedSubset delta(const SortedSet& a, int sort, std::vector<int> elems);

    bool contains(int s, int x) const;
    int total_size() const;
    bool is_empty() const;

    bool operator==(const SortedSubset&) const = default;
};

SortedSubset subset_union(const SortedSubset& a, const SortedSubset& b);
SortedSubset subset_intersection(const SortedSubset& a, const SortedSubset& b);
SortedSubset subset_complement(const SortedSubset& a);
SortedSubset subset_difference(const SortedSubset& a, const SortedSubset& b);
bool subset_leq(const SortedSubset& a, const SortedSubset& b);

// A sort-indexed family of total maps between two sorted sets over the same sorts.
// images[s][i] is the codomain index of the image of domain element i at sort s.
struct SortedMap {
    SortedSet domain;
    SortedSet codomain;
    std::vector<std::vector<int>> images;

    SortedMap() = default;

    static SortedMap identity(const SortedSet& a);

    int apply(int s, int x) const { return images[s][x]; }
    bool is_injective() const;  // per sort
    bool is_surjective() const; // per sort

    std::vector<std::string> validate() const;

    bool operator==(const SortedMap&) const = default;
};

SortedMap compose(const SortedMap& g, const SortedMap& f); // g after f

// A per-sort partition of a sorted set, in canonical form: each block is
// ascending, blocks are ordered by their least element (the representative).
struct SortedEquivalence {
    SortedSet ambient;
    std::vector<std::vector<std::vector<int>>> blocks;

    SortedEquivalence() = default;

    static SortedEquivalence identity(const SortedSet& a); // Δ: all singletons
    static SortedEquivalence full(const SortedSet& a);     // ∇: one block per nonempty sort
    // normalizes to canonical form; throws ValidationError unless a partition
    static SortedEquivalence from_blocks(const SortedSet& a,
                                         std::vector<std::vector<std::vector<int>>> blocks);
    // from class-id vectors (any labelling); normalizes
    static SortedEquivalence from_class_ids(const SortedSet& a,
                                            const std::vector<std::vector<int>>& cls);

    int block_count(int s) const { return static_cast<int>(blocks[s].size()); }
    int total_block_count() const;
    int block_index(int s, int x) const { return block_of_[s][x]; }
    bool related(int s, int x, int y) const { return block_of_[s][x] == block_of_[s][y]; }
    // class-id vector per sort (ids = canonical block positions)
    const std::vector<std::vector<int>>& class_ids() const { return block_of_; }

    bool operator==(const SortedEquivalence& o) const {
        return ambient == o.ambient && blocks == o.blocks;
    }

  private:
    std::vector<std::vector<int>> block_of_; // derived cache
    void rebuild_cache();
};

// the sorts with nonempty carrier / member set, as ascending sort indices
std::vector<int> support(const SortedSet& a);
std::vector<int> support(const SortedSubset& x);

SortedSubset direct_image(const SortedMap& f, const SortedSubset& x);
SortedSubset inverse_image(const SortedMap& f, const SortedSubset& y);
SortedEquivalence kernel(const SortedMap& f);

// union of the Φ-classes meeting X
SortedSubset saturate(const SortedSubset& x, const SortedEquivalence& phi);
bool is_saturated(const SortedSubset& x, const SortedEquivalence& phi);

// phi ⊆ psi: every phi-block is contained in a psi-block, per sort
bool refines(const SortedEquivalence& phi, const SortedEquivalence& psi);
SortedEquivalence meet_equiv(const SortedEquivalence& phi, const SortedEquivalence& psi);

// quotient set and canonical projection; block names are the representatives' names
std::pair<SortedSet, SortedMap> quotient_set(const SortedSet& a, const SortedEquivalence& phi);
// the quotient of psi by phi (phi must refine psi), an equivalence on A/phi
SortedEquivalence quotient_equiv(const SortedEquivalence& psi, const SortedEquivalence& phi);

} // namespace msa
