#pragma once

#include <optional>
#include <string>
#include <vector>

#include "msa/signature.hpp"
#include "msa/sorted.hpp"

namespace msa {

// A finite algebra over a signature: carriers plus one total, dense operation
// table per symbol. Doubles as a deterministic bottom-up tree automaton with
// the accepting subset supplied elsewhere. Tables are indexed by the
// mixed-radix encoding of argument tuples (first argument most significant).
struct FiniteAlgebra {
    Signature sig;
    SortedSet carriers;
    std::vector<std::vector<int>> tables; // per op; entry = coarity carrier index

    int size(int s) const { return carriers.size(s); }
    int total_size() const { return carriers.total_size(); }

    // number of argument tuples of an op (1 for nullary, 0 if a domain sort is empty)
    long long tuple_count(int op) const;
    long long tuple_to_index(int op, const std::vector<int>& args) const;
    void index_to_tuple(int op, long long index, std::vector<int>& args_out) const;
    int op_value(int op, const std::vector<int>& args) const;

    // structural diagnostics; empty means well-formed
    std::vector<std::string> validate() const;

    bool operator==(const FiniteAlgebra&) const = default;
};

using Congruence = SortedEquivalence;
using Homomorphism = SortedMap;

// -------- congruences --------

// Direct check of the congruence condition: for every non-nullary operation
// and every componentwise-related pair of argument tuples, the results are
// related. Nullary operations impose no condition.
bool is_congruence(const FiniteAlgebra& a, const SortedEquivalence& phi);

// Equivalent route: closure under every elementary translation.
bool is_congruence_via_translations(const FiniteAlgebra& a, const SortedEquivalence& phi);

// All congruences, canonically ordered (lexicographic in per-sort canonical
// block form); always contains Δ and ∇. Throws BoundError when the total
// carrier exceeds max_total.
std::vector<Congruence> enumerate_congruences(const FiniteAlgebra& a, int max_total = 8);

// Least congruence relating every listed (sort, x, y); union-find closed
// under elementary translations to a fixed point.
Congruence congruence_generated(const FiniteAlgebra& a,
                                const std::vector<std::tuple<int, int, int>>& pairs);

// -------- quotients, products, subalgebras --------

struct QuotientResult {
    FiniteAlgebra algebra;
    Homomorphism projection;
};

// Tables on class representatives; well-definedness is checked against every
// tuple, so a non-congruence is rejected rather than silently misfolded.
QuotientResult quotient_algebra(const FiniteAlgebra& a, const Congruence& phi);

// The unique p with p ∘ pr_phi = f, for phi ⊆ Ker(f).
Homomorphism universal_factor(const FiniteAlgebra& a, const FiniteAlgebra& b,
                              const Homomorphism& f, const Congruence& phi);

struct ProductResult {
    FiniteAlgebra algebra;
    std::vector<Homomorphism> projections;
};

// Componentwise product; the empty family yields the final algebra (one
// element per sort). Throws BoundError past max_total.
ProductResult product(const Signature& sig, const std::vector<FiniteAlgebra>& factors,
                      long long max_total = 4096);

// Least subset containing x, every nullary value, and closed under tables.
SortedSubset subalgebra_generated(const FiniteAlgebra& a, const SortedSubset& x);

struct SubalgebraResult {
    FiniteAlgebra algebra;
    Homomorphism inclusion; // into the ambient algebra
};

// The algebra carried by a closed subset (element names preserved).
SubalgebraResult restrict_algebra(const FiniteAlgebra& a, const SortedSubset& closed);

// -------- homomorphisms --------

bool is_homomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b, const SortedMap& f);

enum class HomFilter { All, Mono, Epi, Iso };

// Backtracking over element images with per-step table consistency checks;
// output in lexicographic order of the flattened image vector. Search spaces
// larger than max_search throw BoundError.
std::vector<Homomorphism> enumerate_homs(const FiniteAlgebra& a, const FiniteAlgebra& b,
                                         HomFilter filter = HomFilter::All,
                                         long long max_search = 1000000);

// Witness isomorphism, if any. Profiles prune before backtracking.
std::optional<Homomorphism> are_isomorphic(const FiniteAlgebra& a, const FiniteAlgebra& b);

// Least byte string over all per-sort carrier relabellings encoding sizes and
// tables; equal keys characterize isomorphism over a common signature.
std::string canonical_key(const FiniteAlgebra& a);

// -------- subdirect products --------

// f : A → P.algebra with P a product; true iff f is injective per sort and
// every projection composed with f is surjective.
bool is_subdirect_embedding(const FiniteAlgebra& a, const SortedMap& f, const ProductResult& p);

// Direct search for a subdirect embedding of a into the product of the given
// factors (test oracle for the congruence route below).
bool exists_subdirect_embedding(const FiniteAlgebra& a, const std::vector<FiniteAlgebra>& factors,
                                long long max_search = 1000000);

// Congruences of a with meet Δ whose quotients are isomorphic to pool
// members; the empty family witnesses subfinal algebras. nullopt when none.
std::optional<std::vector<Congruence>> subdirect_witness(const FiniteAlgebra& a,
                                                         const std::vector<FiniteAlgebra>& pool,
                                                         int max_total = 8);

// per-sort carrier ≤ 1
bool is_subfinal(const FiniteAlgebra& a);

// The subfinal algebra with one element at each of the given sorts, when the
// support set is closed under the signature's operations.
FiniteAlgebra subfinal_algebra(const Signature& sig, const std::vector<int>& supported_sorts);

} // namespace msa
