#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "msa/signature.hpp"

namespace msa {

struct FiniteAlgebra; // algebra.hpp

// A well-sorted term of the free algebra over a generator set: either a
// generator occurrence or an operation applied to child terms. Trees are the
// terms; unique readability makes structural equality term equality.
class Term {
  public:
    Term() = default;

    static Term var(std::string name, int sort);
    // checks arity length and child sorts against the signature
    static Term app(const Signature& sig, int op, std::vector<Term> children);
    static Term app(const Signature& sig, std::string_view op_name, std::vector<Term> children);

    bool is_var() const { return var_; }
    const std::string& head() const { return head_; }
    int op_index() const { return op_; } // -1 for variables
    int sort() const { return sort_; }
    const std::vector<Term>& children() const { return kids_; }
    int node_count() const;

    bool operator==(const Term& o) const {
        return var_ == o.var_ && head_ == o.head_ && sort_ == o.sort_ && kids_ == o.kids_;
    }

  private:
    bool var_ = false;
    std::string head_;
    int op_ = -1;
    int sort_ = -1;
    std::vector<Term> kids_;
};

// Concrete syntax: term := '(' IDENT term* ')', every application
// parenthesized, including generators and nullary operations. A leaf (x) is a
// generator occurrence iff x is declared in the generator set, otherwise it
// must name a nullary operation. IDENT is [A-Za-z_][A-Za-z0-9_'-]*.
Term parse_term(std::string_view text, const Signature& sig, const GeneratorSet& gens);
std::string print_term(const Term& t);

// Folds the term through the algebra's tables: generators via the assignment,
// operations via table lookup. Iterative, no recursion on term depth.
// Returns the carrier index at the term's sort.
int evaluate(const Term& t, const FiniteAlgebra& b, const SortedMap& assign);

// A sorted assignment of terms over `codomain` generators to `domain`
// generators; induces the substitution homomorphism between free algebras.
struct GeneratorMap {
    GeneratorSet domain;
    GeneratorSet codomain;
    std::vector<std::vector<Term>> images; // parallel to domain carriers

    static GeneratorMap identity(const GeneratorSet& gens);
    const Term& image(int s, int i) const { return images[s][i]; }
    std::vector<std::string> validate() const; // sort agreement of images
};

// The substitution homomorphism applied to one term.
Term free_hom(const Signature& sig, const GeneratorMap& g, const Term& t);

// Composite substitution: x ↦ free_hom(g2, g1(x)).
GeneratorMap compose(const Signature& sig, const GeneratorMap& g2, const GeneratorMap& g1);

// Given a surjective homomorphism f : B ↠ C and a generator assignment
// g : X → C, picks h : X → B with f∘h = g. Preimages are chosen by least
// carrier index; downstream results must not depend on the choice.
SortedMap lift_through_epi(const FiniteAlgebra& b, const FiniteAlgebra& c, const SortedMap& f,
                           const SortedMap& g);

} // namespace msa
