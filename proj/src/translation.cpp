#include "msa/translation.hpp"

#include <algorithm>
#include <set>

namespace msa {

int apply(const FiniteAlgebra& a, const ElementaryTranslation& t, int x) {
    std::vector<int> args = t.frozen;
    args[t.hole] = x;
    return a.op_value(t.op, args);
}

int apply(const FiniteAlgebra& a, const Translation& t, int x) {
    (void)a;
    return t.table[x];
}

Translation Translation::make_identity(const FiniteAlgebra& a, int sort) {
    Translation t;
    t.source_sort = sort;
    t.target_sort = sort;
    t.identity = true;
    t.table.resize(a.size(sort));
    for (int i = 0; i < a.size(sort); ++i) t.table[i] = i;
    return t;
}

Translation Translation::from_chain(const FiniteAlgebra& a,
                                    std::vector<ElementaryTranslation> chain) {
    if (chain.empty()) throw ValidationError("from_chain: chains are nonempty");
    Translation t;
    t.source_sort = chain.front().hole_sort;
    t.target_sort = chain.back().target_sort;
    for (size_t i = 1; i < chain.size(); ++i)
        if (chain[i].hole_sort != chain[i - 1].target_sort)
            throw ValidationError("from_chain: sorts do not compose");
    t.table.resize(a.size(t.source_sort));
    for (int x = 0; x < a.size(t.source_sort); ++x) {
        int v = x;
        for (const auto& et : chain) v = apply(a, et, v);
        t.table[x] = v;
    }
    t.chain = std::move(chain);
    return t;
}

std::vector<std::vector<ElementaryTranslation>> enumerate_elementary(const FiniteAlgebra& a,
                                                                     int hole_sort) {
    int ns = a.sig.sort_count();
    std::vector<std::vector<ElementaryTranslation>> out(ns);
    for (int op = 0; op < a.sig.op_count(); ++op) {
        const OpSym& sym = a.sig.ops[op];
        for (int pos = 0; pos < static_cast<int>(sym.arity.size()); ++pos) {
            if (sym.arity[pos] != hole_sort) continue;
            // frozen tuples over the non-hole positions, mixed-radix order
            long long count = 1;
            for (int j = 0; j < static_cast<int>(sym.arity.size()); ++j)
                if (j != pos) count *= a.size(sym.arity[j]);
            for (long long c = 0; c < count; ++c) {
                ElementaryTranslation et;
                et.op = op;
                et.hole = pos;
                et.hole_sort = hole_sort;
                et.target_sort = sym.coarity;
                et.frozen.assign(sym.arity.size(), 0);
                long long rest = c;
                for (int j = static_cast<int>(sym.arity.size()) - 1; j >= 0; --j) {
                    if (j == pos) continue;
                    int n = a.size(sym.arity[j]);
                    et.frozen[j] = static_cast<int>(rest % n);
                    rest /= n;
                }
                out[sym.coarity].push_back(std::move(et));
            }
        }
    }
    return out;
}

std::vector<std::vector<Translation>> enumerate_translations(const FiniteAlgebra& a,
                                                             int source_sort) {
    int ns = a.sig.sort_count();
    std::vector<std::vector<ElementaryTranslation>> ets_by_hole(ns);
    // elementary steps available from each intermediate sort, flattened
    std::vector<std::vector<ElementaryTranslation>> steps(ns);
    for (int t = 0; t < ns; ++t) {
        auto per_target = enumerate_elementary(a, t);
        for (int s = 0; s < ns; ++s)
            for (auto& et : per_target[s]) steps[t].push_back(std::move(et));
    }

    std::vector<std::vector<Translation>> out(ns);
    std::vector<std::set<std::vector<int>>> seen(ns); // dedup by induced function
    std::vector<Translation> work;

    auto push = [&](Translation t) {
        if (seen[t.target_sort].insert(t.table).second) {
            out[t.target_sort].push_back(t);
            work.push_back(std::move(t));
        }
    };

    push(Translation::make_identity(a, source_sort));
    for (const auto& et : steps[source_sort]) push(Translation::from_chain(a, {et}));

    while (!work.empty()) {
        Translation t = std::move(work.back());
        work.pop_back();
        for (const auto& et : steps[t.target_sort]) {
            Translation composed;
            composed.source_sort = source_sort;
            composed.target_sort = et.target_sort;
            composed.identity = false;
            composed.chain = t.chain;
            composed.chain.push_back(et);
            composed.table.resize(a.size(source_sort));
            for (int x = 0; x < a.size(source_sort); ++x)
                composed.table[x] = apply(a, et, t.table[x]);
            push(std::move(composed));
        }
    }
    return out;
}

Translation transport(const FiniteAlgebra& a, const FiniteAlgebra& b, const SortedMap& f,
                      const Translation& t) {
    (void)a;
    if (t.identity) return Translation::make_identity(b, t.source_sort);
    std::vector<ElementaryTranslation> chain = t.chain;
    for (auto& et : chain) {
        const OpSym& sym = b.sig.ops[et.op];
        for (size_t j = 0; j < et.frozen.size(); ++j)
            if (static_cast<int>(j) != et.hole)
                et.frozen[j] = f.images[sym.arity[j]][et.frozen[j]];
    }
    return Translation::from_chain(b, std::move(chain));
}

Translation lift_translation(const FiniteAlgebra& a, const FiniteAlgebra& b, const SortedMap& f,
                             const Translation& u) {
    if (!f.is_surjective())
        throw ValidationError("lift_translation: homomorphism is not surjective");
    if (u.identity) return Translation::make_identity(a, u.source_sort);
    std::vector<ElementaryTranslation> chain = u.chain;
    for (auto& et : chain) {
        const OpSym& sym = a.sig.ops[et.op];
        for (size_t j = 0; j < et.frozen.size(); ++j) {
            if (static_cast<int>(j) == et.hole) continue;
            int target = et.frozen[j];
            int pre = -1;
            for (int x = 0; x < a.size(sym.arity[j]); ++x)
                if (f.images[sym.arity[j]][x] == target) { pre = x; break; }
            if (pre < 0) throw ValidationError("lift_translation: missing preimage");
            et.frozen[j] = pre;
        }
    }
    (void)b;
    return Translation::from_chain(a, std::move(chain));
}

SortedSubset inverse_image_translation(const FiniteAlgebra& a, const Translation& t,
                                       const SortedSubset& l) {
    if (!(l.ambient == a.carriers))
        throw ValidationError("inverse_image_translation: ambient mismatch");
    std::vector<int> hits;
    for (int x = 0; x < a.size(t.source_sort); ++x)
        if (l.contains(t.target_sort, t.table[x])) hits.push_back(x);
    return SortedSubset::delta(a.carriers, t.source_sort, std::move(hits));
}

} // namespace msa
