#include "msa/algebra.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "msa/translation.hpp"
#include "msa/union_find.hpp"

namespace msa {

// -------- FiniteAlgebra basics --------

long long FiniteAlgebra::tuple_count(int op) const {
    long long n = 1;
    for (int s : sig.ops[op].arity) {
        n *= size(s);
        if (n == 0) return 0;
    }
    return n;
}

long long FiniteAlgebra::tuple_to_index(int op, const std::vector<int>& args) const {
    const auto& arity = sig.ops[op].arity;
    long long idx = 0;
    for (size_t i = 0; i < arity.size(); ++i) idx = idx * size(arity[i]) + args[i];
    return idx;
}

void FiniteAlgebra::index_to_tuple(int op, long long index, std::vector<int>& args_out) const {
    const auto& arity = sig.ops[op].arity;
    args_out.assign(arity.size(), 0);
    for (int i = static_cast<int>(arity.size()) - 1; i >= 0; --i) {
        int n = size(arity[i]);
        args_out[i] = static_cast<int>(index % n);
        index /= n;
    }
}

int FiniteAlgebra::op_value(int op, const std::vector<int>& args) const {
    return tables[op][tuple_to_index(op, args)];
}

std::vector<std::string> FiniteAlgebra::validate() const {
    std::vector<std::string> diags = sig.validate();
    for (const auto& d : carriers.validate()) diags.push_back(d);
    if (carriers.sorts != sig.sorts) diags.push_back("carrier sort list differs from signature");
    if (static_cast<int>(tables.size()) != sig.op_count()) {
        diags.push_back("table list not parallel to operation list");
        return diags;
    }
    for (int op = 0; op < sig.op_count(); ++op) {
        const OpSym& sym = sig.ops[op];
        long long want = tuple_count(op);
        if (static_cast<long long>(tables[op].size()) != want) {
            diags.push_back("table of " + sym.name + " has " +
                            std::to_string(tables[op].size()) + " entries, expected " +
                            std::to_string(want));
            continue;
        }
        if (want > 0 && size(sym.coarity) == 0) {
            diags.push_back("operation " + sym.name + " maps a nonempty domain into the empty carrier of sort " +
                            sig.sorts[sym.coarity]);
            continue;
        }
        std::vector<int> args;
        for (long long i = 0; i < want; ++i) {
            int v = tables[op][i];
            if (v < 0 || v >= size(sym.coarity)) {
                index_to_tuple(op, i, args);
                std::string tup;
                for (size_t j = 0; j < args.size(); ++j) {
                    if (j) tup += ",";
                    tup += carriers.carriers[sym.arity[j]][args[j]];
                }
                diags.push_back("table entry of " + sym.name + " at (" + tup +
                                ") is outside the carrier of sort " + sig.sorts[sym.coarity]);
            }
        }
    }
    return diags;
}

// -------- congruences --------

bool is_congruence(const FiniteAlgebra& a, const SortedEquivalence& phi) {
    if (!(phi.ambient == a.carriers)) throw ValidationError("is_congruence: ambient mismatch");
    std::vector<int> x, y;
    for (int op = 0; op < a.sig.op_count(); ++op) {
        const OpSym& sym = a.sig.ops[op];
        if (sym.arity.empty()) continue; // constants impose no condition
        long long n = a.tuple_count(op);
        for (long long i = 0; i < n; ++i) {
            a.index_to_tuple(op, i, x);
            for (long long j = 0; j < n; ++j) {
                a.index_to_tuple(op, j, y);
                bool related = true;
                for (size_t k = 0; k < sym.arity.size(); ++k)
                    if (!phi.related(sym.arity[k], x[k], y[k])) { related = false; break; }
                if (related && !phi.related(sym.coarity, a.tables[op][i], a.tables[op][j]))
                    return false;
            }
        }
    }
    return true;
}

bool is_congruence_via_translations(const FiniteAlgebra& a, const SortedEquivalence& phi) {
    if (!(phi.ambient == a.carriers))
        throw ValidationError("is_congruence_via_translations: ambient mismatch");
    for (int t = 0; t < a.sig.sort_count(); ++t) {
        auto per_target = enumerate_elementary(a, t);
        for (int s = 0; s < a.sig.sort_count(); ++s)
            for (const ElementaryTranslation& et : per_target[s])
                for (const auto& block : phi.blocks[t])
                    for (size_t i = 1; i < block.size(); ++i)
                        if (!phi.related(s, apply(a, et, block[0]), apply(a, et, block[i])))
                            return false;
    }
    return true;
}

namespace {

// all partitions of 0..n-1 as class-id vectors, in restricted-growth order
std::vector<std::vector<int>> all_partitions(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> a(n, 0);
    if (n == 0) {
        out.push_back({});
        return out;
    }
    while (true) {
        out.push_back(a);
        // next restricted growth string
        int i = n - 1;
        for (; i > 0; --i) {
            int maxprev = *std::max_element(a.begin(), a.begin() + i);
            if (a[i] <= maxprev) { ++a[i]; break; }
        }
        if (i == 0) break;
        std::fill(a.begin() + i + 1, a.end(), 0);
    }
    return out;
}

// checks the congruence condition for one op against per-sort class ids,
// varying one coordinate at a time
bool op_compatible(const FiniteAlgebra& a, int op, const std::vector<std::vector<int>>& cls) {
    const OpSym& sym = a.sig.ops[op];
    if (sym.arity.empty()) return true;
    long long n = a.tuple_count(op);
    std::vector<int> args;
    for (long long i = 0; i < n; ++i) {
        a.index_to_tuple(op, i, args);
        int res = cls[sym.coarity][a.tables[op][i]];
        for (size_t pos = 0; pos < sym.arity.size(); ++pos) {
            int sort_p = sym.arity[pos];
            int orig = args[pos];
            for (int alt = orig + 1; alt < a.size(sort_p); ++alt) {
                if (cls[sort_p][alt] != cls[sort_p][orig]) continue;
                args[pos] = alt;
                if (cls[sym.coarity][a.op_value(op, args)] != res) {
                    args[pos] = orig;
                    return false;
                }
            }
            args[pos] = orig;
        }
    }
    return true;
}

} // namespace

std::vector<Congruence> enumerate_congruences(const FiniteAlgebra& a, int max_total) {
    if (a.total_size() > max_total)
        throw BoundError("enumerate_congruences: total carrier " +
                         std::to_string(a.total_size()) + " exceeds bound " +
                         std::to_string(max_total));
    int ns = a.sig.sort_count();
    std::vector<std::vector<std::vector<int>>> per_sort(ns);
    for (int s = 0; s < ns; ++s) per_sort[s] = all_partitions(a.size(s));

    // ops become checkable once every involved sort has a chosen partition
    std::vector<std::vector<int>> ops_by_last_sort(ns);
    for (int op = 0; op < a.sig.op_count(); ++op) {
        int last = a.sig.ops[op].coarity;
        for (int s : a.sig.ops[op].arity) last = std::max(last, s);
        ops_by_last_sort[last].push_back(op);
    }

    std::vector<Congruence> out;
    std::vector<std::vector<int>> cls(ns);
    auto rec = [&](auto&& self, int s) -> void {
        if (s == ns) {
            out.push_back(SortedEquivalence::from_class_ids(a.carriers, cls));
            return;
        }
        for (const auto& p : per_sort[s]) {
            cls[s] = p;
            bool ok = true;
            for (int op : ops_by_last_sort[s])
                if (!op_compatible(a, op, cls)) { ok = false; break; }
            if (ok) self(self, s + 1);
        }
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end(),
              [](const Congruence& x, const Congruence& y) { return x.blocks < y.blocks; });
    return out;
}

Congruence congruence_generated(const FiniteAlgebra& a,
                                const std::vector<std::tuple<int, int, int>>& pairs) {
    // one union-find over the flattened carrier
    int ns = a.sig.sort_count();
    std::vector<int> offset(ns + 1, 0);
    for (int s = 0; s < ns; ++s) offset[s + 1] = offset[s] + a.size(s);
    UnionFind uf(offset[ns]);
    for (auto [s, x, y] : pairs) {
        if (s < 0 || s >= ns || x < 0 || x >= a.size(s) || y < 0 || y >= a.size(s))
            throw ValidationError("congruence_generated: pair outside carriers");
        uf.unite(offset[s] + x, offset[s] + y);
    }
    std::vector<std::vector<std::vector<ElementaryTranslation>>> ets(ns);
    for (int t = 0; t < ns; ++t) ets[t] = enumerate_elementary(a, t);

    bool changed = true;
    while (changed) {
        changed = false;
        for (int t = 0; t < ns; ++t)
            for (int x = 0; x < a.size(t); ++x)
                for (int y = x + 1; y < a.size(t); ++y) {
                    if (uf.find(offset[t] + x) != uf.find(offset[t] + y)) continue;
                    for (int s = 0; s < ns; ++s)
                        for (const auto& et : ets[t][s])
                            if (uf.unite(offset[s] + apply(a, et, x), offset[s] + apply(a, et, y)))
                                changed = true;
                }
    }
    std::vector<std::vector<int>> cls(ns);
    for (int s = 0; s < ns; ++s) {
        cls[s].resize(a.size(s));
        for (int x = 0; x < a.size(s); ++x) cls[s][x] = uf.find(offset[s] + x);
    }
    return SortedEquivalence::from_class_ids(a.carriers, cls);
}

// -------- quotient / factorization --------

QuotientResult quotient_algebra(const FiniteAlgebra& a, const Congruence& phi) {
    auto [qset, pr] = quotient_set(a.carriers, phi);
    FiniteAlgebra q;
    q.sig = a.sig;
    q.carriers = qset;
    q.tables.resize(a.sig.op_count());
    std::vector<int> args;
    for (int op = 0; op < a.sig.op_count(); ++op) {
        const OpSym& sym = a.sig.ops[op];
        long long qn = 1;
        for (int s : sym.arity) qn *= qset.size(s);
        q.tables[op].assign(qn, -1);
        long long n = a.tuple_count(op);
        for (long long i = 0; i < n; ++i) {
            a.index_to_tuple(op, i, args);
            long long qidx = 0;
            for (size_t j = 0; j < sym.arity.size(); ++j)
                qidx = qidx * qset.size(sym.arity[j]) + phi.block_index(sym.arity[j], args[j]);
            int qres = phi.block_index(sym.coarity, a.tables[op][i]);
            if (q.tables[op][qidx] == -1) q.tables[op][qidx] = qres;
            else if (q.tables[op][qidx] != qres)
                throw ValidationError("quotient_algebra: equivalence is not a congruence (operation " +
                                      sym.name + " is not well-defined on classes)");
        }
    }
    return {std::move(q), std::move(pr)};
}

Homomorphism universal_factor(const FiniteAlgebra& a, const FiniteAlgebra& b,
                              const Homomorphism& f, const Congruence& phi) {
    (void)b;
    if (!(f.domain == a.carriers)) throw ValidationError("universal_factor: map not on the algebra");
    if (!refines(phi, kernel(f)))
        throw ValidationError("universal_factor: congruence does not refine the kernel");
    auto [qset, pr] = quotient_set(a.carriers, phi);
    Homomorphism p;
    p.domain = qset;
    p.codomain = f.codomain;
    p.images.resize(qset.sort_count());
    for (int s = 0; s < qset.sort_count(); ++s)
        for (const auto& block : phi.blocks[s]) p.images[s].push_back(f.images[s][block.front()]);
    return p;
}

// -------- product --------

ProductResult product(const Signature& sig, const std::vector<FiniteAlgebra>& factors,
                      long long max_total) {
    for (const auto& f : factors)
        if (!(f.sig == sig)) throw ValidationError("product: factor over a different signature");

    int ns = sig.sort_count();
    int k = static_cast<int>(factors.size());
    // per sort, the carrier is the cartesian product of the factors' carriers;
    // the empty family yields the final algebra
    std::vector<long long> sizes(ns, 1);
    long long total = 0;
    for (int s = 0; s < ns; ++s) {
        for (const auto& f : factors) sizes[s] *= f.size(s);
        total += sizes[s];
        if (total > max_total)
            throw BoundError("product: carrier size exceeds bound " + std::to_string(max_total));
    }

    FiniteAlgebra p;
    p.sig = sig;
    p.carriers.sorts = sig.sorts;
    p.carriers.carriers.resize(ns);
    // element of the product at sort s = tuple of factor indices, mixed radix
    // (first factor most significant); names are synthesized
    auto decode = [&](int s, long long code) {
        std::vector<int> comp(k);
        for (int i = k - 1; i >= 0; --i) {
            int n = factors[i].size(s);
            comp[i] = static_cast<int>(code % n);
            code /= n;
        }
        return comp;
    };
    for (int s = 0; s < ns; ++s) {
        for (long long c = 0; c < sizes[s]; ++c) {
            std::string name = "t";
            if (k == 0) name = "u";
            auto comp = decode(s, c);
            for (int i = 0; i < k; ++i) name += (i ? "_" : "") + std::to_string(comp[i]);
            p.carriers.carriers[s].push_back(std::move(name));
        }
    }
    p.tables.resize(sig.op_count());
    std::vector<int> args;
    for (int op = 0; op < sig.op_count(); ++op) {
        long long n = p.tuple_count(op);
        p.tables[op].reserve(n);
        const OpSym& sym = sig.ops[op];
        for (long long i = 0; i < n; ++i) {
            p.index_to_tuple(op, i, args);
            // componentwise application
            long long res = 0;
            for (int f = 0; f < k; ++f) {
                std::vector<int> fargs(sym.arity.size());
                for (size_t j = 0; j < sym.arity.size(); ++j)
                    fargs[j] = decode(sym.arity[j], args[j])[f];
                res = res * factors[f].size(sym.coarity) + factors[f].op_value(op, fargs);
            }
            p.tables[op].push_back(static_cast<int>(res)); // k = 0 leaves res = 0: final algebra
        }
    }

    ProductResult out;
    out.projections.reserve(k);
    for (int f = 0; f < k; ++f) {
        Homomorphism pr;
        pr.domain = p.carriers;
        pr.codomain = factors[f].carriers;
        pr.images.resize(ns);
        for (int s = 0; s < ns; ++s)
            for (long long c = 0; c < sizes[s]; ++c)
                pr.images[s].push_back(decode(s, c)[f]);
        out.projections.push_back(std::move(pr));
    }
    out.algebra = std::move(p);
    return out;
}

// -------- subalgebras --------

SortedSubset subalgebra_generated(const FiniteAlgebra& a, const SortedSubset& x) {
    if (!(x.ambient == a.carriers)) throw ValidationError("subalgebra_generated: ambient mismatch");
    int ns = a.sig.sort_count();
    std::vector<std::vector<char>> in(ns);
    for (int s = 0; s < ns; ++s) {
        in[s].assign(a.size(s), 0);
        for (int e : x.members[s]) in[s][e] = 1;
    }
    bool changed = true;
    std::vector<int> args;
    while (changed) {
        changed = false;
        for (int op = 0; op < a.sig.op_count(); ++op) {
            const OpSym& sym = a.sig.ops[op];
            long long n = a.tuple_count(op);
            for (long long i = 0; i < n; ++i) {
                a.index_to_tuple(op, i, args);
                bool all_in = true;
                for (size_t j = 0; j < args.size(); ++j)
                    if (!in[sym.arity[j]][args[j]]) { all_in = false; break; }
                if (all_in && !in[sym.coarity][a.tables[op][i]]) {
                    in[sym.coarity][a.tables[op][i]] = 1;
                    changed = true;
                }
            }
        }
    }
    SortedSubset r = SortedSubset::empty(a.carriers);
    for (int s = 0; s < ns; ++s)
        for (int e = 0; e < a.size(s); ++e)
            if (in[s][e]) r.members[s].push_back(e);
    return r;
}

SubalgebraResult restrict_algebra(const FiniteAlgebra& a, const SortedSubset& closed) {
    if (!(closed.ambient == a.carriers)) throw ValidationError("restrict_algebra: ambient mismatch");
    int ns = a.sig.sort_count();
    // old index -> new index, -1 outside
    std::vector<std::vector<int>> remap(ns);
    FiniteAlgebra sub;
    sub.sig = a.sig;
    sub.carriers.sorts = a.sig.sorts;
    sub.carriers.carriers.resize(ns);
    for (int s = 0; s < ns; ++s) {
        remap[s].assign(a.size(s), -1);
        for (int e : closed.members[s]) {
            remap[s][e] = static_cast<int>(sub.carriers.carriers[s].size());
            sub.carriers.carriers[s].push_back(a.carriers.carriers[s][e]);
        }
    }
    sub.tables.resize(a.sig.op_count());
    std::vector<int> args;
    for (int op = 0; op < a.sig.op_count(); ++op) {
        const OpSym& sym = a.sig.ops[op];
        long long n = sub.tuple_count(op);
        sub.tables[op].reserve(n);
        for (long long i = 0; i < n; ++i) {
            sub.index_to_tuple(op, i, args);
            std::vector<int> old_args(args.size());
            for (size_t j = 0; j < args.size(); ++j)
                old_args[j] = closed.members[sym.arity[j]][args[j]];
            int v = remap[sym.coarity][a.op_value(op, old_args)];
            if (v < 0)
                throw ValidationError("restrict_algebra: subset not closed under " + sym.name);
            sub.tables[op].push_back(v);
        }
    }
    Homomorphism inc;
    inc.domain = sub.carriers;
    inc.codomain = a.carriers;
    inc.images.resize(ns);
    for (int s = 0; s < ns; ++s) inc.images[s] = closed.members[s];
    return {std::move(sub), std::move(inc)};
}

// -------- homomorphisms --------

bool is_homomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b, const SortedMap& f) {
    if (!(f.domain == a.carriers) || !(f.codomain == b.carriers)) return false;
    std::vector<int> args, fargs;
    for (int op = 0; op < a.sig.op_count(); ++op) {
        const OpSym& sym = a.sig.ops[op];
        long long n = a.tuple_count(op);
        fargs.resize(sym.arity.size());
        for (long long i = 0; i < n; ++i) {
            a.index_to_tuple(op, i, args);
            for (size_t j = 0; j < args.size(); ++j) fargs[j] = f.images[sym.arity[j]][args[j]];
            if (f.images[sym.coarity][a.tables[op][i]] != b.op_value(op, fargs)) return false;
        }
    }
    return true;
}

namespace {

struct HomSearch {
    const FiniteAlgebra& a;
    const FiniteAlgebra& b;
    // flat ordering of domain elements
    std::vector<std::pair<int, int>> flat; // (sort, element)
    std::vector<std::vector<int>> flat_index; // [sort][elem] -> position
    // constraints grouped by the last flat position they involve
    struct Constraint {
        int op;
        long long tuple;
        int result_elem_pos; // flat position of F(tuple)
        std::vector<int> arg_pos;
    };
    std::vector<std::vector<Constraint>> triggers;
    std::vector<int> image; // flat assignment, -1 unassigned

    HomSearch(const FiniteAlgebra& a_, const FiniteAlgebra& b_) : a(a_), b(b_) {
        int ns = a.sig.sort_count();
        flat_index.resize(ns);
        for (int s = 0; s < ns; ++s) {
            flat_index[s].resize(a.size(s));
            for (int e = 0; e < a.size(s); ++e) {
                flat_index[s][e] = static_cast<int>(flat.size());
                flat.emplace_back(s, e);
            }
        }
        triggers.resize(flat.size() + 1);
        std::vector<int> args;
        for (int op = 0; op < a.sig.op_count(); ++op) {
            const OpSym& sym = a.sig.ops[op];
            long long n = a.tuple_count(op);
            for (long long i = 0; i < n; ++i) {
                a.index_to_tuple(op, i, args);
                Constraint c;
                c.op = op;
                c.tuple = i;
                c.result_elem_pos = flat_index[sym.coarity][a.tables[op][i]];
                int last = c.result_elem_pos;
                for (size_t j = 0; j < args.size(); ++j) {
                    c.arg_pos.push_back(flat_index[sym.arity[j]][args[j]]);
                    last = std::max(last, c.arg_pos.back());
                }
                triggers[last].push_back(std::move(c));
            }
        }
        image.assign(flat.size(), -1);
    }

    bool check_at(int pos) {
        std::vector<int> fargs;
        for (const Constraint& c : triggers[pos]) {
            const OpSym& sym = a.sig.ops[c.op];
            fargs.resize(c.arg_pos.size());
            for (size_t j = 0; j < c.arg_pos.size(); ++j) fargs[j] = image[c.arg_pos[j]];
            if (image[c.result_elem_pos] != b.op_value(c.op, fargs)) return false;
        }
        return true;
    }
};

} // namespace

std::vector<Homomorphism> enumerate_homs(const FiniteAlgebra& a, const FiniteAlgebra& b,
                                         HomFilter filter, long long max_search) {
    std::vector<Homomorphism> out;
    // no sorted map at all when some nonempty sort of a is empty in b
    for (int s = 0; s < a.sig.sort_count(); ++s)
        if (a.size(s) > 0 && b.size(s) == 0) return out;

    double space = 1;
    for (int s = 0; s < a.sig.sort_count(); ++s)
        for (int e = 0; e < a.size(s); ++e) {
            space *= b.size(s);
            (void)e;
        }
    if (space > static_cast<double>(max_search))
        throw BoundError("enumerate_homs: search space exceeds bound");

    HomSearch hs(a, b);
    int n = static_cast<int>(hs.flat.size());
    auto rec = [&](auto&& self, int pos) -> void {
        if (pos == n) {
            Homomorphism f;
            f.domain = a.carriers;
            f.codomain = b.carriers;
            f.images.resize(a.sig.sort_count());
            for (int i = 0; i < n; ++i) f.images[hs.flat[i].first].push_back(hs.image[i]);
            bool keep = true;
            switch (filter) {
                case HomFilter::All: break;
                case HomFilter::Mono: keep = f.is_injective(); break;
                case HomFilter::Epi: keep = f.is_surjective(); break;
                case HomFilter::Iso: keep = f.is_injective() && f.is_surjective(); break;
            }
            if (keep) out.push_back(std::move(f));
            return;
        }
        int s = hs.flat[pos].first;
        for (int img = 0; img < b.size(s); ++img) {
            hs.image[pos] = img;
            if (hs.check_at(pos)) self(self, pos + 1);
        }
        hs.image[pos] = -1;
    };
    rec(rec, 0);
    return out;
}

// -------- isomorphism --------

namespace {

// per-element invariant: for each op, how often the element occurs as a result
std::vector<std::vector<std::vector<long long>>> element_profiles(const FiniteAlgebra& a) {
    int ns = a.sig.sort_count();
    std::vector<std::vector<std::vector<long long>>> prof(ns);
    for (int s = 0; s < ns; ++s)
        prof[s].assign(a.size(s), std::vector<long long>(a.sig.op_count(), 0));
    for (int op = 0; op < a.sig.op_count(); ++op) {
        int cs = a.sig.ops[op].coarity;
        for (int v : a.tables[op]) ++prof[cs][v][op];
    }
    return prof;
}

} // namespace

std::optional<Homomorphism> are_isomorphic(const FiniteAlgebra& a, const FiniteAlgebra& b) {
    if (!(a.sig == b.sig)) return std::nullopt;
    for (int s = 0; s < a.sig.sort_count(); ++s)
        if (a.size(s) != b.size(s)) return std::nullopt;

    auto pa = element_profiles(a);
    auto pb = element_profiles(b);
    {
        // sorted profile multisets must match per sort
        for (int s = 0; s < a.sig.sort_count(); ++s) {
            auto xa = pa[s], xb = pb[s];
            std::sort(xa.begin(), xa.end());
            std::sort(xb.begin(), xb.end());
            if (xa != xb) return std::nullopt;
        }
    }

    HomSearch hs(a, b);
    int n = static_cast<int>(hs.flat.size());
    std::vector<std::vector<char>> used(a.sig.sort_count());
    for (int s = 0; s < a.sig.sort_count(); ++s) used[s].assign(b.size(s), 0);

    std::optional<Homomorphism> found;
    auto rec = [&](auto&& self, int pos) -> bool {
        if (pos == n) {
            Homomorphism f;
            f.domain = a.carriers;
            f.codomain = b.carriers;
            f.images.resize(a.sig.sort_count());
            for (int i = 0; i < n; ++i) f.images[hs.flat[i].first].push_back(hs.image[i]);
            found = std::move(f);
            return true;
        }
        auto [s, e] = hs.flat[pos];
        for (int img = 0; img < b.size(s); ++img) {
            if (used[s][img] || pa[s][e] != pb[s][img]) continue;
            hs.image[pos] = img;
            used[s][img] = 1;
            if (hs.check_at(pos) && self(self, pos + 1)) return true;
            used[s][img] = 0;
        }
        hs.image[pos] = -1;
        return false;
    };
    rec(rec, 0);
    return found;
}

std::string canonical_key(const FiniteAlgebra& a) {
    int ns = a.sig.sort_count();
    // iterate the product of per-sort permutations; perm[s] maps new -> old
    std::vector<std::vector<int>> perm(ns);
    for (int s = 0; s < ns; ++s) {
        perm[s].resize(a.size(s));
        std::iota(perm[s].begin(), perm[s].end(), 0);
    }
    std::vector<std::vector<int>> inv(ns);

    std::string best;
    std::string cur;
    std::vector<int> args, old_args;
    auto encode = [&]() {
        for (int s = 0; s < ns; ++s) {
            inv[s].assign(a.size(s), 0);
            for (int i = 0; i < a.size(s); ++i) inv[s][perm[s][i]] = i;
        }
        cur.clear();
        for (int s = 0; s < ns; ++s) cur += static_cast<char>(a.size(s));
        for (int op = 0; op < a.sig.op_count(); ++op) {
            const OpSym& sym = a.sig.ops[op];
            long long n = a.tuple_count(op);
            for (long long i = 0; i < n; ++i) {
                a.index_to_tuple(op, i, args);
                old_args.resize(args.size());
                for (size_t j = 0; j < args.size(); ++j) old_args[j] = perm[sym.arity[j]][args[j]];
                cur += static_cast<char>(inv[sym.coarity][a.op_value(op, old_args)]);
            }
        }
        if (best.empty() || cur < best) best = cur;
    };

    auto rec = [&](auto&& self, int s) -> void {
        if (s == ns) {
            encode();
            return;
        }
        std::sort(perm[s].begin(), perm[s].end());
        do {
            self(self, s + 1);
        } while (std::next_permutation(perm[s].begin(), perm[s].end()));
    };
    rec(rec, 0);
    return best;
}

// -------- subdirect products --------

bool is_subdirect_embedding(const FiniteAlgebra& a, const SortedMap& f, const ProductResult& p) {
    (void)a;
    if (!f.is_injective()) return false;
    for (const Homomorphism& pr : p.projections)
        if (!compose(pr, f).is_surjective()) return false;
    return true;
}

bool exists_subdirect_embedding(const FiniteAlgebra& a, const std::vector<FiniteAlgebra>& factors,
                                long long max_search) {
    ProductResult p = product(a.sig, factors, 1 << 20);
    if (factors.empty()) {
        // embeddings into the final algebra exist exactly for subfinal carriers
        return is_subfinal(a);
    }
    auto homs = enumerate_homs(a, p.algebra, HomFilter::Mono, max_search);
    for (const auto& f : homs)
        if (is_subdirect_embedding(a, f, p)) return true;
    return false;
}

bool is_subfinal(const FiniteAlgebra& a) {
    for (int s = 0; s < a.sig.sort_count(); ++s)
        if (a.size(s) > 1) return false;
    return true;
}

FiniteAlgebra subfinal_algebra(const Signature& sig, const std::vector<int>& supported_sorts) {
    FiniteAlgebra a;
    a.sig = sig;
    a.carriers.sorts = sig.sorts;
    a.carriers.carriers.resize(sig.sort_count());
    std::vector<char> in(sig.sort_count(), 0);
    for (int s : supported_sorts) in[s] = 1;
    for (int s = 0; s < sig.sort_count(); ++s)
        if (in[s]) a.carriers.carriers[s].push_back("u");
    a.tables.resize(sig.op_count());
    for (int op = 0; op < sig.op_count(); ++op) {
        long long n = a.tuple_count(op);
        if (n > 0 && a.size(sig.ops[op].coarity) == 0)
            throw ValidationError("subfinal_algebra: support not closed under " + sig.ops[op].name);
        a.tables[op].assign(n, 0);
    }
    return a;
}

std::optional<std::vector<Congruence>> subdirect_witness(const FiniteAlgebra& a,
                                                         const std::vector<FiniteAlgebra>& pool,
                                                         int max_total) {
    if (is_subfinal(a)) return std::vector<Congruence>{}; // empty family into the final algebra

    auto congruences = enumerate_congruences(a, max_total);
    // keep the congruences whose quotient matches a pool member
    std::vector<Congruence> usable;
    for (const auto& phi : congruences) {
        FiniteAlgebra q = quotient_algebra(a, phi).algebra;
        for (const auto& member : pool)
            if (are_isomorphic(q, member)) {
                usable.push_back(phi);
                break;
            }
    }
    if (usable.empty()) return std::nullopt;
    // the family works iff the meet of all usable congruences is Δ; then a
    // small subfamily is extracted greedily in canonical order
    Congruence meet = usable.front();
    for (size_t i = 1; i < usable.size(); ++i) meet = meet_equiv(meet, usable[i]);
    if (!(meet == SortedEquivalence::identity(a.carriers))) return std::nullopt;

    std::vector<Congruence> family;
    Congruence running = SortedEquivalence::full(a.carriers);
    for (const auto& phi : usable) {
        Congruence next = meet_equiv(running, phi);
        if (!(next == running)) {
            family.push_back(phi);
            running = next;
        }
        if (running == SortedEquivalence::identity(a.carriers)) break;
    }
    return family;
}

} // namespace msa
