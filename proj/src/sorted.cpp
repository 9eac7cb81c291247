#include "msa/sorted.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace msa {

// -------- SortedSet --------

int SortedSet::sort_index(std::string_view name) const {
    for (int s = 0; s < sort_count(); ++s)
        if (sorts[s] == name) return s;
    return -1;
}

int SortedSet::total_size() const {
    int n = 0;
    for (const auto& c : carriers) n += static_cast<int>(c.size());
    return n;
}

int SortedSet::element_index(int s, std::string_view name) const {
    const auto& c = carriers[s];
    for (int i = 0; i < static_cast<int>(c.size()); ++i)
        if (c[i] == name) return i;
    return -1;
}

std::vector<std::string> SortedSet::validate() const {
    std::vector<std::string> diags;
    if (sorts.size() != carriers.size())
        diags.push_back("sort list and carrier list have different lengths");
    std::set<std::string> seen_sorts;
    for (const auto& s : sorts) {
        if (s.empty()) diags.push_back("empty sort name");
        if (!seen_sorts.insert(s).second) diags.push_back("duplicate sort name: " + s);
    }
    for (size_t s = 0; s < carriers.size() && s < sorts.size(); ++s) {
        std::set<std::string> seen;
        for (const auto& e : carriers[s])
            if (!seen.insert(e).second)
                diags.push_back("duplicate element '" + e + "' in carrier of sort " + sorts[s]);
    }
    return diags;
}

// -------- SortedSubset --------

SortedSubset SortedSubset::empty(const SortedSet& a) {
    SortedSubset x;
    x.ambient = a;
    x.members.resize(a.sort_count());
    return x;
}

SortedSubset SortedSubset::full(const SortedSet& a) {
    SortedSubset x = empty(a);
    for (int s = 0; s < a.sort_count(); ++s) {
        x.members[s].resize(a.size(s));
        for (int i = 0; i < a.size(s); ++i) x.members[s][i] = i;
    }
    return x;
}

SortedSubset SortedSubset::delta(const SortedSet& a, int sort, std::vector<int> elems) {
    SortedSubset x = empty(a);
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    for (int e : elems)
        if (e < 0 || e >= a.size(sort)) throw ValidationError("delta element out of carrier");
    x.members[sort] = std::move(elems);
    return x;
}

bool SortedSubset::contains(int s, int x) const {
    return std::binary_search(members[s].begin(), members[s].end(), x);
}

int SortedSubset::total_size() const {
    int n = 0;
    for (const auto& m : members) n += static_cast<int>(m.size());
    return n;
}

bool SortedSubset::is_empty() const { return total_size() == 0; }

static void require_same_ambient(const SortedSet& a, const SortedSet& b, const char* what) {
    if (!(a == b)) throw ValidationError(std::string("ambient mismatch in ") + what);
}

SortedSubset subset_union(const SortedSubset& a, const SortedSubset& b) {
    require_same_ambient(a.ambient, b.ambient, "subset_union");
    SortedSubset r = SortedSubset::empty(a.ambient);
    for (size_t s = 0; s < a.members.size(); ++s)
        std::set_union(a.members[s].begin(), a.members[s].end(),
                       b.members[s].begin(), b.members[s].end(),
                       std::back_inserter(r.members[s]));
    return r;
}

SortedSubset subset_intersection(const SortedSubset& a, const SortedSubset& b) {
    require_same_ambient(a.ambient, b.ambient, "subset_intersection");
    SortedSubset r = SortedSubset::empty(a.ambient);
    for (size_t s = 0; s < a.members.size(); ++s)
        std::set_intersection(a.members[s].begin(), a.members[s].end(),
                              b.members[s].begin(), b.members[s].end(),
                              std::back_inserter(r.members[s]));
    return r;
}

SortedSubset subset_complement(const SortedSubset& a) {
    SortedSubset r = SortedSubset::empty(a.ambient);
    for (int s = 0; s < a.ambient.sort_count(); ++s)
        for (int i = 0; i < a.ambient.size(s); ++i)
            if (!a.contains(s, i)) r.members[s].push_back(i);
    return r;
}

SortedSubset subset_difference(const SortedSubset& a, const SortedSubset& b) {
    require_same_ambient(a.ambient, b.ambient, "subset_difference");
    SortedSubset r = SortedSubset::empty(a.ambient);
    for (size_t s = 0; s < a.members.size(); ++s)
        std::set_difference(a.members[s].begin(), a.members[s].end(),
                            b.members[s].begin(), b.members[s].end(),
                            std::back_inserter(r.members[s]));
    return r;
}

bool subset_leq(const SortedSubset& a, const SortedSubset& b) {
    require_same_ambient(a.ambient, b.ambient, "subset_leq");
    for (size_t s = 0; s < a.members.size(); ++s)
        if (!std::includes(b.members[s].begin(), b.members[s].end(),
                           a.members[s].begin(), a.members[s].end()))
            return false;
    return true;
}

// -------- SortedMap --------

SortedMap SortedMap::identity(const SortedSet& a) {
    SortedMap f;
    f.domain = a;
    f.codomain = a;
    f.images.resize(a.sort_count());
    for (int s = 0; s < a.sort_count(); ++s) {
        f.images[s].resize(a.size(s));
        for (int i = 0; i < a.size(s); ++i) f.images[s][i] = i;
    }
    return f;
}

bool SortedMap::is_injective() const {
    for (size_t s = 0; s < images.size(); ++s) {
        std::set<int> seen;
        for (int y : images[s])
            if (!seen.insert(y).second) return false;
    }
    return true;
}

bool SortedMap::is_surjective() const {
    for (int s = 0; s < codomain.sort_count(); ++s) {
        std::vector<char> hit(codomain.size(s), 0);
        for (int y : images[s]) hit[y] = 1;
        for (char h : hit)
            if (!h) return false;
    }
    return true;
}

std::vector<std::string> SortedMap::validate() const {
    std::vector<std::string> diags;
    if (domain.sorts != codomain.sorts) diags.push_back("domain/codomain sort lists differ");
    if (static_cast<int>(images.size()) != domain.sort_count())
        diags.push_back("image table not parallel to sort list");
    for (int s = 0; s < domain.sort_count() && s < static_cast<int>(images.size()); ++s) {
        if (static_cast<int>(images[s].size()) != domain.size(s))
            diags.push_back("map not total at sort " + domain.sorts[s]);
        for (int y : images[s])
            if (y < 0 || y >= codomain.size(s))
                diags.push_back("image out of codomain carrier at sort " + domain.sorts[s]);
    }
    return diags;
}

SortedMap compose(const SortedMap& g, const SortedMap& f) {
    require_same_ambient(g.domain, f.codomain, "compose");
    SortedMap r;
    r.domain = f.domain;
    r.codomain = g.codomain;
    r.images.resize(f.domain.sort_count());
    for (int s = 0; s < f.domain.sort_count(); ++s) {
        r.images[s].reserve(f.images[s].size());
        for (int x : f.images[s]) r.images[s].push_back(g.images[s][x]);
    }
    return r;
}

// -------- SortedEquivalence --------

void SortedEquivalence::rebuild_cache() {
    block_of_.assign(ambient.sort_count(), {});
    for (int s = 0; s < ambient.sort_count(); ++s) {
        block_of_[s].assign(ambient.size(s), -1);
        for (int b = 0; b < static_cast<int>(blocks[s].size()); ++b)
            for (int x : blocks[s][b]) block_of_[s][x] = b;
    }
}

SortedEquivalence SortedEquivalence::identity(const SortedSet& a) {
    std::vector<std::vector<std::vector<int>>> bl(a.sort_count());
    for (int s = 0; s < a.sort_count(); ++s)
        for (int i = 0; i < a.size(s); ++i) bl[s].push_back({i});
    return from_blocks(a, std::move(bl));
}

SortedEquivalence SortedEquivalence::full(const SortedSet& a) {
    std::vector<std::vector<std::vector<int>>> bl(a.sort_count());
    for (int s = 0; s < a.sort_count(); ++s) {
        if (a.size(s) == 0) continue;
        std::vector<int> all(a.size(s));
        for (int i = 0; i < a.size(s); ++i) all[i] = i;
        bl[s].push_back(std::move(all));
    }
    return from_blocks(a, std::move(bl));
}

SortedEquivalence SortedEquivalence::from_blocks(
    const SortedSet& a, std::vector<std::vector<std::vector<int>>> blocks) {
    if (static_cast<int>(blocks.size()) != a.sort_count())
        throw ValidationError("block family not parallel to sort list");
    for (int s = 0; s < a.sort_count(); ++s) {
        std::vector<char> seen(a.size(s), 0);
        for (auto& b : blocks[s]) {
            if (b.empty()) throw ValidationError("empty block at sort " + a.sorts[s]);
            std::sort(b.begin(), b.end());
            for (int x : b) {
                if (x < 0 || x >= a.size(s))
                    throw ValidationError("block element out of carrier at sort " + a.sorts[s]);
                if (seen[x]) throw ValidationError("overlapping blocks at sort " + a.sorts[s]);
                seen[x] = 1;
            }
        }
        for (int i = 0; i < a.size(s); ++i)
            if (!seen[i])
                throw ValidationError("blocks do not cover carrier at sort " + a.sorts[s]);
        std::sort(blocks[s].begin(), blocks[s].end(),
                  [](const auto& x, const auto& y) { return x.front() < y.front(); });
    }
    SortedEquivalence e;
    e.ambient = a;
    e.blocks = std::move(blocks);
    e.rebuild_cache();
    return e;
}

SortedEquivalence SortedEquivalence::from_class_ids(const SortedSet& a,
                                                    const std::vector<std::vector<int>>& cls) {
    std::vector<std::vector<std::vector<int>>> bl(a.sort_count());
    for (int s = 0; s < a.sort_count(); ++s) {
        std::map<int, std::vector<int>> by_id;
        for (int i = 0; i < a.size(s); ++i) by_id[cls[s][i]].push_back(i);
        for (auto& [id, elems] : by_id) bl[s].push_back(std::move(elems));
    }
    return from_blocks(a, std::move(bl));
}

int SortedEquivalence::total_block_count() const {
    int n = 0;
    for (const auto& b : blocks) n += static_cast<int>(b.size());
    return n;
}

// -------- operations --------

std::vector<int> support(const SortedSet& a) {
    std::vector<int> r;
    for (int s = 0; s < a.sort_count(); ++s)
        if (a.size(s) > 0) r.push_back(s);
    return r;
}

std::vector<int> support(const SortedSubset& x) {
    std::vector<int> r;
    for (int s = 0; s < static_cast<int>(x.members.size()); ++s)
        if (!x.members[s].empty()) r.push_back(s);
    return r;
}

SortedSubset direct_image(const SortedMap& f, const SortedSubset& x) {
    require_same_ambient(f.domain, x.ambient, "direct_image");
    SortedSubset r = SortedSubset::empty(f.codomain);
    for (int s = 0; s < f.domain.sort_count(); ++s) {
        std::set<int> img;
        for (int e : x.members[s]) img.insert(f.images[s][e]);
        r.members[s].assign(img.begin(), img.end());
    }
    return r;
}

SortedSubset inverse_image(const SortedMap& f, const SortedSubset& y) {
    require_same_ambient(f.codomain, y.ambient, "inverse_image");
    SortedSubset r = SortedSubset::empty(f.domain);
    for (int s = 0; s < f.domain.sort_count(); ++s)
        for (int e = 0; e < f.domain.size(s); ++e)
            if (y.contains(s, f.images[s][e])) r.members[s].push_back(e);
    return r;
}

SortedEquivalence kernel(const SortedMap& f) {
    std::vector<std::vector<std::vector<int>>> bl(f.domain.sort_count());
    for (int s = 0; s < f.domain.sort_count(); ++s) {
        std::map<int, std::vector<int>> fibers;
        for (int e = 0; e < f.domain.size(s); ++e) fibers[f.images[s][e]].push_back(e);
        for (auto& [y, fiber] : fibers) bl[s].push_back(std::move(fiber));
    }
    return SortedEquivalence::from_blocks(f.domain, std::move(bl));
}

SortedSubset saturate(const SortedSubset& x, const SortedEquivalence& phi) {
    require_same_ambient(x.ambient, phi.ambient, "saturate");
    SortedSubset r = SortedSubset::empty(x.ambient);
    for (int s = 0; s < x.ambient.sort_count(); ++s) {
        std::vector<char> in_block(phi.block_count(s), 0);
        for (int e : x.members[s]) in_block[phi.block_index(s, e)] = 1;
        for (int e = 0; e < x.ambient.size(s); ++e)
            if (in_block[phi.block_index(s, e)]) r.members[s].push_back(e);
    }
    return r;
}

bool is_saturated(const SortedSubset& x, const SortedEquivalence& phi) {
    return saturate(x, phi) == x;
}

bool refines(const SortedEquivalence& phi, const SortedEquivalence& psi) {
    require_same_ambient(phi.ambient, psi.ambient, "refines");
    for (int s = 0; s < phi.ambient.sort_count(); ++s)
        for (const auto& b : phi.blocks[s])
            for (size_t i = 1; i < b.size(); ++i)
                if (!psi.related(s, b[0], b[i])) return false;
    return true;
}

SortedEquivalence meet_equiv(const SortedEquivalence& phi, const SortedEquivalence& psi) {
    require_same_ambient(phi.ambient, psi.ambient, "meet_equiv");
    const SortedSet& a = phi.ambient;
    std::vector<std::vector<int>> cls(a.sort_count());
    for (int s = 0; s < a.sort_count(); ++s) {
        cls[s].resize(a.size(s));
        std::map<std::pair<int, int>, int> key_id;
        for (int e = 0; e < a.size(s); ++e) {
            auto key = std::make_pair(phi.block_index(s, e), psi.block_index(s, e));
            auto [it, fresh] = key_id.emplace(key, static_cast<int>(key_id.size()));
            cls[s][e] = it->second;
            (void)fresh;
        }
    }
    return SortedEquivalence::from_class_ids(a, cls);
}

std::pair<SortedSet, SortedMap> quotient_set(const SortedSet& a, const SortedEquivalence& phi) {
    require_same_ambient(a, phi.ambient, "quotient_set");
    SortedSet q;
    q.sorts = a.sorts;
    q.carriers.resize(a.sort_count());
    for (int s = 0; s < a.sort_count(); ++s)
        for (const auto& b : phi.blocks[s]) q.carriers[s].push_back(a.carriers[s][b.front()]);
    SortedMap pr;
    pr.domain = a;
    pr.codomain = q;
    pr.images.resize(a.sort_count());
    for (int s = 0; s < a.sort_count(); ++s) {
        pr.images[s].resize(a.size(s));
        for (int e = 0; e < a.size(s); ++e) pr.images[s][e] = phi.block_index(s, e);
    }
    return {std::move(q), std::move(pr)};
}

SortedEquivalence quotient_equiv(const SortedEquivalence& psi, const SortedEquivalence& phi) {
    if (!refines(phi, psi)) throw ValidationError("quotient_equiv: first argument not coarser");
    auto [q, pr] = quotient_set(phi.ambient, phi);
    std::vector<std::vector<int>> cls(q.sort_count());
    for (int s = 0; s < q.sort_count(); ++s) {
        cls[s].resize(q.size(s));
        for (int b = 0; b < phi.block_count(s); ++b)
            cls[s][b] = psi.block_index(s, phi.blocks[s][b].front());
    }
    return SortedEquivalence::from_class_ids(q, cls);
}

} // namespace msa
