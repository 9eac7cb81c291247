#include "msa/signature.hpp"

#include <set>

namespace msa {

int Signature::sort_index(std::string_view name) const {
    for (int s = 0; s < sort_count(); ++s)
        if (sorts[s] == name) return s;
    return -1;
}

int Signature::op_index(std::string_view name) const {
    for (int o = 0; o < op_count(); ++o)
        if (ops[o].name == name) return o;
    return -1;
}

std::vector<std::string> Signature::validate() const {
    std::vector<std::string> diags;
    if (sorts.empty()) diags.push_back("signature has no sorts");
    std::set<std::string> seen;
    for (const auto& s : sorts)
        if (!seen.insert(s).second) diags.push_back("duplicate sort name: " + s);
    std::set<std::string> op_names;
    for (const auto& op : ops) {
        if (!op_names.insert(op.name).second)
            diags.push_back("duplicate operation name: " + op.name);
        if (op.coarity < 0 || op.coarity >= sort_count())
            diags.push_back("operation " + op.name + " has undeclared coarity");
        for (int a : op.arity)
            if (a < 0 || a >= sort_count())
                diags.push_back("operation " + op.name + " has undeclared arity sort");
    }
    return diags;
}

SortedSet empty_sorted_set(const Signature& sig) {
    return SortedSet(sig.sorts, std::vector<std::vector<std::string>>(sig.sorts.size()));
}

std::vector<int> free_support(const Signature& sig, const SortedSet& gens) {
    std::vector<char> supported(sig.sort_count(), 0);
    for (int s : support(gens)) supported[s] = 1;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& op : sig.ops) {
            bool all = true;
            for (int a : op.arity)
                if (!supported[a]) { all = false; break; }
            if (all && !supported[op.coarity]) {
                supported[op.coarity] = 1;
                changed = true;
            }
        }
    }
    std::vector<int> r;
    for (int s = 0; s < sig.sort_count(); ++s)
        if (supported[s]) r.push_back(s);
    return r;
}

} // namespace msa
