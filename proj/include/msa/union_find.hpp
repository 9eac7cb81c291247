#pragma once

#include <numeric>
#include <vector>

namespace msa {

// Plain union-find over 0..n-1 with path halving and union by size.
// Used transiently inside closure algorithms; partitions are exported
// to canonical block form before they become part of any value.
struct UnionFind {
    std::vector<int> parent;
    std::vector<int> size;

    explicit UnionFind(int n) : parent(n), size(n, 1) {
        std::iota(parent.begin(), parent.end(), 0);
    }

    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    // returns true if the two classes were distinct
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size[a] < size[b]) std::swap(a, b);
        parent[b] = a;
        size[a] += size[b];
        return true;
    }
};

} // namespace msa
