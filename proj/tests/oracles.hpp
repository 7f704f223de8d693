#pragma once

// Brute-force reference implementations used by the tests. They share no code
// with the library: relations are plain tuple lists, every candidate map is
// generated and filtered.

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oracle {

using Tuple = std::vector<int>;

struct Structure {
    int size = 0;
    std::vector<Tuple> rel; // single relation
};

inline bool unique_max(const Tuple & t)
{
    const int top = *std::max_element(t.begin(), t.end());
    return std::count(t.begin(), t.end(), top) == 1;
}

inline Structure lo(int k)
{
    Structure s{k, {}};
    for (int a = 1; a <= k; ++a)
        for (int b = 1; b <= k; ++b)
            for (int c = 1; c <= k; ++c)
                if (unique_max({a, b, c}))
                    s.rel.push_back({a, b, c});
    return s;
}

inline Structure ott()
{
    Structure s{3, {}};
    for (int a = 1; a <= 3; ++a)
        for (int b = 1; b <= 3; ++b)
            for (int c = 1; c <= 3; ++c)
                if (a != b && b != c && a != c)
                    s.rel.push_back({a, b, c});
    return s;
}

inline bool member(const Structure & s, const Tuple & t)
{
    return std::find(s.rel.begin(), s.rel.end(), t) != s.rel.end();
}

/// Calls visit(table) for every map [a] -> [b] in lexicographic order.
template <class Visit>
void all_tables(int a, int b, Visit visit)
{
    std::vector<int> t(static_cast<std::size_t>(a), 1);
    while (true) {
        visit(t);
        int i = a - 1;
        while (i >= 0 && t[static_cast<std::size_t>(i)] == b)
            t[static_cast<std::size_t>(i--)] = 1;
        if (i < 0)
            return;
        ++t[static_cast<std::size_t>(i)];
    }
}

inline std::vector<std::vector<int>> homs(const Structure & X, const Structure & B)
{
    std::vector<std::vector<int>> out;
    all_tables(X.size, B.size, [&](const std::vector<int> & f) {
        for (const auto & t : X.rel) {
            Tuple img;
            for (int x : t)
                img.push_back(f[static_cast<std::size_t>(x - 1)]);
            if (!member(B, img))
                return;
        }
        out.push_back(f);
    });
    return out;
}

/// Binary polymorphisms A^2 -> B by filtering all |B|^(|A|^2) tables.
inline std::vector<std::vector<int>> binary_polymorphisms(const Structure & A, const Structure & B)
{
    const int a = A.size;
    std::vector<std::vector<int>> out;
    all_tables(a * a, B.size, [&](const std::vector<int> & f) {
        for (const auto & s : A.rel)
            for (const auto & t : A.rel) {
                Tuple img;
                for (std::size_t j = 0; j < s.size(); ++j)
                    img.push_back(f[static_cast<std::size_t>((s[j] - 1) * a + (t[j] - 1))]);
                if (!member(B, img))
                    return;
            }
        out.push_back(f);
    });
    return out;
}

/// Multihomomorphisms as vectors of bitmasks, all candidates filtered.
inline std::vector<std::vector<std::uint64_t>> multihoms(const Structure & X, const Structure & B)
{
    std::vector<std::vector<std::uint64_t>> out;
    const int masks = (1 << B.size) - 1;
    all_tables(X.size, masks, [&](const std::vector<int> & m) {
        for (const auto & t : X.rel) {
            bool ok = true;
            all_tables(static_cast<int>(t.size()), B.size, [&](const std::vector<int> & sel) {
                for (std::size_t j = 0; j < t.size(); ++j)
                    if (!((m[static_cast<std::size_t>(t[j] - 1)] >> (sel[j] - 1)) & 1))
                        return;
                if (!member(B, sel))
                    ok = false;
            });
            if (!ok)
                return;
        }
        out.emplace_back(m.begin(), m.end());
    });
    return out;
}

/// Proper colouring of a graph on 1..n with k colours, by exhaustion.
inline bool colourable(int n, const std::vector<std::pair<int, int>> & edges, int k)
{
    if (n == 0)
        return true;
    bool found = false;
    all_tables(n, k, [&](const std::vector<int> & c) {
        if (found)
            return;
        for (auto [u, v] : edges)
            if (c[static_cast<std::size_t>(u - 1)] == c[static_cast<std::size_t>(v - 1)])
                return;
        found = true;
    });
    return found;
}

/// Solvability of the LO_k instance of a graph built directly from the gadget
/// R(z,z,u), R(z,z,v), R(u,v,z).
inline bool gadget_lo_solvable(int n, const std::vector<std::pair<int, int>> & edges, int k)
{
    const int vars = n + static_cast<int>(edges.size());
    std::vector<Tuple> hyper;
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const int z = n + static_cast<int>(e) + 1;
        hyper.push_back({z, z, edges[e].first});
        hyper.push_back({z, z, edges[e].second});
        hyper.push_back({edges[e].first, edges[e].second, z});
    }
    if (vars == 0)
        return true;
    bool found = false;
    all_tables(vars, k, [&](const std::vector<int> & c) {
        if (found)
            return;
        for (const auto & h : hyper) {
            Tuple img;
            for (int x : h)
                img.push_back(c[static_cast<std::size_t>(x - 1)]);
            if (!unique_max(img))
                return;
        }
        found = true;
    });
    return found;
}

/// Existence of a homomorphism X -> B. Elements 1..core are assigned
/// exhaustively; every other element must occur in tuples whose remaining
/// entries all lie in the core, so it can be chosen independently.
inline bool solvable(const Structure & X, const Structure & B, int core)
{
    for (const auto & t : X.rel) {
        std::set<int> outer;
        for (int e : t)
            if (e > core)
                outer.insert(e);
        if (outer.size() > 1)
            throw std::logic_error("tuple with two non-core elements");
    }
    bool found = false;
    all_tables(core, B.size, [&](const std::vector<int> & c) {
        if (found)
            return;
        auto image = [&](const Tuple & t, int e, int v) {
            Tuple img;
            for (int x : t)
                img.push_back(x == e ? v : c[static_cast<std::size_t>(x - 1)]);
            return img;
        };
        for (const auto & t : X.rel)
            if (*std::max_element(t.begin(), t.end()) <= core && !member(B, image(t, 0, 0)))
                return;
        for (int e = core + 1; e <= X.size; ++e) {
            bool some = false;
            for (int v = 1; v <= B.size && !some; ++v) {
                some = true;
                for (const auto & t : X.rel)
                    if (std::find(t.begin(), t.end(), e) != t.end() && !member(B, image(t, e, v)))
                        some = false;
            }
            if (!some)
                return;
        }
        found = true;
    });
    return found;
}

/// All simple graphs on n vertices, edges in lexicographic order.
inline std::vector<std::vector<std::pair<int, int>>> all_graphs(int n)
{
    std::vector<std::pair<int, int>> slots;
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v)
            slots.emplace_back(u, v);
    std::vector<std::vector<std::pair<int, int>>> out;
    for (std::uint32_t mask = 0; mask < (1u << slots.size()); ++mask) {
        std::vector<std::pair<int, int>> g;
        for (std::size_t i = 0; i < slots.size(); ++i)
            if ((mask >> i) & 1)
                g.push_back(slots[i]);
        out.push_back(std::move(g));
    }
    return out;
}

/// Number of connected components of a graph on 0..n-1.
inline int components(int n, const std::vector<std::pair<int, int>> & edges)
{
    std::vector<int> parent(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        parent[static_cast<std::size_t>(i)] = i;
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x)
            x = parent[static_cast<std::size_t>(x)];
        return x;
    };
    int count = n;
    for (auto [u, v] : edges) {
        int a = find(u), b = find(v);
        if (a != b) {
            parent[static_cast<std::size_t>(a)] = b;
            --count;
        }
    }
    return count;
}

} // namespace oracle
