#include <pcsp/errors.hpp>
#include <pcsp/solver.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <thread>

namespace pcsp {

namespace {

using Value = std::uint64_t;

struct Constraint {
    std::size_t relation;
    Tuple vars; // 1-based elements of X
};

// A finite-domain search problem whose constraints are the tuples of X.
struct Problem {
    std::size_t nvars = 0;
    std::vector<int> order;                          // position -> variable (0-based)
    std::vector<std::vector<Value>> candidates;      // per variable, in value order
    std::vector<Constraint> constraints;
    std::vector<std::vector<std::size_t>> triggers;  // position -> constraints completed there
    std::function<bool(const Constraint &, const std::vector<Value> &)> satisfied;
};

std::vector<int> resolve_order(const SearchConfig & cfg, std::size_t nvars)
{
    std::vector<int> order(nvars);
    if (cfg.variable_order.empty()) {
        for (std::size_t i = 0; i < nvars; ++i)
            order[i] = static_cast<int>(i);
        return order;
    }
    if (cfg.variable_order.size() != nvars)
        throw InvalidParameter("variable order must list every element exactly once");
    std::vector<char> seen(nvars, 0);
    for (std::size_t i = 0; i < nvars; ++i) {
        const int v = cfg.variable_order[i];
        if (v < 1 || static_cast<std::size_t>(v) > nvars || seen[static_cast<std::size_t>(v - 1)])
            throw InvalidParameter("variable order is not a permutation");
        seen[static_cast<std::size_t>(v - 1)] = 1;
        order[i] = v - 1;
    }
    return order;
}

void index_constraints(Problem & p, const RelStructure & X)
{
    std::vector<std::size_t> position(p.nvars);
    for (std::size_t i = 0; i < p.nvars; ++i)
        position[static_cast<std::size_t>(p.order[i])] = i;
    p.triggers.assign(p.nvars, {});
    for (std::size_t r = 0; r < X.relation_count(); ++r)
        X.for_each_tuple(r, [&](std::span<const int> t) {
            std::size_t last = 0;
            for (int x : t)
                last = std::max(last, position[static_cast<std::size_t>(x - 1)]);
            p.triggers[last].push_back(p.constraints.size());
            p.constraints.push_back(Constraint{r, Tuple(t.begin(), t.end())});
        });
}

struct Search {
    const Problem & p;
    std::size_t limit;
    std::vector<Value> assignment;
    std::vector<std::vector<Value>> found;

    bool run(std::size_t pos, std::span<const Value> first_values)
    {
        if (pos == p.nvars) {
            found.push_back(assignment);
            return found.size() < limit;
        }
        const auto var = static_cast<std::size_t>(p.order[pos]);
        std::span<const Value> values = pos == 0 ? first_values : std::span<const Value>(p.candidates[var]);
        for (Value v : values) {
            assignment[var] = v;
            bool ok = true;
            for (std::size_t c : p.triggers[pos])
                if (!p.satisfied(p.constraints[c], assignment)) {
                    ok = false;
                    break;
                }
            if (ok && !run(pos + 1, first_values))
                return false;
        }
        return true;
    }
};

// Runs the search, optionally sharded over the first variable's values, and
// returns solutions in search order together with the truncation flag.
std::pair<std::vector<std::vector<Value>>, bool> solve(const Problem & p, const SearchConfig & cfg)
{
    if (cfg.shards < 1)
        throw InvalidParameter("shard count must be positive");
    if (cfg.result_cap && *cfg.result_cap == 0)
        throw InvalidParameter("result cap must be positive");
    const std::size_t limit = cfg.result_cap ? *cfg.result_cap + 1 : static_cast<std::size_t>(-1);

    std::vector<std::vector<Value>> all;
    if (p.nvars == 0) {
        all.emplace_back();
    } else {
        const auto & first = p.candidates[static_cast<std::size_t>(p.order[0])];
        const std::size_t shards = std::min<std::size_t>(static_cast<std::size_t>(cfg.shards), std::max<std::size_t>(first.size(), 1));
        std::vector<Search> searches;
        searches.reserve(shards);
        std::vector<std::vector<Value>> slices(shards);
        for (std::size_t s = 0; s < shards; ++s) {
            const std::size_t lo = first.size() * s / shards;
            const std::size_t hi = first.size() * (s + 1) / shards;
            slices[s].assign(first.begin() + static_cast<std::ptrdiff_t>(lo), first.begin() + static_cast<std::ptrdiff_t>(hi));
            searches.push_back(Search{p, limit, std::vector<Value>(p.nvars, 0), {}});
        }
        if (shards == 1) {
            searches[0].run(0, slices[0]);
        } else {
            std::vector<std::thread> threads;
            for (std::size_t s = 0; s < shards; ++s)
                threads.emplace_back([&, s] { searches[s].run(0, slices[s]); });
            for (auto & t : threads)
                t.join();
        }
        for (auto & s : searches)
            for (auto & sol : s.found)
                all.push_back(std::move(sol));
    }
    bool truncated = false;
    if (cfg.result_cap && all.size() > *cfg.result_cap) {
        all.resize(*cfg.result_cap);
        truncated = true;
    }
    return {std::move(all), truncated};
}

std::vector<Value> ordered_values(std::size_t count, ValueOrder order)
{
    std::vector<Value> v(count);
    for (std::size_t i = 0; i < count; ++i)
        v[i] = i + 1;
    if (order == ValueOrder::descending)
        std::reverse(v.begin(), v.end());
    return v;
}

Problem homomorphism_problem(const RelStructure & X, const RelStructure & B, const SearchConfig & cfg)
{
    if (!same_signature(X, B))
        throw SignatureMismatch("structures have different signatures");
    Problem p;
    p.nvars = static_cast<std::size_t>(X.domain_size());
    p.order = resolve_order(cfg, p.nvars);
    p.candidates.assign(p.nvars, ordered_values(static_cast<std::size_t>(B.domain_size()), cfg.value_order));
    index_constraints(p, X);
    p.satisfied = [&B](const Constraint & c, const std::vector<Value> & a) {
        Tuple image(c.vars.size());
        for (std::size_t j = 0; j < image.size(); ++j)
            image[j] = static_cast<int>(a[static_cast<std::size_t>(c.vars[j] - 1)]);
        return B.contains(c.relation, image);
    };
    return p;
}

} // namespace

Enumeration<FunctionTable> enumerate_homomorphisms(const RelStructure & X, const RelStructure & B, const SearchConfig & cfg)
{
    auto p = homomorphism_problem(X, B, cfg);
    auto [solutions, truncated] = solve(p, cfg);
    Enumeration<FunctionTable> out;
    out.truncated = truncated;
    for (const auto & s : solutions)
        out.items.push_back(FunctionTable::unary(B.domain_size(), std::vector<int>(s.begin(), s.end())));
    std::sort(out.items.begin(), out.items.end());
    return out;
}

Enumeration<FunctionTable> enumerate_polymorphisms(const RelStructure & A, const RelStructure & B, int n, const SearchConfig & cfg)
{
    if (n < 1)
        throw InvalidParameter("polymorphism arity must be positive");
    auto cells = checked_pow(static_cast<std::size_t>(A.domain_size()), static_cast<std::size_t>(n));
    if (!cells || *cells > max_polymorphism_cells)
        throw SizeLimitError("polymorphism table would exceed 10^7 cells");
    auto homs = enumerate_homomorphisms(power(A, n), B, cfg);
    Enumeration<FunctionTable> out;
    out.truncated = homs.truncated;
    for (const auto & h : homs.items)
        out.items.emplace_back(n, A.domain_size(), B.domain_size(), h.values());
    return out;
}

Enumeration<Multihom> enumerate_multihomomorphisms(const RelStructure & X, const RelStructure & B, const SearchConfig & cfg)
{
    if (!same_signature(X, B))
        throw SignatureMismatch("structures have different signatures");
    if (B.domain_size() > Multihom::max_out_domain)
        throw SizeLimitError("multihom targets are limited to 64 elements");
    const double per_element = std::ldexp(1.0, B.domain_size()) - 1.0;
    if (std::pow(per_element, X.domain_size()) > cfg.multihom_candidate_cap)
        throw SizeLimitError("multihom candidate space exceeds the configured cap");

    Problem p;
    p.nvars = static_cast<std::size_t>(X.domain_size());
    p.order = resolve_order(cfg, p.nvars);
    auto masks = ordered_values(static_cast<std::size_t>(per_element), cfg.value_order);
    p.candidates.assign(p.nvars, masks);
    index_constraints(p, X);
    p.satisfied = [&B](const Constraint & c, const std::vector<Value> & a) {
        const std::size_t k = c.vars.size();
        Tuple sel(k);
        std::vector<Value> rest(k);
        // Odometer over the product of the image sets.
        for (std::size_t j = 0; j < k; ++j) {
            rest[j] = a[static_cast<std::size_t>(c.vars[j] - 1)];
            sel[j] = std::countr_zero(rest[j]) + 1;
        }
        while (true) {
            if (!B.contains(c.relation, sel))
                return false;
            std::size_t j = k;
            while (j > 0) {
                --j;
                Value remaining = rest[j] & ~((Value{2} << (sel[j] - 1)) - 1);
                if (remaining != 0) {
                    sel[j] = std::countr_zero(remaining) + 1;
                    break;
                }
                sel[j] = std::countr_zero(a[static_cast<std::size_t>(c.vars[j] - 1)]) + 1;
                if (j == 0)
                    return true;
            }
        }
    };
    auto [solutions, truncated] = solve(p, cfg);
    Enumeration<Multihom> out;
    out.truncated = truncated;
    for (const auto & s : solutions)
        out.items.emplace_back(B.domain_size(), s);
    std::sort(out.items.begin(), out.items.end());
    return out;
}

std::optional<FunctionTable> exists_homomorphism(const RelStructure & X, const RelStructure & B, const SearchConfig & cfg)
{
    SearchConfig plain;
    plain.result_cap = 1;
    plain.shards = cfg.shards;
    auto result = enumerate_homomorphisms(X, B, plain);
    if (result.items.empty())
        return std::nullopt;
    return result.items.front();
}

} // namespace pcsp
