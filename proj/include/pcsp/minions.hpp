#pragma once

// Minors of function tables, the affine minion Z_3 and generic
// minor-preservation checks.

#include <pcsp/errors.hpp>
#include <pcsp/structures.hpp>

#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace pcsp {

/// pi : [n] -> [m], stored 1-based.
class MinorMap {
public:
    MinorMap(int m, std::vector<int> pi);

    static MinorMap identity(int n);

    int n() const noexcept { return static_cast<int>(pi_.size()); }
    int m() const noexcept { return m_; }
    int operator()(int i) const { return pi_.at(static_cast<std::size_t>(i - 1)); }
    const std::vector<int> & values() const noexcept { return pi_; }

    std::string to_string() const;

    bool operator==(const MinorMap &) const = default;

private:
    int m_;
    std::vector<int> pi_;
};

/// Every map [n] -> [m] in lexicographic order.
std::vector<MinorMap> all_minor_maps(int n, int m);

/// g(x_1, ..., x_m) = f(x_pi(1), ..., x_pi(n)).
FunctionTable minor_table(const FunctionTable & f, const MinorMap & pi);

/// Element of the minion Z_3: coefficients in {0,1,2} summing to 1 mod 3.
class AffineMapZ3 {
public:
    /// Coefficients are reduced mod 3; throws InvalidParameter when the sum
    /// is not 1 mod 3 or the vector is empty.
    explicit AffineMapZ3(const std::vector<int> & coefficients);

    static AffineMapZ3 projection(int n, int i);

    int arity() const noexcept { return static_cast<int>(coeffs_.size()); }
    int operator[](int i) const { return coeffs_.at(static_cast<std::size_t>(i - 1)); }
    const std::vector<int> & coefficients() const noexcept { return coeffs_; }

    std::string to_string() const;

    /// Arity first, then lexicographic.
    std::strong_ordering operator<=>(const AffineMapZ3 & other) const;
    bool operator==(const AffineMapZ3 &) const = default;

private:
    std::vector<int> coeffs_;
};

/// All 3^(n-1) elements of arity n, in canonical order.
std::vector<AffineMapZ3> all_affine_maps(int n);

AffineMapZ3 affine_minor(const AffineMapZ3 & alpha, const MinorMap & pi);
int affine_eval(const AffineMapZ3 & alpha, const std::vector<int> & x);
std::optional<int> is_projection(const AffineMapZ3 & alpha);

inline constexpr int max_closure_arity = 6;

/// Smallest set containing seed and closed under all minors into arities
/// 1..max_arity. Seed elements may be wider than max_arity (up to 6); only
/// their minors are bounded.
std::set<AffineMapZ3> subminion_closure(const std::set<AffineMapZ3> & seed, int max_arity);

template <class K, class V>
struct MinorViolation {
    K key;
    MinorMap pi;
    V image_then_minor; ///< xi(f)^pi
    V minor_then_image; ///< xi(f^pi)
};

/// Checks xi(f^pi) == xi(f)^pi for every listed key f of arity <= bound and
/// every pi : [arity(f)] -> [m], m <= bound. Keys are visited in map order,
/// targets m ascending, pi lexicographically; the first violation is
/// returned. A minor missing from xi raises MissingKeyError.
template <class K, class V>
std::optional<MinorViolation<K, V>> check_minor_preservation(
    const std::map<K, V> & xi,
    const std::function<int(const K &)> & arity,
    const std::function<K(const K &, const MinorMap &)> & dom_minor,
    const std::function<V(const V &, const MinorMap &)> & cod_minor,
    int bound,
    const std::function<std::string(const K &)> & describe)
{
    for (const auto & [key, value] : xi) {
        const int n = arity(key);
        if (n > bound)
            continue;
        for (int m = 1; m <= bound; ++m)
            for (const auto & pi : all_minor_maps(n, m)) {
                const K minor = dom_minor(key, pi);
                auto it = xi.find(minor);
                if (it == xi.end())
                    throw MissingKeyError(describe(minor), "map is not defined on minor " + describe(minor));
                V expected = cod_minor(value, pi);
                if (!(it->second == expected))
                    return MinorViolation<K, V>{key, pi, expected, it->second};
            }
    }
    return std::nullopt;
}

} // namespace pcsp
