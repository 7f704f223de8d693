#include <pcsp/minions.hpp>

#include <deque>
#include <sstream>

namespace pcsp {

MinorMap::MinorMap(int m, std::vector<int> pi) : m_(m), pi_(std::move(pi))
{
    if (m < 1 || pi_.empty())
        throw InvalidParameter("minor map needs n, m >= 1");
    for (int v : pi_)
        if (v < 1 || v > m)
            throw InvalidParameter("minor map value " + std::to_string(v) + " outside 1.." + std::to_string(m));
}

MinorMap MinorMap::identity(int n)
{
    std::vector<int> pi(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        pi[static_cast<std::size_t>(i)] = i + 1;
    return MinorMap(n, std::move(pi));
}

std::string MinorMap::to_string() const
{
    std::ostringstream out;
    out << '(';
    for (std::size_t i = 0; i < pi_.size(); ++i)
        out << (i ? "," : "") << pi_[i];
    out << ")->[" << m_ << ']';
    return out.str();
}

std::vector<MinorMap> all_minor_maps(int n, int m)
{
    std::vector<MinorMap> out;
    auto count = checked_pow(static_cast<std::size_t>(m), static_cast<std::size_t>(n));
    for (std::size_t idx = 0; idx < *count; ++idx)
        out.emplace_back(m, decode_tuple(idx, static_cast<std::size_t>(n), m));
    return out;
}

FunctionTable minor_table(const FunctionTable & f, const MinorMap & pi)
{
    if (pi.n() != f.arity())
        throw SignatureMismatch("minor map arity differs from the table arity");
    const int m = pi.m();
    const int a = f.in_domain();
    auto cells = checked_pow(static_cast<std::size_t>(a), static_cast<std::size_t>(m));
    if (!cells)
        throw SizeLimitError("minor table too large");
    std::vector<int> table(*cells);
    Tuple args(static_cast<std::size_t>(f.arity()));
    for (std::size_t idx = 0; idx < *cells; ++idx) {
        auto x = decode_tuple(idx, static_cast<std::size_t>(m), a);
        for (int i = 1; i <= f.arity(); ++i)
            args[static_cast<std::size_t>(i - 1)] = x[static_cast<std::size_t>(pi(i) - 1)];
        table[idx] = f.at(encode_tuple(args, a));
    }
    return FunctionTable(m, a, f.out_domain(), std::move(table));
}

AffineMapZ3::AffineMapZ3(const std::vector<int> & coefficients)
{
    if (coefficients.empty())
        throw InvalidParameter("affine map needs at least one coefficient");
    int sum = 0;
    for (int c : coefficients) {
        coeffs_.push_back(((c % 3) + 3) % 3);
        sum += coeffs_.back();
    }
    if (sum % 3 != 1)
        throw InvalidParameter("coefficients of " + to_string() + " do not sum to 1 mod 3");
}

AffineMapZ3 AffineMapZ3::projection(int n, int i)
{
    std::vector<int> c(static_cast<std::size_t>(n), 0);
    c.at(static_cast<std::size_t>(i - 1)) = 1;
    return AffineMapZ3(c);
}

std::string AffineMapZ3::to_string() const
{
    std::ostringstream out;
    out << '(';
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        out << (i ? "," : "") << coeffs_[i];
    out << ')';
    return out.str();
}

std::strong_ordering AffineMapZ3::operator<=>(const AffineMapZ3 & other) const
{
    if (auto c = coeffs_.size() <=> other.coeffs_.size(); c != 0)
        return c;
    return coeffs_ <=> other.coeffs_;
}

std::vector<AffineMapZ3> all_affine_maps(int n)
{
    if (n < 1)
        throw InvalidParameter("arity must be positive");
    std::vector<AffineMapZ3> out;
    auto count = checked_pow(3, static_cast<std::size_t>(n));
    for (std::size_t idx = 0; idx < *count; ++idx) {
        auto t = decode_tuple(idx, static_cast<std::size_t>(n), 3);
        int sum = 0;
        for (auto & c : t)
            sum += --c;
        if (sum % 3 == 1)
            out.emplace_back(t);
    }
    return out;
}

AffineMapZ3 affine_minor(const AffineMapZ3 & alpha, const MinorMap & pi)
{
    if (pi.n() != alpha.arity())
        throw SignatureMismatch("minor map arity differs from the affine map arity");
    std::vector<int> beta(static_cast<std::size_t>(pi.m()), 0);
    for (int i = 1; i <= alpha.arity(); ++i)
        beta[static_cast<std::size_t>(pi(i) - 1)] += alpha[i];
    return AffineMapZ3(beta);
}

int affine_eval(const AffineMapZ3 & alpha, const std::vector<int> & x)
{
    if (x.size() != static_cast<std::size_t>(alpha.arity()))
        throw SignatureMismatch("argument length differs from the affine map arity");
    int sum = 0;
    for (int i = 1; i <= alpha.arity(); ++i)
        sum += alpha[i] * (((x[static_cast<std::size_t>(i - 1)] % 3) + 3) % 3);
    return sum % 3;
}

std::optional<int> is_projection(const AffineMapZ3 & alpha)
{
    std::optional<int> hit;
    for (int i = 1; i <= alpha.arity(); ++i) {
        if (alpha[i] == 0)
            continue;
        if (alpha[i] != 1 || hit)
            return std::nullopt;
        hit = i;
    }
    return hit;
}

std::set<AffineMapZ3> subminion_closure(const std::set<AffineMapZ3> & seed, int max_arity)
{
    if (max_arity < 1)
        throw InvalidParameter("closure arity bound must be positive");
    if (max_arity > max_closure_arity)
        throw SizeLimitError("closure arity bound is limited to 6");
    for (const auto & a : seed)
        if (a.arity() > max_closure_arity)
            throw SizeLimitError("seed element " + a.to_string() + " exceeds arity 6");

    const int width = max_closure_arity + 1;
    std::vector<std::vector<MinorMap>> maps(static_cast<std::size_t>(width * width));
    auto maps_for = [&](int n, int m) -> const std::vector<MinorMap> & {
        auto & slot = maps[static_cast<std::size_t>(n * width + m)];
        if (slot.empty())
            slot = all_minor_maps(n, m);
        return slot;
    };

    std::set<AffineMapZ3> closed = seed;
    std::deque<AffineMapZ3> work(seed.begin(), seed.end());
    while (!work.empty()) {
        const AffineMapZ3 a = work.front();
        work.pop_front();
        for (int m = 1; m <= max_arity; ++m)
            for (const auto & pi : maps_for(a.arity(), m)) {
                auto b = affine_minor(a, pi);
                if (closed.insert(b).second)
                    work.push_back(std::move(b));
            }
    }
    return closed;
}

} // namespace pcsp
