#include <pcsp/errors.hpp>
#include <pcsp/structures.hpp>

#include <algorithm>
#include <bit>
#include <limits>
#include <set>
#include <sstream>

namespace pcsp {

namespace {

constexpr std::size_t dense_lookup_limit = std::size_t{1} << 24;

void canonicalize(std::vector<Tuple> & tuples)
{
    std::sort(tuples.begin(), tuples.end());
    tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
}

// Calls visit(selection) for every element of the product of the masks.
template <class Visit>
bool for_each_selection(std::span<const Multihom::Mask> masks, Tuple & scratch, std::size_t pos, const Visit & visit)
{
    if (pos == masks.size())
        return visit(std::span<const int>(scratch));
    for (auto m = masks[pos]; m != 0; m &= m - 1) {
        scratch[pos] = std::countr_zero(m) + 1;
        if (!for_each_selection(masks, scratch, pos + 1, visit))
            return false;
    }
    return true;
}

} // namespace

std::size_t encode_tuple(std::span<const int> tuple, int base)
{
    std::size_t index = 0;
    for (int x : tuple)
        index = index * static_cast<std::size_t>(base) + static_cast<std::size_t>(x - 1);
    return index;
}

Tuple decode_tuple(std::size_t index, std::size_t arity, int base)
{
    Tuple out(arity);
    for (std::size_t i = arity; i-- > 0;) {
        out[i] = static_cast<int>(index % static_cast<std::size_t>(base)) + 1;
        index /= static_cast<std::size_t>(base);
    }
    return out;
}

std::optional<std::size_t> checked_pow(std::size_t base, std::size_t exponent)
{
    std::size_t result = 1;
    for (std::size_t i = 0; i < exponent; ++i) {
        if (base != 0 && result > std::numeric_limits<std::size_t>::max() / base)
            return std::nullopt;
        result *= base;
    }
    return result;
}

// ---------------------------------------------------------------------------
// RelStructure

RelStructure::RelStructure(int domain_size, std::vector<Relation> relations) : domain_size_(domain_size)
{
    if (domain_size < 1)
        throw InvalidParameter("domain size must be positive");
    for (auto & rel : relations) {
        if (rel.arity == 0)
            throw InvalidParameter("relation '" + rel.name + "' has arity 0");
        for (const auto & t : rel.tuples) {
            if (t.size() != rel.arity)
                throw InvalidParameter("tuple of wrong length in relation '" + rel.name + "'");
            for (int x : t)
                if (x < 1 || x > domain_size)
                    throw InvalidParameter("tuple entry " + std::to_string(x) + " outside 1.." + std::to_string(domain_size));
        }
        canonicalize(rel.tuples);
        names_.push_back(std::move(rel.name));
        arities_.push_back(rel.arity);
        tuples_.push_back(std::move(rel.tuples));
    }
    build_lookup();
}

void RelStructure::build_lookup()
{
    lookup_.assign(tuples_.size(), {});
    for (std::size_t r = 0; r < tuples_.size(); ++r) {
        auto cells = checked_pow(static_cast<std::size_t>(domain_size_), arities_[r]);
        if (!cells || *cells > dense_lookup_limit)
            continue;
        lookup_[r].assign(*cells, 0);
        for (const auto & t : tuples_[r])
            lookup_[r][encode_tuple(t, domain_size_)] = 1;
    }
}

const std::vector<Tuple> & RelStructure::tuples(std::size_t r) const
{
    if (lazy_base_)
        throw SizeLimitError("relations of this power are not materialized");
    return tuples_.at(r);
}

std::vector<Relation> RelStructure::relations() const
{
    std::vector<Relation> out;
    for (std::size_t r = 0; r < relation_count(); ++r)
        out.push_back(Relation{names_[r], arities_[r], tuples(r)});
    return out;
}

std::size_t RelStructure::tuple_count(std::size_t r) const
{
    if (!lazy_base_)
        return tuples_.at(r).size();
    auto n = checked_pow(lazy_base_->tuple_count(r), static_cast<std::size_t>(lazy_exponent_));
    if (!n)
        throw SizeLimitError("tuple count overflows");
    return *n;
}

bool RelStructure::contains(std::size_t r, std::span<const int> tuple) const
{
    if (tuple.size() != arities_.at(r))
        return false;
    if (lazy_base_) {
        const int base = lazy_base_->domain_size();
        std::vector<Tuple> coords;
        coords.reserve(tuple.size());
        for (int x : tuple)
            coords.push_back(decode_tuple(static_cast<std::size_t>(x - 1), static_cast<std::size_t>(lazy_exponent_), base));
        Tuple projected(tuple.size());
        for (int i = 0; i < lazy_exponent_; ++i) {
            for (std::size_t j = 0; j < tuple.size(); ++j)
                projected[j] = coords[j][static_cast<std::size_t>(i)];
            if (!lazy_base_->contains(r, projected))
                return false;
        }
        return true;
    }
    if (!lookup_[r].empty())
        return lookup_[r][encode_tuple(tuple, domain_size_)] != 0;
    return std::binary_search(tuples_[r].begin(), tuples_[r].end(), Tuple(tuple.begin(), tuple.end()));
}

void RelStructure::for_each_tuple(std::size_t r, const std::function<void(std::span<const int>)> & visit) const
{
    if (!lazy_base_) {
        for (const auto & t : tuples_.at(r))
            visit(t);
        return;
    }
    const auto & base_tuples = lazy_base_->tuples(r);
    const std::size_t k = arities_.at(r);
    const auto n = static_cast<std::size_t>(lazy_exponent_);
    const int base = lazy_base_->domain_size();
    std::vector<std::size_t> pick(n, 0);
    Tuple out(k);
    Tuple coords(n);
    if (base_tuples.empty())
        return;
    while (true) {
        for (std::size_t j = 0; j < k; ++j) {
            for (std::size_t i = 0; i < n; ++i)
                coords[i] = base_tuples[pick[i]][j];
            out[j] = static_cast<int>(encode_tuple(coords, base)) + 1;
        }
        visit(out);
        std::size_t i = n;
        while (i > 0) {
            --i;
            if (++pick[i] < base_tuples.size())
                break;
            pick[i] = 0;
            if (i == 0)
                return;
        }
    }
}

bool RelStructure::has_constant_tuple() const
{
    for (std::size_t r = 0; r < relation_count(); ++r)
        for (int a = 1; a <= domain_size_; ++a)
            if (contains(r, Tuple(arities_[r], a)))
                return true;
    return false;
}

bool RelStructure::operator==(const RelStructure & other) const
{
    if (domain_size_ != other.domain_size_ || arities_ != other.arities_ || names_ != other.names_)
        return false;
    if (lazy_base_ || other.lazy_base_) {
        if (!lazy_base_ || !other.lazy_base_)
            return false;
        return lazy_exponent_ == other.lazy_exponent_ && *lazy_base_ == *other.lazy_base_;
    }
    return tuples_ == other.tuples_;
}

// ---------------------------------------------------------------------------
// FunctionTable

FunctionTable::FunctionTable(int arity, int in_domain, int out_domain, std::vector<int> table) :
    arity_(arity), in_domain_(in_domain), out_domain_(out_domain), table_(std::move(table))
{
    if (arity < 0 || in_domain < 1 || out_domain < 1)
        throw InvalidParameter("function table needs arity >= 0 and positive domains");
    auto expected = checked_pow(static_cast<std::size_t>(in_domain), static_cast<std::size_t>(arity));
    if (!expected || *expected != table_.size())
        throw InvalidParameter("function table length does not equal in_domain^arity");
    for (int v : table_)
        if (v < 1 || v > out_domain)
            throw InvalidParameter("function table value " + std::to_string(v) + " outside 1.." + std::to_string(out_domain));
}

FunctionTable FunctionTable::unary(int out_domain, std::vector<int> values)
{
    const int n = static_cast<int>(values.size());
    return FunctionTable(1, n, out_domain, std::move(values));
}

FunctionTable FunctionTable::identity(int domain)
{
    std::vector<int> values(static_cast<std::size_t>(domain));
    for (int i = 0; i < domain; ++i)
        values[static_cast<std::size_t>(i)] = i + 1;
    return FunctionTable(1, domain, domain, std::move(values));
}

int FunctionTable::operator()(std::span<const int> args) const
{
    if (args.size() != static_cast<std::size_t>(arity_))
        throw SignatureMismatch("wrong number of arguments");
    for (int x : args)
        if (x < 1 || x > in_domain_)
            throw InvalidParameter("argument outside the input domain");
    return table_[encode_tuple(args, in_domain_)];
}

int FunctionTable::operator()(std::initializer_list<int> args) const
{
    return (*this)(std::span<const int>(args.begin(), args.size()));
}

FunctionTable FunctionTable::as_unary() const
{
    return FunctionTable(1, static_cast<int>(table_.size()), out_domain_, table_);
}

std::string FunctionTable::to_string() const
{
    std::ostringstream out;
    if (arity_ == 2) {
        out << '[';
        for (int x = 0; x < in_domain_; ++x) {
            out << (x ? ",[" : "[");
            for (int y = 0; y < in_domain_; ++y)
                out << (y ? "," : "") << table_[static_cast<std::size_t>(x * in_domain_ + y)];
            out << ']';
        }
        out << ']';
        return out.str();
    }
    out << '(';
    for (std::size_t i = 0; i < table_.size(); ++i)
        out << (i ? "," : "") << table_[i];
    out << ')';
    return out.str();
}

// ---------------------------------------------------------------------------
// Multihom

Multihom::Multihom(int out_domain, std::vector<Mask> images) : out_domain_(out_domain), images_(std::move(images))
{
    if (out_domain < 1 || out_domain > max_out_domain)
        throw MalformedMultihom("multihom target size must be in 1..64");
    const Mask full = out_domain == 64 ? ~Mask{0} : ((Mask{1} << out_domain) - 1);
    for (std::size_t a = 0; a < images_.size(); ++a) {
        if (images_[a] == 0)
            throw MalformedMultihom("empty image set at element " + std::to_string(a + 1));
        if ((images_[a] & ~full) != 0)
            throw MalformedMultihom("image set outside the target domain at element " + std::to_string(a + 1));
    }
}

Multihom Multihom::from_sets(int out_domain, const std::vector<std::vector<int>> & sets)
{
    std::vector<Mask> masks;
    for (const auto & s : sets) {
        Mask m = 0;
        for (int b : s) {
            if (b < 1 || b > out_domain)
                throw MalformedMultihom("image element " + std::to_string(b) + " outside the target domain");
            m |= Mask{1} << (b - 1);
        }
        masks.push_back(m);
    }
    return Multihom(out_domain, std::move(masks));
}

Multihom Multihom::from_function(const FunctionTable & f)
{
    std::vector<Mask> masks;
    for (int v : f.values())
        masks.push_back(Mask{1} << (v - 1));
    return Multihom(f.out_domain(), std::move(masks));
}

std::vector<int> Multihom::image_set(int a) const
{
    std::vector<int> out;
    for (auto m = image(a); m != 0; m &= m - 1)
        out.push_back(std::countr_zero(m) + 1);
    return out;
}

bool Multihom::is_singleton_valued() const
{
    return std::all_of(images_.begin(), images_.end(), [](Mask m) { return std::has_single_bit(m); });
}

std::optional<FunctionTable> Multihom::as_function() const
{
    if (!is_singleton_valued())
        return std::nullopt;
    std::vector<int> values;
    for (Mask m : images_)
        values.push_back(std::countr_zero(m) + 1);
    return FunctionTable::unary(out_domain_, std::move(values));
}

bool Multihom::subset_of(const Multihom & other) const
{
    if (images_.size() != other.images_.size() || out_domain_ != other.out_domain_)
        throw SignatureMismatch("comparing multihoms with different domains");
    for (std::size_t a = 0; a < images_.size(); ++a)
        if ((images_[a] & ~other.images_[a]) != 0)
            return false;
    return true;
}

Multihom Multihom::join(const Multihom & other) const
{
    if (images_.size() != other.images_.size() || out_domain_ != other.out_domain_)
        throw SignatureMismatch("joining multihoms with different domains");
    auto masks = images_;
    for (std::size_t a = 0; a < masks.size(); ++a)
        masks[a] |= other.images_[a];
    return Multihom(out_domain_, std::move(masks));
}

std::vector<FunctionTable> Multihom::selections() const
{
    std::vector<FunctionTable> out;
    Tuple scratch(images_.size());
    for_each_selection(images_, scratch, 0, [&](std::span<const int> sel) {
        out.push_back(FunctionTable::unary(out_domain_, Tuple(sel.begin(), sel.end())));
        return true;
    });
    return out;
}

std::string Multihom::to_string() const
{
    std::ostringstream out;
    out << '(';
    for (std::size_t a = 0; a < images_.size(); ++a) {
        out << (a ? ",{" : "{");
        auto set = image_set(static_cast<int>(a + 1));
        for (std::size_t i = 0; i < set.size(); ++i)
            out << (i ? "," : "") << set[i];
        out << '}';
    }
    out << ')';
    return out.str();
}

// ---------------------------------------------------------------------------
// CyclicAction

CyclicAction::CyclicAction(std::vector<int> images) : images_(std::move(images))
{
    const auto n = images_.size();
    std::vector<char> seen(n, 0);
    for (int x : images_) {
        if (x < 1 || static_cast<std::size_t>(x) > n || seen[static_cast<std::size_t>(x - 1)])
            throw InvalidParameter("cyclic action is not a permutation");
        seen[static_cast<std::size_t>(x - 1)] = 1;
    }
    for (std::size_t a = 1; a <= n; ++a) {
        int x = static_cast<int>(a);
        for (int k = 0; k < 3; ++k)
            x = images_[static_cast<std::size_t>(x - 1)];
        if (x != static_cast<int>(a))
            throw InvalidParameter("cyclic action does not cube to the identity");
    }
}

CyclicAction CyclicAction::ott_shift()
{
    return CyclicAction({2, 3, 1});
}

CyclicAction CyclicAction::inverse() const
{
    std::vector<int> inv(images_.size());
    for (std::size_t a = 0; a < images_.size(); ++a)
        inv[static_cast<std::size_t>(images_[a] - 1)] = static_cast<int>(a + 1);
    return CyclicAction(std::move(inv));
}

bool CyclicAction::is_automorphism_of(const RelStructure & A) const
{
    if (images_.size() != static_cast<std::size_t>(A.domain_size()))
        return false;
    bool ok = true;
    for (std::size_t r = 0; r < A.relation_count() && ok; ++r)
        A.for_each_tuple(r, [&](std::span<const int> t) {
            Tuple image(t.size());
            for (std::size_t j = 0; j < t.size(); ++j)
                image[j] = (*this)(t[j]);
            if (!A.contains(r, image))
                ok = false;
        });
    return ok;
}

bool CyclicAction::has_fixed_point() const
{
    for (std::size_t a = 0; a < images_.size(); ++a)
        if (images_[a] == static_cast<int>(a + 1))
            return true;
    return false;
}

// ---------------------------------------------------------------------------
// Concrete structures

RelStructure make_lo(int k)
{
    if (k < 1)
        throw InvalidParameter("LO_k needs k >= 1");
    Relation rel{"R", 3, {}};
    for (int a = 1; a <= k; ++a)
        for (int b = 1; b <= k; ++b)
            for (int c = 1; c <= k; ++c) {
                const int top = std::max({a, b, c});
                if ((a == top) + (b == top) + (c == top) == 1)
                    rel.tuples.push_back({a, b, c});
            }
    return RelStructure(k, {std::move(rel)});
}

RelStructure make_ott()
{
    Relation rel{"R", 3, {}};
    Tuple t{1, 2, 3};
    do
        rel.tuples.push_back(t);
    while (std::next_permutation(t.begin(), t.end()));
    return RelStructure(3, {std::move(rel)});
}

RelStructure power(const RelStructure & A, int n, std::size_t tuple_cap)
{
    if (n < 1)
        throw InvalidParameter("power exponent must be positive");
    auto domain = checked_pow(static_cast<std::size_t>(A.domain_size()), static_cast<std::size_t>(n));
    if (!domain || *domain > static_cast<std::size_t>(std::numeric_limits<int>::max()))
        throw SizeLimitError("power domain size exceeds platform capacity");

    bool materialize = A.is_materialized();
    for (std::size_t r = 0; r < A.relation_count() && materialize; ++r) {
        auto count = checked_pow(A.tuple_count(r), static_cast<std::size_t>(n));
        if (!count || *count > tuple_cap)
            materialize = false;
    }

    if (!materialize) {
        if (!A.is_materialized())
            throw SizeLimitError("powers of lazy powers are not supported");
        RelStructure out;
        out.domain_size_ = static_cast<int>(*domain);
        for (std::size_t r = 0; r < A.relation_count(); ++r) {
            out.names_.push_back(A.relation_name(r));
            out.arities_.push_back(A.arity(r));
            out.tuples_.emplace_back();
            out.lookup_.emplace_back();
        }
        out.lazy_base_ = std::make_shared<const RelStructure>(A);
        out.lazy_exponent_ = n;
        return out;
    }

    auto lazy = A;
    RelStructure shell;
    shell.domain_size_ = static_cast<int>(*domain);
    shell.lazy_base_ = std::make_shared<const RelStructure>(std::move(lazy));
    shell.lazy_exponent_ = n;
    for (std::size_t r = 0; r < A.relation_count(); ++r) {
        shell.names_.push_back(A.relation_name(r));
        shell.arities_.push_back(A.arity(r));
        shell.tuples_.emplace_back();
        shell.lookup_.emplace_back();
    }

    std::vector<Relation> rels;
    for (std::size_t r = 0; r < A.relation_count(); ++r) {
        Relation rel{A.relation_name(r), A.arity(r), {}};
        shell.for_each_tuple(r, [&](std::span<const int> t) { rel.tuples.emplace_back(t.begin(), t.end()); });
        rels.push_back(std::move(rel));
    }
    return RelStructure(static_cast<int>(*domain), std::move(rels));
}

RelStructure product(const RelStructure & B1, const RelStructure & B2)
{
    if (!same_signature(B1, B2))
        throw SignatureMismatch("product of structures with different signatures");
    const int n2 = B2.domain_size();
    std::vector<Relation> rels;
    for (std::size_t r = 0; r < B1.relation_count(); ++r) {
        Relation rel{B1.relation_name(r), B1.arity(r), {}};
        for (const auto & t1 : B1.tuples(r))
            for (const auto & t2 : B2.tuples(r)) {
                Tuple t(t1.size());
                for (std::size_t j = 0; j < t.size(); ++j)
                    t[j] = (t1[j] - 1) * n2 + t2[j];
                rel.tuples.push_back(std::move(t));
            }
        rels.push_back(std::move(rel));
    }
    return RelStructure(B1.domain_size() * n2, std::move(rels));
}

RelStructure make_graph(int n, const std::vector<std::pair<int, int>> & edges)
{
    Relation rel{"E", 2, {}};
    for (auto [u, v] : edges) {
        rel.tuples.push_back({u, v});
        rel.tuples.push_back({v, u});
    }
    return RelStructure(n, {std::move(rel)});
}

RelStructure make_complete_graph(int n)
{
    std::vector<std::pair<int, int>> edges;
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v)
            edges.emplace_back(u, v);
    return make_graph(n, edges);
}

bool same_signature(const RelStructure & X, const RelStructure & B)
{
    return X.signature() == B.signature();
}

bool is_homomorphism(const FunctionTable & f, const RelStructure & X, const RelStructure & B)
{
    if (f.arity() != 1 || f.in_domain() != X.domain_size() || f.out_domain() != B.domain_size() || !same_signature(X, B))
        throw SignatureMismatch("function table does not match the structures");
    bool ok = true;
    for (std::size_t r = 0; r < X.relation_count() && ok; ++r)
        X.for_each_tuple(r, [&](std::span<const int> t) {
            if (!ok)
                return;
            Tuple image(t.size());
            for (std::size_t j = 0; j < t.size(); ++j)
                image[j] = f.at(static_cast<std::size_t>(t[j] - 1));
            ok = B.contains(r, image);
        });
    return ok;
}

bool is_multihomomorphism(const Multihom & m, const RelStructure & X, const RelStructure & B)
{
    if (m.in_domain() != static_cast<std::size_t>(X.domain_size()) || m.out_domain() != B.domain_size() || !same_signature(X, B))
        throw SignatureMismatch("multihom does not match the structures");
    bool ok = true;
    for (std::size_t r = 0; r < X.relation_count() && ok; ++r)
        X.for_each_tuple(r, [&](std::span<const int> t) {
            if (!ok)
                return;
            std::vector<Multihom::Mask> masks;
            for (int x : t)
                masks.push_back(m.image(x));
            Tuple scratch(t.size());
            ok = for_each_selection(masks, scratch, 0, [&](std::span<const int> sel) { return B.contains(r, sel); });
        });
    return ok;
}

Multihom compose_multihom(const Multihom & g, const Multihom & f)
{
    if (static_cast<std::size_t>(f.out_domain()) != g.in_domain())
        throw SignatureMismatch("multihoms do not compose: domains do not chain");
    std::vector<Multihom::Mask> masks;
    for (std::size_t a = 1; a <= f.in_domain(); ++a) {
        Multihom::Mask m = 0;
        for (int b : f.image_set(static_cast<int>(a)))
            m |= g.image(b);
        masks.push_back(m);
    }
    return Multihom(g.out_domain(), std::move(masks));
}

Multihom act_on_multihom(const CyclicAction & omega, const Multihom & m)
{
    if (omega.size() != m.in_domain())
        throw SignatureMismatch("action and multihom domains differ");
    std::vector<Multihom::Mask> masks(m.in_domain());
    for (std::size_t a = 1; a <= m.in_domain(); ++a)
        masks[a - 1] = m.image(omega(static_cast<int>(a)));
    return Multihom(m.out_domain(), std::move(masks));
}

FunctionTable act_on_function(const CyclicAction & omega, const FunctionTable & f)
{
    if (f.arity() != 1 || omega.size() != static_cast<std::size_t>(f.in_domain()))
        throw SignatureMismatch("action and function domains differ");
    std::vector<int> values(f.size());
    for (std::size_t a = 1; a <= f.size(); ++a)
        values[a - 1] = f.at(static_cast<std::size_t>(omega(static_cast<int>(a)) - 1));
    return FunctionTable::unary(f.out_domain(), std::move(values));
}

RelStructure graph_to_lo_instance(const RelStructure & G)
{
    if (G.relation_count() != 1 || G.arity(0) != 2)
        throw InvalidInstance("graph must have exactly one binary relation");
    std::set<std::pair<int, int>> edges;
    for (const auto & t : G.tuples(0)) {
        if (t[0] == t[1])
            throw InvalidInstance("graph has a loop at vertex " + std::to_string(t[0]));
        if (!G.contains(0, Tuple{t[1], t[0]}))
            throw InvalidInstance("graph relation is not symmetric");
        edges.emplace(std::min(t[0], t[1]), std::max(t[0], t[1]));
    }
    const int n = G.domain_size();
    Relation rel{"R", 3, {}};
    int z = n;
    for (auto [u, v] : edges) {
        ++z;
        rel.tuples.push_back({z, z, u});
        rel.tuples.push_back({z, z, v});
        rel.tuples.push_back({u, v, z});
    }
    return RelStructure(z, {std::move(rel)});
}

} // namespace pcsp
