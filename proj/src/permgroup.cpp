#include "depthlab/permgroup.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "depthlab/class_function.hpp"
#include "depthlab/errors.hpp"

namespace depthlab::permgroup {

// ---------------------------------------------------------------- Perm

Perm::Perm(std::vector<Point> images) : images_(std::move(images))
{
    std::vector<bool> seen(images_.size(), false);
    for (Point x : images_) {
        if (x >= images_.size() || seen[x])
            throw InputError("Perm: image word is not a permutation");
        seen[x] = true;
    }
}

Perm Perm::identity(std::size_t degree)
{
    std::vector<Point> w(degree);
    std::iota(w.begin(), w.end(), Point{0});
    Perm p;
    p.images_ = std::move(w);
    return p;
}

Perm Perm::from_cycles(std::size_t degree, const std::vector<std::vector<std::size_t>>& cycles)
{
    std::vector<Point> w(degree);
    std::iota(w.begin(), w.end(), Point{0});
    std::vector<bool> used(degree, false);
    for (const auto& cyc : cycles) {
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            const std::size_t a = cyc[i];
            if (a >= degree)
                throw InputError("Perm: cycle point " + std::to_string(a + 1) + " exceeds degree " +
                                 std::to_string(degree));
            if (used[a])
                throw InputError("Perm: point " + std::to_string(a + 1) + " repeated in cycles");
            used[a] = true;
            w[a] = static_cast<Point>(cyc[(i + 1) % cyc.size()]);
        }
    }
    return Perm(std::move(w));
}

Perm Perm::operator*(const Perm& rhs) const
{
    std::vector<Point> w(images_.size());
    for (std::size_t x = 0; x < images_.size(); ++x)
        w[x] = rhs.images_[images_[x]];
    Perm p;
    p.images_ = std::move(w);
    return p;
}

Perm Perm::inverse() const
{
    std::vector<Point> w(images_.size());
    for (std::size_t x = 0; x < images_.size(); ++x)
        w[images_[x]] = static_cast<Point>(x);
    Perm p;
    p.images_ = std::move(w);
    return p;
}

Perm Perm::padded(std::size_t degree) const
{
    if (degree < images_.size())
        throw InputError("Perm: cannot shrink degree " + std::to_string(images_.size()) + " to " +
                         std::to_string(degree));
    Perm p = *this;
    for (std::size_t x = images_.size(); x < degree; ++x)
        p.images_.push_back(static_cast<Point>(x));
    return p;
}

bool Perm::is_identity() const
{
    for (std::size_t x = 0; x < images_.size(); ++x)
        if (images_[x] != x)
            return false;
    return true;
}

std::vector<std::size_t> Perm::cycle_type() const
{
    std::vector<std::size_t> lens;
    std::vector<bool> seen(images_.size(), false);
    for (std::size_t x = 0; x < images_.size(); ++x) {
        if (seen[x])
            continue;
        std::size_t len = 0;
        for (std::size_t y = x; !seen[y]; y = images_[y]) {
            seen[y] = true;
            ++len;
        }
        lens.push_back(len);
    }
    std::sort(lens.rbegin(), lens.rend());
    return lens;
}

std::size_t Perm::order() const
{
    std::size_t o = 1;
    for (std::size_t len : cycle_type())
        o = std::lcm(o, len);
    return o;
}

std::string Perm::to_string() const
{
    std::ostringstream os;
    std::vector<bool> seen(images_.size(), false);
    bool any = false;
    for (std::size_t x = 0; x < images_.size(); ++x) {
        if (seen[x] || images_[x] == x)
            continue;
        os << '(';
        for (std::size_t y = x; !seen[y]; y = images_[y]) {
            if (y != x)
                os << ' ';
            os << y + 1;
            seen[y] = true;
        }
        os << ')';
        any = true;
    }
    if (!any)
        os << "()";
    return os.str();
}

std::size_t PermHash::operator()(const Perm& p) const noexcept
{
    std::size_t h = 0xcbf29ce484222325ull;
    for (Point x : p.images()) {
        h ^= x;
        h *= 0x100000001b3ull;
    }
    return h;
}

// ---------------------------------------------------------------- PermGroup

PermGroup PermGroup::generate(std::size_t degree, const std::vector<Perm>& generators, std::size_t order_cap)
{
    if (degree == 0 || degree > 0xffff)
        throw InputError("PermGroup: degree must be in [1, 65535]");
    PermGroup g;
    g.degree_ = degree;
    for (const auto& s : generators) {
        if (s.degree() != degree)
            throw InputError("PermGroup: generator " + s.to_string() + " has degree " +
                             std::to_string(s.degree()) + ", expected " + std::to_string(degree));
        if (!s.is_identity())
            g.generators_.push_back(s);
    }

    Perm id = Perm::identity(degree);
    g.elements_.push_back(id);
    g.lookup_.emplace(id, 0);
    std::vector<std::size_t> frontier{0};
    while (!frontier.empty()) {
        std::vector<Perm> layer;
        std::unordered_set<Perm, PermHash> fresh;
        for (std::size_t e : frontier) {
            for (const auto& s : g.generators_) {
                Perm x = g.elements_[e] * s;
                if (!g.lookup_.contains(x) && fresh.insert(x).second)
                    layer.push_back(std::move(x));
            }
        }
        if (g.elements_.size() + layer.size() > order_cap)
            throw ResourceError("group order exceeds cap " + std::to_string(order_cap));
        std::sort(layer.begin(), layer.end());
        frontier.clear();
        for (auto& x : layer) {
            frontier.push_back(g.elements_.size());
            g.lookup_.emplace(x, g.elements_.size());
            g.elements_.push_back(std::move(x));
        }
    }

    g.inverse_.resize(g.elements_.size());
    for (std::size_t i = 0; i < g.elements_.size(); ++i)
        g.inverse_[i] = g.lookup_.at(g.elements_[i].inverse());
    g.compute_classes();
    return g;
}

void PermGroup::compute_classes()
{
    constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
    class_of_.assign(elements_.size(), kUnset);
    std::vector<std::size_t> gen_idx, gen_inv;
    for (const auto& s : generators_) {
        gen_idx.push_back(lookup_.at(s));
        gen_inv.push_back(inverse_[gen_idx.back()]);
    }
    for (std::size_t e = 0; e < elements_.size(); ++e) {
        if (class_of_[e] != kUnset)
            continue;
        const std::size_t c = classes_.size();
        ConjClass cls;
        cls.representative = e;
        std::vector<std::size_t> queue{e};
        class_of_[e] = c;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            for (std::size_t k = 0; k < gen_idx.size(); ++k) {
                const std::size_t y = multiply(multiply(gen_inv[k], queue[head]), gen_idx[k]);
                if (class_of_[y] == kUnset) {
                    class_of_[y] = c;
                    queue.push_back(y);
                }
            }
        }
        std::sort(queue.begin(), queue.end());
        cls.size = queue.size();
        cls.member_indices = std::move(queue);
        cls.rep_order = elements_[e].order();
        exponent_ = std::lcm(exponent_, cls.rep_order);
        classes_.push_back(std::move(cls));
    }
    inverse_class_.resize(classes_.size());
    for (std::size_t c = 0; c < classes_.size(); ++c)
        inverse_class_[c] = class_of_[inverse_[classes_[c].representative]];
}

std::optional<std::size_t> PermGroup::index_of(const Perm& p) const
{
    auto it = lookup_.find(p);
    if (it == lookup_.end())
        return std::nullopt;
    return it->second;
}

std::size_t PermGroup::multiply(std::size_t a, std::size_t b) const
{
    return lookup_.at(elements_[a] * elements_[b]);
}

// ---------------------------------------------------------------- specs

namespace {

[[noreturn]] void parse_fail(std::string_view text, std::size_t pos, const std::string& what)
{
    throw InputError("group spec '" + std::string(text) + "': " + what + " at position " + std::to_string(pos));
}

std::size_t parse_number(std::string_view text, std::size_t& pos)
{
    const std::size_t start = pos;
    std::size_t v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        v = v * 10 + static_cast<std::size_t>(text[pos] - '0');
        if (v > 1'000'000)
            parse_fail(text, start, "number too large");
        ++pos;
    }
    if (pos == start)
        parse_fail(text, pos, "expected a number");
    return v;
}

void skip_spaces(std::string_view text, std::size_t& pos)
{
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
        ++pos;
}

GroupSpec parse_perm_list(std::string_view text, std::size_t pos)
{
    // Cycles are collected 1-based first; the degree is the largest point seen.
    std::vector<std::vector<std::vector<std::size_t>>> gens(1);
    std::vector<std::size_t> cycle_start_pos;
    std::size_t degree = 1;
    skip_spaces(text, pos);
    if (pos >= text.size())
        parse_fail(text, pos, "expected a cycle");
    while (pos < text.size()) {
        skip_spaces(text, pos);
        if (pos >= text.size())
            break;
        const char ch = text[pos];
        if (ch == ',') {
            if (gens.back().empty() && cycle_start_pos.empty())
                parse_fail(text, pos, "empty generator");
            gens.emplace_back();
            cycle_start_pos.clear();
            ++pos;
            continue;
        }
        if (ch != '(')
            parse_fail(text, pos, std::string("unexpected character '") + ch + "'");
        cycle_start_pos.push_back(pos);
        ++pos;
        std::vector<std::size_t> cyc;
        for (;;) {
            skip_spaces(text, pos);
            if (pos >= text.size())
                parse_fail(text, pos, "unterminated cycle");
            if (text[pos] == ')') {
                ++pos;
                break;
            }
            if (text[pos] == ',') {
                ++pos;
                continue;
            }
            const std::size_t at = pos;
            const std::size_t point = parse_number(text, pos);
            if (point == 0)
                parse_fail(text, at, "points are numbered from 1");
            if (std::find(cyc.begin(), cyc.end(), point - 1) != cyc.end())
                parse_fail(text, at, "point repeated in cycle");
            cyc.push_back(point - 1);
            degree = std::max(degree, point);
        }
        gens.back().push_back(std::move(cyc));
    }
    if (gens.back().empty() && cycle_start_pos.empty())
        parse_fail(text, pos, "empty generator");

    GroupSpec spec;
    spec.kind = GroupSpec::Kind::Explicit;
    spec.degree = degree;
    for (const auto& cycles : gens) {
        // Disjointness within one generator is not required: compose cycles left to right.
        Perm g = Perm::identity(degree);
        for (const auto& cyc : cycles)
            g = g * Perm::from_cycles(degree, {cyc});
        spec.generators.push_back(std::move(g));
    }
    return spec;
}

std::size_t multiplicative_order(std::size_t a, std::size_t p)
{
    std::size_t x = a % p;
    for (std::size_t k = 1; k <= p; ++k) {
        if (x == 1 % p)
            return k;
        x = x * a % p;
    }
    return 0;
}

}  // namespace

GroupSpec parse_group_spec(std::string_view text)
{
    std::size_t pos = 0;
    skip_spaces(text, pos);
    std::string_view body = text.substr(pos);
    while (!body.empty() && std::isspace(static_cast<unsigned char>(body.back())))
        body.remove_suffix(1);
    if (body.empty())
        parse_fail(text, pos, "empty spec");

    GroupSpec spec;
    if (body == "trivial" || body == "1") {
        spec.kind = GroupSpec::Kind::Trivial;
    } else if (body.starts_with("perm:")) {
        spec = parse_perm_list(text, pos + 5);
    } else {
        const char family = body[0];
        std::size_t p = pos + 1;
        if (family != 'S' && family != 'A' && family != 'C' && family != 'D')
            parse_fail(text, pos, "unknown family (expected S, A, C, D, trivial or perm:)");
        const std::size_t n = parse_number(text, p);
        if (n == 0)
            parse_fail(text, pos + 1, "family parameter must be positive");
        if (family == 'C' && p < pos + body.size() && text[p] == ':') {
            const std::size_t colon = p++;
            if (p >= pos + body.size() || text[p] != 'C')
                parse_fail(text, p, "expected 'C' after ':'");
            ++p;
            const std::size_t q = parse_number(text, p);
            if (p >= pos + body.size() || text[p] != '@')
                parse_fail(text, p, "expected '@' and an action exponent");
            ++p;
            const std::size_t a_pos = p;
            const std::size_t a = parse_number(text, p);
            if (n < 2)
                parse_fail(text, pos + 1, "normal factor must have order at least 2");
            if (std::gcd(a, n) != 1)
                parse_fail(text, a_pos, "action exponent must be a unit mod " + std::to_string(n));
            const std::size_t ord = multiplicative_order(a, n);
            if (q == 0 || ord != q)
                parse_fail(text, a_pos, "action exponent " + std::to_string(a) + " has multiplicative order " +
                                            std::to_string(ord) + " mod " + std::to_string(n) + ", not " +
                                            std::to_string(q));
            (void)colon;
            spec.kind = GroupSpec::Kind::Semidirect;
            spec.n = n;
            spec.q = q;
            spec.action = a % n;
        } else {
            spec.n = n;
            switch (family) {
            case 'S': spec.kind = GroupSpec::Kind::Symmetric; break;
            case 'A': spec.kind = GroupSpec::Kind::Alternating; break;
            case 'C': spec.kind = GroupSpec::Kind::Cyclic; break;
            default:
                if (n % 2 != 0 || n < 6)
                    parse_fail(text, pos + 1, "dihedral order must be even and at least 6");
                spec.kind = GroupSpec::Kind::Dihedral;
            }
        }
        if (p != pos + body.size())
            parse_fail(text, p, "trailing characters");
    }
    spec.text = std::string(body);
    return spec;
}

std::size_t natural_degree(const GroupSpec& spec)
{
    using K = GroupSpec::Kind;
    switch (spec.kind) {
    case K::Explicit: return spec.degree;
    case K::Symmetric:
    case K::Alternating:
    case K::Cyclic:
    case K::Semidirect: return spec.n;
    case K::Dihedral: return spec.n / 2;
    case K::Trivial: return 1;
    }
    return 1;
}

std::vector<Perm> standard_generators(const GroupSpec& spec)
{
    using K = GroupSpec::Kind;
    const std::size_t deg = natural_degree(spec);
    std::vector<Perm> gens;
    switch (spec.kind) {
    case K::Explicit: return spec.generators;
    case K::Trivial: return {};
    case K::Symmetric:
        for (std::size_t i = 0; i + 1 < deg; ++i)
            gens.push_back(Perm::from_cycles(deg, {{i, i + 1}}));
        break;
    case K::Alternating:
        for (std::size_t k = 2; k < deg; ++k)
            gens.push_back(Perm::from_cycles(deg, {{0, 1, k}}));
        break;
    case K::Cyclic: {
        std::vector<std::size_t> cyc(deg);
        std::iota(cyc.begin(), cyc.end(), std::size_t{0});
        if (deg > 1)
            gens.push_back(Perm::from_cycles(deg, {cyc}));
        break;
    }
    case K::Dihedral: {
        std::vector<std::size_t> cyc(deg);
        std::iota(cyc.begin(), cyc.end(), std::size_t{0});
        gens.push_back(Perm::from_cycles(deg, {cyc}));
        std::vector<Point> refl(deg);
        for (std::size_t i = 0; i < deg; ++i)
            refl[i] = static_cast<Point>((deg - i) % deg);
        gens.emplace_back(std::move(refl));
        break;
    }
    case K::Semidirect: {
        std::vector<Point> shift(deg), mult(deg);
        for (std::size_t i = 0; i < deg; ++i) {
            shift[i] = static_cast<Point>((i + 1) % deg);
            mult[i] = static_cast<Point>(i * spec.action % deg);
        }
        gens.emplace_back(std::move(shift));
        gens.emplace_back(std::move(mult));
        break;
    }
    }
    return gens;
}

GroupPtr build_group(const GroupSpec& spec, std::size_t order_cap)
{
    return std::make_shared<const PermGroup>(
        PermGroup::generate(natural_degree(spec), standard_generators(spec), order_cap));
}

GroupPtr build_group(std::string_view text, std::size_t order_cap)
{
    return build_group(parse_group_spec(text), order_cap);
}

// ---------------------------------------------------------------- subgroups

SubgroupEmbedding embed_subgroup(GroupPtr parent, const std::vector<Perm>& subgens, std::size_t order_cap)
{
    SubgroupEmbedding emb;
    std::vector<Perm> gens;
    for (const auto& s : subgens) {
        Perm padded = s.padded(parent->degree());
        if (!parent->contains(padded))
            throw InputError("embed_subgroup: generator " + padded.to_string() + " is not in the parent group");
        gens.push_back(std::move(padded));
    }
    emb.parent_ = parent;
    emb.subgroup_ = std::make_shared<const PermGroup>(PermGroup::generate(parent->degree(), gens, order_cap));
    const PermGroup& G = *parent;
    const PermGroup& U = *emb.subgroup_;

    emb.in_subgroup_.assign(G.order(), false);
    emb.to_parent_.resize(U.order());
    for (std::size_t i = 0; i < U.order(); ++i) {
        emb.to_parent_[i] = *G.index_of(U.element(i));
        emb.in_subgroup_[emb.to_parent_[i]] = true;
    }
    for (const auto& cls : U.classes())
        emb.fusion_.push_back(G.class_of(emb.to_parent_[cls.representative]));

    constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
    emb.right_coset_of_.assign(G.order(), kUnset);
    for (std::size_t g = 0; g < G.order(); ++g) {
        if (emb.right_coset_of_[g] != kUnset)
            continue;
        const std::size_t k = emb.right_cosets_.size();
        emb.right_cosets_.push_back(g);
        for (std::size_t u = 0; u < U.order(); ++u)
            emb.right_coset_of_[G.multiply(emb.to_parent_[u], g)] = k;
    }
    if (emb.right_cosets_.size() * U.order() != G.order())
        throw IntegrityError("embed_subgroup: coset count does not match Lagrange");
    return emb;
}

GroupPtr subgroup_from_elements(const PermGroup& parent, const std::vector<std::size_t>& elements)
{
    std::vector<Perm> gens;
    std::unordered_set<std::size_t> span{0};
    std::vector<std::size_t> sorted = elements;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t e : sorted) {
        if (span.contains(e))
            continue;
        gens.push_back(parent.element(e));
        const PermGroup h = PermGroup::generate(parent.degree(), gens, parent.order());
        span.clear();
        for (const auto& x : h.elements())
            span.insert(*parent.index_of(x));
    }
    if (span.size() != sorted.size())
        throw IntegrityError("subgroup_from_elements: element set is not a subgroup");
    return std::make_shared<const PermGroup>(PermGroup::generate(parent.degree(), gens, parent.order()));
}

bool is_normal(const SubgroupEmbedding& emb)
{
    const PermGroup& G = *emb.parent();
    for (const auto& s : G.generators()) {
        const std::size_t si = *G.index_of(s);
        const std::size_t sinv = G.inverse(si);
        for (std::size_t u = 0; u < emb.subgroup()->order(); ++u) {
            if (!emb.in_subgroup(G.multiply(G.multiply(sinv, emb.to_parent(u)), si)))
                return false;
        }
    }
    return true;
}

GroupPtr core(const SubgroupEmbedding& emb)
{
    const PermGroup& G = *emb.parent();
    std::vector<bool> running(G.order());
    for (std::size_t g = 0; g < G.order(); ++g)
        running[g] = emb.in_subgroup(g);

    auto running_is_normal = [&] {
        for (const auto& s : G.generators()) {
            const std::size_t si = *G.index_of(s);
            const std::size_t sinv = G.inverse(si);
            for (std::size_t x = 0; x < G.order(); ++x)
                if (running[x] && !running[G.multiply(G.multiply(sinv, x), si)])
                    return false;
        }
        return true;
    };

    for (std::size_t g = 0; g < G.order() && !running_is_normal(); ++g) {
        const std::size_t ginv = G.inverse(g);
        // x lies in g U g^-1 iff g^-1 x g lies in U.
        for (std::size_t x = 0; x < G.order(); ++x)
            if (running[x] && !emb.in_subgroup(G.multiply(G.multiply(ginv, x), g)))
                running[x] = false;
    }
    std::vector<std::size_t> members;
    for (std::size_t x = 0; x < G.order(); ++x)
        if (running[x])
            members.push_back(x);
    return subgroup_from_elements(G, members);
}

GroupPtr action_kernel(const SubgroupEmbedding& emb)
{
    const PermGroup& G = *emb.parent();
    std::vector<std::size_t> members;
    for (std::size_t g = 0; g < G.order(); ++g) {
        bool fixes_all = true;
        for (std::size_t k = 0; k < emb.index() && fixes_all; ++k)
            fixes_all = emb.right_coset_of(G.multiply(emb.right_cosets()[k], g)) == k;
        if (fixes_all)
            members.push_back(g);
    }
    return subgroup_from_elements(G, members);
}

std::vector<std::size_t> parent_indices(const PermGroup& parent, const PermGroup& sub)
{
    std::vector<std::size_t> out;
    out.reserve(sub.order());
    for (const auto& x : sub.elements()) {
        auto idx = parent.index_of(x.padded(parent.degree()));
        if (!idx)
            throw InputError("parent_indices: element " + x.to_string() + " not in parent");
        out.push_back(*idx);
    }
    std::sort(out.begin(), out.end());
    return out;
}

ClassFunction coset_permutation_character(const SubgroupEmbedding& emb)
{
    const PermGroup& G = *emb.parent();
    std::vector<std::int64_t> values(G.num_classes(), 0);
    for (std::size_t c = 0; c < G.num_classes(); ++c) {
        const std::size_t g = G.classes()[c].representative;
        for (std::size_t k = 0; k < emb.index(); ++k)
            if (emb.right_coset_of(G.multiply(emb.right_cosets()[k], g)) == k)
                ++values[c];
    }
    return ClassFunction::integer(emb.parent(), std::move(values));
}

ClassFunction adjoint_character(const GroupPtr& g)
{
    std::vector<std::int64_t> values(g->num_classes());
    for (std::size_t c = 0; c < g->num_classes(); ++c)
        values[c] = static_cast<std::int64_t>(g->centralizer_order(c));
    return ClassFunction::integer(g, std::move(values));
}

}  // namespace depthlab::permgroup
