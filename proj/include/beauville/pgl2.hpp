#pragma once

// PGL2(p) = GL2(p) / scalars, for odd prime p.
//
// An element is stored as the unique scalar multiple of its matrix whose first
// nonzero entry in scan order (m11, m12, m21, m22) equals 1, so equality is
// plain component comparison and every element has a perfect integer index in
// [0, p^3 + p^2). The group has order p(p^2-1).
//
// Conjugacy is decided by ClassKey: identity and the single parabolic class
// are their own tags, involutions (trace 0) split into two classes separated
// by the square class of det, and everything else is pinned by
// j = trace^2 / det, which is scalar-invariant and inverse-invariant.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "beauville/errors.hpp"
#include "beauville/fp.hpp"

namespace beauville {

struct GroupElement {
    std::array<Fp, 4> m{0, 0, 0, 0};  // row major: m11, m12, m21, m22
    bool operator==(const GroupElement&) const = default;
};

inline GroupElement identity_element() { return GroupElement{{1, 0, 0, 1}}; }

inline GroupElement canonicalize(const FieldContext& F, std::array<Fp, 4> m) {
    int lead = -1;
    for (int i = 0; i < 4; ++i)
        if (m[i] != 0) { lead = i; break; }
    if (lead < 0) throw validation_error("zero matrix has no image in PGL2");
    if (m[lead] != 1) {
        Fp s = F.inverse(m[lead]);
        for (auto& x : m) x = F.mul(x, s);
    }
    return GroupElement{m};
}

inline Fp trace_of(const FieldContext& F, const GroupElement& g) { return F.add(g.m[0], g.m[3]); }

inline Fp det_of(const FieldContext& F, const GroupElement& g) {
    return F.sub(F.mul(g.m[0], g.m[3]), F.mul(g.m[1], g.m[2]));
}

inline GroupElement make_element(const FieldContext& F, std::int64_t a, std::int64_t b,
                                 std::int64_t c, std::int64_t d) {
    std::array<Fp, 4> m{F.from_int(a), F.from_int(b), F.from_int(c), F.from_int(d)};
    if (F.sub(F.mul(m[0], m[3]), F.mul(m[1], m[2])) == 0)
        throw validation_error("singular matrix has no image in PGL2");
    return canonicalize(F, m);
}

inline GroupElement multiply(const FieldContext& F, const GroupElement& g, const GroupElement& h) {
    std::array<Fp, 4> m{
        F.add(F.mul(g.m[0], h.m[0]), F.mul(g.m[1], h.m[2])),
        F.add(F.mul(g.m[0], h.m[1]), F.mul(g.m[1], h.m[3])),
        F.add(F.mul(g.m[2], h.m[0]), F.mul(g.m[3], h.m[2])),
        F.add(F.mul(g.m[2], h.m[1]), F.mul(g.m[3], h.m[3])),
    };
    return canonicalize(F, m);
}

// The adjugate: differs from the inverse matrix by the scalar det, which PGL2
// quotients out.
inline GroupElement invert(const FieldContext& F, const GroupElement& g) {
    return canonicalize(F, {g.m[3], F.neg(g.m[1]), F.neg(g.m[2]), g.m[0]});
}

inline GroupElement conjugate(const FieldContext& F, const GroupElement& g, const GroupElement& h) {
    return multiply(F, multiply(F, h, g), invert(F, h));
}

inline GroupElement power(const FieldContext& F, GroupElement g, std::uint64_t e) {
    GroupElement acc = identity_element();
    while (e) {
        if (e & 1) acc = multiply(F, acc, g);
        g = multiply(F, g, g);
        e >>= 1;
    }
    return acc;
}

enum class ElementType : std::uint8_t { identity, parabolic, hyperbolic, elliptic };

inline std::string to_string(ElementType t) {
    switch (t) {
        case ElementType::identity: return "identity";
        case ElementType::parabolic: return "parabolic";
        case ElementType::hyperbolic: return "hyperbolic";
        case ElementType::elliptic: return "elliptic";
    }
    return "?";
}

struct ClassKey {
    enum class Tag : std::uint8_t { identity = 0, parabolic = 1, involution = 2, generic = 3 };
    Tag tag = Tag::identity;
    Fp j = 0;                // generic only: trace^2 / det
    bool det_square = false; // involution only: true when the class lies in PSL

    auto operator<=>(const ClassKey&) const = default;
};

inline ClassKey identity_key() { return ClassKey{ClassKey::Tag::identity, 0, false}; }
inline ClassKey parabolic_key() { return ClassKey{ClassKey::Tag::parabolic, 0, false}; }
inline ClassKey involution_key(bool det_square) {
    return ClassKey{ClassKey::Tag::involution, 0, det_square};
}
inline ClassKey generic_key(Fp j) { return ClassKey{ClassKey::Tag::generic, j, false}; }

inline std::string to_string(const ClassKey& k) {
    switch (k.tag) {
        case ClassKey::Tag::identity: return "identity";
        case ClassKey::Tag::parabolic: return "parabolic";
        case ClassKey::Tag::involution: return k.det_square ? "inv(psl)" : "inv(nonpsl)";
        case ClassKey::Tag::generic: return "j=" + std::to_string(k.j);
    }
    return "?";
}

class Group {
public:
    explicit Group(std::uint32_t p)
        : F_(p),
          fact_pm1_(factor_small(p - 1)),
          fact_pp1_(factor_small(p + 1)),
          inv_table_(p, 0),
          square_table_(p, 0) {
        // inv[x] = -(p/x) * inv[p mod x]; independent of FieldContext::inverse.
        if (p > 1) inv_table_[1] = 1;
        for (Fp x = 2; x < p; ++x)
            inv_table_[x] =
                static_cast<Fp>(static_cast<std::uint64_t>(p - p / x) * inv_table_[p % x] % p);
        for (Fp x = 1; x < p; ++x) square_table_[F_.mul(x, x)] = 1;
    }

    const FieldContext& field() const { return F_; }
    std::uint32_t p() const { return F_.p(); }

    std::uint64_t order() const {
        std::uint64_t p = F_.p();
        return p * (p * p - 1);
    }

    std::uint64_t index_space() const {
        std::uint64_t p = F_.p();
        return p * p * p + p * p;
    }

    std::uint64_t element_index(const GroupElement& g) const {
        std::uint64_t p = F_.p();
        if (g.m[0] == 1) return (static_cast<std::uint64_t>(g.m[1]) * p + g.m[2]) * p + g.m[3];
        return p * p * p + static_cast<std::uint64_t>(g.m[2]) * p + g.m[3];
    }

    Fp inv(Fp x) const { return inv_table_[x]; }
    bool nonzero_square(Fp x) const { return square_table_[x] != 0; }

    ElementType classify(const GroupElement& g) const {
        if (g == identity_element()) return ElementType::identity;
        Fp tr = trace_of(F_, g);
        Fp disc = F_.sub(F_.mul(tr, tr), F_.mul(F_.from_int(4), det_of(F_, g)));
        if (disc == 0) return ElementType::parabolic;
        return square_table_[disc] ? ElementType::hyperbolic : ElementType::elliptic;
    }

    bool in_psl(const GroupElement& g) const { return square_table_[det_of(F_, g)] != 0; }

    ClassKey class_key(const GroupElement& g) const {
        if (g == identity_element()) return identity_key();
        Fp tr = trace_of(F_, g);
        if (tr == 0) return involution_key(in_psl(g));
        Fp j = F_.mul(F_.mul(tr, tr), inv_table_[det_of(F_, g)]);
        if (j == F_.from_int(4)) return parabolic_key();
        return generic_key(j);
    }

    std::uint32_t element_order(const GroupElement& g) const {
        std::uint32_t p = F_.p();
        switch (classify(g)) {
            case ElementType::identity: return 1;
            case ElementType::parabolic: return p;  // order divides the prime p and g != 1
            case ElementType::hyperbolic: return order_from_bound(g, p - 1, fact_pm1_);
            case ElementType::elliptic: return order_from_bound(g, p + 1, fact_pp1_);
        }
        return 0;
    }

    // Visits each canonical element exactly once, in element_index order.
    template <class Fn>
    void for_each_element(Fn&& fn) const {
        const Fp p = F_.p();
        GroupElement g;
        g.m[0] = 1;
        for (Fp b = 0; b < p; ++b)
            for (Fp c = 0; c < p; ++c) {
                Fp bc = F_.mul(b, c);
                for (Fp d = 0; d < p; ++d) {
                    if (d == bc) continue;  // det = 0
                    g.m[1] = b;
                    g.m[2] = c;
                    g.m[3] = d;
                    fn(g);
                }
            }
        g.m[0] = 0;
        g.m[1] = 1;
        for (Fp c = 1; c < p; ++c)
            for (Fp d = 0; d < p; ++d) {
                g.m[2] = c;
                g.m[3] = d;
                fn(g);
            }
    }

    GroupElement find_element_of_order(std::uint32_t n) const {
        GroupElement found;
        bool ok = false;
        for_each_element([&](const GroupElement& g) {
            if (!ok && element_order(g) == n) {
                found = g;
                ok = true;
            }
        });
        if (!ok)
            throw validation_error("PGL2(" + std::to_string(p()) + ") has no element of order " +
                                   std::to_string(n));
        return found;
    }

    GroupElement find_class_representative(const ClassKey& key) const {
        GroupElement found;
        bool ok = false;
        for_each_element([&](const GroupElement& g) {
            if (!ok && class_key(g) == key) {
                found = g;
                ok = true;
            }
        });
        if (!ok)
            throw validation_error("PGL2(" + std::to_string(p()) + ") has no class " + to_string(key));
        return found;
    }

private:
    static std::vector<std::pair<std::uint32_t, std::uint32_t>> factor_small(std::uint32_t n) {
        std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
        for (std::uint32_t d = 2; d * d <= n; ++d) {
            if (n % d) continue;
            std::uint32_t e = 0;
            while (n % d == 0) { n /= d; ++e; }
            out.emplace_back(d, e);
        }
        if (n > 1) out.emplace_back(n, 1);
        return out;
    }

    std::uint32_t order_from_bound(const GroupElement& g, std::uint32_t bound,
                                   const std::vector<std::pair<std::uint32_t, std::uint32_t>>& facts) const {
        std::uint32_t n = bound;
        for (auto [q, e] : facts)
            while (n % q == 0 && power(F_, g, n / q) == identity_element()) n /= q;
        return n;
    }

    FieldContext F_;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> fact_pm1_, fact_pp1_;
    std::vector<Fp> inv_table_;
    std::vector<std::uint8_t> square_table_;
};

struct ClassInfo {
    ClassKey key;
    ElementType type = ElementType::identity;  // shared by all members
    std::uint32_t element_order = 0;
    std::uint64_t size = 0;
    GroupElement representative;  // smallest element_index in the class
};

// Complete list of conjugacy classes, built by one pass over the group.
// Order: identity, parabolic, involutions (non-PSL class first), hyperbolic
// generic classes by j, elliptic generic classes by j. Also records the class
// index of every element, indexed by element_index.
class ClassCensus {
public:
    static ClassCensus build(const Group& G) {
        ClassCensus out;
        std::map<ClassKey, std::size_t> seen;
        std::vector<std::uint16_t> tmp_class(G.index_space(), 0xffff);
        G.for_each_element([&](const GroupElement& g) {
            ClassKey key = G.class_key(g);
            auto [it, fresh] = seen.try_emplace(key, out.classes_.size());
            if (fresh) {
                ClassInfo info;
                info.key = key;
                info.type = G.classify(g);
                info.element_order = G.element_order(g);
                info.size = 0;
                info.representative = g;  // first visit = smallest index
                out.classes_.push_back(info);
            }
            out.classes_[it->second].size += 1;
            tmp_class[G.element_index(g)] = static_cast<std::uint16_t>(it->second);
        });

        std::vector<std::size_t> perm(out.classes_.size());
        for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
        auto rank = [](const ClassInfo& c) {
            switch (c.key.tag) {
                case ClassKey::Tag::identity: return 0;
                case ClassKey::Tag::parabolic: return 1;
                case ClassKey::Tag::involution: return 2;
                case ClassKey::Tag::generic: return c.type == ElementType::hyperbolic ? 3 : 4;
            }
            return 5;
        };
        std::sort(perm.begin(), perm.end(), [&](std::size_t x, std::size_t y) {
            const ClassInfo &a = out.classes_[x], &b = out.classes_[y];
            if (rank(a) != rank(b)) return rank(a) < rank(b);
            if (a.key.det_square != b.key.det_square) return !a.key.det_square;
            return a.key.j < b.key.j;
        });
        std::vector<std::uint16_t> new_pos(perm.size());
        std::vector<ClassInfo> sorted(perm.size());
        for (std::size_t i = 0; i < perm.size(); ++i) {
            sorted[i] = out.classes_[perm[i]];
            new_pos[perm[i]] = static_cast<std::uint16_t>(i);
        }
        out.classes_ = std::move(sorted);
        for (auto& c : tmp_class)
            if (c != 0xffff) c = new_pos[c];
        out.element_class_ = std::move(tmp_class);
        for (std::size_t i = 0; i < out.classes_.size(); ++i) out.by_key_[out.classes_[i].key] = i;
        return out;
    }

    const std::vector<ClassInfo>& classes() const { return classes_; }
    std::size_t size() const { return classes_.size(); }

    std::size_t index_of(const ClassKey& key) const {
        auto it = by_key_.find(key);
        if (it == by_key_.end()) throw validation_error("unknown class key " + to_string(key));
        return it->second;
    }

    const ClassInfo& info(const ClassKey& key) const { return classes_[index_of(key)]; }

    std::uint16_t class_of_element_index(std::uint64_t element_index) const {
        return element_class_[element_index];
    }

private:
    std::vector<ClassInfo> classes_;
    std::map<ClassKey, std::size_t> by_key_;
    std::vector<std::uint16_t> element_class_;
};

}  // namespace beauville
