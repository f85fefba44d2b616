#pragma once

// Generating triples (a, b, c) with abc = 1 in PGL2(p): subgroup-generation
// testing, exhaustive enumeration by order type, the trace-parameter
// construction for (2, 3, k) triples, and canonical orbit representatives.

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "beauville/errors.hpp"
#include "beauville/parallel.hpp"
#include "beauville/pgl2.hpp"

namespace beauville {

struct GeneratingTriple {
    GroupElement a, b, c;               // abc = 1
    std::array<std::uint32_t, 3> type;  // (order a, order b, order c)
    ClassKey orbit_key;                 // conjugacy class of c

    bool operator==(const GeneratingTriple&) const = default;
};

// Image of a projective point under a group element. Points 0..p-1 are the
// affine points of the projective line, p stands for the point at infinity.
inline std::uint32_t apply_point(const Group& G, const GroupElement& g, std::uint32_t z) {
    const FieldContext& F = G.field();
    const std::uint32_t p = F.p();
    Fp num, den;
    if (z == p) {
        num = g.m[0];
        den = g.m[2];
    } else {
        num = F.add(F.mul(g.m[0], static_cast<Fp>(z)), g.m[1]);
        den = F.add(F.mul(g.m[2], static_cast<Fp>(z)), g.m[3]);
    }
    if (den == 0) return p;
    return F.mul(num, G.inv(den));
}

// Decides whether <a, b> is all of PGL2(p), by breadth-first closure in the
// action on ordered triples of distinct projective points. The action is
// sharply 3-transitive, so the orbit of the base frame (0, 1, oo) under
// <a, b> is in bijection with the subgroup: each state is h(0,1,oo) for a
// unique h. Walking the orbit with precomputed point maps costs a few array
// loads per step instead of a matrix product and canonicalization per step.
// The bijection premise (only the identity fixes the base frame) is verified
// against the group instance in the constructor.
class GenerationTester {
public:
    explicit GenerationTester(const Group& G) : G_(&G), np_(G.p() + 1) {
        std::uint64_t states = std::uint64_t(np_) * np_ * np_;
        if (states > (std::uint64_t(1) << 27))
            throw validation_error("generation testing is supported for p <= 511");
        stamp_.assign(states, 0);
        map_a_.resize(np_);
        map_b_.resize(np_);
        const std::uint32_t inf = G.p();
        std::uint64_t fixers = 0;
        G.for_each_element([&](const GroupElement& g) {
            if (apply_point(G, g, 0) == 0 && apply_point(G, g, 1) == 1 &&
                apply_point(G, g, inf) == inf)
                ++fixers;
        });
        if (fixers != 1)
            throw verification_error("base frame stabilizer is not trivial at p=" +
                                     std::to_string(G.p()));
    }

    // True iff <a, b> = PGL2(p). The subgroup order divides |G|, so a partial
    // closure exceeding |G|/2 already forces equality.
    bool generates(const GroupElement& a, const GroupElement& b) {
        const std::uint64_t half = G_->order() / 2;
        return orbit_size_bounded(a, b, half) > half;
    }

    std::uint64_t subgroup_order(const GroupElement& a, const GroupElement& b) {
        return orbit_size_bounded(a, b, ~std::uint64_t(0));
    }

private:
    struct Frame {
        std::uint32_t x, y, z;
    };

    std::uint64_t encode(Frame f) const {
        return (std::uint64_t(f.x) * np_ + f.y) * np_ + f.z;
    }

    void build_map(const GroupElement& g, std::vector<std::uint32_t>& map) const {
        for (std::uint32_t z = 0; z <= G_->p(); ++z) map[z] = apply_point(*G_, g, z);
    }

    // Counts orbit states, stopping as soon as the count exceeds stop_after.
    std::uint64_t orbit_size_bounded(const GroupElement& a, const GroupElement& b,
                                     std::uint64_t stop_after) {
        build_map(a, map_a_);
        build_map(b, map_b_);
        if (++epoch_ == 0) {  // stamp reuse instead of clearing the array per call
            std::fill(stamp_.begin(), stamp_.end(), 0);
            epoch_ = 1;
        }
        Frame base{0, 1, G_->p()};
        stack_.clear();
        stack_.push_back(base);
        stamp_[encode(base)] = epoch_;
        std::uint64_t count = 1;
        if (count > stop_after) return count;
        while (!stack_.empty()) {
            Frame f = stack_.back();
            stack_.pop_back();
            Frame ta{map_a_[f.x], map_a_[f.y], map_a_[f.z]};
            std::uint32_t& sa = stamp_[encode(ta)];
            if (sa != epoch_) {
                sa = epoch_;
                if (++count > stop_after) return count;
                stack_.push_back(ta);
            }
            Frame tb{map_b_[f.x], map_b_[f.y], map_b_[f.z]};
            std::uint32_t& sb = stamp_[encode(tb)];
            if (sb != epoch_) {
                sb = epoch_;
                if (++count > stop_after) return count;
                stack_.push_back(tb);
            }
        }
        return count;
    }

    const Group* G_;
    std::uint32_t np_;
    std::uint32_t epoch_ = 0;
    std::vector<std::uint32_t> stamp_, map_a_, map_b_;
    std::vector<Frame> stack_;
};

inline bool generates_group(const Group& G, const GroupElement& a, const GroupElement& b) {
    GenerationTester tester(G);
    return tester.generates(a, b);
}

inline std::uint64_t generated_subgroup_order(const Group& G, const GroupElement& a,
                                              const GroupElement& b) {
    GenerationTester tester(G);
    return tester.subgroup_order(a, b);
}

// Reference subgroup closure by plain multiplication over canonical forms.
// Far slower than GenerationTester; kept as an independent cross-check.
inline std::uint64_t generated_subgroup_order_by_products(const Group& G, const GroupElement& a,
                                                          const GroupElement& b) {
    const FieldContext& F = G.field();
    std::set<std::uint64_t> seen;
    std::vector<GroupElement> frontier;
    auto add = [&](const GroupElement& g) {
        if (seen.insert(G.element_index(g)).second) frontier.push_back(g);
    };
    add(identity_element());
    while (!frontier.empty()) {
        GroupElement g = frontier.back();
        frontier.pop_back();
        add(multiply(F, g, a));
        add(multiply(F, g, b));
    }
    return seen.size();
}

struct TripleEnumeration {
    std::vector<GeneratingTriple> triples;
    std::string diagnostic;  // nonempty iff the order type cannot occur in the group
};

namespace detail {

// Element orders exist for n | p-1, n = p, or n | p+1 only.
inline bool order_is_admissible(std::uint32_t p, std::uint32_t n) {
    return n == 1 || n == p || (n <= p - 1 && (p - 1) % n == 0) ||
           (n <= p + 1 && (p + 1) % n == 0);
}

inline TripleEnumeration enumerate_triples_kernel(const Group& G,
                                                  std::array<std::uint32_t, 3> type,
                                                  const std::optional<ClassKey>& orbit_key,
                                                  const std::optional<ClassKey>& a_key,
                                                  unsigned threads) {
    TripleEnumeration out;
    const std::uint32_t p = G.p();
    for (std::uint32_t n : type) {
        if (n == 0) throw validation_error("triple type entries must be positive");
        if (!order_is_admissible(p, n)) {
            out.diagnostic = "no elements of order " + std::to_string(n) + " in PGL2(" +
                             std::to_string(p) + "): the order divides neither p-1 nor p+1 and is not p";
            return out;
        }
    }

    // One pass over the group collects the candidate a- and b-lists in index
    // order and the order of every generic class, so each candidate c below
    // costs a class key plus one table lookup instead of an order computation.
    std::vector<GroupElement> list_a, list_b;
    std::vector<std::uint32_t> generic_order(p, 0);
    G.for_each_element([&](const GroupElement& g) {
        std::uint32_t n = G.element_order(g);
        ClassKey k = G.class_key(g);
        if (n == type[0] && (!a_key || k == *a_key)) list_a.push_back(g);
        if (n == type[1]) list_b.push_back(g);
        if (k.tag == ClassKey::Tag::generic) generic_order[k.j] = n;
    });

    auto order_of_key = [&](const ClassKey& k) -> std::uint32_t {
        switch (k.tag) {
            case ClassKey::Tag::identity: return 1;
            case ClassKey::Tag::parabolic: return p;
            case ClassKey::Tag::involution: return 2;
            default: return generic_order[k.j];
        }
    };

    unsigned workers = resolve_threads(threads);
    std::vector<std::vector<GeneratingTriple>> buckets(workers);
    parallel_chunks(list_a.size(), workers, [&](unsigned w, std::size_t lo, std::size_t hi) {
        if (lo == hi) return;
        GenerationTester tester(G);
        const FieldContext& F = G.field();
        auto& found = buckets[w];
        for (std::size_t i = lo; i < hi; ++i) {
            const GroupElement& a = list_a[i];
            for (const GroupElement& b : list_b) {
                GroupElement c = invert(F, multiply(F, a, b));
                ClassKey k = G.class_key(c);
                if (orbit_key && !(k == *orbit_key)) continue;
                if (order_of_key(k) != type[2]) continue;
                if (!tester.generates(a, b)) continue;
                found.push_back(GeneratingTriple{a, b, c, type, k});
            }
        }
    });
    for (auto& bucket : buckets)
        out.triples.insert(out.triples.end(), bucket.begin(), bucket.end());
    return out;
}

}  // namespace detail

// Exhaustive enumeration of generating triples of the given order type,
// optionally restricted to triples whose c lies in a fixed conjugacy class.
// Deterministic: output follows the element index order of a, then b.
inline TripleEnumeration enumerate_triples_brute(const Group& G,
                                                 std::array<std::uint32_t, 3> type,
                                                 std::optional<ClassKey> orbit_key = std::nullopt,
                                                 unsigned threads = 0) {
    return detail::enumerate_triples_kernel(G, type, orbit_key, std::nullopt, threads);
}

// Number of generating (2, 4, l)-triples whose involution lies inside the
// index-2 subgroup and whose c lies in the given order-l class.
inline std::uint64_t count_second_triples(const Group& G, std::uint32_t l, ClassKey orbit_key,
                                          unsigned threads = 0) {
    GroupElement rep = G.find_class_representative(orbit_key);
    if (G.element_order(rep) != l)
        throw validation_error("orbit key does not name an order-" + std::to_string(l) + " class");
    TripleEnumeration e = detail::enumerate_triples_kernel(
        G, {2, 4, l}, orbit_key, involution_key(true), threads);
    if (!e.diagnostic.empty()) throw validation_error(e.diagnostic);
    return e.triples.size();
}

// Constructs all (2, 3, k)-triples with c in the given class without scanning
// the group for pairs: an explicit two-parameter family of triples through
// the diagonal involution is closed under conjugation. Requires k | p-1 with
// odd cofactor (so the class sits outside the index-2 subgroup) and k > 10.
inline std::vector<GeneratingTriple> enumerate_triples_parametric(const Group& G, std::uint32_t k,
                                                                  ClassKey orbit_key) {
    const FieldContext& F = G.field();
    const std::uint32_t p = G.p();
    if (k <= 10) throw validation_error("parametric enumeration requires k > 10");
    if ((p - 1) % k != 0) throw validation_error("k must divide p-1");
    if (((p - 1) / k) % 2 == 0) throw validation_error("(p-1)/k must be odd");
    if (p % 4 != 3) throw validation_error("construction requires p = 3 mod 4");
    GroupElement rep = G.find_class_representative(orbit_key);
    if (G.element_order(rep) != k)
        throw validation_error("orbit key does not name an order-" + std::to_string(k) + " class");
    if (orbit_key.tag != ClassKey::Tag::generic)
        throw validation_error("orbit key must be a split semisimple class");

    // For c of trace invariant j in the target class, a representative triple
    // through a1 = diag(1, -1) has b = [[a, b], [c, d]] with a + d = 1,
    // ad - bc = 1 and (ab)^-1 in the class; the constraint reduces to
    // (2a - 1)^2 = -j, solvable since -j is a square here.
    const Fp j = orbit_key.j;
    Fp t = F.pow(F.neg(j), (p + 1) / 4);
    if (F.mul(t, t) != F.neg(j))
        throw verification_error("-j is not a square; class is incompatible with the construction");
    if (F.mul(t, t) == F.from_int(-3))
        throw verification_error("degenerate parameter: the triple would fix a point");

    GroupElement a1 = make_element(F, 1, 0, 0, -1);
    const Fp half = G.inv(2);
    std::vector<GeneratingTriple> locals;
    for (int sign = 0; sign < 2; ++sign) {
        Fp aa = F.mul(sign ? F.sub(1, t) : F.add(1, t), half);
        Fp dd = F.sub(1, aa);
        for (Fp bb = 1; bb < p; ++bb) {
            Fp cc = F.mul(F.sub(F.mul(aa, dd), 1), G.inv(bb));
            GroupElement b = canonicalize(F, {aa, bb, cc, dd});
            GroupElement c = invert(F, multiply(F, a1, b));
            if (G.element_order(b) != 3 || !(G.class_key(c) == orbit_key))
                throw verification_error("parameter family member fails its order constraints");
            locals.push_back(GeneratingTriple{a1, b, c, {2, 3, k}, orbit_key});
        }
    }
    if (locals.size() != 2 * std::size_t(p - 1))
        throw verification_error("parameter family has unexpected size");

    // Close the family under conjugation. The set keys are element index
    // triples, so insertion order does not affect the final sorted output.
    std::set<std::array<std::uint64_t, 3>> seen;
    std::vector<std::pair<std::array<std::uint64_t, 3>, GeneratingTriple>> found;
    G.for_each_element([&](const GroupElement& g) {
        GroupElement gi = invert(F, g);
        for (const GeneratingTriple& t0 : locals) {
            GroupElement ca = multiply(F, multiply(F, g, t0.a), gi);
            GroupElement cb = multiply(F, multiply(F, g, t0.b), gi);
            GroupElement cc = multiply(F, multiply(F, g, t0.c), gi);
            std::array<std::uint64_t, 3> key{G.element_index(ca), G.element_index(cb),
                                             G.element_index(cc)};
            if (seen.insert(key).second)
                found.emplace_back(key, GeneratingTriple{ca, cb, cc, t0.type, orbit_key});
        }
    });
    if (found.size() != G.order())
        throw verification_error("conjugation closure has size " + std::to_string(found.size()) +
                                 ", expected the group order " + std::to_string(G.order()));
    std::sort(found.begin(), found.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<GeneratingTriple> out;
    out.reserve(found.size());
    for (auto& entry : found) out.push_back(entry.second);
    return out;
}

// One generating triple per conjugacy class of order-n elements, for triples
// of type (2, m, n). With normalized set, every representative uses the same
// base element c0 raised to the class exponents r (coprime to n, up to
// inversion, ascending); otherwise c is each class's canonical representative.
inline std::vector<GeneratingTriple> orbit_representatives(const Group& G,
                                                           std::array<std::uint32_t, 3> type,
                                                           bool normalized = true) {
    const FieldContext& F = G.field();
    if (type[0] != 2) throw validation_error("representative search expects an involution first entry");
    for (std::uint32_t n : type)
        if (!detail::order_is_admissible(G.p(), n))
            throw validation_error("no elements of order " + std::to_string(n) + " in the group");
    const std::uint32_t n = type[2];

    GroupElement c0 = G.find_element_of_order(n);
    std::vector<GroupElement> involutions;
    G.for_each_element([&](const GroupElement& g) {
        if (!(g == identity_element()) && trace_of(F, g) == 0) involutions.push_back(g);
    });

    GenerationTester tester(G);
    std::vector<GeneratingTriple> out;
    for (std::uint32_t r = 1; r <= n / 2; ++r) {
        if (std::gcd(r, n) != 1) continue;
        GroupElement cr = power(F, c0, r);
        GroupElement c = normalized ? cr : G.find_class_representative(G.class_key(cr));
        GroupElement ci = invert(F, c);
        bool accepted = false;
        for (const GroupElement& a : involutions) {
            GroupElement b = multiply(F, a, ci);
            if (G.element_order(b) != type[1]) continue;
            if (!tester.generates(a, b)) continue;
            out.push_back(GeneratingTriple{a, b, c, type, G.class_key(c)});
            accepted = true;
            break;
        }
        if (!accepted)
            throw verification_error("no generating triple found for exponent " + std::to_string(r));
    }
    return out;
}

// The triple of the complex conjugate surface: (a^-1, a b^-1 a^-1, c^-1).
inline GeneratingTriple complex_conjugate_triple(const Group& G, const GeneratingTriple& t) {
    const FieldContext& F = G.field();
    GeneratingTriple out;
    out.a = invert(F, t.a);
    out.b = multiply(F, multiply(F, t.a, invert(F, t.b)), invert(F, t.a));
    out.c = invert(F, t.c);
    out.type = t.type;
    out.orbit_key = G.class_key(out.c);
    if (!(multiply(F, multiply(F, out.a, out.b), out.c) == identity_element()))
        throw verification_error("conjugate triple product is not the identity");
    if (!(out.orbit_key == t.orbit_key))
        throw verification_error("conjugate triple left its orbit class");
    return out;
}

}  // namespace beauville
