#pragma once

// Class algebra of PGL2(p): structure constants, a numeric character table
// obtained by simultaneous diagonalization of the class multiplication
// matrices, and triple counting through the Frobenius formula.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "beauville/errors.hpp"
#include "beauville/parallel.hpp"
#include "beauville/pgl2.hpp"

namespace beauville {

// a(A,B,C) = #{(x,y) in A x B : xy = z_C} for a fixed representative z_C.
// These are the coefficients of K_A K_B = sum_C a(A,B,C) K_C in the center of
// the group algebra. Counted as #{x in A : x^-1 z_C in B}, one group pass per
// class C.
struct StructureConstants {
    std::size_t n = 0;
    std::vector<std::int64_t> a;

    std::int64_t at(std::size_t A, std::size_t B, std::size_t C) const {
        return a[(A * n + B) * n + C];
    }

    static StructureConstants build(const Group& G, const ClassCensus& census,
                                    unsigned threads = 0) {
        StructureConstants out;
        out.n = census.size();
        out.a.assign(out.n * out.n * out.n, 0);
        const FieldContext& F = G.field();
        unsigned workers = detail::resolve_threads(threads);
        detail::parallel_chunks(out.n, workers, [&](unsigned, std::size_t lo, std::size_t hi) {
            for (std::size_t C = lo; C < hi; ++C) {
                const GroupElement z = census.classes()[C].representative;
                G.for_each_element([&](const GroupElement& x) {
                    std::size_t A = census.class_of_element_index(G.element_index(x));
                    GroupElement y = multiply(F, invert(F, x), z);
                    std::size_t B = census.class_of_element_index(G.element_index(y));
                    ++out.a[(A * out.n + B) * out.n + C];
                });
            }
        });
        return out;
    }
};

struct CharacterTable {
    struct Residuals {
        double orthogonality = 0;  // worst row/column deviation, relative to |G|
        double degree = 0;         // worst |raw degree - rounded degree|
        double imaginary = 0;      // worst |Im| seen among class matrix eigenvalues
    };

    std::uint32_t p = 0;
    std::uint64_t group_order = 0;
    std::vector<ClassInfo> classes;
    std::vector<std::int64_t> degrees;  // one per character, ascending
    Eigen::MatrixXd values;             // rows = characters, cols = classes
    Residuals residuals;

    std::size_t index_of(const ClassKey& key) const {
        for (std::size_t i = 0; i < classes.size(); ++i)
            if (classes[i].key == key) return i;
        throw validation_error("unknown class key " + to_string(key));
    }
};

namespace detail {

// Splits each basis block along the eigenspaces of M restricted to it.
// Eigenvalue clusters are rebuilt into orthonormal real bases through a
// rank-revealing QR of [Re V | Im V]; every class matrix is real and the
// common eigenvectors are real, so the imaginary parts only absorb numerical
// conjugate-pair noise.
inline void refine_blocks(std::vector<Eigen::MatrixXd>& blocks, const Eigen::MatrixXd& M,
                          double& worst_imag) {
    std::vector<Eigen::MatrixXd> next;
    next.reserve(blocks.size());
    for (const Eigen::MatrixXd& Q : blocks) {
        const Eigen::Index d = Q.cols();
        if (d == 1) {
            next.push_back(Q);
            continue;
        }
        Eigen::MatrixXd B = Q.transpose() * (M * Q);
        Eigen::EigenSolver<Eigen::MatrixXd> es(B);
        if (es.info() != Eigen::Success)
            throw verification_error("eigen decomposition of a class matrix failed");
        Eigen::VectorXcd ev = es.eigenvalues();
        Eigen::MatrixXcd V = es.eigenvectors();
        double scale = 0;
        for (Eigen::Index i = 0; i < d; ++i) {
            scale = std::max(scale, std::abs(ev[i]));
            worst_imag = std::max(worst_imag, std::abs(ev[i].imag()));
        }
        const double tol = 1e-6 * (1.0 + scale);
        std::vector<int> cluster(d, -1);
        int clusters = 0;
        for (Eigen::Index i = 0; i < d; ++i) {
            if (cluster[i] >= 0) continue;
            cluster[i] = clusters;
            for (Eigen::Index k = i + 1; k < d; ++k)
                if (cluster[k] < 0 && std::abs(ev[k] - ev[i]) < tol) cluster[k] = clusters;
            ++clusters;
        }
        if (clusters == 1) {  // M does not separate this block
            next.push_back(Q);
            continue;
        }
        Eigen::Index used = 0;
        for (int c = 0; c < clusters; ++c) {
            std::vector<Eigen::Index> cols;
            for (Eigen::Index i = 0; i < d; ++i)
                if (cluster[i] == c) cols.push_back(i);
            Eigen::MatrixXd span(d, 2 * static_cast<Eigen::Index>(cols.size()));
            for (std::size_t i = 0; i < cols.size(); ++i) {
                span.col(2 * i) = V.col(cols[i]).real();
                span.col(2 * i + 1) = V.col(cols[i]).imag();
            }
            Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(span);
            qr.setThreshold(1e-8);
            Eigen::Index rank = qr.rank();
            if (rank < 1 || rank > static_cast<Eigen::Index>(cols.size()))
                throw verification_error("eigenspace cluster has inconsistent rank");
            Eigen::MatrixXd basis =
                qr.householderQ() * Eigen::MatrixXd::Identity(d, rank);
            next.push_back(Q * basis);
            used += rank;
        }
        if (used != d) throw verification_error("eigenspace refinement lost dimensions");
    }
    blocks = std::move(next);
}

}  // namespace detail

// Burnside/Dixon: the central characters are the common right eigenvectors of
// the class matrices (N_A)_{BC} = a(A,B,C); degrees follow from the second
// orthogonality relation. Floating point throughout, with integer roundings
// and orthogonality residuals checked before the table is returned.
inline CharacterTable build_character_table(const Group& G, const ClassCensus& census,
                                            unsigned threads = 0) {
    const std::size_t n = census.size();
    StructureConstants sc = StructureConstants::build(G, census, threads);

    CharacterTable T;
    T.p = G.p();
    T.group_order = G.order();
    T.classes = census.classes();

    std::vector<Eigen::MatrixXd> blocks{Eigen::MatrixXd::Identity(n, n)};
    for (std::size_t A = 0; A < n; ++A) {
        bool done = true;
        for (const auto& Q : blocks)
            if (Q.cols() > 1) done = false;
        if (done) break;
        Eigen::MatrixXd N(n, n);
        for (std::size_t B = 0; B < n; ++B)
            for (std::size_t C = 0; C < n; ++C)
                N(B, C) = static_cast<double>(sc.at(A, B, C));
        detail::refine_blocks(blocks, N, T.residuals.imaginary);
    }
    if (blocks.size() != n)
        throw verification_error("class matrices separated " + std::to_string(blocks.size()) +
                                 " characters, expected " + std::to_string(n));

    const std::size_t id_idx = census.index_of(identity_key());
    const double order = static_cast<double>(G.order());
    std::vector<std::pair<std::int64_t, Eigen::VectorXd>> chars;
    for (const auto& Q : blocks) {
        Eigen::VectorXd v = Q.col(0);
        if (std::abs(v[id_idx]) < 1e-9)
            throw verification_error("central character vanishes on the identity class");
        v /= v[id_idx];
        double s = 0;
        for (std::size_t C = 0; C < n; ++C)
            s += v[C] * v[C] / static_cast<double>(T.classes[C].size);
        double raw_degree = std::sqrt(order / s);
        std::int64_t degree = std::llround(raw_degree);
        T.residuals.degree = std::max(T.residuals.degree, std::abs(raw_degree - degree));
        if (degree < 1 || std::abs(raw_degree - degree) > 1e-3)
            throw verification_error("character degree " + std::to_string(raw_degree) +
                                     " does not round to an integer");
        Eigen::VectorXd chi(n);
        for (std::size_t C = 0; C < n; ++C)
            chi[C] = degree * v[C] / static_cast<double>(T.classes[C].size);
        chars.emplace_back(degree, std::move(chi));
    }

    std::sort(chars.begin(), chars.end(), [](const auto& x, const auto& y) {
        if (x.first != y.first) return x.first < y.first;
        for (Eigen::Index i = 0; i < x.second.size(); ++i) {
            double a = std::round(x.second[i] * 1e6), b = std::round(y.second[i] * 1e6);
            if (a != b) return a < b;
        }
        return false;
    });

    T.values.resize(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        T.degrees.push_back(chars[i].first);
        T.values.row(i) = chars[i].second.transpose();
    }

    std::int64_t degree_sq = 0;
    for (std::int64_t d : T.degrees) degree_sq += d * d;
    if (degree_sq != static_cast<std::int64_t>(G.order()))
        throw verification_error("sum of squared degrees is " + std::to_string(degree_sq) +
                                 ", expected the group order");

    // Row orthogonality against |G| delta, column orthogonality against
    // |G|/|C| delta, both folded into one relative residual.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = i; k < n; ++k) {
            double r = 0;
            for (std::size_t C = 0; C < n; ++C)
                r += static_cast<double>(T.classes[C].size) * T.values(i, C) * T.values(k, C);
            double target = (i == k) ? order : 0.0;
            T.residuals.orthogonality =
                std::max(T.residuals.orthogonality, std::abs(r - target) / order);
        }
    for (std::size_t C = 0; C < n; ++C)
        for (std::size_t D = C; D < n; ++D) {
            double r = 0;
            for (std::size_t i = 0; i < n; ++i) r += T.values(i, C) * T.values(i, D);
            double target = (C == D) ? order / static_cast<double>(T.classes[C].size) : 0.0;
            T.residuals.orthogonality = std::max(
                T.residuals.orthogonality,
                std::abs(r - target) * static_cast<double>(T.classes[C].size) / order);
        }
    if (T.residuals.orthogonality > 1e-6)
        throw verification_error("character table orthogonality residual " +
                                 std::to_string(T.residuals.orthogonality) + " exceeds 1e-6");
    return T;
}

// Frobenius: #{(a,b,c) in A x B x C : abc = 1}
//          = (|A||B||C|/|G|) * sum_chi chi(A)chi(B)chi(C)/chi(1).
// All classes here are inverse-closed, so no conjugate values are needed.
inline std::int64_t frobenius_count(const CharacterTable& T, const ClassKey& A, const ClassKey& B,
                                    const ClassKey& C) {
    const std::size_t ia = T.index_of(A), ib = T.index_of(B), ic = T.index_of(C);
    double s = 0;
    for (std::size_t i = 0; i < T.degrees.size(); ++i)
        s += T.values(i, ia) * T.values(i, ib) * T.values(i, ic) /
             static_cast<double>(T.degrees[i]);
    double scale = static_cast<double>(T.classes[ia].size) *
                   static_cast<double>(T.classes[ib].size) *
                   static_cast<double>(T.classes[ic].size) /
                   static_cast<double>(T.group_order);
    double raw = scale * s;
    std::int64_t rounded = std::llround(raw);
    if (std::abs(raw - static_cast<double>(rounded)) > 1e-4)
        throw verification_error("Frobenius count " + std::to_string(raw) +
                                 " has rounding residual above 1e-4");
    return rounded;
}

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    bool operator==(const Rational&) const = default;
};

inline Rational make_rational(std::int64_t num, std::int64_t den) {
    std::int64_t g = std::gcd(num, den);
    if (g) { num /= g; den /= g; }
    return Rational{num, den};
}

// Counts (2,3,n)- resp. (2,4,n)-triples with c in each order-n class through
// the character table and reports the common count / |G| ratio. The involution
// class is forced by parity: the product of the three cosets of the index-2
// subgroup must be trivial.
inline Rational count_ratio_diagnostic(const Group& G, const ClassCensus& census,
                                       const CharacterTable& T, std::uint32_t n) {
    const std::uint32_t p = G.p();
    std::uint32_t mid;
    if (n > 2 && (p - 1) % n == 0) mid = 3;
    else if (n > 2 && (p + 1) % n == 0) mid = 4;
    else throw validation_error("order " + std::to_string(n) + " does not divide p-1 or p+1");

    const ClassInfo* b_class = nullptr;
    for (const ClassInfo& c : census.classes()) {
        if (c.element_order != mid) continue;
        if (b_class) throw validation_error("middle order is not a single class");
        b_class = &c;
    }
    if (!b_class) throw validation_error("no class of order " + std::to_string(mid));
    const bool b_psl = G.in_psl(b_class->representative);

    bool have = false;
    Rational ratio;
    for (const ClassInfo& c : census.classes()) {
        if (c.element_order != n || c.key.tag != ClassKey::Tag::generic) continue;
        ClassKey a_key = involution_key(b_psl == G.in_psl(c.representative));
        std::int64_t count = frobenius_count(T, a_key, b_class->key, c.key);
        Rational r = make_rational(count, static_cast<std::int64_t>(G.order()));
        if (!have) { ratio = r; have = true; }
        else if (!(r == ratio))
            throw verification_error("order-" + std::to_string(n) +
                                     " classes disagree on the count ratio");
    }
    if (!have) throw validation_error("no order-" + std::to_string(n) + " classes");
    return ratio;
}

}  // namespace beauville
