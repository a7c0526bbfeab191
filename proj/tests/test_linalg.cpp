#include <doctest.h>

#include <numeric>
#include <random>
#include <set>

#include "kderiv/errors.hpp"
#include "kderiv/linalg.hpp"

using namespace kderiv;

namespace {

MatFq random_mat(std::mt19937& rng, int q, int r, int c) {
    std::uniform_int_distribution<int> d(0, q - 1);
    MatFq m(q, r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m.set(i, j, d(rng));
    return m;
}

// log_q of the image size, by evaluating M on every vector.
int brute_rank(const MatFq& m) {
    std::set<std::vector<int>> image;
    const int q = m.q(), c = m.cols();
    long long total = 1;
    for (int j = 0; j < c; ++j) total *= q;
    for (long long code = 0; code < total; ++code) {
        std::vector<int> v(c);
        long long x = code;
        for (int j = 0; j < c; ++j, x /= q) v[j] = static_cast<int>(x % q);
        std::vector<int> out(m.rows());
        for (int i = 0; i < m.rows(); ++i) {
            int s = 0;
            for (int j = 0; j < c; ++j) s += m.at(i, j) * v[j];
            out[i] = s % q;
        }
        image.insert(out);
    }
    int r = 0;
    for (std::size_t n = image.size(); n > 1; n /= q) ++r;
    return r;
}

long long det(std::vector<std::vector<long long>> a) {
    // Laplace expansion; matrices here are at most 3×3.
    const std::size_t n = a.size();
    if (n == 1) return a[0][0];
    long long s = 0;
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<std::vector<long long>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<long long> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c) row.push_back(a[r][k]);
            minor.push_back(row);
        }
        s += (c % 2 ? -1 : 1) * a[0][c] * det(minor);
    }
    return s;
}

// Invariant factors from determinantal divisors d_k = gcd of k×k minors.
std::vector<long long> determinantal_factors(const std::vector<std::vector<long long>>& m) {
    const int r = static_cast<int>(m.size()), c = static_cast<int>(m[0].size());
    std::vector<long long> dk{1};
    for (int k = 1; k <= std::min(r, c); ++k) {
        long long g = 0;
        for (int rs = 0; rs < (1 << r); ++rs) {
            if (__builtin_popcount(rs) != k) continue;
            for (int cs = 0; cs < (1 << c); ++cs) {
                if (__builtin_popcount(cs) != k) continue;
                std::vector<std::vector<long long>> sub;
                for (int i = 0; i < r; ++i) {
                    if (!(rs >> i & 1)) continue;
                    std::vector<long long> row;
                    for (int j = 0; j < c; ++j)
                        if (cs >> j & 1) row.push_back(m[i][j]);
                    sub.push_back(row);
                }
                g = std::gcd(g, std::llabs(det(sub)));
            }
        }
        if (g == 0) break;
        dk.push_back(g);
    }
    std::vector<long long> out;
    for (std::size_t k = 1; k < dk.size(); ++k) out.push_back(dk[k] / dk[k - 1]);
    return out;
}

std::vector<long long> as_ll(const std::vector<BigInt>& v) {
    std::vector<long long> out;
    for (const auto& x : v) out.push_back(static_cast<long long>(x));
    return out;
}

}  // namespace

TEST_CASE("rank, kernel, cokernel examples") {
    CHECK(rank(MatFq::identity(2, 2)) == 2);
    const MatFq parity(2, 1, 2, {1, 1});
    const MatFq k = kernel_basis(parity);
    REQUIRE(k.cols() == 1);
    CHECK(k.at(0, 0) == 1);
    CHECK(k.at(1, 0) == 1);
    const Cokernel ck = cokernel(MatFq::zero(2, 2, 1));
    CHECK(ck.dim == 2);
    CHECK(ck.projection == MatFq::identity(2, 2));
}

TEST_CASE("rank-nullity and cokernel properties") {
    std::mt19937 rng(7);
    for (int q : {2, 3}) {
        for (int t = 0; t < 200; ++t) {
            const int r = 1 + static_cast<int>(rng() % 4), c = 1 + static_cast<int>(rng() % (q == 2 ? 6 : 4));
            const MatFq m = random_mat(rng, q, r, c);
            const int rk = rank(m);
            CHECK(rk == brute_rank(m));
            const MatFq k = kernel_basis(m);
            CHECK(rk + k.cols() == c);
            if (k.cols() > 0) CHECK((m * k).is_zero());
            const Cokernel ck = cokernel(m);
            CHECK(ck.dim == r - rk);
            if (ck.dim > 0) {
                CHECK((ck.projection * m).is_zero());
                CHECK(rank(ck.projection) == ck.dim);
                CHECK(ck.projection * ck.section == MatFq::identity(q, ck.dim));
            }
        }
    }
}

TEST_CASE("inverse and GL counts") {
    // |GL_n(F_q)| = prod_{i<n} (q^n - q^i)
    for (int q : {2, 3})
        for (int n = 1; n <= (q == 2 ? 3 : 2); ++n) {
            long long expect = 1, qn = 1;
            for (int i = 0; i < n; ++i) qn *= q;
            for (long long qi = 1, i = 0; i < n; ++i, qi *= q) expect *= qn - qi;
            const auto gl = general_linear(q, n);
            CHECK(static_cast<long long>(gl.size()) == expect);
            for (const auto& g : gl) CHECK(g * inverse(g) == MatFq::identity(q, n));
        }
    CHECK(all_matrices(2, 2, 2).size() == 16);
}

TEST_CASE("solve") {
    std::mt19937 rng(11);
    for (int t = 0; t < 100; ++t) {
        const MatFq m = random_mat(rng, 2, 3, 3);
        const MatFq x0 = random_mat(rng, 2, 3, 1);
        MatFq x;
        REQUIRE(solve(m, m * x0, &x));
        CHECK(m * x == m * x0);
    }
}

TEST_CASE("non-prime modulus") {
    CHECK_FALSE(is_prime(4));
    CHECK_THROWS_AS(MatFq(4, 1, 1), InvalidArgument);
}

TEST_CASE("Smith normal form examples") {
    const auto a = smith_normal_form(MatZ(2, 2, {2, 4, 6, 8}));
    CHECK(as_ll(a.invariant_factors) == std::vector<long long>{2, 4});
    CHECK(as_ll(a.invariant_factors) == determinantal_factors({{2, 4}, {6, 8}}));
    const auto z = smith_normal_form(MatZ(2, 3));
    CHECK(z.invariant_factors.empty());
    CHECK(z.free_rank == 2);
    const auto i = smith_normal_form(MatZ(3, 3, {1, 0, 0, 0, 1, 0, 0, 0, 1}));
    CHECK(as_ll(i.invariant_factors) == std::vector<long long>{1, 1, 1});
    CHECK(i.free_rank == 0);
}

TEST_CASE("Smith normal form against determinantal divisors and unimodular moves") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> e(-6, 6);
    for (int t = 0; t < 150; ++t) {
        const int r = 1 + static_cast<int>(rng() % 3), c = 1 + static_cast<int>(rng() % 3);
        std::vector<std::vector<long long>> m(r, std::vector<long long>(c));
        std::vector<long long> flat;
        for (auto& row : m)
            for (auto& x : row) flat.push_back(x = e(rng));
        const auto s = smith_normal_form(MatZ(r, c, flat));
        const auto f = determinantal_factors(m);
        CHECK(as_ll(s.invariant_factors) == f);
        CHECK(s.rank == static_cast<int>(f.size()));
        CHECK(s.free_rank == r - s.rank);
        // Random row and column additions keep the factors.
        auto moved = m;
        for (int k = 0; k < 6; ++k) {
            const long long mult = e(rng);
            if (rng() % 2 && r > 1) {
                const int i = static_cast<int>(rng() % r), j = (i + 1) % r;
                for (int col = 0; col < c; ++col) moved[i][col] += mult * moved[j][col];
            } else if (c > 1) {
                const int i = static_cast<int>(rng() % c), j = (i + 1) % c;
                for (int row = 0; row < r; ++row) moved[row][i] += mult * moved[row][j];
            }
        }
        std::vector<long long> mf;
        for (auto& row : moved) mf.insert(mf.end(), row.begin(), row.end());
        CHECK(smith_normal_form(MatZ(r, c, mf)).invariant_factors == s.invariant_factors);
    }
}

TEST_CASE("relation cokernel coordinates") {
    // <a, b | 2a, a + 3b>: Z/6 with a = 3, b = 1 up to the chosen generator.
    const auto rc = relation_cokernel(MatZ(2, 2, {2, 0, 1, 3}));
    CHECK(as_ll(rc.torsion) == std::vector<long long>{6});
    CHECK(rc.free_rank == 0);
    REQUIRE(rc.coords.size() == 2);
    const BigInt a = rc.coords[0][0], b = rc.coords[1][0];
    CHECK((2 * a) % 6 == 0);
    CHECK((a + 3 * b) % 6 == 0);
    CHECK(std::gcd(static_cast<long long>(b), 6LL) == 1);
}
