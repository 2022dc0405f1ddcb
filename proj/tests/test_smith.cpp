#include <algorithm>
#include <numeric>

#include <gtest/gtest.h>

#include "support.hpp"

using namespace rtrace;

namespace {

// Leibniz expansion; independent of the Bareiss determinant.
Integer leibniz_det(const IntMatrix& m) {
    const std::size_t n = m.rows();
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    Integer total = 0;
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (p[i] > p[j]) ++inversions;
        Integer term = inversions % 2 ? -1 : 1;
        for (std::size_t i = 0; i < n; ++i) term *= m(i, p[i]);
        total += term;
    } while (std::next_permutation(p.begin(), p.end()));
    return total;
}

void choose(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
            std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i < n; ++i) {
        cur.push_back(i);
        choose(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

// gcd of all k x k minors: the k-th determinantal divisor, which equals
// d_1 * ... * d_k for the Smith form.
Integer determinantal_divisor(const IntMatrix& m, std::size_t k) {
    std::vector<std::vector<std::size_t>> rows, cols;
    std::vector<std::size_t> cur;
    choose(m.rows(), k, 0, cur, rows);
    choose(m.cols(), k, 0, cur, cols);
    Integer g = 0;
    for (const auto& r : rows)
        for (const auto& c : cols) {
            IntMatrix sub(k, k);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) sub(i, j) = m(r[i], c[j]);
            g = boost::multiprecision::gcd(g, leibniz_det(sub));
        }
    return g;
}

void check_smith(const IntMatrix& m) {
    const SmithForm s = smith_normal_form(m);
    ASSERT_EQ(s.U * m * s.V, s.D);
    EXPECT_EQ(s.U * s.U_inv, IntMatrix::identity(m.rows()));
    EXPECT_EQ(s.V * s.V_inv, IntMatrix::identity(m.cols()));
    EXPECT_EQ(abs(determinant(s.U)), 1);
    EXPECT_EQ(abs(determinant(s.V)), 1);
    for (std::size_t i = 0; i < s.D.rows(); ++i)
        for (std::size_t j = 0; j < s.D.cols(); ++j)
            if (i != j) EXPECT_EQ(s.D(i, j), 0);
    const std::size_t k = std::min(m.rows(), m.cols());
    for (std::size_t i = 0; i < k; ++i) {
        EXPECT_GE(s.diag(i), 0);
        if (i + 1 < k && s.diag(i) != 0) EXPECT_EQ(s.diag(i + 1) % s.diag(i), 0);
        if (s.diag(i) == 0 && i + 1 < k) EXPECT_EQ(s.diag(i + 1), 0);
    }
    Integer prod = 1;
    for (std::size_t i = 0; i < k; ++i) {
        prod *= s.diag(i);
        EXPECT_EQ(prod, determinantal_divisor(m, i + 1)) << m.str();
    }
    if (m.square()) EXPECT_EQ(abs(determinant(s.D)), abs(determinant(m)));
}

} // namespace

TEST(Determinant, MatchesLeibniz) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(trial % 4);
        const IntMatrix m = rtrace::test::random_matrix(rng, n, n, 6);
        EXPECT_EQ(determinant(m), leibniz_det(m)) << m.str();
    }
    EXPECT_EQ(determinant(IntMatrix{{0, 1}, {1, 0}}), -1);
    EXPECT_EQ(determinant(IntMatrix(0, 0)), 1);
}

TEST(SmithNormalForm, Examples) {
    EXPECT_EQ(smith_normal_form(IntMatrix::identity(2)).D, IntMatrix::identity(2));
    EXPECT_EQ(smith_normal_form(IntMatrix{{2, 0}, {0, 0}}).D, (IntMatrix{{2, 0}, {0, 0}}));
    // det [[2,1],[1,1]] = 1, so both invariant factors are 1.
    EXPECT_EQ(leibniz_det(IntMatrix{{2, 1}, {1, 1}}), 1);
    EXPECT_EQ(smith_normal_form(IntMatrix{{2, 1}, {1, 1}}).D, IntMatrix::identity(2));
    EXPECT_EQ(smith_normal_form(IntMatrix{{2, 0}, {0, 3}}).D, (IntMatrix{{1, 0}, {0, 6}}));
    EXPECT_EQ(smith_normal_form(IntMatrix{{-2}}).D, (IntMatrix{{2}}));
    check_smith(IntMatrix{{2, 1}, {1, 1}});
}

TEST(SmithNormalForm, DiagonalInputKeepsRowBasis) {
    const auto s = smith_normal_form(IntMatrix{{3, 0}, {0, -3}});
    EXPECT_EQ(s.U, IntMatrix::identity(2));
    EXPECT_EQ(s.D, (IntMatrix{{3, 0}, {0, 3}}));
}

TEST(SmithNormalForm, RandomSquareAndRectangular) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t r = 1 + static_cast<std::size_t>(trial % 4);
        const std::size_t c = 1 + static_cast<std::size_t>((trial / 4) % 4);
        check_smith(rtrace::test::random_matrix(rng, r, c, 9));
    }
}

TEST(SmithNormalForm, ZeroAndEmpty) {
    check_smith(IntMatrix(2, 3));
    const auto s = smith_normal_form(IntMatrix(0, 0));
    EXPECT_EQ(s.rank, 0u);
}
