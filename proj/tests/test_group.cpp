#include <gtest/gtest.h>

#include "support.hpp"

using namespace rtrace;
using rtrace::test::vec;
using rtrace::test::word;

TEST(ReduceWord, CancelsAdjacentInverse) {
    const auto d = GroupDescriptor::free(2);
    EXPECT_TRUE(reduce_word(Word{1, -1}, d).is_identity());
    EXPECT_TRUE(reduce_word(Word{1, 2, -2, -1}, d).is_identity());
    const auto w = reduce_word(Word{1, 2, -1}, d);
    EXPECT_EQ(w.word(), (Word{1, 2, -1}));
    EXPECT_EQ(w.str(), "x1 x2 X1");
}

TEST(ReduceWord, RejectsOutOfRangeGenerator) {
    const auto d = GroupDescriptor::free(2);
    EXPECT_THROW(reduce_word(Word{1, 3}, d), IndexOutOfRange);
    EXPECT_THROW(reduce_word(Word{0}, d), IndexOutOfRange);
    EXPECT_THROW(GroupDescriptor::free(0), IndexOutOfRange);
}

TEST(GroupMul, Examples) {
    EXPECT_TRUE(group_mul(word(1, {1}), word(1, {-1})).is_identity());
    EXPECT_EQ(group_mul(vec({1, 2}), vec({3, -1})), vec({4, 1}));
    EXPECT_EQ(group_mul(word(3, {1, 2}), word(3, {-2, 3})), word(3, {1, 3}));
}

TEST(GroupMul, DescriptorMismatch) {
    EXPECT_THROW(group_mul(word(2, {1}), word(3, {1})), DescriptorMismatch);
    EXPECT_THROW(group_mul(word(1, {1}), vec({1})), DescriptorMismatch);
}

TEST(GroupInv, Examples) {
    const auto e = GroupElement::identity(GroupDescriptor::free(2));
    EXPECT_EQ(group_inv(e), e);
    EXPECT_EQ(group_inv(word(2, {1, 2})), word(2, {-2, -1}));
    EXPECT_EQ(group_inv(vec({2, -3})), vec({-2, 3}));
}

TEST(HomApply, Examples) {
    const auto d = GroupDescriptor::free(2);
    const auto g = word(2, {1, -2, 1});
    EXPECT_EQ(hom_apply(Homomorphism::identity(d), g), g);

    const auto deg2 = Homomorphism::from_matrix(IntMatrix{{2}});
    EXPECT_EQ(hom_apply(deg2, vec({1})), vec({2}));

    // x -> xy, y -> x sends xy to (xy)(x).
    const auto h = rtrace::test::free_endo(2, {word(2, {1, 2}), word(2, {1})});
    EXPECT_EQ(hom_apply(h, word(2, {1, 2})), word(2, {1, 2, 1}));
    EXPECT_THROW(hom_apply(h, vec({1, 0})), DescriptorMismatch);
}

TEST(HomApply, AbelianMatrixColumnsAreImages) {
    const auto h = rtrace::test::free_endo(2, {word(2, {1, 2, 2}), word(2, {-1})});
    EXPECT_EQ(h.abelian_matrix(), (IntMatrix{{1, -1}, {2, 0}}));
}

TEST(Ordering, LengthLexOnWords) {
    EXPECT_LT(word(2, {}), word(2, {2}));
    EXPECT_LT(word(2, {1}), word(2, {-1}));
    EXPECT_LT(word(2, {-1}), word(2, {2}));
    EXPECT_LT(word(2, {2}), word(2, {1, 1}));
    EXPECT_LT(vec({-1, 5}), vec({0, 0}));
}

TEST(GroupProperties, RandomWords) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        const int rank = 1 + trial % 3;
        const auto d = GroupDescriptor::free(rank);
        Word w = rtrace::test::random_letters(rng, rank, 12);
        Word ww = w;
        for (auto it = w.rbegin(); it != w.rend(); ++it) ww.push_back(-*it);
        EXPECT_TRUE(reduce_word(ww, d).is_identity());

        const auto a = rtrace::test::random_word(rng, rank, 8);
        const auto b = rtrace::test::random_word(rng, rank, 8);
        const auto c = rtrace::test::random_word(rng, rank, 8);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_TRUE((a * a.inverse()).is_identity());
        EXPECT_EQ(a * GroupElement::identity(d), a);
        for (std::size_t i = 1; i < a.word().size(); ++i)
            EXPECT_NE(a.word()[i], -a.word()[i - 1]);

        std::vector<GroupElement> imgs;
        for (int i = 0; i < rank; ++i) imgs.push_back(rtrace::test::random_word(rng, rank, 4));
        const auto h = rtrace::test::free_endo(rank, imgs);
        EXPECT_EQ(h(a * b), h(a) * h(b));
    }
}

TEST(GroupProperties, RandomVectors) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 200; ++trial) {
        const int rank = 1 + trial % 4;
        const auto a = rtrace::test::random_vector(rng, rank, 20);
        const auto b = rtrace::test::random_vector(rng, rank, 20);
        const auto c = rtrace::test::random_vector(rng, rank, 20);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_TRUE((a * a.inverse()).is_identity());
        const auto h = Homomorphism::from_matrix(
            rtrace::test::random_matrix(rng, static_cast<std::size_t>(rank),
                                        static_cast<std::size_t>(rank), 5));
        EXPECT_EQ(h(a * b), h(a) * h(b));
    }
}

TEST(Serialization, Formats) {
    EXPECT_EQ(word(3, {1, -2, 3}).str(), "x1 X2 x3");
    EXPECT_EQ(GroupElement::identity(GroupDescriptor::free(2)).str(), "e");
    EXPECT_EQ(vec({1, -2, 0}).str(), "(1,-2,0)");
}
