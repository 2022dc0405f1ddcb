#pragma once

#include <random>
#include <vector>

#include "rtrace/rtrace.hpp"

namespace rtrace::test {

inline GroupElement word(int rank, std::initializer_list<Letter> letters) {
    return GroupElement::from_letters(GroupDescriptor::free(rank), Word(letters));
}

inline GroupElement vec(std::initializer_list<long long> v) {
    IntVector out(v.begin(), v.end());
    return GroupElement::from_vector(GroupDescriptor::free_abelian(static_cast<int>(v.size())), out);
}

inline Homomorphism free_endo(int rank, std::vector<GroupElement> images) {
    const auto d = GroupDescriptor::free(rank);
    return Homomorphism(d, d, std::move(images));
}

/// Unreduced random letters; reduction is the caller's business.
inline Word random_letters(std::mt19937_64& rng, int rank, int max_len) {
    std::uniform_int_distribution<int> len(0, max_len);
    std::uniform_int_distribution<int> gen(1, rank);
    std::bernoulli_distribution inv(0.5);
    Word w(static_cast<std::size_t>(len(rng)));
    for (auto& l : w) l = inv(rng) ? -gen(rng) : gen(rng);
    return w;
}

inline GroupElement random_word(std::mt19937_64& rng, int rank, int max_len) {
    return GroupElement::from_letters(GroupDescriptor::free(rank), random_letters(rng, rank, max_len));
}

inline GroupElement random_vector(std::mt19937_64& rng, int rank, long long bound) {
    std::uniform_int_distribution<long long> e(-bound, bound);
    IntVector v(static_cast<std::size_t>(rank));
    for (auto& x : v) x = e(rng);
    return GroupElement::from_vector(GroupDescriptor::free_abelian(rank), v);
}

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                               long long bound) {
    std::uniform_int_distribution<long long> e(-bound, bound);
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = e(rng);
    return m;
}

inline GroupRingElement random_ring(std::mt19937_64& rng, int rank, int terms, int max_len) {
    std::uniform_int_distribution<int> coef(-3, 3);
    GroupRingElement r(GroupDescriptor::free(rank));
    for (int i = 0; i < terms; ++i) r.add_term(random_word(rng, rank, max_len), coef(rng));
    return r;
}

} // namespace rtrace::test
