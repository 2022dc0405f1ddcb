#pragma once

#include <compare>
#include <cstddef>
#include <cstdlib>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rtrace/errors.hpp"
#include "rtrace/integer.hpp"

namespace rtrace {

enum class GroupKind { Free, FreeAbelian };

struct GroupDescriptor {
    GroupKind kind = GroupKind::Free;
    int rank = 1;

    static GroupDescriptor free(int rank) { return make(GroupKind::Free, rank); }
    static GroupDescriptor free_abelian(int rank) { return make(GroupKind::FreeAbelian, rank); }

    bool is_free() const noexcept { return kind == GroupKind::Free; }
    bool is_abelian() const noexcept { return kind == GroupKind::FreeAbelian; }

    std::string str() const {
        return (is_free() ? "F" : "Z^") + std::to_string(rank);
    }

    friend auto operator<=>(const GroupDescriptor&, const GroupDescriptor&) = default;

private:
    static GroupDescriptor make(GroupKind k, int rank) {
        if (rank < 1) throw IndexOutOfRange("group rank must be at least 1");
        return GroupDescriptor{k, rank};
    }
};

inline void require_same(const GroupDescriptor& a, const GroupDescriptor& b, const char* what) {
    if (a != b)
        throw DescriptorMismatch(std::string(what) + ": " + a.str() + " vs " + b.str());
}

/// Letter x_i is +i, its inverse is -i.
using Letter = int;
using Word = std::vector<Letter>;

namespace detail {

// Length-lex letter order: x1 < X1 < x2 < X2 < ...
inline int letter_key(Letter l) { return 2 * std::abs(l) + (l < 0 ? 1 : 0); }

// Appends `letters` to the freely reduced word `w`, cancelling at the seam.
inline void append_reduced(Word& w, std::span<const Letter> letters) {
    for (Letter l : letters) {
        if (!w.empty() && w.back() == -l)
            w.pop_back();
        else
            w.push_back(l);
    }
}

} // namespace detail

/// Element of a free group (reduced word) or of Z^n (integer vector).
/// Always stored in canonical form.
class GroupElement {
public:
    GroupElement() = default;

    static GroupElement identity(const GroupDescriptor& d) {
        GroupElement g;
        g.desc_ = d;
        if (d.is_abelian()) g.vec_.assign(static_cast<std::size_t>(d.rank), Integer(0));
        return g;
    }

    static GroupElement generator(const GroupDescriptor& d, Letter l) {
        if (d.is_free()) return from_letters(d, Word{l});
        if (l == 0 || std::abs(l) > d.rank) throw IndexOutOfRange("generator index out of range");
        GroupElement g = identity(d);
        g.vec_[static_cast<std::size_t>(std::abs(l) - 1)] = l > 0 ? 1 : -1;
        return g;
    }

    /// Freely reduces `letters` in the free group described by `d`.
    static GroupElement from_letters(const GroupDescriptor& d, std::span<const Letter> letters) {
        if (!d.is_free()) throw DescriptorMismatch("word given for a free abelian group");
        for (Letter l : letters)
            if (l == 0 || std::abs(l) > d.rank)
                throw IndexOutOfRange("generator index " + std::to_string(l) +
                                      " out of range for rank " + std::to_string(d.rank));
        GroupElement g;
        g.desc_ = d;
        detail::append_reduced(g.word_, letters);
        return g;
    }

    static GroupElement from_vector(const GroupDescriptor& d, IntVector v) {
        if (!d.is_abelian()) throw DescriptorMismatch("vector given for a free group");
        if (v.size() != static_cast<std::size_t>(d.rank))
            throw IndexOutOfRange("vector length " + std::to_string(v.size()) +
                                  " does not match rank " + std::to_string(d.rank));
        GroupElement g;
        g.desc_ = d;
        g.vec_ = std::move(v);
        return g;
    }

    const GroupDescriptor& descriptor() const noexcept { return desc_; }
    const Word& word() const noexcept { return word_; }
    const IntVector& vector() const noexcept { return vec_; }

    bool is_identity() const {
        if (desc_.is_free()) return word_.empty();
        for (const auto& c : vec_)
            if (c != 0) return false;
        return true;
    }

    /// Exponent-sum vector; the image under abelianization.
    IntVector exponent_sums() const {
        if (desc_.is_abelian()) return vec_;
        IntVector v(static_cast<std::size_t>(desc_.rank));
        for (Letter l : word_) v[static_cast<std::size_t>(std::abs(l) - 1)] += l > 0 ? 1 : -1;
        return v;
    }

    /// Words as `x1 X2 x3` (uppercase is inverse, `e` is the identity);
    /// vectors as `(a1,...,an)`.
    std::string str() const {
        if (desc_.is_abelian()) return vector_to_string(vec_);
        if (word_.empty()) return "e";
        std::string out;
        for (std::size_t i = 0; i < word_.size(); ++i) {
            if (i) out += ' ';
            out += word_[i] > 0 ? 'x' : 'X';
            out += std::to_string(std::abs(word_[i]));
        }
        return out;
    }

    friend GroupElement operator*(const GroupElement& a, const GroupElement& b) {
        require_same(a.desc_, b.desc_, "group_mul");
        GroupElement r = a;
        if (a.desc_.is_free()) {
            detail::append_reduced(r.word_, b.word_);
        } else {
            for (std::size_t i = 0; i < r.vec_.size(); ++i) r.vec_[i] += b.vec_[i];
        }
        return r;
    }

    GroupElement inverse() const {
        GroupElement r;
        r.desc_ = desc_;
        if (desc_.is_free()) {
            r.word_.assign(word_.rbegin(), word_.rend());
            for (auto& l : r.word_) l = -l;
        } else {
            r.vec_.reserve(vec_.size());
            for (const auto& c : vec_) r.vec_.push_back(-c);
        }
        return r;
    }

    friend bool operator==(const GroupElement& a, const GroupElement& b) {
        return a.desc_ == b.desc_ && a.word_ == b.word_ && a.vec_ == b.vec_;
    }

    /// Length-lex for words, lexicographic for vectors.
    friend std::strong_ordering operator<=>(const GroupElement& a, const GroupElement& b) {
        if (auto c = a.desc_ <=> b.desc_; c != 0) return c;
        if (a.desc_.is_free()) {
            if (a.word_.size() != b.word_.size()) return a.word_.size() <=> b.word_.size();
            for (std::size_t i = 0; i < a.word_.size(); ++i) {
                const int ka = detail::letter_key(a.word_[i]);
                const int kb = detail::letter_key(b.word_[i]);
                if (ka != kb) return ka <=> kb;
            }
            return std::strong_ordering::equal;
        }
        for (std::size_t i = 0; i < a.vec_.size(); ++i) {
            if (a.vec_[i] < b.vec_[i]) return std::strong_ordering::less;
            if (b.vec_[i] < a.vec_[i]) return std::strong_ordering::greater;
        }
        return std::strong_ordering::equal;
    }

private:
    GroupDescriptor desc_;
    Word word_;
    IntVector vec_;
};

inline GroupElement reduce_word(std::span<const Letter> letters, const GroupDescriptor& d) {
    return GroupElement::from_letters(d, letters);
}

inline GroupElement group_mul(const GroupElement& a, const GroupElement& b) { return a * b; }
inline GroupElement group_inv(const GroupElement& a) { return a.inverse(); }

/// Homomorphism determined by the images of the source generators.
/// Free abelian sources map only into free abelian targets.
class Homomorphism {
public:
    Homomorphism(GroupDescriptor source, GroupDescriptor target, std::vector<GroupElement> images)
        : source_(source), target_(target), images_(std::move(images)) {
        if (images_.size() != static_cast<std::size_t>(source_.rank))
            throw IndexOutOfRange("homomorphism needs one image per source generator");
        for (const auto& g : images_) require_same(g.descriptor(), target_, "homomorphism image");
        if (source_.is_abelian() && target_.is_free())
            throw DescriptorMismatch("homomorphisms from Z^n into a free group are not supported");
    }

    static Homomorphism identity(const GroupDescriptor& d) {
        std::vector<GroupElement> imgs;
        for (int i = 1; i <= d.rank; ++i) imgs.push_back(GroupElement::generator(d, i));
        return Homomorphism(d, d, std::move(imgs));
    }

    /// Z^k -> Z^n given by an n x k matrix (column j is the image of e_j).
    static Homomorphism from_matrix(const IntMatrix& m) {
        const auto src = GroupDescriptor::free_abelian(static_cast<int>(m.cols()));
        const auto dst = GroupDescriptor::free_abelian(static_cast<int>(m.rows()));
        std::vector<GroupElement> imgs;
        for (std::size_t j = 0; j < m.cols(); ++j)
            imgs.push_back(GroupElement::from_vector(dst, m.column(j)));
        return Homomorphism(src, dst, std::move(imgs));
    }

    const GroupDescriptor& source() const noexcept { return source_; }
    const GroupDescriptor& target() const noexcept { return target_; }
    const std::vector<GroupElement>& images() const noexcept { return images_; }
    const GroupElement& image(Letter generator) const {
        return images_[static_cast<std::size_t>(std::abs(generator) - 1)];
    }

    GroupElement operator()(const GroupElement& g) const {
        require_same(g.descriptor(), source_, "hom_apply");
        if (source_.is_abelian()) {
            IntVector out(static_cast<std::size_t>(target_.rank));
            for (std::size_t j = 0; j < g.vector().size(); ++j) {
                const Integer& k = g.vector()[j];
                if (k == 0) continue;
                const auto& img = images_[j].vector();
                for (std::size_t i = 0; i < out.size(); ++i) out[i] += k * img[i];
            }
            return GroupElement::from_vector(target_, std::move(out));
        }
        GroupElement out = GroupElement::identity(target_);
        for (Letter l : g.word()) {
            const auto& img = image(l);
            out = out * (l > 0 ? img : img.inverse());
        }
        return out;
    }

    /// Matrix of the induced map on abelianizations (target.rank x source.rank).
    IntMatrix abelian_matrix() const {
        IntMatrix m(static_cast<std::size_t>(target_.rank), static_cast<std::size_t>(source_.rank));
        for (std::size_t j = 0; j < images_.size(); ++j) {
            const IntVector v = images_[j].exponent_sums();
            for (std::size_t i = 0; i < v.size(); ++i) m(i, j) = v[i];
        }
        return m;
    }

    /// Composite `this` after `first`.
    Homomorphism after(const Homomorphism& first) const {
        require_same(first.target_, source_, "hom composition");
        std::vector<GroupElement> imgs;
        for (const auto& g : first.images_) imgs.push_back((*this)(g));
        return Homomorphism(first.source_, target_, std::move(imgs));
    }

    /// sigma -> a * h(sigma) * a^-1
    Homomorphism conjugated_by(const GroupElement& a) const {
        require_same(a.descriptor(), target_, "hom conjugation");
        std::vector<GroupElement> imgs;
        const GroupElement a_inv = a.inverse();
        for (const auto& g : images_) imgs.push_back(a * g * a_inv);
        return Homomorphism(source_, target_, std::move(imgs));
    }

    friend bool operator==(const Homomorphism&, const Homomorphism&) = default;

private:
    GroupDescriptor source_;
    GroupDescriptor target_;
    std::vector<GroupElement> images_;
};

inline GroupElement hom_apply(const Homomorphism& h, const GroupElement& g) { return h(g); }

} // namespace rtrace
