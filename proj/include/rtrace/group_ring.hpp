#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rtrace/group.hpp"

namespace rtrace {

/// Finite formal integer combination of group elements. Terms are kept in
/// the group element order and no stored coefficient is zero.
class GroupRingElement {
public:
    using Terms = std::map<GroupElement, Integer>;

    explicit GroupRingElement(GroupDescriptor d) : desc_(d) {}

    static GroupRingElement zero(const GroupDescriptor& d) { return GroupRingElement(d); }
    static GroupRingElement one(const GroupDescriptor& d) {
        return of(GroupElement::identity(d));
    }
    static GroupRingElement of(const GroupElement& g, Integer k = 1) {
        GroupRingElement r(g.descriptor());
        r.add_term(g, k);
        return r;
    }

    const GroupDescriptor& descriptor() const noexcept { return desc_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    Integer coefficient(const GroupElement& g) const {
        auto it = terms_.find(g);
        return it == terms_.end() ? Integer(0) : it->second;
    }

    void add_term(const GroupElement& g, const Integer& k) {
        require_same(g.descriptor(), desc_, "group ring term");
        if (k == 0) return;
        auto [it, inserted] = terms_.try_emplace(g, k);
        if (!inserted) {
            it->second += k;
            if (it->second == 0) terms_.erase(it);
        }
    }

    GroupRingElement& operator+=(const GroupRingElement& b) {
        require_same(desc_, b.desc_, "ring_add");
        for (const auto& [g, k] : b.terms_) add_term(g, k);
        return *this;
    }
    GroupRingElement& operator-=(const GroupRingElement& b) {
        require_same(desc_, b.desc_, "ring_sub");
        for (const auto& [g, k] : b.terms_) add_term(g, -k);
        return *this;
    }

    friend GroupRingElement operator+(GroupRingElement a, const GroupRingElement& b) { return a += b; }
    friend GroupRingElement operator-(GroupRingElement a, const GroupRingElement& b) { return a -= b; }
    friend GroupRingElement operator-(const GroupRingElement& a) {
        GroupRingElement r(a.desc_);
        for (const auto& [g, k] : a.terms_) r.terms_.emplace(g, -k);
        return r;
    }

    friend GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
        require_same(a.desc_, b.desc_, "ring_mul");
        GroupRingElement r(a.desc_);
        for (const auto& [g, k] : a.terms_)
            for (const auto& [h, l] : b.terms_) r.add_term(g * h, k * l);
        return r;
    }

    /// Left multiplication by a group element.
    friend GroupRingElement operator*(const GroupElement& g, const GroupRingElement& a) {
        return GroupRingElement::of(g) * a;
    }

    /// The antipode: sum k_g g  ->  sum k_g g^-1.
    GroupRingElement antipode() const {
        GroupRingElement r(desc_);
        for (const auto& [g, k] : terms_) r.add_term(g.inverse(), k);
        return r;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [g, k] : terms_) {
            if (!out.empty()) out += ' ';
            out += (k > 0 ? "+" : "") + to_string(k) + "[" + g.str() + "]";
        }
        return out;
    }

    friend bool operator==(const GroupRingElement&, const GroupRingElement&) = default;

private:
    GroupDescriptor desc_;
    Terms terms_;
};

inline GroupRingElement ring_add(const GroupRingElement& a, const GroupRingElement& b) { return a + b; }
inline GroupRingElement ring_mul(const GroupRingElement& a, const GroupRingElement& b) { return a * b; }

/// Augmentation: every group element goes to 1.
inline Integer augment(const GroupRingElement& a) {
    Integer s = 0;
    for (const auto& [g, k] : a.terms()) s += k;
    return s;
}

class GroupRingMatrix {
public:
    GroupRingMatrix(GroupDescriptor d, std::size_t rows, std::size_t cols)
        : desc_(d), rows_(rows), cols_(cols), entries_(rows * cols, GroupRingElement(d)) {}

    const GroupDescriptor& descriptor() const noexcept { return desc_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    const GroupRingElement& operator()(std::size_t i, std::size_t j) const {
        return entries_[i * cols_ + j];
    }
    void set(std::size_t i, std::size_t j, GroupRingElement v) {
        require_same(v.descriptor(), desc_, "matrix entry");
        entries_[i * cols_ + j] = std::move(v);
    }

    friend bool operator==(const GroupRingMatrix&, const GroupRingMatrix&) = default;

private:
    GroupDescriptor desc_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<GroupRingElement> entries_;
};

inline GroupRingElement ring_trace(const GroupRingMatrix& m) {
    if (m.rows() != m.cols())
        throw NonSquare("ring_trace of a " + std::to_string(m.rows()) + "x" +
                        std::to_string(m.cols()) + " matrix");
    GroupRingElement t(m.descriptor());
    for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
    return t;
}

} // namespace rtrace
