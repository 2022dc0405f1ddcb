#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rtrace/group.hpp"
#include "rtrace/group_ring.hpp"
#include "rtrace/smith.hpp"

namespace rtrace {

inline constexpr int kDefaultBudget = 8;

/// The pair (phi, psi) defining doubly twisted conjugacy on the codomain:
///   alpha ~ psi(sigma)^-1 * beta * phi(sigma).
/// Immutable; the Smith form of the abelianized difference psi - phi is
/// computed once on construction.
class TwistedSetting {
public:
    TwistedSetting(Homomorphism phi, Homomorphism psi)
        : phi_(std::move(phi)), psi_(std::move(psi)) {
        require_same(phi_.source(), psi_.source(), "setting domain");
        require_same(phi_.target(), psi_.target(), "setting codomain");
        difference_ = psi_.abelian_matrix() - phi_.abelian_matrix();
        smith_ = smith_normal_form(difference_);
    }

    const GroupDescriptor& domain() const noexcept { return phi_.source(); }
    const GroupDescriptor& codomain() const noexcept { return phi_.target(); }
    const Homomorphism& phi() const noexcept { return phi_; }
    const Homomorphism& psi() const noexcept { return psi_; }

    /// psi - phi on abelianizations (codomain.rank x domain.rank).
    const IntMatrix& difference() const noexcept { return difference_; }
    const SmithForm& smith() const noexcept { return smith_; }

    /// Classes are decided exactly when the codomain is abelian. The free
    /// group of rank one is Z, so it qualifies.
    bool decidable() const noexcept {
        return codomain().is_abelian() || codomain().rank == 1;
    }

    /// Number of classes when finite and decidable.
    std::optional<Integer> class_count() const {
        if (!decidable()) return std::nullopt;
        if (smith_.rank < static_cast<std::size_t>(codomain().rank)) return std::nullopt;
        Integer n = 1;
        for (std::size_t i = 0; i < smith_.rank; ++i) n *= smith_.diag(i);
        return n;
    }

    friend bool operator==(const TwistedSetting& a, const TwistedSetting& b) {
        return a.phi_ == b.phi_ && a.psi_ == b.psi_;
    }

private:
    Homomorphism phi_;
    Homomorphism psi_;
    IntMatrix difference_;
    SmithForm smith_;
};

using SettingPtr = std::shared_ptr<const TwistedSetting>;

inline SettingPtr make_setting(Homomorphism phi, Homomorphism psi) {
    return std::make_shared<const TwistedSetting>(std::move(phi), std::move(psi));
}

inline bool same_setting(const SettingPtr& a, const SettingPtr& b) {
    return a == b || (a && b && *a == *b);
}

/// Setting induced on abelianizations.
inline SettingPtr abelianized(const TwistedSetting& s) {
    return make_setting(Homomorphism::from_matrix(s.phi().abelian_matrix()),
                        Homomorphism::from_matrix(s.psi().abelian_matrix()));
}

/// A Reidemeister class named by a representative. Exact representatives
/// are canonical, so equal ids mean equal classes. Budget-limited ids carry
/// the least representative found by a bounded search; two of them may
/// still name the same class.
struct ClassId {
    SettingPtr setting;
    GroupElement representative;
    std::optional<int> budget; ///< nullopt for Exact

    bool exact() const noexcept { return !budget.has_value(); }
    std::string str() const { return "[" + representative.str() + "]"; }

    friend bool operator==(const ClassId& a, const ClassId& b) {
        return a.representative == b.representative && a.budget == b.budget &&
               same_setting(a.setting, b.setting);
    }
    friend std::strong_ordering operator<=>(const ClassId& a, const ClassId& b) {
        if (auto c = a.representative <=> b.representative; c != 0) return c;
        return a.budget.value_or(0) <=> b.budget.value_or(0);
    }
};

namespace detail {

inline void require_codomain(const TwistedSetting& s, const GroupElement& g, const char* what) {
    require_same(g.descriptor(), s.codomain(), what);
}

inline GroupElement element_from_exponents(const GroupDescriptor& d, const IntVector& v) {
    if (d.is_abelian()) return GroupElement::from_vector(d, v);
    Word w;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Letter l = static_cast<Letter>(i + 1);
        const Integer n = abs(v[i]);
        for (Integer k = 0; k < n; ++k) w.push_back(v[i] > 0 ? l : -l);
    }
    return GroupElement::from_letters(d, w);
}

// Reduces v modulo the image of psi - phi into the Smith box.
inline IntVector reduce_in_box(const SmithForm& snf, const IntVector& v) {
    IntVector y = snf.U * v;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const Integer d = snf.diag(i);
        if (d != 0) y[i] = floor_mod(y[i], d);
    }
    return snf.U_inv * y;
}

// Some sigma with (psi - phi) sigma = v, or nullopt if v is not in the image.
inline std::optional<IntVector> solve_difference(const SmithForm& snf, const IntVector& v) {
    const IntVector w = snf.U * v;
    IntVector z(snf.D.cols());
    for (std::size_t i = 0; i < w.size(); ++i) {
        const Integer d = snf.diag(i);
        if (d == 0) {
            if (w[i] != 0) return std::nullopt;
        } else {
            if (w[i] % d != 0) return std::nullopt;
            z[i] = w[i] / d;
        }
    }
    return snf.V * z;
}

// Visits psi(sigma)^-1 * x * phi(sigma) for every reduced word sigma of
// length <= budget, depth first. The visitor returns true to stop.
class TwistEnumerator {
public:
    using Visitor = std::function<bool(const GroupElement& sigma, const GroupElement& candidate)>;

    TwistEnumerator(const TwistedSetting& s, const GroupElement& x, int budget, Visitor visit)
        : s_(s), x_(x), budget_(budget), visit_(std::move(visit)) {}

    void run() {
        const auto& dom = s_.domain();
        const auto& cod = s_.codomain();
        stopped_ = false;
        walk(GroupElement::identity(dom), GroupElement::identity(cod),
             GroupElement::identity(cod), 0);
    }

private:
    void walk(const GroupElement& sigma, const GroupElement& psi_sigma,
              const GroupElement& phi_sigma, int depth) {
        if (stopped_) return;
        if (visit_(sigma, psi_sigma.inverse() * x_ * phi_sigma)) {
            stopped_ = true;
            return;
        }
        if (depth == budget_) return;
        const int rank = s_.domain().rank;
        const Letter last = sigma.word().empty() ? 0 : sigma.word().back();
        for (int i = 1; i <= rank && !stopped_; ++i)
            for (Letter l : {i, -i}) {
                if (l == -last) continue;
                const auto& pi = s_.psi().image(l);
                const auto& fi = s_.phi().image(l);
                walk(sigma * GroupElement::generator(s_.domain(), l),
                     psi_sigma * (l > 0 ? pi : pi.inverse()),
                     phi_sigma * (l > 0 ? fi : fi.inverse()), depth + 1);
                if (stopped_) return;
            }
    }

    const TwistedSetting& s_;
    const GroupElement& x_;
    int budget_;
    Visitor visit_;
    bool stopped_ = false;
};

inline void require_budget(int budget) {
    if (budget < 1) throw IndexOutOfRange("search budget must be at least 1");
}

} // namespace detail

struct EquivalenceResult {
    enum class Verdict { Equivalent, NotEquivalent, Unknown };
    Verdict verdict = Verdict::Unknown;
    std::optional<GroupElement> witness; ///< sigma with alpha = psi(sigma)^-1 beta phi(sigma)

    bool equivalent() const noexcept { return verdict == Verdict::Equivalent; }
};

inline const char* to_string(EquivalenceResult::Verdict v) {
    switch (v) {
    case EquivalenceResult::Verdict::Equivalent: return "Equivalent";
    case EquivalenceResult::Verdict::NotEquivalent: return "NotEquivalent";
    case EquivalenceResult::Verdict::Unknown: return "Unknown";
    }
    return "?";
}

/// Decides alpha ~ beta. Exact (with witness) for decidable settings. For
/// free codomains of rank >= 2 the abelianized obstruction certifies
/// NotEquivalent; otherwise a search over |sigma| <= budget either finds a
/// witness or gives up with Unknown.
inline EquivalenceResult twisted_equiv(const TwistedSetting& s, const GroupElement& alpha,
                                       const GroupElement& beta, int budget = kDefaultBudget) {
    using V = EquivalenceResult::Verdict;
    detail::require_budget(budget);
    detail::require_codomain(s, alpha, "twisted_equiv");
    detail::require_codomain(s, beta, "twisted_equiv");
    if (alpha == beta) return {V::Equivalent, GroupElement::identity(s.domain())};

    // alpha = psi(sigma)^-1 beta phi(sigma) abelianizes to
    // (psi - phi) sigma = beta - alpha.
    IntVector diff = beta.exponent_sums();
    const IntVector a = alpha.exponent_sums();
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= a[i];
    const auto sigma_ab = detail::solve_difference(s.smith(), diff);
    if (!sigma_ab) return {V::NotEquivalent, std::nullopt};
    if (s.decidable())
        return {V::Equivalent, detail::element_from_exponents(s.domain(), *sigma_ab)};

    std::optional<GroupElement> found;
    detail::TwistEnumerator(s, beta, budget, [&](const GroupElement& sigma, const GroupElement& c) {
        if (c == alpha) found = sigma;
        return found.has_value();
    }).run();
    if (found) return {V::Equivalent, std::move(found)};
    return {V::Unknown, std::nullopt};
}

/// Canonical representative of the class of alpha: the Smith-box reduction
/// for decidable settings, otherwise the length-lex least element reachable
/// with |sigma| <= budget.
inline ClassId canonical_rep(const SettingPtr& s, const GroupElement& alpha,
                             int budget = kDefaultBudget) {
    detail::require_budget(budget);
    detail::require_codomain(*s, alpha, "canonical_rep");
    if (s->decidable()) {
        const IntVector rep = detail::reduce_in_box(s->smith(), alpha.exponent_sums());
        return ClassId{s, detail::element_from_exponents(s->codomain(), rep), std::nullopt};
    }
    GroupElement best = alpha;
    detail::TwistEnumerator(*s, alpha, budget, [&](const GroupElement&, const GroupElement& c) {
        if (c < best) best = c;
        return false;
    }).run();
    return ClassId{s, std::move(best), budget};
}

/// All classes in Smith-box order, or nullopt when the class set is infinite
/// or the setting is undecidable.
inline std::optional<std::vector<ClassId>> enumerate_classes(const SettingPtr& s) {
    if (!s->class_count()) return std::nullopt;
    const auto& snf = s->smith();
    const std::size_t n = static_cast<std::size_t>(s->codomain().rank);
    std::vector<ClassId> out;
    IntVector y(n, Integer(0));
    for (;;) {
        out.push_back(ClassId{s, detail::element_from_exponents(s->codomain(), snf.U_inv * y),
                              std::nullopt});
        std::size_t i = 0;
        for (; i < n; ++i) {
            if (++y[i] < snf.diag(i)) break;
            y[i] = 0;
        }
        if (i == n) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Element of Z R[f,g]: integer combination of classes of one setting.
class TraceElement {
public:
    using Terms = std::map<ClassId, Integer>;

    explicit TraceElement(SettingPtr s) : setting_(std::move(s)) {}

    const SettingPtr& setting() const noexcept { return setting_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    Integer coefficient(const ClassId& c) const {
        auto it = terms_.find(c);
        return it == terms_.end() ? Integer(0) : it->second;
    }

    void add(const ClassId& c, const Integer& k) {
        if (!same_setting(c.setting, setting_))
            throw DescriptorMismatch("class belongs to a different setting");
        if (k == 0) return;
        auto [it, inserted] = terms_.try_emplace(c, k);
        if (!inserted) {
            it->second += k;
            if (it->second == 0) terms_.erase(it);
        }
    }

    TraceElement& operator+=(const TraceElement& b) {
        for (const auto& [c, k] : b.terms_) add(c, k);
        return *this;
    }
    TraceElement& operator-=(const TraceElement& b) {
        for (const auto& [c, k] : b.terms_) add(c, -k);
        return *this;
    }
    friend TraceElement operator+(TraceElement a, const TraceElement& b) { return a += b; }
    friend TraceElement operator-(TraceElement a, const TraceElement& b) { return a -= b; }

    /// Signed sum in class order, e.g. `-1[(0)] -1[(1)]`; `0` when empty.
    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [c, k] : terms_) {
            if (!out.empty()) out += ' ';
            out += (k > 0 ? "+" : "") + to_string(k) + c.str();
        }
        return out;
    }

    friend bool operator==(const TraceElement& a, const TraceElement& b) {
        return same_setting(a.setting_, b.setting_) && a.terms_ == b.terms_;
    }

private:
    SettingPtr setting_;
    Terms terms_;
};

/// rho: Z[pi] -> Z R[f,g].
inline TraceElement project_rho(const SettingPtr& s, const GroupRingElement& a,
                                int budget = kDefaultBudget) {
    require_same(a.descriptor(), s->codomain(), "project_rho");
    TraceElement t(s);
    for (const auto& [g, k] : a.terms()) t.add(canonical_rep(s, g, budget), k);
    return t;
}

inline Integer coefficient_sum(const TraceElement& t) {
    Integer sum = 0;
    for (const auto& [c, k] : t.terms()) sum += k;
    return sum;
}

/// k[sigma] -> k[beta * sigma * alpha^-1], re-canonicalized in the same setting.
inline TraceElement lift_transform(const TraceElement& t, const GroupElement& alpha,
                                   const GroupElement& beta) {
    const auto& s = t.setting();
    detail::require_codomain(*s, alpha, "lift_transform");
    detail::require_codomain(*s, beta, "lift_transform");
    const GroupElement alpha_inv = alpha.inverse();
    TraceElement out(s);
    for (const auto& [c, k] : t.terms())
        out.add(canonical_rep(s, beta * c.representative * alpha_inv,
                              c.budget.value_or(kDefaultBudget)),
                k);
    return out;
}

} // namespace rtrace
