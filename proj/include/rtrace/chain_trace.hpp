#pragma once

#include <cstddef>
#include <cstdlib>
#include <string>
#include <utility>

#include "rtrace/classes.hpp"
#include "rtrace/group_ring.hpp"

namespace rtrace {

/// Fox derivative d(w)/d(x_j) in Z[F]:
///   d(x_j) = e,  d(x_j^-1) = -x_j^-1,  d(uv) = d(u) + u d(v).
inline GroupRingElement fox_derivative(const GroupElement& w, int j) {
    const auto& d = w.descriptor();
    if (!d.is_free()) throw DescriptorMismatch("fox_derivative needs a free group word");
    if (j < 1 || j > d.rank)
        throw IndexOutOfRange("fox_derivative: generator " + std::to_string(j) +
                              " out of range for rank " + std::to_string(d.rank));
    GroupRingElement out(d);
    GroupElement prefix = GroupElement::identity(d);
    for (Letter l : w.word()) {
        const GroupElement step = GroupElement::generator(d, l);
        if (l == j) out.add_term(prefix, 1);
        if (l == -j) out.add_term(prefix * step, -1);
        prefix = prefix * step;
    }
    return out;
}

/// Basepoint-preserving cellular self-map of a wedge of `rank` circles,
/// given by the edge-path words of the generators, together with the
/// covering transformation alpha selecting the lift alpha * f~.
struct WedgeSelfMap {
    Homomorphism endo;
    GroupElement lift_twist;

    explicit WedgeSelfMap(Homomorphism e)
        : WedgeSelfMap(e, GroupElement::identity(e.source())) {}
    WedgeSelfMap(Homomorphism e, GroupElement twist)
        : endo(std::move(e)), lift_twist(std::move(twist)) {
        if (!endo.source().is_free() || endo.source() != endo.target())
            throw DescriptorMismatch("wedge map must be an endomorphism of a free group");
        require_same(lift_twist.descriptor(), endo.source(), "lift twist");
    }

    int rank() const noexcept { return endo.source().rank; }
    const GroupDescriptor& group() const noexcept { return endo.source(); }
};

/// f~_0 (1x1) and f~_1 (rank x rank) over Z[F_rank].
struct ChainMapData {
    GroupRingMatrix f0;
    GroupRingMatrix f1;
};

/// Row i of f~_1 is the image of edge i: alpha * d(endo(x_i))/d(x_j).
inline ChainMapData chain_matrices(const WedgeSelfMap& m) {
    const auto& d = m.group();
    const auto r = static_cast<std::size_t>(m.rank());
    ChainMapData out{GroupRingMatrix(d, 1, 1), GroupRingMatrix(d, r, r)};
    out.f0.set(0, 0, GroupRingElement::of(m.lift_twist));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            out.f1.set(i, j,
                       m.lift_twist * fox_derivative(m.endo.images()[i], static_cast<int>(j + 1)));
    return out;
}

/// Setting in which the chain-level trace of `m` lives: phi is the endo
/// conjugated by the lift twist, psi the identity. Rank one is reported
/// over Z (the free group of rank one is abelian).
inline SettingPtr wedge_setting(const WedgeSelfMap& m) {
    if (m.rank() == 1) {
        const IntMatrix deg = m.endo.abelian_matrix();
        return make_setting(Homomorphism::from_matrix(deg),
                            Homomorphism::from_matrix(IntMatrix::identity(1)));
    }
    return make_setting(m.endo.conjugated_by(m.lift_twist), Homomorphism::identity(m.group()));
}

namespace detail {

// Re-expresses an element of Z[F_1] over Z[Z^1].
inline GroupRingElement to_abelian_ring(const GroupRingElement& a) {
    const auto ab = GroupDescriptor::free_abelian(a.descriptor().rank);
    GroupRingElement out(ab);
    for (const auto& [g, k] : a.terms())
        out.add_term(GroupElement::from_vector(ab, g.exponent_sums()), k);
    return out;
}

} // namespace detail

/// RT(f, alpha f~) = rho(tr f~_0) - rho(tr f~_1). A diagonal entry g records
/// that the lift carries a cell over its translate by g, i.e. the fixed
/// points of g^-1 (alpha f~); it is therefore counted in the class [g^-1].
inline TraceElement reidemeister_trace_chain(const WedgeSelfMap& m, int budget = kDefaultBudget) {
    const ChainMapData data = chain_matrices(m);
    const SettingPtr s = wedge_setting(m);
    GroupRingElement t0 = ring_trace(data.f0).antipode();
    GroupRingElement t1 = ring_trace(data.f1).antipode();
    if (s->codomain().is_abelian()) {
        t0 = detail::to_abelian_ring(t0);
        t1 = detail::to_abelian_ring(t1);
    }
    return project_rho(s, t0, budget) - project_rho(s, t1, budget);
}

/// 1 - trace of the abelianized endomorphism.
inline Integer lefschetz_number_wedge(const WedgeSelfMap& m) {
    return 1 - trace(m.endo.abelian_matrix());
}

struct NielsenReport {
    bool exact = true;
    Integer lower = 0;
    Integer upper = 0;

    std::string str() const {
        if (exact) return "N = " + to_string(lower) + " (exact)";
        return "N in [" + to_string(lower) + ", " + to_string(upper) + "] (budget-limited)";
    }
};

/// Number of essential classes. Exact when every class id is exact;
/// otherwise bounded below by the classes that survive abelianization and
/// above by the terms as currently merged.
inline NielsenReport nielsen_report(const TraceElement& t) {
    const auto count = static_cast<long long>(t.terms().size());
    bool exact = true;
    for (const auto& [c, k] : t.terms()) exact = exact && c.exact();
    if (exact) return {true, count, count};

    const SettingPtr ab = abelianized(*t.setting());
    TraceElement merged(ab);
    for (const auto& [c, k] : t.terms())
        merged.add(canonical_rep(ab, GroupElement::from_vector(ab->codomain(),
                                                               c.representative.exponent_sums())),
                   k);
    return {false, static_cast<long long>(merged.terms().size()), count};
}

} // namespace rtrace
