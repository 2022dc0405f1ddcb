#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rtrace/classes.hpp"
#include "rtrace/smith.hpp"

namespace rtrace {

/// x -> A x + c on T^n = R^n / Z^n. (A, c) with c in [0,1)^n is also the
/// preferred lift x~ -> A x~ + c on R^n.
struct AffineTorusMap {
    IntMatrix A;
    RatVector c;

    AffineTorusMap(IntMatrix a, RatVector t) : A(std::move(a)), c(std::move(t)) {
        if (!A.square() || A.rows() == 0) throw NonSquare("torus map needs a nonempty square matrix");
        if (c.size() != A.rows())
            throw IndexOutOfRange("translation has length " + std::to_string(c.size()) +
                                  ", expected " + std::to_string(A.rows()));
        for (const auto& ci : c)
            if (ci < 0 || ci >= 1)
                throw IndexOutOfRange("translation entry " + to_string(ci) + " is outside [0,1)");
    }

    explicit AffineTorusMap(const IntMatrix& a) : AffineTorusMap(a, RatVector(a.rows())) {}

    static AffineTorusMap identity(std::size_t n) {
        return AffineTorusMap(IntMatrix::identity(n), RatVector(n));
    }

    std::size_t dim() const noexcept { return A.rows(); }

    /// Value of the preferred lift at x~.
    RatVector lift(const RatVector& x) const {
        RatVector y = A * x;
        for (std::size_t i = 0; i < y.size(); ++i) y[i] += c[i];
        return y;
    }

    friend bool operator==(const AffineTorusMap&, const AffineTorusMap&) = default;
};

/// An open set, represented by the coincidence points it isolates.
struct Region {
    bool whole = true;
    std::set<int> points;

    static Region all() { return {}; }
    static Region selection(std::set<int> ids) { return Region{false, std::move(ids)}; }

    bool contains(int id) const { return whole || points.count(id) > 0; }

    std::string str() const {
        if (whole) return "whole";
        std::string out = "points";
        bool first = true;
        for (int id : points) {
            out += first ? " " : ",";
            out += std::to_string(id);
            first = false;
        }
        return out;
    }

    friend bool operator==(const Region&, const Region&) = default;
};

struct CoincidencePoint {
    RatVector x; ///< in [0,1)^n
    int id = 0;

    friend bool operator==(const CoincidencePoint&, const CoincidencePoint&) = default;
};

inline std::string to_string(const CoincidencePoint& p) { return vector_to_string(p.x); }

/// Setting of the pair: phi = f.A, psi = g.A acting on pi_1(T^n) = Z^n.
inline SettingPtr torus_setting(const AffineTorusMap& f, const AffineTorusMap& g) {
    return make_setting(Homomorphism::from_matrix(f.A), Homomorphism::from_matrix(g.A));
}

/// (f, alpha f~, g, beta g~, U) for affine torus maps with det(g.A - f.A) != 0.
class AdmissibleTuple {
public:
    AdmissibleTuple(AffineTorusMap f, AffineTorusMap g, IntVector twist_f = {},
                    IntVector twist_g = {}, Region region = Region::all())
        : f_(std::move(f)), g_(std::move(g)), twist_f_(std::move(twist_f)),
          twist_g_(std::move(twist_g)), region_(std::move(region)) {
        const std::size_t n = f_.dim();
        if (g_.dim() != n) throw DescriptorMismatch("f and g act on tori of different dimension");
        if (twist_f_.empty()) twist_f_.assign(n, Integer(0));
        if (twist_g_.empty()) twist_g_.assign(n, Integer(0));
        if (twist_f_.size() != n || twist_g_.size() != n)
            throw IndexOutOfRange("lift twists must have length " + std::to_string(n));
        if (determinant(g_.A - f_.A) == 0)
            throw SingularDifference("det(g.A - f.A) = 0: coincidence set is not isolated");
        setting_ = torus_setting(f_, g_);
    }

    const AffineTorusMap& f() const noexcept { return f_; }
    const AffineTorusMap& g() const noexcept { return g_; }
    const IntVector& twist_f() const noexcept { return twist_f_; }
    const IntVector& twist_g() const noexcept { return twist_g_; }
    const Region& region() const noexcept { return region_; }
    const SettingPtr& setting() const noexcept { return setting_; }
    std::size_t dim() const noexcept { return f_.dim(); }

    AdmissibleTuple with_region(Region r) const {
        AdmissibleTuple t = *this;
        t.region_ = std::move(r);
        return t;
    }
    AdmissibleTuple with_twists(IntVector a, IntVector b) const {
        return AdmissibleTuple(f_, g_, std::move(a), std::move(b), region_);
    }

private:
    AffineTorusMap f_;
    AffineTorusMap g_;
    IntVector twist_f_;
    IntVector twist_g_;
    Region region_;
    SettingPtr setting_;
};

/// det(g.A - f.A); for g = id the classical det(I - A).
inline Integer lefschetz_coincidence(const AffineTorusMap& f, const AffineTorusMap& g) {
    return determinant(g.A - f.A);
}

namespace detail {

inline RatVector translation_gap(const AffineTorusMap& f, const AffineTorusMap& g) {
    RatVector b(f.dim());
    for (std::size_t i = 0; i < b.size(); ++i) b[i] = g.c[i] - f.c[i];
    return b;
}

inline bool solves_congruence(const AffineTorusMap& f, const AffineTorusMap& g, const RatVector& x) {
    if (x.size() != f.dim()) return false;
    const RatVector lhs = (f.A - g.A) * x;
    const RatVector b = translation_gap(f, g);
    for (std::size_t i = 0; i < lhs.size(); ++i)
        if (!is_integral(lhs[i] - b[i])) return false;
    return true;
}

} // namespace detail

/// Solutions of (f.A - g.A) x = g.c - f.c (mod Z^n) in [0,1)^n, sorted
/// lexicographically and numbered from 0. There are |det(g.A - f.A)| of them.
inline std::vector<CoincidencePoint> coincidence_points(const AffineTorusMap& f,
                                                        const AffineTorusMap& g) {
    if (f.dim() != g.dim()) throw DescriptorMismatch("f and g act on tori of different dimension");
    const IntMatrix M = f.A - g.A;
    if (determinant(M) == 0)
        throw SingularDifference("det(g.A - f.A) = 0: coincidence set is not isolated");
    // U M V = D: with x = V y the system splits into d_i y_i = (U b)_i mod 1,
    // so y_i = ((U b)_i + k_i) / d_i for 0 <= k_i < d_i. Everything is scaled
    // by a common denominator L and kept integral until the end.
    const SmithForm snf = smith_normal_form(M);
    const std::size_t n = f.dim();
    const RatVector ub = snf.U * detail::translation_gap(f, g);
    Integer L = 1;
    for (std::size_t i = 0; i < n; ++i)
        L = boost::multiprecision::lcm(L, boost::multiprecision::denominator(ub[i]) * snf.diag(i));
    IntVector base(n), step(n);
    for (std::size_t i = 0; i < n; ++i) {
        step[i] = L / snf.diag(i);
        base[i] = to_integer(ub[i] * Rational(step[i]));
    }

    std::vector<IntVector> scaled;
    IntVector k(n, Integer(0));
    IntVector y(n);
    for (;;) {
        for (std::size_t i = 0; i < n; ++i) y[i] = base[i] + k[i] * step[i];
        IntVector x = snf.V * y;
        for (auto& xi : x) xi = floor_mod(xi, L);
        scaled.push_back(std::move(x));
        std::size_t i = 0;
        for (; i < n; ++i) {
            if (++k[i] < snf.diag(i)) break;
            k[i] = 0;
        }
        if (i == n) break;
    }
    std::sort(scaled.begin(), scaled.end());

    std::vector<CoincidencePoint> out;
    out.reserve(scaled.size());
    for (const auto& x : scaled) {
        RatVector coords(n);
        for (std::size_t i = 0; i < n; ++i) coords[i] = Rational(x[i], L);
        out.push_back({std::move(coords), static_cast<int>(out.size())});
    }
    return out;
}

/// Coincidence index of an isolated point: sign det(g.A - f.A).
inline int point_index(const AffineTorusMap& f, const AffineTorusMap& g, const CoincidencePoint& p) {
    if (!detail::solves_congruence(f, g, p.x))
        throw NotACoincidencePoint("point " + to_string(p) + " is not a coincidence point");
    return sign(determinant(g.A - f.A));
}

/// Class of the covering translation m with m + alpha f~(x~) = beta g~(x~),
/// where x~ = p.x + lift_offset, i.e. m = (g~(x~) + beta) - (f~(x~) + alpha).
/// Independent of the lift offset.
inline ClassId point_class(const AdmissibleTuple& t, const CoincidencePoint& p,
                           const IntVector& lift_offset = {}) {
    const std::size_t n = t.dim();
    if (!detail::solves_congruence(t.f(), t.g(), p.x))
        throw NotACoincidencePoint("point " + to_string(p) + " is not a coincidence point");
    if (!lift_offset.empty() && lift_offset.size() != n)
        throw IndexOutOfRange("lift offset must have length " + std::to_string(n));
    RatVector x = p.x;
    if (!lift_offset.empty())
        for (std::size_t i = 0; i < n; ++i) x[i] += Rational(lift_offset[i]);
    const RatVector fx = t.f().lift(x);
    const RatVector gx = t.g().lift(x);
    IntVector m(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Rational mi = (gx[i] + Rational(t.twist_g()[i])) - (fx[i] + Rational(t.twist_f()[i]));
        if (!is_integral(mi))
            throw NonIntegerTranslation("lifted gap " + to_string(mi) + " at " + to_string(p) +
                                        " is not integral");
        m[i] = to_integer(mi);
    }
    return canonical_rep(t.setting(),
                         GroupElement::from_vector(t.setting()->codomain(), std::move(m)));
}

namespace detail {

// The gaps m of point_class (lift offset 0) for many points at once, in
// integer arithmetic over one common denominator.
inline std::vector<IntVector> lifted_gaps(const AdmissibleTuple& t,
                                          const std::vector<CoincidencePoint>& points) {
    const std::size_t n = t.dim();
    const IntMatrix BA = t.g().A - t.f().A;
    RatVector shift(n);
    for (std::size_t i = 0; i < n; ++i)
        shift[i] = (t.g().c[i] + Rational(t.twist_g()[i])) - (t.f().c[i] + Rational(t.twist_f()[i]));
    Integer L = 1;
    for (const auto& s : shift) L = boost::multiprecision::lcm(L, boost::multiprecision::denominator(s));
    for (const auto& p : points)
        for (const auto& xi : p.x)
            L = boost::multiprecision::lcm(L, boost::multiprecision::denominator(xi));
    IntVector shift_n(n);
    for (std::size_t i = 0; i < n; ++i) shift_n[i] = to_integer(shift[i] * Rational(L));

    std::vector<IntVector> out;
    out.reserve(points.size());
    IntVector x(n);
    for (const auto& p : points) {
        if (p.x.size() != n) throw NotACoincidencePoint("point has the wrong dimension");
        for (std::size_t j = 0; j < n; ++j)
            x[j] = boost::multiprecision::numerator(p.x[j]) *
                   (L / boost::multiprecision::denominator(p.x[j]));
        IntVector m = BA * x;
        for (std::size_t i = 0; i < n; ++i) {
            m[i] += shift_n[i];
            if (m[i] % L != 0)
                throw NonIntegerTranslation("lifted gap at " + to_string(p) + " is not integral");
            m[i] /= L;
        }
        out.push_back(std::move(m));
    }
    return out;
}

} // namespace detail

/// Sum over the coincidence points in the region of index * [class].
/// `points` must be coincidence_points(t.f(), t.g()).
inline TraceElement local_reidemeister_trace(const AdmissibleTuple& t,
                                             const std::vector<CoincidencePoint>& points) {
    const auto& region = t.region();
    if (!region.whole)
        for (int id : region.points)
            if (id < 0 || static_cast<std::size_t>(id) >= points.size())
                throw NotACoincidencePoint("region names point " + std::to_string(id) +
                                           " but there are only " + std::to_string(points.size()));
    std::vector<CoincidencePoint> chosen;
    for (const auto& p : points)
        if (region.contains(p.id)) chosen.push_back(p);
    const auto gaps = detail::lifted_gaps(t, chosen);
    TraceElement rt(t.setting());
    const int index = sign(lefschetz_coincidence(t.f(), t.g()));
    const auto& cod = t.setting()->codomain();
    for (const auto& m : gaps) rt.add(canonical_rep(t.setting(), GroupElement::from_vector(cod, m)), index);
    return rt;
}

inline TraceElement local_reidemeister_trace(const AdmissibleTuple& t) {
    return local_reidemeister_trace(t, coincidence_points(t.f(), t.g()));
}

/// Replaces the translations along the straight-line homotopies
/// c(s) = (1-s) c + s c'. Linear parts and twists are unchanged; a point
/// selection follows its points along the path.
inline AdmissibleTuple homotopy_transport(const AdmissibleTuple& t, const RatVector& c_f,
                                          const RatVector& c_g) {
    AffineTorusMap f(t.f().A, c_f);
    AffineTorusMap g(t.g().A, c_g);
    Region region = t.region();
    if (!region.whole) {
        // Along the path the integral gap m is constant, so each lifted
        // point moves by (B - A)^-1 (dc_f - dc_g).
        const auto old_points = coincidence_points(t.f(), t.g());
        auto new_points = coincidence_points(f, g);
        const IntMatrix BA = t.g().A - t.f().A;
        RatVector delta(t.dim());
        for (std::size_t i = 0; i < delta.size(); ++i)
            delta[i] = (c_f[i] - t.f().c[i]) - (c_g[i] - t.g().c[i]);
        const RatVector shift = solve_rational(BA, delta);
        std::set<int> ids;
        for (int id : region.points) {
            if (id < 0 || static_cast<std::size_t>(id) >= old_points.size())
                throw NotACoincidencePoint("region names missing point " + std::to_string(id));
            RatVector moved = old_points[static_cast<std::size_t>(id)].x;
            for (std::size_t i = 0; i < moved.size(); ++i) moved[i] = frac(moved[i] + shift[i]);
            auto it = std::find_if(new_points.begin(), new_points.end(),
                                   [&](const CoincidencePoint& q) { return q.x == moved; });
            if (it == new_points.end())
                throw NotACoincidencePoint("transported point " + vector_to_string(moved) +
                                           " is not a coincidence point");
            ids.insert(it->id);
        }
        region = Region::selection(std::move(ids));
    }
    return AdmissibleTuple(std::move(f), std::move(g), t.twist_f(), t.twist_g(), std::move(region));
}

} // namespace rtrace
