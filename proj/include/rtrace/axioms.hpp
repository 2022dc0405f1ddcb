#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "rtrace/local_trace.hpp"

namespace rtrace {

enum class Axiom { Additivity, Homotopy, Normalization, LiftInvariance, CoincidenceOfLifts };

inline constexpr std::array<Axiom, 5> kAllAxioms = {Axiom::Additivity, Axiom::Homotopy,
                                                    Axiom::Normalization, Axiom::LiftInvariance,
                                                    Axiom::CoincidenceOfLifts};

inline const char* to_string(Axiom a) {
    switch (a) {
    case Axiom::Additivity: return "additivity";
    case Axiom::Homotopy: return "homotopy";
    case Axiom::Normalization: return "normalization";
    case Axiom::LiftInvariance: return "lift-invariance";
    case Axiom::CoincidenceOfLifts: return "coincidence-of-lifts";
    }
    return "?";
}

struct AxiomCheck {
    bool passed = true;
    int checks = 0;
    std::string failure; ///< first failure, empty when passed

    void record(bool ok, const std::string& what) {
        ++checks;
        if (!ok && passed) {
            passed = false;
            failure = what;
        }
    }
};

struct AxiomReport {
    std::array<AxiomCheck, 5> results;

    AxiomCheck& operator[](Axiom a) { return results[static_cast<std::size_t>(a)]; }
    const AxiomCheck& operator[](Axiom a) const { return results[static_cast<std::size_t>(a)]; }

    bool all_passed() const {
        for (const auto& r : results)
            if (!r.passed) return false;
        return true;
    }
};

struct AxiomOptions {
    int bipartitions = 4;
    int homotopy_trials = 10;
    int lift_trials = 20;
    int twist_bound = 5;
    int max_denominator = 12;
};

namespace detail {

class SeededSource {
public:
    explicit SeededSource(std::uint64_t seed) : rng_(seed) {}

    long long uniform(long long lo, long long hi) {
        return std::uniform_int_distribution<long long>(lo, hi)(rng_);
    }
    bool coin() { return uniform(0, 1) == 1; }

    IntVector int_vector(std::size_t n, long long bound) {
        IntVector v(n);
        for (auto& x : v) x = uniform(-bound, bound);
        return v;
    }
    /// Random point of [0,1)^n with denominators at most max_den.
    RatVector unit_vector(std::size_t n, long long max_den) {
        RatVector v(n);
        for (auto& x : v) {
            const long long q = uniform(1, max_den);
            x = Rational(uniform(0, q - 1), q);
        }
        return v;
    }
    IntMatrix int_matrix(std::size_t n, long long bound) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = uniform(-bound, bound);
        return m;
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

inline IntVector add(const IntVector& a, const IntVector& b) {
    IntVector r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

} // namespace detail

/// Runs the five axiom checks on one admissible tuple; all randomness comes
/// from `seed`.
///  additivity          random bipartitions (and an empty part) of the region
///  homotopy            random straight-line translation transports
///  normalization       c(RT over the whole torus) = det(g.A - f.A)
///  lift-invariance     random twists (a, b): equal coefficient sums, and
///                      RT(a f~, b g~) = sum k[b s a^-1] exactly
///  coincidence-of-lifts every class with nonzero coefficient is realized
///                      by some point of the region
inline AxiomReport verify_axioms(const AdmissibleTuple& t, std::uint64_t seed,
                                 const AxiomOptions& opt = {}) {
    detail::SeededSource rnd(seed);
    AxiomReport report;
    const std::size_t n = t.dim();
    const auto points = coincidence_points(t.f(), t.g());
    const TraceElement rt = local_reidemeister_trace(t, points);

    std::vector<int> selected;
    for (const auto& p : points)
        if (t.region().contains(p.id)) selected.push_back(p.id);

    {
        auto& check = report[Axiom::Additivity];
        const TraceElement empty = local_reidemeister_trace(t.with_region(Region::selection({})), points);
        check.record(empty.is_zero(), "trace over the empty set is " + empty.str());
        check.record(rt + empty == rt, "adding the empty part changed the trace");
        for (int trial = 0; trial < opt.bipartitions; ++trial) {
            std::set<int> left, right;
            for (int id : selected) (rnd.coin() ? left : right).insert(id);
            const TraceElement sum =
                local_reidemeister_trace(t.with_region(Region::selection(left)), points) +
                local_reidemeister_trace(t.with_region(Region::selection(right)), points);
            check.record(sum == rt, "bipartition sum " + sum.str() + " != " + rt.str());
        }
    }

    {
        auto& check = report[Axiom::Homotopy];
        for (int trial = 0; trial < opt.homotopy_trials; ++trial) {
            const RatVector cf = rnd.unit_vector(n, opt.max_denominator);
            const RatVector cg = rnd.unit_vector(n, opt.max_denominator);
            const AdmissibleTuple moved = homotopy_transport(t, cf, cg);
            const TraceElement rt_moved = local_reidemeister_trace(moved);
            check.record(rt_moved == rt && coefficient_sum(rt_moved) == coefficient_sum(rt),
                         "transport to c_f=" + vector_to_string(cf) + " c_g=" +
                             vector_to_string(cg) + " gave " + rt_moved.str() + " != " + rt.str());
        }
    }

    {
        auto& check = report[Axiom::Normalization];
        const TraceElement whole =
            t.region().whole ? rt : local_reidemeister_trace(t.with_region(Region::all()), points);
        const Integer lef = lefschetz_coincidence(t.f(), t.g());
        check.record(coefficient_sum(whole) == lef,
                     "c(RT) = " + to_string(coefficient_sum(whole)) + " but L = " + to_string(lef));
    }

    {
        auto& check = report[Axiom::LiftInvariance];
        const auto& cod = t.setting()->codomain();
        for (int trial = 0; trial < opt.lift_trials; ++trial) {
            const IntVector a = rnd.int_vector(n, opt.twist_bound);
            const IntVector b = rnd.int_vector(n, opt.twist_bound);
            const AdmissibleTuple twisted =
                t.with_twists(detail::add(t.twist_f(), a), detail::add(t.twist_g(), b));
            const TraceElement rt_twisted = local_reidemeister_trace(twisted, points);
            check.record(coefficient_sum(rt_twisted) == coefficient_sum(rt),
                         "coefficient sum changed under twists " + vector_to_string(a) + ", " +
                             vector_to_string(b));
            const TraceElement expected = lift_transform(rt, GroupElement::from_vector(cod, a),
                                                         GroupElement::from_vector(cod, b));
            check.record(rt_twisted == expected, "twists " + vector_to_string(a) + ", " +
                                                     vector_to_string(b) + " gave " +
                                                     rt_twisted.str() + ", expected " +
                                                     expected.str());
        }
    }

    {
        auto& check = report[Axiom::CoincidenceOfLifts];
        std::set<ClassId> realized;
        for (int id : selected) {
            const auto& p = points[static_cast<std::size_t>(id)];
            realized.insert(point_class(t, p, rnd.int_vector(n, 3)));
        }
        for (const auto& [cls, k] : rt.terms())
            check.record(realized.count(cls) > 0, "no coincidence point realizes " + cls.str());
    }
    return report;
}

/// Random fixed-point or coincidence instance: dimension 1..max_dim, matrix
/// entries in [-bound, bound], nonsingular difference, random translations
/// and small twists, whole region.
inline AdmissibleTuple random_instance(detail::SeededSource& rnd, int max_dim = 3,
                                       long long bound = 5) {
    const auto n = static_cast<std::size_t>(rnd.uniform(1, max_dim));
    for (;;) {
        IntMatrix a = rnd.int_matrix(n, bound);
        IntMatrix b = rnd.int_matrix(n, bound);
        if (determinant(b - a) == 0) continue;
        AffineTorusMap f(std::move(a), rnd.unit_vector(n, 12));
        AffineTorusMap g(std::move(b), rnd.unit_vector(n, 12));
        return AdmissibleTuple(std::move(f), std::move(g), rnd.int_vector(n, 2),
                               rnd.int_vector(n, 2));
    }
}

} // namespace rtrace
