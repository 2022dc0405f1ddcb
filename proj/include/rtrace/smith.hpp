#pragma once

#include <cstddef>
#include <optional>

#include "rtrace/integer.hpp"

namespace rtrace {

/// U * m * V = D with U, V unimodular and D diagonal, d1 | d2 | ... , d_i >= 0.
/// The inverses of U and V are tracked alongside so callers never invert.
struct SmithForm {
    IntMatrix U, D, V;
    IntMatrix U_inv, V_inv;
    std::size_t rank = 0; ///< number of nonzero diagonal entries

    Integer diag(std::size_t i) const {
        return i < D.rows() && i < D.cols() ? D(i, i) : Integer(0);
    }
};

namespace detail {

class SmithWorker {
public:
    explicit SmithWorker(const IntMatrix& m)
        : D_(m), U_(IntMatrix::identity(m.rows())), U_inv_(IntMatrix::identity(m.rows())),
          V_(IntMatrix::identity(m.cols())), V_inv_(IntMatrix::identity(m.cols())) {}

    SmithForm run() {
        const std::size_t steps = std::min(D_.rows(), D_.cols());
        std::size_t t = 0;
        for (; t < steps; ++t) {
            auto pivot = min_entry(t, t);
            if (!pivot) break;
            move_to(t, pivot->first, pivot->second);
            eliminate(t);
            if (D_(t, t) < 0) negate_col(t);
        }
        return SmithForm{std::move(U_), std::move(D_), std::move(V_), std::move(U_inv_),
                         std::move(V_inv_), t};
    }

private:
    using Pos = std::pair<std::size_t, std::size_t>;

    // Smallest nonzero |entry| in the lower-right block starting at (r0, c0).
    std::optional<Pos> min_entry(std::size_t r0, std::size_t c0) const {
        std::optional<Pos> best;
        for (std::size_t i = r0; i < D_.rows(); ++i)
            for (std::size_t j = c0; j < D_.cols(); ++j) {
                if (D_(i, j) == 0) continue;
                if (!best || abs(D_(i, j)) < abs(D_(best->first, best->second))) best = Pos{i, j};
            }
        return best;
    }

    void move_to(std::size_t t, std::size_t i, std::size_t j) {
        swap_rows(t, i);
        swap_cols(t, j);
    }

    void eliminate(std::size_t t) {
        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < D_.rows(); ++i) {
                if (D_(i, t) == 0) continue;
                add_row(i, t, -(D_(i, t) / D_(t, t)));
                if (D_(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < D_.cols(); ++j) {
                if (D_(t, j) == 0) continue;
                add_col(j, t, -(D_(t, j) / D_(t, t)));
                if (D_(t, j) != 0) clean = false;
            }
            if (!clean) {
                // A remainder smaller than the pivot survived; promote it.
                Pos best{t, t};
                for (std::size_t i = t + 1; i < D_.rows(); ++i)
                    if (D_(i, t) != 0 && abs(D_(i, t)) < abs(D_(best.first, best.second)))
                        best = {i, t};
                for (std::size_t j = t + 1; j < D_.cols(); ++j)
                    if (D_(t, j) != 0 && abs(D_(t, j)) < abs(D_(best.first, best.second)))
                        best = {t, j};
                move_to(t, best.first, best.second);
                continue;
            }
            // Row and column are clear; enforce the divisibility chain.
            bool divides = true;
            for (std::size_t i = t + 1; i < D_.rows() && divides; ++i)
                for (std::size_t j = t + 1; j < D_.cols(); ++j)
                    if (D_(i, j) % D_(t, t) != 0) {
                        add_row(t, i, 1);
                        divides = false;
                        break;
                    }
            if (divides) return;
        }
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        D_.swap_rows(a, b);
        U_.swap_rows(a, b);
        U_inv_.swap_cols(a, b);
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        D_.swap_cols(a, b);
        V_.swap_cols(a, b);
        V_inv_.swap_rows(a, b);
    }
    void add_row(std::size_t dst, std::size_t src, const Integer& k) {
        D_.add_row(dst, src, k);
        U_.add_row(dst, src, k);
        U_inv_.add_col(src, dst, -k);
    }
    void add_col(std::size_t dst, std::size_t src, const Integer& k) {
        D_.add_col(dst, src, k);
        V_.add_col(dst, src, k);
        V_inv_.add_row(src, dst, -k);
    }
    void negate_col(std::size_t c) {
        D_.negate_col(c);
        V_.negate_col(c);
        V_inv_.negate_row(c);
    }

    IntMatrix D_, U_, U_inv_, V_, V_inv_;
};

} // namespace detail

/// Smith normal form by elementary elimination, pivoting on the entry of
/// least absolute value. Signs are fixed with column operations only, so a
/// matrix that is already diagonal with a valid divisibility chain comes back
/// with U = I.
inline SmithForm smith_normal_form(const IntMatrix& m) {
    return detail::SmithWorker(m).run();
}

} // namespace rtrace
