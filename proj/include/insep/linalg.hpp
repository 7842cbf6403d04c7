#ifndef INSEP_LINALG_HPP
#define INSEP_LINALG_HPP

#include <cstddef>
#include <optional>
#include <vector>

namespace insep {

/// Exact elimination over any field type with + - * / and is_zero().
/// Pivots are the first nonzero entry, so results are deterministic.
template <class F>
class EchelonBasis {
public:
    explicit EchelonBasis(std::size_t width) : width_(width) {}

    std::size_t rank() const { return rows_.size(); }
    std::size_t width() const { return width_; }

    /// Reduces `v` against the basis; true (and kept) if it was independent.
    bool insert(std::vector<F> v) {
        reduce(v);
        std::size_t piv = first_nonzero(v);
        if (piv == width_) return false;
        F inv = v[piv];
        for (std::size_t j = piv; j < width_; ++j)
            if (!v[j].is_zero()) v[j] = v[j] / inv;
        rows_.push_back(std::move(v));
        pivots_.push_back(piv);
        return true;
    }

    bool in_span(std::vector<F> v) const {
        reduce(v);
        return first_nonzero(v) == width_;
    }

    void reduce(std::vector<F>& v) const {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const std::size_t piv = pivots_[r];
            if (v[piv].is_zero()) continue;
            F c = v[piv];
            for (std::size_t j = piv; j < width_; ++j)
                if (!rows_[r][j].is_zero()) v[j] = v[j] - c * rows_[r][j];
        }
    }

private:
    std::size_t first_nonzero(const std::vector<F>& v) const {
        for (std::size_t j = 0; j < width_; ++j)
            if (!v[j].is_zero()) return j;
        return width_;
    }

    std::size_t width_;
    std::vector<std::vector<F>> rows_;
    std::vector<std::size_t> pivots_;
};

template <class F>
std::size_t matrix_rank(const std::vector<std::vector<F>>& rows, std::size_t width) {
    EchelonBasis<F> e(width);
    for (const auto& r : rows) e.insert(r);
    return e.rank();
}

/// Outcome of solving A x = b.
template <class F>
struct LinearSolution {
    enum class Status { Unique, Inconsistent, Underdetermined } status = Status::Inconsistent;
    std::vector<F> x;
};

/// Solves A x = b by Gauss-Jordan on the augmented matrix; `rows` are the
/// rows of A, `zero` is the additive identity of F.
template <class F>
LinearSolution<F> solve_linear(std::vector<std::vector<F>> rows, std::vector<F> rhs, std::size_t ncols, const F& zero) {
    const std::size_t m = rows.size();
    for (std::size_t i = 0; i < m; ++i) rows[i].push_back(rhs[i]);
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < m; ++c) {
        std::size_t sel = m;
        for (std::size_t i = r; i < m; ++i)
            if (!rows[i][c].is_zero()) {
                sel = i;
                break;
            }
        if (sel == m) continue;
        std::swap(rows[r], rows[sel]);
        F inv = rows[r][c];
        for (std::size_t j = c; j <= ncols; ++j)
            if (!rows[r][j].is_zero()) rows[r][j] = rows[r][j] / inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r || rows[i][c].is_zero()) continue;
            F f = rows[i][c];
            for (std::size_t j = c; j <= ncols; ++j)
                if (!rows[r][j].is_zero()) rows[i][j] = rows[i][j] - f * rows[r][j];
        }
        pivot_col.push_back(c);
        ++r;
    }
    LinearSolution<F> out;
    for (std::size_t i = r; i < m; ++i)
        if (!rows[i][ncols].is_zero()) {
            out.status = LinearSolution<F>::Status::Inconsistent;
            return out;
        }
    if (r < ncols) {
        out.status = LinearSolution<F>::Status::Underdetermined;
        return out;
    }
    out.status = LinearSolution<F>::Status::Unique;
    out.x.assign(ncols, zero);
    for (std::size_t i = 0; i < r; ++i) out.x[pivot_col[i]] = rows[i][ncols];
    return out;
}

}  // namespace insep

#endif  // INSEP_LINALG_HPP
