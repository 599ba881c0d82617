// lp.hpp - exact-rational simplex for small linear programs
//
// Solves  maximize c.x  subject to  A x <= b,  x >= 0  with b >= 0, so the
// all-slack basis is feasible from the start.  The dictionary (tableau) is
// kept in exact rationals and pivots follow Bland's rule, which guarantees
// termination.  The dual solution is read off the final reduced costs of the
// slack columns and certifies optimality; callers are expected to verify it.
#pragma once

#include <cstdint>
#include <vector>

#include "util.hpp"

namespace hyperslice {

struct LpSolution {
    rational objective;
    std::vector<rational> x;  // one per column of A
    std::vector<rational> y;  // one per row of A (the dual)
};

namespace detail {

// Dense dictionary with rows = basic variables, columns = all variables.
// Variable ids: 0..nv-1 structural, nv..nv+m-1 slack.
class Dictionary {
  public:
    Dictionary(const std::vector<std::vector<rational>>& a, const std::vector<rational>& b,
               const std::vector<rational>& c)
        : m_(a.size()), nv_(c.size()), basic_(m_), row_(m_, std::vector<rational>(nv_ + m_ + 1)),
          obj_(nv_ + m_ + 1) {
        for (std::size_t i = 0; i < m_; ++i) {
            if (a[i].size() != nv_) throw invalid_query("ragged constraint matrix");
            if (b[i] < 0) throw invalid_query("right-hand sides must be nonnegative");
            basic_[i] = nv_ + i;
            row_[i][nv_ + m_] = b[i];
            for (std::size_t j = 0; j < nv_; ++j) row_[i][j] = a[i][j];
            row_[i][nv_ + i] = 1;
        }
        for (std::size_t j = 0; j < nv_; ++j) obj_[j] = c[j];
    }

    void solve() {
        while (true) {
            // Bland: entering variable is the least-index column with a
            // positive reduced cost.
            std::size_t enter = nv_ + m_;
            for (std::size_t j = 0; j < nv_ + m_; ++j)
                if (obj_[j] > 0) { enter = j; break; }
            if (enter == nv_ + m_) return;  // optimal

            // Ratio test; ties broken by least basic variable id (Bland).
            std::size_t leave = m_;
            rational best;
            for (std::size_t i = 0; i < m_; ++i) {
                if (row_[i][enter] <= 0) continue;
                rational ratio = row_[i][nv_ + m_] / row_[i][enter];
                if (leave == m_ || ratio < best ||
                    (ratio == best && basic_[i] < basic_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == m_) throw error("linear program is unbounded");
            pivot(leave, enter);
        }
    }

    LpSolution extract() const {
        LpSolution out;
        out.x.assign(nv_, 0);
        out.y.assign(m_, 0);
        for (std::size_t i = 0; i < m_; ++i)
            if (basic_[i] < nv_) out.x[basic_[i]] = row_[i][nv_ + m_];
        for (std::size_t i = 0; i < m_; ++i) out.y[i] = -obj_[nv_ + i];
        out.objective = -obj_[nv_ + m_];
        return out;
    }

  private:
    void pivot(std::size_t r, std::size_t enter) {
        const rational p = row_[r][enter];
        for (auto& v : row_[r]) v /= p;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r) continue;
            const rational f = row_[i][enter];
            if (f == 0) continue;
            for (std::size_t j = 0; j <= nv_ + m_; ++j) row_[i][j] -= f * row_[r][j];
        }
        const rational f = obj_[enter];
        if (f != 0)
            for (std::size_t j = 0; j <= nv_ + m_; ++j) obj_[j] -= f * row_[r][j];
        basic_[r] = enter;
    }

    std::size_t m_, nv_;
    std::vector<std::size_t> basic_;
    std::vector<std::vector<rational>> row_;  // each row: coefficients | rhs
    std::vector<rational> obj_;               // reduced costs | -objective
};

}  // namespace detail

// Maximizes c.x subject to A x <= b, x >= 0 (with b >= 0) and returns the
// optimum together with the dual vector.
inline LpSolution simplex_max(const std::vector<std::vector<rational>>& a,
                              const std::vector<rational>& b, const std::vector<rational>& c) {
    detail::Dictionary d(a, b, c);
    d.solve();
    return d.extract();
}

// Verifies the optimality certificate: y >= 0, A^T y >= c, and b.y = c.x.
// Returns false instead of throwing so callers can decide severity.
inline bool check_duality(const std::vector<std::vector<rational>>& a,
                          const std::vector<rational>& b, const std::vector<rational>& c,
                          const LpSolution& s) {
    const std::size_t m = a.size(), nv = c.size();
    if (s.x.size() != nv || s.y.size() != m) return false;
    rational primal = 0, dual = 0;
    for (std::size_t j = 0; j < nv; ++j) {
        if (s.x[j] < 0) return false;
        primal += c[j] * s.x[j];
    }
    for (std::size_t i = 0; i < m; ++i) {
        if (s.y[i] < 0) return false;
        dual += b[i] * s.y[i];
        rational lhs = 0;
        for (std::size_t j = 0; j < nv; ++j) lhs += a[i][j] * s.x[j];
        if (lhs > b[i]) return false;
    }
    for (std::size_t j = 0; j < nv; ++j) {
        rational col = 0;
        for (std::size_t i = 0; i < m; ++i) col += a[i][j] * s.y[i];
        if (col < c[j]) return false;
    }
    return primal == s.objective && dual == s.objective;
}

}  // namespace hyperslice
