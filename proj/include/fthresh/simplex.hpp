#pragma once

#include "fthresh/linalg.hpp"

#include <cstddef>
#include <optional>
#include <utility>

namespace fthresh {

enum class Sense { Ge, Le, Eq };

struct Constraint {
    QVector normal;
    Rational offset;
    Sense sense{Sense::Ge};
};

// Maximization of a linear objective over sign-unrestricted variables.
struct LinearProgram {
    QVector objective;
    std::vector<Constraint> constraints;
};

struct LPOutcome {
    enum class Kind { Optimal, Infeasible, Unbounded };
    Kind kind{Kind::Infeasible};
    Rational value;
    QVector point;
};

namespace detail {

// Dense exact simplex tableau over Q: maximize cost over nonnegative
// variables subject to equality rows with rhs >= 0. Bland's rule for both
// the entering and the leaving variable, so cycling cannot occur.
class SimplexTableau {
public:
    SimplexTableau(std::vector<QVector> rows, std::vector<std::size_t> basis)
        : tab_(std::move(rows)), basis_(std::move(basis)) {
        m_ = tab_.size();
        n_ = m_ == 0 ? 0 : tab_[0].size() - 1;  // last column is the rhs
    }

    std::size_t rows() const { return m_; }
    const std::vector<std::size_t>& basis() const { return basis_; }
    Rational rhs(std::size_t r) const { return tab_[r][n_]; }

    void set_objective(const QVector& cost) {
        zrow_.assign(n_ + 1, Rational(0));
        for (std::size_t c = 0; c <= n_; ++c) {
            Rational z = 0;
            for (std::size_t r = 0; r < m_; ++r) {
                const Rational& cb = cost[basis_[r]];
                if (cb != 0) z += cb * tab_[r][c];
            }
            if (c < n_) z -= cost[c];
            zrow_[c] = std::move(z);
        }
    }

    // Entering columns restricted to indices < allowed (used to lock out
    // phase-1 artificials). Returns false on an unbounded ray.
    bool maximize(std::size_t allowed) {
        for (;;) {
            std::size_t enter = n_;
            for (std::size_t j = 0; j < allowed; ++j) {
                if (zrow_[j] < 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == n_) return true;
            std::size_t leave = m_;
            Rational best;
            for (std::size_t r = 0; r < m_; ++r) {
                if (tab_[r][enter] <= 0) continue;
                Rational ratio = tab_[r][n_] / tab_[r][enter];
                if (leave == m_ || ratio < best ||
                    (ratio == best && basis_[r] < basis_[leave])) {
                    leave = r;
                    best = std::move(ratio);
                }
            }
            if (leave == m_) return false;
            pivot(leave, enter);
        }
    }

    Rational objective_value() const { return zrow_[n_]; }

    void pivot(std::size_t pr, std::size_t pc) {
        QVector& prow = tab_[pr];
        const Rational piv = prow[pc];
        for (auto& x : prow) x /= piv;
        for (std::size_t r = 0; r < m_; ++r) {
            if (r == pr) continue;
            const Rational f = tab_[r][pc];
            if (f == 0) continue;
            for (std::size_t c = 0; c <= n_; ++c) tab_[r][c] -= f * prow[c];
        }
        if (!zrow_.empty() && zrow_[pc] != 0) {
            const Rational f = zrow_[pc];
            for (std::size_t c = 0; c <= n_; ++c) zrow_[c] -= f * prow[c];
        }
        basis_[pr] = pc;
    }

    Rational coeff(std::size_t r, std::size_t c) const { return tab_[r][c]; }

    void drop_row(std::size_t r) {
        tab_.erase(tab_.begin() + static_cast<std::ptrdiff_t>(r));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
        --m_;
    }

private:
    std::vector<QVector> tab_;
    std::vector<std::size_t> basis_;
    QVector zrow_;
    std::size_t m_{0}, n_{0};
};

}  // namespace detail

// Exact two-phase simplex. Free variables are split as x = x+ - x-,
// inequalities get one slack each, feasibility is decided with
// artificial variables.
inline LPOutcome lp_solve(const LinearProgram& lp) {
    const std::size_t d = lp.objective.size();
    const std::size_t m = lp.constraints.size();
    std::size_t n_slack = 0;
    for (const auto& c : lp.constraints) {
        detail::check_same_size(c.normal.size(), d, "lp_solve");
        if (c.sense != Sense::Eq) ++n_slack;
    }
    const std::size_t n = 2 * d + n_slack;        // structural columns
    const std::size_t n_total = n + m;            // plus one artificial per row

    std::vector<QVector> rows(m, QVector(n_total + 1, Rational(0)));
    std::size_t slack = 2 * d;
    for (std::size_t i = 0; i < m; ++i) {
        const auto& c = lp.constraints[i];
        for (std::size_t k = 0; k < d; ++k) {
            rows[i][k] = c.normal[k];
            rows[i][d + k] = -c.normal[k];
        }
        if (c.sense == Sense::Ge)
            rows[i][slack++] = -1;
        else if (c.sense == Sense::Le)
            rows[i][slack++] = 1;
        rows[i][n_total] = c.offset;
        if (rows[i][n_total] < 0)
            for (auto& x : rows[i]) x = -x;
        rows[i][n + i] = 1;  // artificial
    }

    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;
    detail::SimplexTableau tab(std::move(rows), std::move(basis));

    QVector phase1(n_total, Rational(0));
    for (std::size_t i = 0; i < m; ++i) phase1[n + i] = -1;
    tab.set_objective(phase1);
    tab.maximize(n);  // objective bounded above by 0, never unbounded
    if (tab.objective_value() < 0) return {LPOutcome::Kind::Infeasible, {}, {}};

    // Drive leftover artificials out of the basis (degenerate rows).
    for (std::size_t r = 0; r < tab.rows();) {
        if (tab.basis()[r] < n) {
            ++r;
            continue;
        }
        std::size_t pc = n;
        for (std::size_t j = 0; j < n; ++j) {
            if (tab.coeff(r, j) != 0) {
                pc = j;
                break;
            }
        }
        if (pc == n) {
            tab.drop_row(r);  // redundant constraint
        } else {
            tab.pivot(r, pc);
            ++r;
        }
    }

    QVector phase2(n_total, Rational(0));
    for (std::size_t k = 0; k < d; ++k) {
        phase2[k] = lp.objective[k];
        phase2[d + k] = -lp.objective[k];
    }
    tab.set_objective(phase2);
    if (!tab.maximize(n)) return {LPOutcome::Kind::Unbounded, {}, {}};

    QVector vals(n_total, Rational(0));
    for (std::size_t r = 0; r < tab.rows(); ++r) vals[tab.basis()[r]] = tab.rhs(r);
    QVector point(d);
    for (std::size_t k = 0; k < d; ++k) point[k] = vals[k] - vals[d + k];
    return {LPOutcome::Kind::Optimal, tab.objective_value(), std::move(point)};
}

// A half-space <u, normal> >= offset, strict when marked.
struct HalfSpace {
    QVector normal;
    Rational offset;
    bool strict{false};
};

// Decides strict feasibility by maximizing a slack s capped at 1: each
// strict constraint <u,a> > b becomes <u,a> - s >= b. The region is a
// rational polyhedron, so a strictly feasible point exists iff the
// optimal slack is positive.
inline std::optional<QVector> lp_strict_interior(std::size_t dim,
                                                 const std::vector<HalfSpace>& halfspaces) {
    LinearProgram lp;
    lp.objective.assign(dim + 1, Rational(0));
    lp.objective[dim] = 1;
    for (const auto& h : halfspaces) {
        detail::check_same_size(h.normal.size(), dim, "lp_strict_interior");
        Constraint c;
        c.normal = h.normal;
        c.normal.push_back(h.strict ? Rational(-1) : Rational(0));
        c.offset = h.offset;
        c.sense = Sense::Ge;
        lp.constraints.push_back(std::move(c));
    }
    Constraint cap;
    cap.normal.assign(dim + 1, Rational(0));
    cap.normal[dim] = 1;
    cap.offset = 1;
    cap.sense = Sense::Le;
    lp.constraints.push_back(std::move(cap));

    const LPOutcome out = lp_solve(lp);
    if (out.kind == LPOutcome::Kind::Unbounded)
        throw Error("lp_strict_interior: capped slack LP cannot be unbounded");
    if (out.kind != LPOutcome::Kind::Optimal || out.value <= 0) return std::nullopt;
    return QVector(out.point.begin(), out.point.begin() + static_cast<std::ptrdiff_t>(dim));
}

}  // namespace fthresh
