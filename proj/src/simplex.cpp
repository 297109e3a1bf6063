#include "iso/simplex.hpp"

#include <stdexcept>

namespace iso {

namespace {

// Dense two-phase tableau. Columns: structural vars, then slack/surplus,
// then one artificial per row (kept through phase 2 to read off duals).
class Tableau {
public:
    explicit Tableau(const LinearProgram& lp) : lp_(lp), m_(static_cast<int>(lp.rows.size())) {
        n_struct_ = lp.num_vars;
        // Count slack/surplus columns.
        int n_slack = 0;
        for (const auto& row : lp.rows)
            if (row.rel != Relation::Equal) ++n_slack;
        n_ = n_struct_ + n_slack + m_;
        art0_ = n_struct_ + n_slack;

        a_.assign(m_, std::vector<Rat>(n_, Rat(0)));
        b_.assign(m_, Rat(0));
        basis_.assign(m_, -1);

        int slack = n_struct_;
        for (int i = 0; i < m_; ++i) {
            const auto& row = lp.rows[i];
            Rat sign(1);
            Relation rel = row.rel;
            if (row.rhs < 0) {
                sign = -1;
                if (rel == Relation::LessEq)
                    rel = Relation::GreaterEq;
                else if (rel == Relation::GreaterEq)
                    rel = Relation::LessEq;
            }
            for (const auto& [var, coeff] : row.terms) a_[i][var] += sign * coeff;
            b_[i] = sign * row.rhs;
            if (row.rel != Relation::Equal) {
                a_[i][slack] = (rel == Relation::LessEq) ? Rat(1) : Rat(-1);
                ++slack;
            }
            a_[i][art0_ + i] = 1;
            basis_[i] = art0_ + i;
        }
    }

    LpSolution solve() {
        LpSolution sol;

        // Phase 1: minimize the sum of artificials.
        std::vector<Rat> cost(n_, Rat(0));
        for (int i = 0; i < m_; ++i) cost[art0_ + i] = 1;
        init_cost_row(cost);
        iterate(/*allow_artificial=*/true);
        if (obj_ != 0) {
            sol.status = LpStatus::Infeasible;
            return sol;
        }
        // Drive leftover basic artificials (value 0) out of the basis, or
        // they could climb back above zero in phase 2. An all-zero row is
        // redundant and its artificial can stay: no pivot ever touches it.
        for (int i = 0; i < m_; ++i) {
            if (basis_[i] < art0_) continue;
            for (int j = 0; j < art0_; ++j)
                if (a_[i][j] != 0) {
                    pivot(i, j);
                    break;
                }
        }

        // Phase 2: the real objective; artificials may not re-enter.
        std::fill(cost.begin(), cost.end(), Rat(0));
        for (const auto& [var, coeff] : lp_.objective) cost[var] += coeff;
        init_cost_row(cost);
        if (!iterate(/*allow_artificial=*/false)) {
            sol.status = LpStatus::Unbounded;
            return sol;
        }

        sol.status = LpStatus::Optimal;
        sol.objective = obj_;
        sol.x.assign(lp_.num_vars, Rat(0));
        for (int i = 0; i < m_; ++i)
            if (basis_[i] < n_struct_) sol.x[basis_[i]] = b_[i];
        sol.duals.assign(m_, Rat(0));
        sol.dual_objective = 0;
        for (int i = 0; i < m_; ++i) {
            // Artificial column i started as e_i with zero phase-2 cost, so
            // its reduced cost is -y_i.
            sol.duals[i] = -d_[art0_ + i];
            sol.dual_objective += sol.duals[i] * b0_[i];
        }
        return sol;
    }

private:
    void init_cost_row(const std::vector<Rat>& cost) {
        cost_ = cost;
        d_ = cost;
        obj_ = 0;
        if (b0_.empty()) b0_ = b_;
        for (int i = 0; i < m_; ++i) {
            const Rat& cb = cost_[basis_[i]];
            if (cb == 0) continue;
            for (int j = 0; j < n_; ++j) d_[j] -= cb * a_[i][j];
            obj_ += cb * b_[i];
        }
    }

    // Returns false when unbounded.
    bool iterate(bool allow_artificial) {
        for (;;) {
            int enter = -1;
            for (int j = 0; j < n_; ++j) {
                if (!allow_artificial && j >= art0_) break;
                if (d_[j] < 0) {
                    enter = j;
                    break; // Bland: lowest index
                }
            }
            if (enter < 0) return true;

            int leave = -1;
            Rat best_ratio;
            for (int i = 0; i < m_; ++i) {
                if (a_[i][enter] <= 0) continue;
                Rat ratio = b_[i] / a_[i][enter];
                if (leave < 0 || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[i] < basis_[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (leave < 0) return false;
            pivot(leave, enter);
        }
    }

    void pivot(int r, int c) {
        Rat inv = 1 / a_[r][c];
        for (int j = 0; j < n_; ++j) a_[r][j] *= inv;
        b_[r] *= inv;
        a_[r][c] = 1;
        for (int i = 0; i < m_; ++i) {
            if (i == r || a_[i][c] == 0) continue;
            Rat f = a_[i][c];
            for (int j = 0; j < n_; ++j) a_[i][j] -= f * a_[r][j];
            b_[i] -= f * b_[r];
            a_[i][c] = 0;
        }
        if (d_[c] != 0) {
            Rat f = d_[c];
            for (int j = 0; j < n_; ++j) d_[j] -= f * a_[r][j];
            obj_ += f * b_[r];
            d_[c] = 0;
        }
        basis_[r] = c;
    }

    const LinearProgram& lp_;
    int m_;
    int n_ = 0;
    int n_struct_ = 0;
    int art0_ = 0;
    std::vector<std::vector<Rat>> a_;
    std::vector<Rat> b_, b0_;
    std::vector<int> basis_;
    std::vector<Rat> cost_, d_;
    Rat obj_;
};

} // namespace

LpSolution solve_simplex(const LinearProgram& lp) {
    for (const auto& row : lp.rows)
        for (const auto& [var, coeff] : row.terms)
            if (var < 0 || var >= lp.num_vars) throw std::invalid_argument("bad variable index");
    Tableau t(lp);
    return t.solve();
}

} // namespace iso
