#include "kec/lp.hpp"

#include "kec/error.hpp"

#include <algorithm>

namespace kec {

int LpProblem::add_var(const Rat& cost, const Rat& lo, std::optional<Rat> hi) {
    objective.push_back(cost);
    lower.push_back(lo);
    upper.push_back(std::move(hi));
    return nvars++;
}

void LpProblem::validate() const {
    KEC_CHECK(static_cast<int>(objective.size()) == nvars &&
                  static_cast<int>(lower.size()) == nvars &&
                  static_cast<int>(upper.size()) == nvars,
              "lp problem arrays out of sync");
    for (int j = 0; j < nvars; ++j)
        if (upper[j]) KEC_CHECK(lower[j] <= *upper[j], "lp bound lower > upper");
    for (const LpRow& r : rows)
        for (auto& [j, c] : r.coeffs) {
            KEC_CHECK(j >= 0 && j < nvars, "lp row references bad variable");
            (void)c;
        }
}

bool lp_point_feasible(const LpProblem& p, const RatVec& x) {
    if (static_cast<int>(x.size()) != p.nvars) return false;
    for (int j = 0; j < p.nvars; ++j) {
        if (x[j] < p.lower[j]) return false;
        if (p.upper[j] && x[j] > *p.upper[j]) return false;
    }
    for (const LpRow& r : p.rows) {
        Rat act(0);
        for (auto& [j, c] : r.coeffs) act += c * x[j];
        if (act < r.rhs) return false;
    }
    return true;
}

Rat lp_objective(const LpProblem& p, const RatVec& x) {
    Rat obj(0);
    for (int j = 0; j < p.nvars; ++j) obj += p.objective[j] * x[j];
    return obj;
}

namespace {

// Equality form: columns are the structural variables followed by one
// surplus per row (A x - s = b, s in [0, inf)), plus phase-1 artificials at
// the end when cold-starting.
class Simplex {
public:
    explicit Simplex(const LpProblem& p) : p_(p) {
        p.validate();
        m_ = static_cast<int>(p.rows.size());
        ns_ = p.nvars;
        ncols_ = ns_ + m_;
        colmat_.assign(ncols_, RatVec(m_, Rat(0)));
        for (int i = 0; i < m_; ++i) {
            for (auto& [j, c] : p.rows[i].coeffs) colmat_[j][i] += c;
            colmat_[ns_ + i][i] = Rat(-1);
        }
        lo_.assign(ncols_, Rat(0));
        hi_.assign(ncols_, std::nullopt);
        for (int j = 0; j < ns_; ++j) {
            lo_[j] = p.lower[j];
            hi_[j] = p.upper[j];
        }
        b_.resize(m_);
        for (int i = 0; i < m_; ++i) b_[i] = p.rows[i].rhs;
    }

    LpOutcome run_cold();
    LpOutcome run_warm(const RatVec& x0);

private:
    const LpProblem& p_;
    int m_ = 0, ns_ = 0, ncols_ = 0;
    RatMat colmat_; // column-major equality matrix, m_ entries per column
    RatVec lo_;
    std::vector<std::optional<Rat>> hi_;
    RatVec b_;

    // simplex state
    std::vector<int> basis_;            // column per row
    std::vector<VarStatus> stat_;       // per column
    RatVec x_;                          // per column
    RatMat tab_;                        // row-major, m_ x ncols_: Binv * M
    int n_art_ = 0;

    bool fixed(int j) const { return hi_[j] && lo_[j] == *hi_[j]; }

    void build_tableau_from_basis();
    // Runs Bland pivots for the given costs; returns the entering column of
    // an unbounded direction, or -1 at optimality.
    int optimize(const RatVec& cost);
    LpOutcome finish();
    LpInfeasible extract_farkas(const RatVec& phase1_cost) const;
    LpUnbounded extract_ray(int enter) const;
};

void Simplex::build_tableau_from_basis() {
    // invert B by eliminating [B | I], then tab = Binv * M
    RatMat aug(m_, RatVec(2 * m_, Rat(0)));
    for (int i = 0; i < m_; ++i) {
        for (int r = 0; r < m_; ++r) aug[r][i] = colmat_[basis_[i]][r];
        aug[i][m_ + i] = Rat(1);
    }
    for (int col = 0; col < m_; ++col) {
        int piv = -1;
        for (int i = col; i < m_; ++i)
            if (aug[i][col].sgn() != 0) { piv = i; break; }
        KEC_CHECK(piv >= 0, "singular basis");
        std::swap(aug[col], aug[piv]);
        Rat d = aug[col][col];
        for (int j = 0; j < 2 * m_; ++j) aug[col][j] /= d;
        for (int i = 0; i < m_; ++i) {
            if (i == col || aug[i][col].sgn() == 0) continue;
            Rat f = aug[i][col];
            for (int j = 0; j < 2 * m_; ++j) aug[i][j] -= f * aug[col][j];
        }
    }
    tab_.assign(m_, RatVec(ncols_, Rat(0)));
    for (int i = 0; i < m_; ++i)
        for (int j = 0; j < ncols_; ++j) {
            Rat v(0);
            for (int k = 0; k < m_; ++k) v += aug[i][m_ + k] * colmat_[j][k];
            tab_[i][j] = v;
        }
}

int Simplex::optimize(const RatVec& cost) {
    while (true) {
        // reduced costs z_j = c_j - c_B . tab_col(j)
        RatVec z = cost;
        for (int i = 0; i < m_; ++i) {
            const Rat& cb = cost[basis_[i]];
            if (cb.sgn() == 0) continue;
            for (int j = 0; j < ncols_; ++j)
                if (tab_[i][j].sgn() != 0) z[j] -= cb * tab_[i][j];
        }
        int enter = -1;
        int dir = 0;
        for (int j = 0; j < ncols_; ++j) {
            if (stat_[j] == VarStatus::Basic || stat_[j] == VarStatus::FixedBound) continue;
            if (stat_[j] == VarStatus::AtLower && z[j].sgn() < 0) { enter = j; dir = 1; break; }
            if (stat_[j] == VarStatus::AtUpper && z[j].sgn() > 0) { enter = j; dir = -1; break; }
        }
        if (enter < 0) return -1;

        // ratio test: entering moves by sigma*t, basics by -sigma*tab[i][enter]*t.
        // Bland's leaving rule: among all blocking variables (the entering
        // one's opposite bound counts as a block) take the least index.
        Rat sigma(dir);
        bool have_t = false;
        Rat tbest(0);
        int leave_row = -1; // -1 means bound flip of the entering column
        int leave_var = -1;
        if (hi_[enter]) {
            tbest = *hi_[enter] - lo_[enter];
            leave_var = enter;
            have_t = true;
        }
        for (int i = 0; i < m_; ++i) {
            Rat d = sigma * tab_[i][enter];
            if (d.sgn() == 0) continue;
            int bcol = basis_[i];
            Rat lim;
            if (d.sgn() > 0) {
                lim = (x_[bcol] - lo_[bcol]) / d;
            } else {
                if (!hi_[bcol]) continue;
                lim = (*hi_[bcol] - x_[bcol]) / -d;
            }
            if (!have_t || lim < tbest || (lim == tbest && bcol < leave_var)) {
                tbest = lim;
                leave_row = i;
                leave_var = bcol;
                have_t = true;
            }
        }
        if (!have_t) return enter; // unbounded

        // apply the move
        for (int i = 0; i < m_; ++i) {
            Rat d = sigma * tab_[i][enter];
            if (d.sgn() != 0) x_[basis_[i]] -= d * tbest;
        }
        x_[enter] += sigma * tbest;

        if (leave_row < 0) {
            stat_[enter] = (dir > 0) ? VarStatus::AtUpper : VarStatus::AtLower;
            continue;
        }
        int leave = basis_[leave_row];
        Rat dlv = sigma * tab_[leave_row][enter];
        stat_[leave] = (dlv.sgn() > 0) ? VarStatus::AtLower : VarStatus::AtUpper;
        if (fixed(leave)) stat_[leave] = VarStatus::FixedBound;
        stat_[enter] = VarStatus::Basic;
        basis_[leave_row] = enter;
        Rat piv = tab_[leave_row][enter];
        for (int j = 0; j < ncols_; ++j) tab_[leave_row][j] /= piv;
        for (int i = 0; i < m_; ++i) {
            if (i == leave_row || tab_[i][enter].sgn() == 0) continue;
            Rat f = tab_[i][enter];
            for (int j = 0; j < ncols_; ++j) tab_[i][j] -= f * tab_[leave_row][j];
        }
    }
}

LpInfeasible Simplex::extract_farkas(const RatVec& cost) const {
    // duals pi = c_B . Binv; Binv columns recovered from the tableau columns
    // of the initial (slack or artificial) basis of each row.
    RatVec pi(m_, Rat(0));
    for (int i = 0; i < m_; ++i) {
        // column that started as row i's basic column
        int c_slack = ns_ + i;
        for (int r = 0; r < m_; ++r) {
            const Rat& cb = cost[basis_[r]];
            if (cb.sgn() == 0) continue;
            pi[i] += cb * tab_[r][c_slack];
        }
        pi[i] = -pi[i]; // slack column is -e_i
    }
    // verify: pi >= 0 and sup over the box of (pi^T A) x is < pi^T b
    Rat rhs(0), sup(0);
    for (int i = 0; i < m_; ++i) {
        KEC_CHECK(pi[i].sgn() >= 0, "farkas weight negative");
        rhs += pi[i] * b_[i];
    }
    for (int j = 0; j < ns_; ++j) {
        Rat w(0);
        for (int i = 0; i < m_; ++i)
            if (pi[i].sgn() != 0) w += pi[i] * colmat_[j][i];
        if (w.sgn() > 0) {
            KEC_CHECK(hi_[j].has_value(), "farkas certificate unbounded coordinate");
            sup += w * *hi_[j];
        } else if (w.sgn() < 0) {
            sup += w * lo_[j];
        }
    }
    KEC_CHECK(sup < rhs, "farkas certificate does not certify");
    return LpInfeasible{pi};
}

LpUnbounded Simplex::extract_ray(int enter) const {
    RatVec ray(ns_, Rat(0));
    if (enter < ns_) ray[enter] = Rat(1);
    for (int i = 0; i < m_; ++i) {
        int bcol = basis_[i];
        if (bcol < ns_) ray[bcol] = -tab_[i][enter];
    }
    // verify: direction keeps all rows satisfied, respects bounds, and has
    // strictly negative cost
    Rat c(0);
    for (int j = 0; j < ns_; ++j) {
        c += p_.objective[j] * ray[j];
        KEC_CHECK(ray[j].sgn() >= 0, "ray decreases a bounded-below variable");
        if (ray[j].sgn() > 0) KEC_CHECK(!hi_[j], "ray increases a bounded variable");
    }
    KEC_CHECK(c.sgn() < 0, "ray is not improving");
    for (int i = 0; i < m_; ++i) {
        Rat a(0);
        for (auto& [j, cf] : p_.rows[i].coeffs) a += cf * ray[j];
        KEC_CHECK(a.sgn() >= 0, "ray violates a row");
    }
    return LpUnbounded{ray};
}

LpOutcome Simplex::run_cold() {
    // slack basis; structural variables at their lower bound
    stat_.assign(ncols_, VarStatus::AtLower);
    x_.assign(ncols_, Rat(0));
    for (int j = 0; j < ns_; ++j) {
        x_[j] = lo_[j];
        if (fixed(j)) stat_[j] = VarStatus::FixedBound;
    }
    RatVec resid = b_;
    for (int j = 0; j < ns_; ++j) {
        if (x_[j].sgn() == 0) continue;
        for (int i = 0; i < m_; ++i)
            if (colmat_[j][i].sgn() != 0) resid[i] -= colmat_[j][i] * x_[j];
    }
    basis_.resize(m_);
    tab_.assign(m_, RatVec(ncols_, Rat(0)));
    bool any_art = false;
    for (int i = 0; i < m_; ++i)
        if (resid[i].sgn() > 0) any_art = true;

    int total = ncols_ + (any_art ? m_ : 0);
    RatVec cost1(total, Rat(0));
    if (any_art) {
        for (auto& col : tab_) col.resize(total, Rat(0));
        for (int j = 0; j < m_; ++j) {
            colmat_.push_back(RatVec(m_, Rat(0)));
            lo_.push_back(Rat(0));
            hi_.push_back(std::nullopt);
            stat_.push_back(VarStatus::AtLower);
            x_.push_back(Rat(0));
        }
        n_art_ = m_;
    }
    for (int i = 0; i < m_; ++i) {
        if (resid[i].sgn() > 0) {
            int a = ncols_ + i;
            colmat_[a][i] = Rat(1);
            basis_[i] = a;
            stat_[a] = VarStatus::Basic;
            x_[a] = resid[i];
            cost1[a] = Rat(1);
            for (int j = 0; j < static_cast<int>(colmat_.size()); ++j) tab_[i][j] = colmat_[j][i];
        } else {
            int s = ns_ + i;
            basis_[i] = s;
            stat_[s] = VarStatus::Basic;
            x_[s] = -resid[i];
            for (int j = 0; j < static_cast<int>(colmat_.size()); ++j) tab_[i][j] = -colmat_[j][i];
        }
    }
    int old_ncols = ncols_;
    ncols_ = static_cast<int>(colmat_.size());

    if (any_art) {
        int ub = optimize(cost1);
        KEC_CHECK(ub < 0, "phase 1 cannot be unbounded");
        Rat inf(0);
        for (int i = 0; i < m_; ++i)
            if (basis_[i] >= old_ncols) inf += x_[basis_[i]];
        if (inf.sgn() > 0) return extract_farkas(cost1);
        // pivot artificials out where possible; fix stuck ones at zero
        for (int i = 0; i < m_; ++i) {
            if (basis_[i] < old_ncols) continue;
            int pivcol = -1;
            for (int j = 0; j < old_ncols; ++j) {
                if (stat_[j] == VarStatus::Basic) continue;
                if (tab_[i][j].sgn() != 0) { pivcol = j; break; }
            }
            if (pivcol < 0) continue; // redundant row; artificial pinned below
            int art = basis_[i];
            stat_[art] = VarStatus::AtLower;
            hi_[art] = Rat(0);
            stat_[pivcol] = VarStatus::Basic;
            basis_[i] = pivcol;
            Rat piv = tab_[i][pivcol];
            for (int j = 0; j < ncols_; ++j) tab_[i][j] /= piv;
            for (int r = 0; r < m_; ++r) {
                if (r == i || tab_[r][pivcol].sgn() == 0) continue;
                Rat f = tab_[r][pivcol];
                for (int j = 0; j < ncols_; ++j) tab_[r][j] -= f * tab_[i][j];
            }
        }
        for (int a = old_ncols; a < ncols_; ++a) {
            hi_[a] = Rat(0); // never usable again
            if (stat_[a] != VarStatus::Basic) stat_[a] = VarStatus::FixedBound;
        }
    }

    RatVec cost2(ncols_, Rat(0));
    for (int j = 0; j < ns_; ++j) cost2[j] = p_.objective[j];
    int ub = optimize(cost2);
    if (ub >= 0) return extract_ray(ub);
    return finish();
}

LpOutcome Simplex::run_warm(const RatVec& x0) {
    KEC_CHECK(lp_point_feasible(p_, x0), "warm start point is not feasible");
    x_.assign(ncols_, Rat(0));
    for (int j = 0; j < ns_; ++j) x_[j] = x0[j];
    for (int i = 0; i < m_; ++i) {
        Rat act(0);
        for (auto& [j, c] : p_.rows[i].coeffs) act += c * x0[j];
        x_[ns_ + i] = act - b_[i];
    }

    auto strictly_inside = [&](int j) {
        if (x_[j] <= lo_[j]) return false;
        return !hi_[j] || x_[j] < *hi_[j];
    };

    // Purify: while the strictly-inside columns are dependent, move along a
    // null direction (never increasing the objective) until one of them hits
    // a bound.
    while (true) {
        std::vector<int> F;
        for (int j = 0; j < ncols_; ++j)
            if (strictly_inside(j)) F.push_back(j);
        RatMat mf(m_, RatVec(F.size(), Rat(0)));
        for (size_t c = 0; c < F.size(); ++c)
            for (int i = 0; i < m_; ++i) mf[i][c] = colmat_[F[c]][i];
        auto nv = rat_null_vector(mf, static_cast<int>(F.size()));
        if (!nv) {
            // F is independent; extend to a basis (slack columns first, then
            // the rest) and hand over to the simplex proper.
            std::vector<int> cand;
            for (int i = 0; i < m_; ++i) cand.push_back(ns_ + i);
            for (int j = 0; j < ns_; ++j) cand.push_back(j);
            RatMat full(m_, RatVec(ncols_, Rat(0)));
            for (int j = 0; j < ncols_; ++j)
                for (int i = 0; i < m_; ++i) full[i][j] = colmat_[j][i];
            basis_ = rat_extend_basis(full, ncols_, F, cand);
            KEC_CHECK(static_cast<int>(basis_.size()) == m_, "could not complete basis");
            stat_.assign(ncols_, VarStatus::AtLower);
            for (int j = 0; j < ncols_; ++j) {
                if (fixed(j)) {
                    stat_[j] = VarStatus::FixedBound;
                } else if (hi_[j] && x_[j] == *hi_[j]) {
                    stat_[j] = VarStatus::AtUpper;
                }
            }
            for (int c : basis_) stat_[c] = VarStatus::Basic;
            build_tableau_from_basis();
            break;
        }
        RatVec d(ncols_, Rat(0));
        for (size_t c = 0; c < F.size(); ++c) d[F[c]] = (*nv)[c];
        Rat dc(0);
        for (int j = 0; j < ns_; ++j) dc += p_.objective[j] * d[j];
        if (dc.sgn() > 0)
            for (Rat& v : d) v = -v;

        for (int attempt = 0; attempt < 2; ++attempt) {
            bool have = false;
            Rat t(0);
            for (int j : F) {
                if (d[j].sgn() > 0 && hi_[j]) {
                    Rat lim = (*hi_[j] - x_[j]) / d[j];
                    if (!have || lim < t) { t = lim; have = true; }
                } else if (d[j].sgn() < 0) {
                    Rat lim = (x_[j] - lo_[j]) / -d[j];
                    if (!have || lim < t) { t = lim; have = true; }
                }
            }
            if (have) {
                for (int j : F) x_[j] += d[j] * t;
                break;
            }
            if (dc.sgn() < 0) {
                RatVec ray(d.begin(), d.begin() + ns_);
                // null directions satisfy A ray = ray_slack with slack part
                // unbounded above, so this is a true improving ray
                Rat c(0);
                for (int j = 0; j < ns_; ++j) c += p_.objective[j] * ray[j];
                KEC_CHECK(c.sgn() < 0, "bad ray in purification");
                return LpUnbounded{ray};
            }
            // cost-neutral: the opposite direction must hit a bound
            for (Rat& v : d) v = -v;
            KEC_CHECK(attempt == 0, "free line in purification");
        }
    }

    RatVec cost2(ncols_, Rat(0));
    for (int j = 0; j < ns_; ++j) cost2[j] = p_.objective[j];
    int ub = optimize(cost2);
    if (ub >= 0) return extract_ray(ub);
    return finish();
}

LpOutcome Simplex::finish() {
    BasicSolution out;
    out.x.assign(x_.begin(), x_.begin() + ns_);
    out.objective = lp_objective(p_, out.x);
    out.status.resize(ns_);
    for (int j = 0; j < ns_; ++j) out.status[j] = stat_[j];
    // exhaustive exact feasibility re-check, plus dual feasibility of the
    // final basis (reduced-cost signs)
    KEC_CHECK(lp_point_feasible(p_, out.x), "simplex returned infeasible point");
    RatVec cost2(ncols_, Rat(0));
    for (int j = 0; j < ns_; ++j) cost2[j] = p_.objective[j];
    RatVec z = cost2;
    for (int i = 0; i < m_; ++i) {
        const Rat& cb = cost2[basis_[i]];
        if (cb.sgn() == 0) continue;
        for (int j = 0; j < ncols_; ++j)
            if (tab_[i][j].sgn() != 0) z[j] -= cb * tab_[i][j];
    }
    for (int j = 0; j < ncols_; ++j) {
        if (stat_[j] == VarStatus::AtLower) KEC_CHECK(z[j].sgn() >= 0, "dual infeasible at lower");
        if (stat_[j] == VarStatus::AtUpper) KEC_CHECK(z[j].sgn() <= 0, "dual infeasible at upper");
    }
    for (int i = 0; i < m_; ++i) {
        Rat act(0);
        for (auto& [j, c] : p_.rows[i].coeffs) act += c * out.x[j];
        if (act == p_.rows[i].rhs) out.tight_rows.push_back(i);
    }
    return out;
}

} // namespace

bool certifies_vertex(const LpProblem& p, const BasicSolution& sol) {
    RatMat tight;
    for (int j = 0; j < p.nvars; ++j) {
        bool at_bound = sol.x[j] == p.lower[j] || (p.upper[j] && sol.x[j] == *p.upper[j]);
        if (at_bound) {
            RatVec row(p.nvars, Rat(0));
            row[j] = Rat(1);
            tight.push_back(std::move(row));
        }
    }
    for (int i = 0; i < static_cast<int>(p.rows.size()); ++i) {
        Rat act(0);
        for (auto& [j, c] : p.rows[i].coeffs) act += c * sol.x[j];
        if (act == p.rows[i].rhs) {
            RatVec row(p.nvars, Rat(0));
            for (auto& [j, c] : p.rows[i].coeffs) row[j] += c;
            tight.push_back(std::move(row));
        }
    }
    return rat_rank(tight) == p.nvars;
}

LpOutcome solve_vertex(const LpProblem& p) {
    Simplex s(p);
    return s.run_cold();
}

LpOutcome solve_vertex(const LpProblem& p, const RatVec& feasible_point) {
    Simplex s(p);
    return s.run_warm(feasible_point);
}

LpOutcome resolve_with_new_rows(const BasicSolution& prev, const LpProblem& p,
                                const std::optional<RatVec>& feasible_point) {
    KEC_CHECK(static_cast<int>(prev.x.size()) == p.nvars,
              "resolve: variable count changed");
    if (lp_point_feasible(p, prev.x)) {
        BasicSolution out = prev;
        out.tight_rows.clear();
        for (int i = 0; i < static_cast<int>(p.rows.size()); ++i) {
            Rat act(0);
            for (auto& [j, c] : p.rows[i].coeffs) act += c * prev.x[j];
            if (act == p.rows[i].rhs) out.tight_rows.push_back(i);
        }
        return out;
    }
    if (feasible_point) return solve_vertex(p, *feasible_point);
    return solve_vertex(p);
}

} // namespace kec
