#include "obsprob/extension.hpp"

#include <stdexcept>
#include <utility>

namespace obsprob {

LinearSystem build_system(const ObservedDistribution& obs) {
    const Frame& f = obs.frame;
    if (common_refinement(f).parts.size() != f.space->size()) {
        throw std::invalid_argument(
            "frame has fat outcomes; normalize before building the system");
    }

    LinearSystem sys;
    sys.space = f.space;
    const std::size_t n = f.space->size();
    for (std::size_t i = 0; i < f.ensembles.size(); ++i) {
        const Ensemble& ens = f.ensembles[i];
        for (std::size_t k = 0; k < ens.partition.parts.size(); ++k) {
            std::vector<Scalar> row(n, Scalar(0));
            for (std::size_t w : ens.partition.parts[k].indices()) row[w] = Scalar(1);
            sys.coeffs.push_back(std::move(row));
            sys.rhs.push_back(obs.part_prob(i, k));

            std::string name = ens.name + ":{";
            const auto labels = ens.partition.parts[k].labels();
            for (std::size_t t = 0; t < labels.size(); ++t) {
                if (t) name += ",";
                name += labels[t];
            }
            sys.row_names.push_back(name + "}");
        }
    }
    sys.coeffs.emplace_back(n, Scalar(1));
    sys.rhs.emplace_back(1);
    sys.row_names.emplace_back("total");
    return sys;
}

ExtensionResult solve_signed(const LinearSystem& sys) {
    const std::size_t m = sys.rows();
    const std::size_t n = sys.vars();
    auto a = sys.coeffs;
    auto b = sys.rhs;

    std::vector<std::size_t> pivot_cols;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < m; ++col) {
        std::size_t sel = rank;
        while (sel < m && a[sel][col].is_zero()) ++sel;
        if (sel == m) continue;
        std::swap(a[sel], a[rank]);
        std::swap(b[sel], b[rank]);

        const Scalar d = a[rank][col];
        for (std::size_t j = col; j < n; ++j) a[rank][j] /= d;
        b[rank] /= d;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == rank || a[i][col].is_zero()) continue;
            const Scalar f = a[i][col];
            for (std::size_t j = col; j < n; ++j) a[i][j] -= f * a[rank][j];
            b[i] -= f * b[rank];
        }
        pivot_cols.push_back(col);
        ++rank;
    }

    ExtensionResult res;
    for (std::size_t i = rank; i < m; ++i) {
        // Rows below the rank have all-zero coefficients; a nonzero
        // right-hand side there means the system is contradictory.
        if (!b[i].is_zero()) {
            res.status = SolveStatus::infeasible;
            return res;
        }
    }

    std::vector<Scalar> witness(n, Scalar(0));
    for (std::size_t r = 0; r < rank; ++r) witness[pivot_cols[r]] = b[r];
    res.witness = std::move(witness);

    std::vector<bool> is_pivot(n, false);
    for (std::size_t col : pivot_cols) is_pivot[col] = true;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Scalar> v(n, Scalar(0));
        v[free] = Scalar(1);
        for (std::size_t r = 0; r < rank; ++r) v[pivot_cols[r]] = -a[r][free];
        res.nullspace.push_back(std::move(v));
    }
    res.status = res.nullspace.empty() ? SolveStatus::unique : SolveStatus::family;
    return res;
}

namespace {

/// Dense exact simplex tableau. Starts in phase one (artificial basis);
/// after a feasible phase one the artificial columns can be dropped and
/// an arbitrary objective optimized. Bland's rule everywhere, so no
/// cycling.
class Tableau {
public:
    Tableau(const std::vector<std::vector<Scalar>>& a, const std::vector<Scalar>& b)
        : n_orig_(a.empty() ? 0 : a[0].size()), m_(a.size()), ncols_(n_orig_ + m_) {
        flip_.assign(m_, 1);
        rows_.assign(m_, std::vector<Scalar>(ncols_, Scalar(0)));
        rhs_.resize(m_);
        basis_.resize(m_);
        for (std::size_t i = 0; i < m_; ++i) {
            if (b[i].is_negative()) flip_[i] = -1;
            for (std::size_t j = 0; j < n_orig_; ++j) {
                rows_[i][j] = flip_[i] < 0 ? -a[i][j] : a[i][j];
            }
            rhs_[i] = flip_[i] < 0 ? -b[i] : b[i];
            rows_[i][n_orig_ + i] = Scalar(1);
            basis_[i] = n_orig_ + i;
        }
        // Minimize the artificial total: reduced costs with the
        // artificials basic.
        obj_.assign(ncols_, Scalar(0));
        obj_rhs_ = Scalar(0);
        for (std::size_t i = 0; i < m_; ++i) {
            for (std::size_t j = 0; j < n_orig_; ++j) obj_[j] -= rows_[i][j];
            obj_rhs_ -= rhs_[i];
        }
    }

    /// Runs phase one to optimality; true iff the artificial total
    /// reaches zero, i.e. the original system is feasible.
    bool phase_one() {
        optimize();
        return objective_value().is_zero();
    }

    /// Farkas certificate for the original rows; only meaningful right
    /// after an infeasible phase one.
    std::vector<Scalar> farkas() const {
        std::vector<Scalar> y(m_);
        for (std::size_t i = 0; i < m_; ++i) {
            // The artificial column's final reduced cost encodes the
            // phase-one dual; undo the row sign-flip.
            y[i] = obj_[n_orig_ + i] - Scalar(1);
            if (flip_[i] < 0) y[i] = -y[i];
        }
        return y;
    }

    /// After a feasible phase one: pivots lingering artificials out of
    /// the basis (their value is zero), drops rows that became redundant,
    /// and erases the artificial columns.
    void drop_artificials() {
        for (std::size_t i = 0; i < m_;) {
            if (basis_[i] < n_orig_) {
                ++i;
                continue;
            }
            std::size_t col = n_orig_;
            for (std::size_t j = 0; j < n_orig_; ++j) {
                if (!rows_[i][j].is_zero()) {
                    col = j;
                    break;
                }
            }
            if (col < n_orig_) {
                // The row's basic value is zero, so pivoting on any
                // nonzero entry keeps the solution unchanged.
                pivot(i, col);
                ++i;
            } else {
                rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
                rhs_.erase(rhs_.begin() + static_cast<std::ptrdiff_t>(i));
                basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
                --m_;
            }
        }
        for (auto& row : rows_) row.resize(n_orig_);
        obj_.assign(n_orig_, Scalar(0));
        obj_rhs_ = Scalar(0);
        ncols_ = n_orig_;
    }

    /// Installs a new cost vector (over the current columns) and derives
    /// its reduced form for the current basis.
    void set_objective(const std::vector<Scalar>& cost) {
        obj_ = cost;
        obj_rhs_ = Scalar(0);
        for (std::size_t i = 0; i < m_; ++i) {
            const Scalar c = cost[basis_[i]];
            if (c.is_zero()) continue;
            for (std::size_t j = 0; j < ncols_; ++j) obj_[j] -= c * rows_[i][j];
            obj_rhs_ -= c * rhs_[i];
        }
    }

    void optimize() {
        while (bland_step()) {
        }
    }

    Scalar objective_value() const { return -obj_rhs_; }

    std::vector<Scalar> solution(std::size_t count) const {
        std::vector<Scalar> x(count, Scalar(0));
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < count) x[basis_[i]] = rhs_[i];
        }
        return x;
    }

    std::size_t pivots() const { return pivots_; }

private:
    bool bland_step() {
        std::size_t enter = ncols_;
        for (std::size_t j = 0; j < ncols_; ++j) {
            if (obj_[j].is_negative()) {
                enter = j;
                break;
            }
        }
        if (enter == ncols_) return false;

        std::size_t leave = m_;
        Scalar best;
        for (std::size_t i = 0; i < m_; ++i) {
            if (rows_[i][enter].sign() <= 0) continue;
            const Scalar ratio = rhs_[i] / rows_[i][enter];
            if (leave == m_ || ratio < best ||
                (ratio == best && basis_[i] < basis_[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == m_) {
            throw std::runtime_error("linear program is unbounded");
        }
        pivot(leave, enter);
        return true;
    }

    void pivot(std::size_t row, std::size_t col) {
        const Scalar d = rows_[row][col];
        for (Scalar& entry : rows_[row]) entry /= d;
        rhs_[row] /= d;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == row || rows_[i][col].is_zero()) continue;
            const Scalar f = rows_[i][col];
            for (std::size_t j = 0; j < ncols_; ++j) rows_[i][j] -= f * rows_[row][j];
            rhs_[i] -= f * rhs_[row];
        }
        if (!obj_[col].is_zero()) {
            const Scalar f = obj_[col];
            for (std::size_t j = 0; j < ncols_; ++j) obj_[j] -= f * rows_[row][j];
            obj_rhs_ -= f * rhs_[row];
        }
        basis_[row] = col;
        ++pivots_;
    }

    std::size_t n_orig_;
    std::size_t m_;
    std::size_t ncols_;
    std::vector<int> flip_;
    std::vector<std::vector<Scalar>> rows_;
    std::vector<Scalar> rhs_;
    std::vector<std::size_t> basis_;
    std::vector<Scalar> obj_;
    Scalar obj_rhs_;  // minus the current objective value
    std::size_t pivots_ = 0;
};

}  // namespace

ExtensionResult solve_traditional(const LinearSystem& sys) {
    Tableau tableau(sys.coeffs, sys.rhs);
    if (!tableau.phase_one()) {
        ExtensionResult res;
        res.status = SolveStatus::infeasible;
        res.certificate = tableau.farkas();
        res.pivot_count = tableau.pivots();
        if (!certifies_infeasibility(sys, *res.certificate)) {
            throw std::logic_error("simplex produced an invalid infeasibility certificate");
        }
        return res;
    }

    // Feasible: report the affine solution structure alongside the
    // nonnegative witness.
    ExtensionResult res = solve_signed(sys);
    res.witness = tableau.solution(sys.vars());
    res.pivot_count = tableau.pivots();
    if (!satisfies(sys, *res.witness)) {
        throw std::logic_error("simplex witness fails the system");
    }
    for (const Scalar& w : *res.witness) {
        if (w.is_negative()) throw std::logic_error("simplex witness went negative");
    }
    return res;
}

ExtensionResult minimize_negativity(const LinearSystem& sys) {
    ExtensionResult base = solve_signed(sys);
    if (base.status == SolveStatus::infeasible) {
        throw std::invalid_argument("system has no signed solution");
    }

    // Split q = u - v with u,v >= 0; minimizing the total of v minimizes
    // the negative mass, since any solution q embeds as (q+, q-).
    const std::size_t n = sys.vars();
    std::vector<std::vector<Scalar>> split(sys.rows(), std::vector<Scalar>(2 * n));
    for (std::size_t i = 0; i < sys.rows(); ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            split[i][j] = sys.coeffs[i][j];
            split[i][n + j] = -sys.coeffs[i][j];
        }
    }
    Tableau tableau(split, sys.rhs);
    if (!tableau.phase_one()) {
        throw std::logic_error("split system infeasible despite a signed solution");
    }
    tableau.drop_artificials();

    std::vector<Scalar> cost(2 * n, Scalar(0));
    for (std::size_t j = 0; j < n; ++j) cost[n + j] = Scalar(1);
    tableau.set_objective(cost);
    tableau.optimize();

    const std::vector<Scalar> uv = tableau.solution(2 * n);
    std::vector<Scalar> witness(n);
    for (std::size_t j = 0; j < n; ++j) witness[j] = uv[j] - uv[n + j];

    if (!satisfies(sys, witness)) {
        throw std::logic_error("minimum-negativity witness fails the system");
    }
    Scalar neg_mass(0);
    for (const Scalar& w : witness) {
        if (w.is_negative()) neg_mass -= w;
    }
    if (neg_mass != tableau.objective_value()) {
        throw std::logic_error("negative mass disagrees with the optimum");
    }

    base.witness = std::move(witness);
    base.negative_mass = tableau.objective_value();
    base.pivot_count = tableau.pivots();
    return base;
}

bool satisfies(const LinearSystem& sys, const std::vector<Scalar>& q) {
    if (q.size() != sys.vars()) return false;
    for (std::size_t i = 0; i < sys.rows(); ++i) {
        Scalar lhs(0);
        for (std::size_t j = 0; j < q.size(); ++j) lhs += sys.coeffs[i][j] * q[j];
        if (lhs != sys.rhs[i]) return false;
    }
    return true;
}

bool certifies_infeasibility(const LinearSystem& sys, const std::vector<Scalar>& y) {
    if (y.size() != sys.rows()) return false;
    for (std::size_t j = 0; j < sys.vars(); ++j) {
        Scalar column(0);
        for (std::size_t i = 0; i < sys.rows(); ++i) column += y[i] * sys.coeffs[i][j];
        if (column.is_negative()) return false;
    }
    Scalar value(0);
    for (std::size_t i = 0; i < sys.rows(); ++i) value += y[i] * sys.rhs[i];
    return value.is_negative();
}

SignedDistribution to_distribution(const LinearSystem& sys, const std::vector<Scalar>& weights) {
    return SignedDistribution(sys.space, weights);
}

bool extends(const ObservedDistribution& obs, const SignedDistribution& q) {
    const Frame& f = obs.frame;
    if (!same_space(*f.space, *q.space())) return false;
    for (std::size_t i = 0; i < f.ensembles.size(); ++i) {
        const Partition& p = f.ensembles[i].partition;
        for (std::size_t k = 0; k < p.parts.size(); ++k) {
            if (q.prob(p.parts[k]) != obs.part_prob(i, k)) return false;
        }
    }
    return true;
}

SignedDistribution symmetrize(const ObservedDistribution& obs, const SignedDistribution& q,
                              const std::vector<Permutation>& group) {
    const std::size_t n = obs.frame.space->size();
    require_same_space(*obs.frame.space, *q.space());
    if (!is_permutation_group(group, n)) {
        throw std::invalid_argument("symmetrize needs a permutation group");
    }
    for (const Permutation& g : group) {
        const ValidationReport report = check_automorphism(obs, g);
        if (!report.ok) {
            throw std::invalid_argument("not an automorphism: " + report.message);
        }
    }
    if (!extends(obs, q)) {
        throw std::invalid_argument("distribution does not extend the observed data");
    }

    const Scalar size(make_rational(static_cast<long long>(group.size()), 1));
    std::vector<Scalar> averaged(n, Scalar(0));
    for (std::size_t i = 0; i < n; ++i) {
        for (const Permutation& g : group) averaged[i] += q.weight(g[i]);
        averaged[i] /= size;
    }
    SignedDistribution result(obs.frame.space, std::move(averaged));
    if (!extends(obs, result)) {
        throw std::logic_error("group average lost the extension property");
    }
    return result;
}

SignedDistribution product_extension(const ObservedDistribution& obs) {
    const Frame& f = obs.frame;
    if (f.ensembles.size() != 2) {
        throw std::invalid_argument("product construction needs exactly two ensembles");
    }
    const Partition& a = f.ensembles[0].partition;
    const Partition& b = f.ensembles[1].partition;

    std::vector<Scalar> weights(f.space->size(), Scalar(0));
    for (std::size_t i = 0; i < a.parts.size(); ++i) {
        for (std::size_t j = 0; j < b.parts.size(); ++j) {
            const Event cell = a.parts[i] & b.parts[j];
            if (cell.empty()) {
                throw std::invalid_argument("parts '" + f.ensembles[0].name + "' #" +
                                            std::to_string(i) + " and '" +
                                            f.ensembles[1].name + "' #" + std::to_string(j) +
                                            " do not intersect");
            }
            if (cell.count() != 1) {
                throw std::invalid_argument(
                    "frame has fat outcomes; normalize before the product construction");
            }
            weights[cell.indices().front()] = obs.part_prob(0, i) * obs.part_prob(1, j);
        }
    }
    return SignedDistribution(f.space, std::move(weights));
}

}  // namespace obsprob
