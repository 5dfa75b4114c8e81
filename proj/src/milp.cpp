#include "mgrid/milp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace mgrid::milp {

static std::string label(const std::string& name, const char* what, int idx) {
    if (!name.empty()) return name;
    return std::string(what) + "#" + std::to_string(idx);
}

Model::Model(int num_vars)
    : lower_(num_vars, 0.0),
      upper_(num_vars, kInf),
      obj_(num_vars, 0.0),
      kind_(num_vars, VarKind::Continuous),
      var_names_(num_vars) {}

int Model::add_var(double lower, double upper, VarKind kind, const std::string& name) {
    lower_.push_back(lower);
    upper_.push_back(upper);
    obj_.push_back(0.0);
    kind_.push_back(kind);
    var_names_.push_back(name);
    return num_vars() - 1;
}

void Model::set_objective(int var, double coef) { obj_.at(var) = coef; }

int Model::add_row(std::vector<Term> terms, Relation rel, double rhs,
                   const std::string& name) {
    for (const Term& t : terms)
        if (t.var < 0 || t.var >= num_vars())
            throw std::invalid_argument("invalid-model: row " +
                                        label(name, "row", num_rows()) +
                                        " references unknown variable " +
                                        std::to_string(t.var));
    rows_.push_back(Row{std::move(terms), rel, rhs});
    row_names_.push_back(name);
    return num_rows() - 1;
}

void Model::set_bounds(int v, double lower, double upper) {
    if (std::isnan(lower) || std::isnan(upper) || lower > upper)
        throw std::invalid_argument("invalid-model: bad bounds on variable " +
                                    label(var_names_.at(v), "x", v));
    lower_.at(v) = lower;
    upper_.at(v) = upper;
}

void Model::set_kind(int v, VarKind kind) { kind_.at(v) = kind; }

void Model::validate() const {
    for (int v = 0; v < num_vars(); ++v) {
        if (std::isnan(lower_[v]) || std::isnan(upper_[v]) || lower_[v] > upper_[v])
            throw std::invalid_argument("invalid-model: bad bounds on variable " +
                                        label(var_names_[v], "x", v));
        if (kind_[v] == VarKind::Binary && (lower_[v] < 0.0 || upper_[v] > 1.0))
            throw std::invalid_argument("invalid-model: binary variable " +
                                        label(var_names_[v], "x", v) +
                                        " has bounds outside [0,1]");
        if (!std::isfinite(obj_[v]))
            throw std::invalid_argument("invalid-model: non-finite objective on " +
                                        label(var_names_[v], "x", v));
    }
    for (int i = 0; i < num_rows(); ++i) {
        if (!std::isfinite(rows_[i].rhs))
            throw std::invalid_argument("invalid-model: non-finite rhs on row " +
                                        label(row_names_[i], "r", i));
        for (const Term& t : rows_[i].terms) {
            if (t.var < 0 || t.var >= num_vars())
                throw std::invalid_argument("invalid-model: row " +
                                            label(row_names_[i], "r", i) +
                                            " references variable index " +
                                            std::to_string(t.var));
            if (!std::isfinite(t.coef))
                throw std::invalid_argument("invalid-model: non-finite coefficient in row " +
                                            label(row_names_[i], "r", i));
        }
    }
}

std::string Model::dump() const {
    std::ostringstream os;
    os << "minimize\n ";
    for (int v = 0; v < num_vars(); ++v)
        if (obj_[v] != 0.0) os << " " << std::showpos << obj_[v] << std::noshowpos << " "
                               << label(var_names_[v], "x", v);
    os << "\nsubject to\n";
    for (int i = 0; i < num_rows(); ++i) {
        os << " " << label(row_names_[i], "r", i) << ":";
        for (const Term& t : rows_[i].terms)
            os << " " << std::showpos << t.coef << std::noshowpos << " "
               << label(var_names_[t.var], "x", t.var);
        const char* rel = rows_[i].rel == Relation::LE   ? "<="
                          : rows_[i].rel == Relation::EQ ? "="
                                                         : ">=";
        os << " " << rel << " " << rows_[i].rhs << "\n";
    }
    os << "bounds\n";
    for (int v = 0; v < num_vars(); ++v) {
        os << " " << lower_[v] << " <= " << label(var_names_[v], "x", v)
           << " <= " << upper_[v];
        if (kind_[v] == VarKind::Binary) os << " binary";
        if (kind_[v] == VarKind::Integer) os << " integer";
        os << "\n";
    }
    return os.str();
}

std::string status_name(Status s) {
    switch (s) {
        case Status::Optimal: return "optimal";
        case Status::Infeasible: return "infeasible";
        case Status::Unbounded: return "unbounded";
        case Status::GapLimit: return "gap_limit";
        case Status::NodeLimit: return "node_limit";
    }
    return "?";
}

namespace {

enum class NbStatus { AtLower, AtUpper, Basic };

// Dense bounded-variable primal simplex working on a column-sparse copy of
// the model, with slack and artificial columns appended.
class Simplex {
  public:
    Simplex(const Model& model, const SolveOptions& opts, ScalingInfo* info)
        : opts_(opts) {
        n_ = model.num_vars();
        m_ = model.num_rows();
        total_ = n_ + 2 * m_;  // structural | slack | artificial

        lo_.assign(total_, 0.0);
        up_.assign(total_, 0.0);
        cost_.assign(total_, 0.0);
        cols_.assign(total_, {});

        row_scale_.assign(m_, 1.0);
        col_scale_.assign(n_, 1.0);
        equilibrate(model, info);

        for (int v = 0; v < n_; ++v) {
            lo_[v] = model.lower(v) / col_scale_[v];
            up_[v] = model.upper(v) / col_scale_[v];
            cost_[v] = model.objective(v) * col_scale_[v];
        }
        rhs_.assign(m_, 0.0);
        for (int i = 0; i < m_; ++i) {
            const Row& r = model.row(i);
            rhs_[i] = r.rhs * row_scale_[i];
            std::map<int, double> merged;
            for (const Term& t : r.terms) merged[t.var] += t.coef;
            for (auto [v, c] : merged) {
                const double a = c * row_scale_[i] * col_scale_[v];
                if (a != 0.0) cols_[v].push_back({i, a});
            }
            const int slack = n_ + i;
            cols_[slack].push_back({i, 1.0});
            switch (r.rel) {
                case Relation::LE: lo_[slack] = 0.0; up_[slack] = kInf; break;
                case Relation::GE: lo_[slack] = -kInf; up_[slack] = 0.0; break;
                case Relation::EQ: lo_[slack] = 0.0; up_[slack] = 0.0; break;
            }
            // artificial columns get their sign and activation at phase 1 setup
            cols_[n_ + m_ + i].push_back({i, 1.0});
        }
    }

    // returns status; on Optimal fills values (unscaled) and objective
    Status solve(std::vector<double>* values, double* objective) {
        init_basis();
        // phase 1: minimize total artificial value
        if (needs_phase1_) {
            phase1_ = true;
            const Status st = iterate();
            if (st != Status::Optimal) return Status::Infeasible;
            double art = 0.0;
            for (int i = 0; i < m_; ++i)
                if (basis_[i] >= n_ + m_) art += std::abs(x_[basis_[i]]);
            if (art > 1e-7) return Status::Infeasible;
            for (int i = 0; i < m_; ++i) {
                const int a = n_ + m_ + i;
                lo_[a] = up_[a] = 0.0;
                if (status_[a] != NbStatus::Basic) x_[a] = 0.0;
            }
        }
        phase1_ = false;
        const Status st = iterate();
        if (st != Status::Optimal) return st;

        refactorize();  // tighten basic values before reporting
        values->assign(n_, 0.0);
        double obj = 0.0;
        for (int v = 0; v < n_; ++v) {
            (*values)[v] = x_[v] * col_scale_[v];
            obj += cost_[v] / col_scale_[v] * (*values)[v];
        }
        *objective = obj;
        return Status::Optimal;
    }

  private:
    struct ColEntry {
        int row;
        double coef;
    };

    void equilibrate(const Model& model, ScalingInfo* info) {
        auto coef_range = [&](bool scaled) {
            double mn = kInf, mx = 0.0;
            for (int i = 0; i < model.num_rows(); ++i)
                for (const Term& t : model.row(i).terms) {
                    double a = std::abs(t.coef);
                    if (scaled) a *= row_scale_[i] * col_scale_[t.var];
                    if (a > 0.0) {
                        mn = std::min(mn, a);
                        mx = std::max(mx, a);
                    }
                }
            return mx > 0.0 ? mx / mn : 1.0;
        };
        if (info) info->coef_range_before = coef_range(false);
        for (int pass = 0; pass < 2; ++pass) {
            std::vector<double> rmin(m_, kInf), rmax(m_, 0.0);
            for (int i = 0; i < m_; ++i)
                for (const Term& t : model.row(i).terms) {
                    const double a = std::abs(t.coef) * row_scale_[i] * col_scale_[t.var];
                    if (a > 0.0) {
                        rmin[i] = std::min(rmin[i], a);
                        rmax[i] = std::max(rmax[i], a);
                    }
                }
            for (int i = 0; i < m_; ++i)
                if (rmax[i] > 0.0) row_scale_[i] /= std::sqrt(rmin[i] * rmax[i]);
            std::vector<double> cmin(n_, kInf), cmax(n_, 0.0);
            for (int i = 0; i < m_; ++i)
                for (const Term& t : model.row(i).terms) {
                    const double a = std::abs(t.coef) * row_scale_[i] * col_scale_[t.var];
                    if (a > 0.0) {
                        cmin[t.var] = std::min(cmin[t.var], a);
                        cmax[t.var] = std::max(cmax[t.var], a);
                    }
                }
            for (int v = 0; v < n_; ++v)
                if (cmax[v] > 0.0) col_scale_[v] /= std::sqrt(cmin[v] * cmax[v]);
        }
        if (info) info->coef_range_after = coef_range(true);
    }

    double phase_cost(int j) const {
        if (phase1_) return j >= n_ + m_ ? 1.0 : 0.0;
        return j < n_ ? cost_[j] : 0.0;
    }

    void init_basis() {
        x_.assign(total_, 0.0);
        status_.assign(total_, NbStatus::AtLower);
        basis_.assign(m_, -1);
        needs_phase1_ = false;

        for (int v = 0; v < n_; ++v) {
            if (std::isfinite(lo_[v])) {
                x_[v] = lo_[v];
                status_[v] = NbStatus::AtLower;
            } else if (std::isfinite(up_[v])) {
                x_[v] = up_[v];
                status_[v] = NbStatus::AtUpper;
            } else {
                x_[v] = 0.0;
                status_[v] = NbStatus::AtLower;  // free var parked at 0
            }
        }
        std::vector<double> resid = rhs_;
        for (int v = 0; v < n_; ++v)
            for (const ColEntry& e : cols_[v]) resid[e.row] -= e.coef * x_[v];

        binv_.assign(m_, std::vector<double>(m_, 0.0));
        for (int i = 0; i < m_; ++i) {
            const int slack = n_ + i;
            const int art = n_ + m_ + i;
            const double r = resid[i];
            if (r >= lo_[slack] - 1e-12 && r <= up_[slack] + 1e-12) {
                basis_[i] = slack;
                x_[slack] = r;
                status_[slack] = NbStatus::Basic;
                lo_[art] = up_[art] = 0.0;
                binv_[i][i] = 1.0;
            } else {
                const double s = std::clamp(r, lo_[slack], up_[slack]);
                x_[slack] = s;
                status_[slack] = s == lo_[slack] ? NbStatus::AtLower : NbStatus::AtUpper;
                const double g = r - s;
                cols_[art][0].coef = g >= 0.0 ? 1.0 : -1.0;
                lo_[art] = 0.0;
                up_[art] = kInf;
                basis_[i] = art;
                x_[art] = std::abs(g);
                status_[art] = NbStatus::Basic;
                binv_[i][i] = cols_[art][0].coef;  // inverse of a signed unit column
                needs_phase1_ = true;
            }
        }
    }

    void refactorize() {
        // Gauss-Jordan inverse of the basis matrix, partial pivoting
        std::vector<std::vector<double>> a(m_, std::vector<double>(m_, 0.0));
        for (int i = 0; i < m_; ++i)
            for (const ColEntry& e : cols_[basis_[i]]) a[e.row][i] = e.coef;
        std::vector<std::vector<double>> inv(m_, std::vector<double>(m_, 0.0));
        for (int i = 0; i < m_; ++i) inv[i][i] = 1.0;
        for (int col = 0; col < m_; ++col) {
            int piv = col;
            for (int i = col + 1; i < m_; ++i)
                if (std::abs(a[i][col]) > std::abs(a[piv][col])) piv = i;
            if (std::abs(a[piv][col]) < 1e-12)
                throw std::runtime_error("simplex: singular basis during refactorization");
            std::swap(a[piv], a[col]);
            std::swap(inv[piv], inv[col]);
            const double d = a[col][col];
            for (int j = 0; j < m_; ++j) {
                a[col][j] /= d;
                inv[col][j] /= d;
            }
            for (int i = 0; i < m_; ++i) {
                if (i == col) continue;
                const double f = a[i][col];
                if (f == 0.0) continue;
                for (int j = 0; j < m_; ++j) {
                    a[i][j] -= f * a[col][j];
                    inv[i][j] -= f * inv[col][j];
                }
            }
        }
        // inv rows correspond to basis positions: B^-1 = inv with row i of
        // the identity placed at basis position; recompute basic values
        binv_ = std::move(inv);
        std::vector<double> resid = rhs_;
        for (int j = 0; j < total_; ++j) {
            if (status_[j] == NbStatus::Basic) continue;
            if (x_[j] == 0.0) continue;
            for (const ColEntry& e : cols_[j]) resid[e.row] -= e.coef * x_[j];
        }
        for (int i = 0; i < m_; ++i) {
            double v = 0.0;
            for (int r = 0; r < m_; ++r) v += binv_[i][r] * resid[r];
            x_[basis_[i]] = v;
        }
    }

    Status iterate() {
        constexpr double kDualTol = 1e-9;
        constexpr double kPivTol = 1e-10;
        int since_refactor = 0;
        int stalled = 0;
        bool bland = false;
        const int max_iter = 20000 + 200 * (m_ + n_);
        for (int iter = 0; iter < max_iter; ++iter) {
            if (++since_refactor >= 120) {
                refactorize();
                since_refactor = 0;
            }
            // duals and reduced costs
            std::vector<double> y(m_, 0.0);
            for (int i = 0; i < m_; ++i) {
                const double cb = phase_cost(basis_[i]);
                if (cb == 0.0) continue;
                for (int r = 0; r < m_; ++r) y[r] += cb * binv_[i][r];
            }
            int enter = -1;
            double best = kDualTol;
            for (int j = 0; j < total_; ++j) {
                if (status_[j] == NbStatus::Basic) continue;
                if (lo_[j] == up_[j]) continue;  // fixed
                double d = phase_cost(j);
                for (const ColEntry& e : cols_[j]) d -= y[e.row] * e.coef;
                double viol = 0.0;
                const bool free_var = !std::isfinite(lo_[j]) && !std::isfinite(up_[j]);
                if (free_var && std::abs(d) > kDualTol) {
                    // free variables may move either way from their parking spot
                    status_[j] = d > 0.0 ? NbStatus::AtUpper : NbStatus::AtLower;
                    viol = std::abs(d);
                } else {
                    if (status_[j] == NbStatus::AtLower && d < -kDualTol) viol = -d;
                    if (status_[j] == NbStatus::AtUpper && d > kDualTol) viol = d;
                }
                if (viol <= 0.0) continue;
                if (bland) {
                    enter = j;
                    break;
                }
                if (viol > best) {
                    best = viol;
                    enter = j;
                }
            }
            if (enter < 0) return Status::Optimal;

            const double dir = status_[enter] == NbStatus::AtLower ? 1.0 : -1.0;
            std::vector<double> w(m_, 0.0);
            for (const ColEntry& e : cols_[enter])
                for (int i = 0; i < m_; ++i) w[i] += binv_[i][e.row] * e.coef;

            // ratio test with bound flips
            double t_max = kInf;
            int leave_pos = -1;       // basis position, -1 means bound flip
            double leave_bound = 0.0; // the bound the leaving variable hits
            if (std::isfinite(up_[enter] - lo_[enter]))
                t_max = up_[enter] - lo_[enter];
            for (int i = 0; i < m_; ++i) {
                const double g = dir * w[i];
                const int b = basis_[i];
                double t = kInf, hit = 0.0;
                if (g > kPivTol && std::isfinite(lo_[b])) {
                    t = (x_[b] - lo_[b]) / g;
                    hit = lo_[b];
                } else if (g < -kPivTol && std::isfinite(up_[b])) {
                    t = (up_[b] - x_[b]) / (-g);
                    hit = up_[b];
                } else {
                    continue;
                }
                if (t < 0.0) t = 0.0;
                bool take = false;
                if (t < t_max - 1e-9) {
                    take = true;
                } else if (leave_pos < 0) {
                    take = t <= t_max;  // tie against a bound flip: pivot wins
                } else if (t <= t_max + 1e-9) {
                    // tie between pivots: Bland takes the lowest variable
                    // index, otherwise the largest pivot magnitude
                    take = bland ? b < basis_[leave_pos]
                                 : std::abs(w[i]) > std::abs(w[leave_pos]) + 1e-12;
                }
                if (take) {
                    t_max = std::min(t, t_max);
                    leave_pos = i;
                    leave_bound = hit;
                }
            }
            if (!std::isfinite(t_max)) return Status::Unbounded;

            if (t_max > 1e-12)
                stalled = 0;
            else if (++stalled > 500)
                bland = true;

            // apply the step
            for (int i = 0; i < m_; ++i) x_[basis_[i]] -= t_max * dir * w[i];
            x_[enter] += dir * t_max;

            if (leave_pos < 0) {
                // entering variable flipped to its opposite bound
                status_[enter] =
                    status_[enter] == NbStatus::AtLower ? NbStatus::AtUpper : NbStatus::AtLower;
                continue;
            }
            const int leaving = basis_[leave_pos];
            x_[leaving] = leave_bound;
            status_[leaving] =
                leave_bound == lo_[leaving] ? NbStatus::AtLower : NbStatus::AtUpper;
            basis_[leave_pos] = enter;
            status_[enter] = NbStatus::Basic;

            // B^-1 pivot update
            const double piv = w[leave_pos];
            for (int j = 0; j < m_; ++j) binv_[leave_pos][j] /= piv;
            for (int i = 0; i < m_; ++i) {
                if (i == leave_pos || w[i] == 0.0) continue;
                const double f = w[i];
                for (int j = 0; j < m_; ++j) binv_[i][j] -= f * binv_[leave_pos][j];
            }
        }
        throw std::runtime_error("simplex: iteration limit exceeded");
    }

    const SolveOptions& opts_;
    int n_ = 0, m_ = 0, total_ = 0;
    std::vector<double> lo_, up_, cost_, rhs_, x_;
    std::vector<std::vector<ColEntry>> cols_;
    std::vector<NbStatus> status_;
    std::vector<int> basis_;
    std::vector<std::vector<double>> binv_;
    std::vector<double> row_scale_, col_scale_;
    bool phase1_ = false;
    bool needs_phase1_ = false;
};

bool is_integer_kind(VarKind k) { return k != VarKind::Continuous; }

}  // namespace

Solution solve_lp(const Model& model, const SolveOptions& opts, ScalingInfo* scaling) {
    model.validate();
    Solution sol;
    if (model.num_rows() == 0) {
        // pure bound problem: each variable sits at its cheaper bound
        sol.values.assign(model.num_vars(), 0.0);
        double obj = 0.0;
        for (int v = 0; v < model.num_vars(); ++v) {
            const double c = model.objective(v);
            double x;
            if (c > 0.0)
                x = model.lower(v);
            else if (c < 0.0)
                x = model.upper(v);
            else
                x = std::isfinite(model.lower(v)) ? model.lower(v)
                                                  : std::min(0.0, model.upper(v));
            if (c != 0.0 && !std::isfinite(x)) {
                sol.status = Status::Unbounded;
                return sol;
            }
            if (!std::isfinite(x)) x = 0.0;
            sol.values[v] = x;
            obj += c * x;
        }
        sol.status = Status::Optimal;
        sol.objective = obj;
        return sol;
    }
    Simplex spx(model, opts, scaling);
    sol.status = spx.solve(&sol.values, &sol.objective);
    return sol;
}

namespace {

struct BnbNode {
    double bound = -kInf;
    std::int64_t id = 0;
    std::map<int, std::pair<double, double>> var_bounds;  // tightened bounds
};

struct NodeOrder {
    bool operator()(const BnbNode& a, const BnbNode& b) const {
        if (a.bound != b.bound) return a.bound > b.bound;  // min-heap on bound
        return a.id > b.id;                                // then FIFO
    }
};

}  // namespace

Solution solve_milp(const Model& model, const SolveOptions& opts) {
    model.validate();
    const auto t_start = std::chrono::steady_clock::now();
    auto out_of_time = [&] {
        if (opts.time_limit_s < 0.0) return false;
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t_start;
        return dt.count() > opts.time_limit_s;
    };

    std::vector<int> int_vars;
    for (int v = 0; v < model.num_vars(); ++v)
        if (is_integer_kind(model.kind(v))) int_vars.push_back(v);

    Solution best;
    best.status = Status::Infeasible;
    bool have_incumbent = false;
    double best_obj = kInf;
    double global_bound = -kInf;

    std::priority_queue<BnbNode, std::vector<BnbNode>, NodeOrder> open;
    std::int64_t next_id = 0;
    open.push(BnbNode{-kInf, next_id++, {}});
    std::int64_t nodes = 0;
    bool limited = false;

    Model work = model;
    while (!open.empty()) {
        if (nodes >= opts.node_limit || out_of_time()) {
            limited = true;
            break;
        }
        BnbNode node = open.top();
        open.pop();
        if (have_incumbent &&
            node.bound >= best_obj - opts.relative_gap * std::max(1.0, std::abs(best_obj)))
            continue;
        global_bound = node.bound;

        for (int v : int_vars) work.set_bounds(v, model.lower(v), model.upper(v));
        for (auto& [v, b] : node.var_bounds) work.set_bounds(v, b.first, b.second);

        Solution relax = solve_lp(work, opts);
        ++nodes;
        if (relax.status == Status::Unbounded) {
            // unbounded relaxation at the root: the MILP is declared
            // unbounded (a bounded integer optimum cannot be certified here)
            Solution sol;
            sol.status = Status::Unbounded;
            sol.nodes_explored = nodes;
            return sol;
        }
        if (relax.status != Status::Optimal) continue;  // pruned by infeasibility
        if (have_incumbent &&
            relax.objective >=
                best_obj - opts.relative_gap * std::max(1.0, std::abs(best_obj)))
            continue;

        // most fractional integer variable, ties by lowest index
        int branch_var = -1;
        double best_frac = opts.integrality_tol;
        for (int v : int_vars) {
            const double x = relax.values[v];
            const double f = x - std::floor(x);
            const double dist = std::min(f, 1.0 - f);
            if (dist > best_frac + 1e-12) {
                best_frac = dist;
                branch_var = v;
            }
        }
        if (branch_var < 0) {
            if (!have_incumbent || relax.objective < best_obj) {
                have_incumbent = true;
                best_obj = relax.objective;
                best.values = relax.values;
                best.objective = relax.objective;
                for (int v : int_vars) best.values[v] = std::round(best.values[v]);
            }
            continue;
        }

        const double x = relax.values[branch_var];
        double lo = model.lower(branch_var), hi = model.upper(branch_var);
        if (auto it = node.var_bounds.find(branch_var); it != node.var_bounds.end()) {
            lo = it->second.first;
            hi = it->second.second;
        }
        BnbNode down = node;  // floor branch first (lower node id)
        down.bound = relax.objective;
        down.id = next_id++;
        down.var_bounds[branch_var] = {lo, std::floor(x)};
        BnbNode up = node;
        up.bound = relax.objective;
        up.id = next_id++;
        up.var_bounds[branch_var] = {std::ceil(x), hi};
        if (std::floor(x) >= lo - 0.5) open.push(down);
        if (std::ceil(x) <= hi + 0.5) open.push(up);
    }

    best.nodes_explored = nodes;
    if (!have_incumbent) {
        best.status = limited ? Status::NodeLimit : Status::Infeasible;
        best.gap = kInf;
        return best;
    }
    if (limited) {
        double bound = global_bound;
        // remaining open nodes can only tighten the bound upward
        best.gap = std::max(0.0, (best_obj - bound) / std::max(1.0, std::abs(best_obj)));
        best.status = best.gap <= opts.relative_gap ? Status::Optimal : Status::NodeLimit;
    } else {
        best.status = Status::Optimal;
        best.gap = 0.0;
    }
    return best;
}

}  // namespace mgrid::milp
