#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace mgrid::milp {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Relation { LE, EQ, GE };
enum class VarKind { Continuous, Binary, Integer };

struct Term {
    int var = 0;
    double coef = 0.0;
};

struct Row {
    std::vector<Term> terms;
    Relation rel = Relation::LE;
    double rhs = 0.0;
};

// Sparse minimization model. Objective defaults to zero for every variable.
class Model {
  public:
    explicit Model(int num_vars = 0);

    int add_var(double lower, double upper, VarKind kind = VarKind::Continuous,
                const std::string& name = {});
    void set_objective(int var, double coef);
    int add_row(std::vector<Term> terms, Relation rel, double rhs,
                const std::string& name = {});

    int num_vars() const { return static_cast<int>(lower_.size()); }
    int num_rows() const { return static_cast<int>(rows_.size()); }

    double lower(int v) const { return lower_[v]; }
    double upper(int v) const { return upper_[v]; }
    VarKind kind(int v) const { return kind_[v]; }
    double objective(int v) const { return obj_[v]; }
    const Row& row(int i) const { return rows_[i]; }
    const std::string& var_name(int v) const { return var_names_[v]; }
    const std::string& row_name(int i) const { return row_names_[i]; }

    void set_bounds(int v, double lower, double upper);
    void set_kind(int v, VarKind kind);

    // throws std::invalid_argument naming the offending row/var
    void validate() const;

    // LP-format-like dump for debugging; the grammar is documented in the
    // README and is not a compatibility promise.
    std::string dump() const;

  private:
    std::vector<double> lower_, upper_, obj_;
    std::vector<VarKind> kind_;
    std::vector<Row> rows_;
    std::vector<std::string> var_names_, row_names_;
};

enum class Status { Optimal, Infeasible, Unbounded, GapLimit, NodeLimit };

std::string status_name(Status s);

struct Solution {
    Status status = Status::Infeasible;
    double objective = 0.0;
    std::vector<double> values;
    double gap = 0.0;             // relative optimality gap at termination
    std::int64_t nodes_explored = 0;
};

struct SolveOptions {
    double feasibility_tol = 1e-6;
    double integrality_tol = 1e-6;
    double relative_gap = 1e-4;
    std::int64_t node_limit = 1'000'000;
    double time_limit_s = -1.0;  // < 0 means no limit
};

// Scaling diagnostics from the geometric-mean equilibration pass.
struct ScalingInfo {
    double coef_range_before = 1.0;  // max|a|/min|a| over nonzeros
    double coef_range_after = 1.0;
};

// Bounded-variable primal simplex on the LP relaxation (integrality
// ignored). Deterministic: Dantzig pricing with lowest-index tie-breaks,
// Bland's rule after a stall threshold.
Solution solve_lp(const Model& model, const SolveOptions& opts = {},
                  ScalingInfo* scaling = nullptr);

// Branch and bound over solve_lp. Branching variable: most fractional,
// ties by lowest index; floor branch first; best-first node order by
// relaxation bound.
Solution solve_milp(const Model& model, const SolveOptions& opts = {});

}  // namespace mgrid::milp
