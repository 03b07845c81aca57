#include "gftdual/lp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gftdual/error.hpp"

namespace gftdual {

const char* to_string(LpStatus status) noexcept {
  switch (status) {
    case LpStatus::Optimal: return "Optimal";
    case LpStatus::Infeasible: return "Infeasible";
    case LpStatus::Unbounded: return "Unbounded";
  }
  return "Unknown";
}

LinearProgram::LinearProgram(int num_variables)
    : objective(Eigen::VectorXd::Zero(num_variables)),
      lower(static_cast<std::size_t>(num_variables), -std::numeric_limits<double>::infinity()),
      upper(static_cast<std::size_t>(num_variables), std::numeric_limits<double>::infinity()) {}

void LinearProgram::add_constraint(Eigen::VectorXd coefficients, Relation relation, double rhs) {
  if (coefficients.size() != num_variables()) throw Error(Errc::SizeMismatch, "constraint row length");
  constraints.push_back({std::move(coefficients), relation, rhs});
}

namespace {

using Tableau = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// One term of y_j = offset + sum(sign * x_col).
struct Term {
  int column;
  double sign;
};

struct VariableMap {
  double offset = 0.0;
  std::vector<Term> terms;
};

struct Row {
  std::vector<double> coefficients;  // over structural columns
  Relation relation;
  double rhs;
  double sign = 1.0;  // -1 when the row was negated during normalization
  int source = -1;    // index into program.constraints, -1 for bound rows
};

class Simplex {
 public:
  Simplex(Tableau tableau, std::vector<int> basis, int num_allowed, const LpOptions& options)
      : t_(std::move(tableau)), basis_(std::move(basis)), allowed_(num_allowed), options_(options) {}

  // Loads reduced costs for `costs` (one per tableau column) into the objective row.
  void set_costs(const Eigen::VectorXd& costs) {
    const Eigen::Index m = t_.rows() - 1;
    const Eigen::Index cols = t_.cols();
    t_.row(m).setZero();
    t_.row(m).head(cols - 1) = costs.transpose();
    for (Eigen::Index r = 0; r < m; ++r) {
      const double cb = costs(basis_[static_cast<std::size_t>(r)]);
      if (cb != 0.0) t_.row(m) -= cb * t_.row(r);
    }
  }

  // Returns false when unbounded.
  bool run() {
    const Eigen::Index m = t_.rows() - 1;
    const Eigen::Index rhs = t_.cols() - 1;
    for (;;) {
      int entering = -1;
      for (int j = 0; j < allowed_; ++j) {
        if (t_(m, j) < -options_.cost_tol) {
          entering = j;
          break;
        }
      }
      if (entering < 0) return true;

      Eigen::Index leaving = -1;
      double best = 0.0;
      for (Eigen::Index r = 0; r < m; ++r) {
        const double a = t_(r, entering);
        if (a <= options_.pivot_tol) continue;
        const double ratio = std::max(0.0, t_(r, rhs)) / a;
        if (leaving < 0 || ratio < best - 1e-12 ||
            (ratio <= best + 1e-12 && basis_[static_cast<std::size_t>(r)] < basis_[static_cast<std::size_t>(leaving)])) {
          if (leaving < 0 || ratio < best) best = ratio;
          leaving = r;
        }
      }
      if (leaving < 0) return false;
      pivot(leaving, entering);
    }
  }

  void pivot(Eigen::Index r, Eigen::Index s) {
    if (++pivots_ > options_.max_pivots) throw Error(Errc::NumericalBreakdown, "simplex pivot budget exhausted");
    t_.row(r) /= t_(r, s);
    for (Eigen::Index i = 0; i < t_.rows(); ++i) {
      if (i == r) continue;
      const double f = t_(i, s);
      if (f != 0.0) t_.row(i) -= f * t_.row(r);
    }
    basis_[static_cast<std::size_t>(r)] = static_cast<int>(s);
  }

  Tableau& tableau() { return t_; }
  std::vector<int>& basis() { return basis_; }
  void set_allowed(int n) { allowed_ = n; }
  int pivots() const { return pivots_; }

 private:
  Tableau t_;
  std::vector<int> basis_;
  int allowed_;
  const LpOptions& options_;
  int pivots_ = 0;
};

}  // namespace

LpResult solve_lp(const LinearProgram& program, const LpOptions& options) {
  const int nv = program.num_variables();
  if (program.lower.size() != static_cast<std::size_t>(nv) || program.upper.size() != static_cast<std::size_t>(nv)) {
    throw Error(Errc::SizeMismatch, "bound vectors differ from variable count");
  }
  if (!program.objective.allFinite()) throw Error(Errc::NonFiniteEntry, "objective coefficient");
  for (const auto& c : program.constraints) {
    if (c.coefficients.size() != nv) throw Error(Errc::SizeMismatch, "constraint row length");
    if (!c.coefficients.allFinite() || !std::isfinite(c.rhs)) throw Error(Errc::NonFiniteEntry, "constraint entry");
  }

  // Variable substitution.
  std::vector<VariableMap> vars(static_cast<std::size_t>(nv));
  std::vector<Row> rows;
  int ns = 0;
  for (int j = 0; j < nv; ++j) {
    const double lo = program.lower[static_cast<std::size_t>(j)];
    const double hi = program.upper[static_cast<std::size_t>(j)];
    auto& v = vars[static_cast<std::size_t>(j)];
    if (std::isfinite(lo)) {
      v.offset = lo;
      v.terms.push_back({ns++, 1.0});
      if (std::isfinite(hi)) {
        Row bound{{}, Relation::LessEqual, hi - lo};
        bound.coefficients.assign(static_cast<std::size_t>(v.terms.back().column) + 1, 0.0);
        bound.coefficients.back() = 1.0;
        rows.push_back(std::move(bound));
      }
    } else if (std::isfinite(hi)) {
      v.offset = hi;
      v.terms.push_back({ns++, -1.0});
    } else {
      v.terms.push_back({ns++, 1.0});
      v.terms.push_back({ns++, -1.0});
    }
  }
  for (auto& r : rows) r.coefficients.resize(static_cast<std::size_t>(ns), 0.0);

  std::vector<Row> constraint_rows;
  constraint_rows.reserve(program.constraints.size());
  for (std::size_t c = 0; c < program.constraints.size(); ++c) {
    const auto& con = program.constraints[c];
    Row row{std::vector<double>(static_cast<std::size_t>(ns), 0.0), con.relation, con.rhs};
    row.source = static_cast<int>(c);
    for (int j = 0; j < nv; ++j) {
      const double a = con.coefficients(j);
      if (a == 0.0) continue;
      const auto& v = vars[static_cast<std::size_t>(j)];
      row.rhs -= a * v.offset;
      for (const Term& term : v.terms) row.coefficients[static_cast<std::size_t>(term.column)] += a * term.sign;
    }
    constraint_rows.push_back(std::move(row));
  }
  constraint_rows.insert(constraint_rows.end(), std::make_move_iterator(rows.begin()), std::make_move_iterator(rows.end()));
  rows = std::move(constraint_rows);

  for (auto& r : rows) {
    if (r.rhs < 0.0) {
      r.sign = -1.0;
      r.rhs = -r.rhs;
      for (double& a : r.coefficients) a = -a;
      if (r.relation == Relation::LessEqual) {
        r.relation = Relation::GreaterEqual;
      } else if (r.relation == Relation::GreaterEqual) {
        r.relation = Relation::LessEqual;
      }
    }
  }

  // Column layout: structural | slack and surplus | artificial.
  const int m = static_cast<int>(rows.size());
  int num_slack = 0;
  int num_art = 0;
  for (const auto& r : rows) {
    num_slack += r.relation != Relation::Equal;
    num_art += r.relation != Relation::LessEqual;
  }
  const int art_begin = ns + num_slack;
  const int cols = art_begin + num_art;
  Tableau t = Tableau::Zero(m + 1, cols + 1);
  std::vector<int> basis(static_cast<std::size_t>(m));
  std::vector<int> identity_column(static_cast<std::size_t>(m));
  int next_slack = ns;
  int next_art = art_begin;
  for (int r = 0; r < m; ++r) {
    const Row& row = rows[static_cast<std::size_t>(r)];
    for (int j = 0; j < ns; ++j) t(r, j) = row.coefficients[static_cast<std::size_t>(j)];
    t(r, cols) = row.rhs;
    if (row.relation == Relation::LessEqual) {
      t(r, next_slack) = 1.0;
      identity_column[static_cast<std::size_t>(r)] = next_slack++;
    } else {
      if (row.relation == Relation::GreaterEqual) t(r, next_slack++) = -1.0;
      t(r, next_art) = 1.0;
      identity_column[static_cast<std::size_t>(r)] = next_art++;
    }
    basis[static_cast<std::size_t>(r)] = identity_column[static_cast<std::size_t>(r)];
  }

  LpResult result;
  Simplex simplex(std::move(t), std::move(basis), cols, options);

  if (num_art > 0) {
    Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(cols);
    phase1.tail(num_art).setOnes();
    simplex.set_costs(phase1);
    simplex.run();
    result.phase1_infeasibility = -simplex.tableau()(m, cols);
    if (result.phase1_infeasibility > options.feasibility_tol) {
      result.status = LpStatus::Infeasible;
      result.pivots = simplex.pivots();
      return result;
    }
    // Drive zero-level artificials out of the basis; rows where that is
    // impossible are redundant and keep their artificial at zero.
    for (int r = 0; r < m; ++r) {
      if (simplex.basis()[static_cast<std::size_t>(r)] < art_begin) continue;
      for (int j = 0; j < art_begin; ++j) {
        if (std::abs(simplex.tableau()(r, j)) > 1e-9) {
          simplex.pivot(r, j);
          break;
        }
      }
    }
  }

  Eigen::VectorXd phase2 = Eigen::VectorXd::Zero(cols);
  for (int j = 0; j < nv; ++j)
    for (const Term& term : vars[static_cast<std::size_t>(j)].terms) phase2(term.column) += program.objective(j) * term.sign;
  simplex.set_allowed(art_begin);
  simplex.set_costs(phase2);
  const bool bounded = simplex.run();
  result.pivots = simplex.pivots();
  if (!bounded) {
    result.status = LpStatus::Unbounded;
    return result;
  }

  const Tableau& fin = simplex.tableau();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(cols);
  for (int r = 0; r < m; ++r) x(simplex.basis()[static_cast<std::size_t>(r)]) = std::max(0.0, fin(r, cols));
  result.y.resize(nv);
  for (int j = 0; j < nv; ++j) {
    const auto& v = vars[static_cast<std::size_t>(j)];
    double value = v.offset;
    for (const Term& term : v.terms) value += term.sign * x(term.column);
    result.y(j) = value;
  }
  result.objective = program.objective.dot(result.y);
  result.duals = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(program.constraints.size()));
  for (int r = 0; r < m; ++r) {
    const Row& row = rows[static_cast<std::size_t>(r)];
    if (row.source < 0) continue;
    result.duals(row.source) = -row.sign * fin(m, identity_column[static_cast<std::size_t>(r)]);
  }
  result.status = LpStatus::Optimal;

  for (const auto& con : program.constraints) {
    const double lhs = con.coefficients.dot(result.y);
    const double tol = options.feasibility_tol * (1.0 + std::abs(con.rhs));
    const bool ok = (con.relation == Relation::LessEqual && lhs <= con.rhs + tol) ||
                    (con.relation == Relation::GreaterEqual && lhs >= con.rhs - tol) ||
                    (con.relation == Relation::Equal && std::abs(lhs - con.rhs) <= tol);
    if (!ok) {
      throw Error(Errc::NumericalBreakdown, "simplex solution violates a constraint by " +
                                                std::to_string(std::abs(lhs - con.rhs)));
    }
  }
  return result;
}

}  // namespace gftdual
