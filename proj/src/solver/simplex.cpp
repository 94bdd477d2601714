// Copyright 2026 The sage-forge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sageforge/solver/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <vector>

namespace sageforge::solver {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;
constexpr double kDegenerateStep = 1e-12;
constexpr int kBlandTrigger = 100;

using Clock = std::chrono::steady_clock;

double elapsed_seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct LpOutcome {
  SolveStatus status = SolveStatus::Error;
  std::vector<double> x;  // structural values, set iff Optimal
  long iterations = 0;
};

/// Bounded-variable primal simplex on rows rewritten as Ax + s = b with one
/// slack per row ([0,inf) for <=, (-inf,0] for >=, [0,0] for =). Phase 1
/// minimizes the total artificial violation; phase 2 the real costs.
/// Dantzig pricing with smallest-index tie-breaks; Bland's rule engages
/// after kBlandTrigger consecutive degenerate steps and disengages on the
/// next non-degenerate one.
class Simplex {
 public:
  Simplex(const model::FlatModel& m, const SolveConfig& cfg,
          const std::vector<double>& lo_in, const std::vector<double>& hi_in,
          Clock::time_point start, long iteration_budget)
      : cfg_(cfg), start_(start), iteration_budget_(iteration_budget) {
    n_ = m.vars.size();
    rows_ = m.constraints.size();
    ncols_ = n_ + rows_;
    lo_ = lo_in;
    hi_ = hi_in;
    lo_.resize(ncols_);
    hi_.resize(ncols_);
    cost_.assign(ncols_, 0.0);
    double sign = m.minimize ? 1.0 : -1.0;
    for (const auto& [idx, coef] : m.objective) cost_[idx] = sign * coef;

    tab_.assign(rows_, std::vector<double>(ncols_, 0.0));
    rhs_.assign(rows_, 0.0);
    for (size_t i = 0; i < rows_; ++i) {
      const auto& con = m.constraints[i];
      for (const auto& [idx, coef] : con.coefs) tab_[i][idx] = coef;
      size_t s = n_ + i;
      tab_[i][s] = 1.0;
      switch (con.sense) {
        case model::RelSense::Le:
          lo_[s] = 0.0;
          hi_[s] = kInf;
          break;
        case model::RelSense::Ge:
          lo_[s] = -kInf;
          hi_[s] = 0.0;
          break;
        case model::RelSense::Eq:
          lo_[s] = 0.0;
          hi_[s] = 0.0;
          break;
      }
      rhs_[i] = con.rhs;
    }
  }

  LpOutcome run() {
    LpOutcome out;
    if (!initialize(out)) return out;
    if (!phase1(out)) return out;
    if (!phase2(out)) return out;
    out.status = SolveStatus::Optimal;
    out.x.resize(n_);
    for (size_t j = 0; j < n_; ++j) out.x[j] = x_[j];
    for (size_t i = 0; i < rows_; ++i)
      if (basis_[i] < (int)n_) out.x[basis_[i]] = beta_[i];
    out.iterations = iterations_;
    return out;
  }

 private:
  // Nonbasic start values: the finite bound nearest zero, or zero for free
  // columns.
  static double rest_value(double lo, double hi) {
    if (lo <= 0.0 && hi >= 0.0) {
      if (lo == -kInf && hi == kInf) return 0.0;
      if (lo == -kInf) return std::min(hi, 0.0);
      if (hi == kInf) return std::max(lo, 0.0);
      return 0.0;
    }
    if (lo > 0.0) return lo;
    return hi;
  }

  bool initialize(LpOutcome& out) {
    x_.assign(ncols_, 0.0);
    for (size_t j = 0; j < ncols_; ++j) {
      if (lo_[j] > hi_[j]) {
        out.status = SolveStatus::Infeasible;
        out.iterations = iterations_;
        return false;
      }
      x_[j] = rest_value(lo_[j], hi_[j]);
    }
    basis_.assign(rows_, -1);
    in_basis_.assign(ncols_, 0);
    beta_.assign(rows_, 0.0);
    phase1_cost_.assign(ncols_, 0.0);

    // Slack i starts basic with whatever value the row forces; rows whose
    // forced value violates the slack's own bounds get an artificial
    // column instead.
    size_t n_art = 0;
    std::vector<double> resid(rows_, 0.0);
    for (size_t i = 0; i < rows_; ++i) {
      double v = rhs_[i];
      for (size_t j = 0; j < n_; ++j)
        if (tab_[i][j] != 0.0) v -= tab_[i][j] * x_[j];
      size_t s = n_ + i;
      if (v >= lo_[s] - cfg_.feas_tol && v <= hi_[s] + cfg_.feas_tol) {
        basis_[i] = (int)s;
        in_basis_[s] = 1;
        beta_[i] = v;
      } else {
        x_[s] = v > hi_[s] ? hi_[s] : lo_[s];
        resid[i] = v - x_[s];
        ++n_art;
      }
    }
    if (n_art > 0) {
      size_t base = ncols_;
      ncols_ += n_art;
      lo_.resize(ncols_);
      hi_.resize(ncols_);
      x_.resize(ncols_, 0.0);
      cost_.resize(ncols_, 0.0);
      phase1_cost_.resize(ncols_, 0.0);
      in_basis_.resize(ncols_, 0);
      for (auto& row : tab_) row.resize(ncols_, 0.0);
      size_t a = base;
      for (size_t i = 0; i < rows_; ++i) {
        if (basis_[i] >= 0) continue;
        tab_[i][a] = 1.0;
        if (resid[i] > 0.0) {
          lo_[a] = 0.0;
          hi_[a] = kInf;
          phase1_cost_[a] = 1.0;
        } else {
          lo_[a] = -kInf;
          hi_[a] = 0.0;
          phase1_cost_[a] = -1.0;
        }
        basis_[i] = (int)a;
        in_basis_[a] = 1;
        beta_[i] = resid[i];
        first_artificial_ = std::min(first_artificial_, a);
        ++a;
      }
    }
    return true;
  }

  bool is_artificial(size_t j) const { return j >= first_artificial_; }

  void compute_reduced_costs(const std::vector<double>& c) {
    active_cost_ = &c;
    refresh_reduced_costs();
  }

  void refresh_reduced_costs() {
    const std::vector<double>& c = *active_cost_;
    drow_.assign(ncols_, 0.0);
    for (size_t j = 0; j < ncols_; ++j) drow_[j] = c[j];
    for (size_t i = 0; i < rows_; ++i) {
      double cb = c[basis_[i]];
      if (cb == 0.0) continue;
      const auto& row = tab_[i];
      for (size_t j = 0; j < ncols_; ++j) drow_[j] -= cb * row[j];
    }
  }

  /// One simplex step. Returns +1 on a pivot/flip, 0 at optimality, -1 on
  /// an unbounded ray, -2 on hitting a budget.
  int step() {
    if (iterations_ >= iteration_budget_ ||
        elapsed_seconds(start_) > cfg_.time_limit_seconds)
      return -2;
    if (iterations_ > 0 && iterations_ % 512 == 0) refresh_reduced_costs();

    // Entering column.
    size_t q = ncols_;
    int dir = 0;
    double best = kCostTol;
    for (size_t j = 0; j < ncols_; ++j) {
      if (in_basis_[j] || lo_[j] == hi_[j]) continue;
      double d = drow_[j];
      int t = 0;
      if (d < -kCostTol && x_[j] < hi_[j])
        t = 1;
      else if (d > kCostTol && x_[j] > lo_[j])
        t = -1;
      if (t == 0) continue;
      if (bland_) {
        q = j;
        dir = t;
        break;
      }
      if (std::fabs(d) > best) {
        best = std::fabs(d);
        q = j;
        dir = t;
      }
    }
    if (q == ncols_) return 0;

    // Ratio test: how far can x_q move before a basic column or its own
    // opposite bound blocks.
    double limit = (dir > 0 ? hi_[q] - x_[q] : x_[q] - lo_[q]);
    int leave_row = -1;      // -1: own-bound flip
    double leave_bound = 0;  // bound the leaving basic variable hits
    for (size_t i = 0; i < rows_; ++i) {
      double rate = -dir * tab_[i][q];  // d beta_i / d step
      if (std::fabs(rate) <= kPivotTol) continue;
      int b = basis_[i];
      double room, bound;
      if (rate > 0) {
        if (hi_[b] == kInf) continue;
        room = (hi_[b] - beta_[i]) / rate;
        bound = hi_[b];
      } else {
        if (lo_[b] == -kInf) continue;
        room = (beta_[i] - lo_[b]) / (-rate);
        bound = lo_[b];
      }
      if (room < 0.0) room = 0.0;
      if (room < limit ||
          (room == limit && leave_row >= 0 && b < basis_[leave_row])) {
        limit = room;
        leave_row = (int)i;
        leave_bound = bound;
      }
    }

    if (limit == kInf) return -1;  // unbounded ray

    // Move.
    double delta = limit;
    for (size_t i = 0; i < rows_; ++i) {
      double rate = -dir * tab_[i][q];
      if (rate != 0.0) beta_[i] += rate * delta;
    }
    ++iterations_;
    if (delta <= kDegenerateStep) {
      if (++stalled_ >= kBlandTrigger) bland_ = true;
    } else {
      stalled_ = 0;
      bland_ = false;
    }

    if (leave_row < 0) {
      x_[q] = dir > 0 ? hi_[q] : lo_[q];  // bound flip
      return 1;
    }

    int leaving = basis_[leave_row];
    double entering_value = x_[q] + dir * delta;
    x_[leaving] = leave_bound;
    in_basis_[leaving] = 0;
    in_basis_[q] = 1;
    basis_[leave_row] = (int)q;
    beta_[leave_row] = entering_value;

    // Pivot the tableau and the reduced-cost row.
    auto& prow = tab_[leave_row];
    double piv = prow[q];
    for (size_t j = 0; j < ncols_; ++j) prow[j] /= piv;
    for (size_t i = 0; i < rows_; ++i) {
      if ((int)i == leave_row) continue;
      double f = tab_[i][q];
      if (f == 0.0) continue;
      auto& row = tab_[i];
      for (size_t j = 0; j < ncols_; ++j) row[j] -= f * prow[j];
    }
    double df = drow_[q];
    if (df != 0.0)
      for (size_t j = 0; j < ncols_; ++j) drow_[j] -= df * prow[j];
    return 1;
  }

  bool phase1(LpOutcome& out) {
    if (first_artificial_ >= ncols_) return true;  // already feasible
    compute_reduced_costs(phase1_cost_);
    for (;;) {
      int r = step();
      if (r == 1) continue;
      if (r == -2) {
        out.status = SolveStatus::LimitReached;
        out.iterations = iterations_;
        return false;
      }
      if (r == -1) {
        out.status = SolveStatus::Error;  // phase-1 objective is bounded
        out.iterations = iterations_;
        return false;
      }
      break;
    }
    double infeas = 0.0;
    for (size_t j = first_artificial_; j < ncols_; ++j) {
      double v = in_basis_[j] ? basic_value(j) : x_[j];
      infeas += std::fabs(v);
    }
    if (infeas > cfg_.feas_tol) {
      out.status = SolveStatus::Infeasible;
      out.iterations = iterations_;
      return false;
    }
    // Pin artificials at zero; drive basic ones out where the row allows.
    for (size_t j = first_artificial_; j < ncols_; ++j) {
      lo_[j] = 0.0;
      hi_[j] = 0.0;
      if (!in_basis_[j]) x_[j] = 0.0;
    }
    for (size_t i = 0; i < rows_; ++i) {
      size_t b = (size_t)basis_[i];
      if (!is_artificial(b)) continue;
      size_t q = ncols_;
      for (size_t j = 0; j < first_artificial_; ++j) {
        if (in_basis_[j] || lo_[j] == hi_[j]) continue;
        if (std::fabs(tab_[i][j]) > 1e-7) {
          q = j;
          break;
        }
      }
      if (q == ncols_) {
        beta_[i] = 0.0;  // redundant row; artificial stays pinned
        continue;
      }
      force_pivot(i, q);
    }
    return true;
  }

  double basic_value(size_t col) const {
    for (size_t i = 0; i < rows_; ++i)
      if ((size_t)basis_[i] == col) return beta_[i];
    return x_[col];
  }

  /// Degenerate basis swap: the entering column keeps its current value.
  void force_pivot(size_t row, size_t q) {
    int leaving = basis_[row];
    x_[leaving] = 0.0;
    in_basis_[leaving] = 0;
    in_basis_[q] = 1;
    basis_[row] = (int)q;
    beta_[row] = x_[q];
    auto& prow = tab_[row];
    double piv = prow[q];
    for (size_t j = 0; j < ncols_; ++j) prow[j] /= piv;
    for (size_t i = 0; i < rows_; ++i) {
      if (i == row) continue;
      double f = tab_[i][q];
      if (f == 0.0) continue;
      auto& r = tab_[i];
      for (size_t j = 0; j < ncols_; ++j) r[j] -= f * prow[j];
    }
  }

  bool phase2(LpOutcome& out) {
    compute_reduced_costs(cost_);
    for (;;) {
      int r = step();
      if (r == 1) continue;
      if (r == -2) {
        out.status = SolveStatus::LimitReached;
        out.iterations = iterations_;
        return false;
      }
      if (r == -1) {
        out.status = SolveStatus::Unbounded;
        out.iterations = iterations_;
        return false;
      }
      return true;
    }
  }

  SolveConfig cfg_;
  Clock::time_point start_;
  long iteration_budget_;

  size_t n_ = 0, rows_ = 0, ncols_ = 0;
  size_t first_artificial_ = std::numeric_limits<size_t>::max();
  std::vector<std::vector<double>> tab_;
  std::vector<double> rhs_, lo_, hi_, x_, beta_, cost_, phase1_cost_, drow_;
  const std::vector<double>* active_cost_ = nullptr;
  std::vector<int> basis_;
  std::vector<char> in_basis_;
  long iterations_ = 0;
  int stalled_ = 0;
  bool bland_ = false;
};

bool model_has_bad_numbers(const model::FlatModel& m) {
  auto bad = [](double v) { return std::isnan(v) || std::isinf(v); };
  for (const auto& v : m.vars)
    if (std::isnan(v.lower) || std::isnan(v.upper)) return true;
  for (const auto& [idx, coef] : m.objective)
    if (bad(coef)) return true;
  if (bad(m.objective_constant)) return true;
  for (const auto& c : m.constraints) {
    if (bad(c.rhs)) return true;
    for (const auto& [idx, coef] : c.coefs)
      if (bad(coef)) return true;
  }
  return false;
}

double objective_value(const model::FlatModel& m,
                       const std::vector<double>& x) {
  double v = m.objective_constant;
  for (const auto& [idx, coef] : m.objective) v += coef * x[idx];
  return v;
}

SolveReport lp_with_bounds(const model::FlatModel& m, const SolveConfig& cfg,
                           const std::vector<double>& lo,
                           const std::vector<double>& hi,
                           Clock::time_point start, long iteration_budget) {
  SolveReport rep;
  if (model_has_bad_numbers(m)) {
    rep.status = SolveStatus::Error;
    return rep;
  }

  if (m.constraints.empty()) {
    // Pure bound problem: each variable sits at its favorable bound.
    double sign = m.minimize ? 1.0 : -1.0;
    std::vector<double> c(m.vars.size(), 0.0);
    for (const auto& [idx, coef] : m.objective) c[idx] = sign * coef;
    std::vector<double> x(m.vars.size());
    for (size_t j = 0; j < m.vars.size(); ++j) {
      if (lo[j] > hi[j]) {
        rep.status = SolveStatus::Infeasible;
        return rep;
      }
      double v;
      if (c[j] > 0.0)
        v = lo[j];
      else if (c[j] < 0.0)
        v = hi[j];
      else
        v = std::max(lo[j], std::min(hi[j], 0.0));
      if (v == kInf || v == -kInf) {
        rep.status = SolveStatus::Unbounded;
        return rep;
      }
      x[j] = v;
    }
    rep.status = SolveStatus::Optimal;
    rep.objective = objective_value(m, x);
    for (size_t j = 0; j < m.vars.size(); ++j)
      rep.solution[m.vars[j].name] = x[j];
    return rep;
  }

  Simplex simplex(m, cfg, lo, hi, start, iteration_budget);
  LpOutcome out = simplex.run();
  rep.status = out.status;
  rep.iterations = out.iterations;
  if (out.status == SolveStatus::Optimal) {
    rep.objective = objective_value(m, out.x);
    for (size_t j = 0; j < m.vars.size(); ++j)
      rep.solution[m.vars[j].name] = out.x[j];
  }
  return rep;
}

}  // namespace

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "Optimal";
    case SolveStatus::Infeasible: return "Infeasible";
    case SolveStatus::Unbounded: return "Unbounded";
    case SolveStatus::LimitReached: return "LimitReached";
    case SolveStatus::Error: return "Error";
  }
  return "?";
}

SolveReport solve_lp(const model::FlatModel& m, const SolveConfig& cfg) {
  auto start = Clock::now();
  std::vector<double> lo, hi;
  lo.reserve(m.vars.size());
  hi.reserve(m.vars.size());
  for (const auto& v : m.vars) {
    lo.push_back(v.lower);
    hi.push_back(v.upper);
  }
  SolveReport rep =
      lp_with_bounds(m, cfg, lo, hi, start, cfg.max_iterations);
  rep.solve_time_seconds = elapsed_seconds(start);
  return rep;
}

namespace {

struct BnbNode {
  double key;  // bound in minimization space
  long id;
  int parent;  // index into the node pool, -1 for root
  int branch_var = -1;
  double new_lo = 0.0, new_hi = 0.0;
  bool tighten_upper = false;
};

}  // namespace

SolveReport solve_milp(const model::FlatModel& m, const SolveConfig& cfg) {
  auto start = Clock::now();
  SolveReport rep;
  if (model_has_bad_numbers(m)) {
    rep.status = SolveStatus::Error;
    rep.solve_time_seconds = elapsed_seconds(start);
    return rep;
  }
  const double sign = m.minimize ? 1.0 : -1.0;
  const size_t nv = m.vars.size();

  std::vector<double> root_lo(nv), root_hi(nv);
  std::vector<char> is_int(nv, 0);
  for (size_t j = 0; j < nv; ++j) {
    root_lo[j] = m.vars[j].lower;
    root_hi[j] = m.vars[j].upper;
    if (m.vars[j].domain != model::VarDomain::Continuous) {
      is_int[j] = 1;
      if (root_lo[j] != -kInf)
        root_lo[j] = std::ceil(root_lo[j] - cfg.int_tol);
      if (root_hi[j] != kInf) root_hi[j] = std::floor(root_hi[j] + cfg.int_tol);
      if (root_lo[j] > root_hi[j]) {
        rep.status = SolveStatus::Infeasible;
        rep.solve_time_seconds = elapsed_seconds(start);
        return rep;
      }
    }
  }

  std::vector<BnbNode> pool;
  pool.push_back({-kInf, 0, -1});
  // Best bound first; on ties the newest node, so chains of equal bounds
  // turn into dives instead of breadth-first sweeps.
  auto better = [](const BnbNode& a, const BnbNode& b) {
    if (a.key != b.key) return a.key < b.key;
    return a.id > b.id;
  };
  std::vector<int> open = {0};

  bool have_incumbent = false;
  double inc_min = kInf;  // incumbent objective in minimization space
  double inc_obj = 0.0;
  std::map<std::string, double> inc_solution;
  long next_id = 1;
  bool limit_hit = false;
  bool error_hit = false;
  bool unbounded_hit = false;

  std::vector<double> lo(nv), hi(nv);
  while (!open.empty()) {
    auto it = std::min_element(
        open.begin(), open.end(),
        [&](int a, int b) { return better(pool[a], pool[b]); });
    int cur = *it;
    open.erase(it);
    if (have_incumbent && pool[cur].key >= inc_min - 1e-9) continue;

    if (rep.nodes >= cfg.max_nodes ||
        rep.iterations >= cfg.max_iterations ||
        elapsed_seconds(start) > cfg.time_limit_seconds) {
      open.push_back(cur);
      limit_hit = true;
      break;
    }

    lo = root_lo;
    hi = root_hi;
    for (int p = cur; p != -1; p = pool[p].parent) {
      const BnbNode& node = pool[p];
      if (node.branch_var < 0) continue;
      if (node.tighten_upper)
        hi[node.branch_var] = std::min(hi[node.branch_var], node.new_hi);
      else
        lo[node.branch_var] = std::max(lo[node.branch_var], node.new_lo);
    }

    SolveReport lp = lp_with_bounds(m, cfg, lo, hi, start,
                                    cfg.max_iterations - rep.iterations);
    ++rep.nodes;
    rep.iterations += lp.iterations;
    if (lp.status == SolveStatus::LimitReached) {
      open.push_back(cur);
      limit_hit = true;
      break;
    }
    if (lp.status == SolveStatus::Error) {
      error_hit = true;
      break;
    }
    if (lp.status == SolveStatus::Unbounded) {
      unbounded_hit = true;
      break;
    }
    if (lp.status == SolveStatus::Infeasible) continue;

    double bound_min = sign * lp.objective;
    pool[cur].key = bound_min;
    if (have_incumbent && bound_min >= inc_min - 1e-9) continue;

    // Fractionality check.
    int branch = -1;
    double best_frac = 0.0;
    std::vector<double> xv(nv);
    for (size_t j = 0; j < nv; ++j) xv[j] = lp.solution.at(m.vars[j].name);
    for (size_t j = 0; j < nv; ++j) {
      if (!is_int[j]) continue;
      double f = xv[j] - std::floor(xv[j]);
      double frac = std::min(f, 1.0 - f);
      if (frac > cfg.int_tol && frac > best_frac) {
        best_frac = frac;
        branch = (int)j;
      }
    }
    if (branch < 0) {
      if (!have_incumbent || bound_min < inc_min) {
        have_incumbent = true;
        inc_min = bound_min;
        inc_obj = lp.objective;
        inc_solution = std::move(lp.solution);
      }
      continue;
    }

    double down = std::floor(xv[branch]);
    BnbNode left{bound_min, next_id++, cur, branch, 0.0, down, true};
    BnbNode right{bound_min, next_id++, cur, branch, down + 1.0, 0.0, false};
    pool.push_back(left);
    open.push_back((int)pool.size() - 1);
    pool.push_back(right);
    open.push_back((int)pool.size() - 1);
  }

  rep.solve_time_seconds = elapsed_seconds(start);
  if (error_hit) {
    rep.status = SolveStatus::Error;
    return rep;
  }
  if (unbounded_hit) {
    rep.status = SolveStatus::Unbounded;
    return rep;
  }
  if (limit_hit) {
    rep.status = SolveStatus::LimitReached;
    double best_open = kInf;
    for (int idx : open) best_open = std::min(best_open, pool[idx].key);
    if (have_incumbent) {
      rep.objective = inc_obj;
      rep.gap = best_open == -kInf || best_open == kInf
                    ? kInf
                    : std::fabs(best_open - inc_min) /
                          std::max(1e-10, std::fabs(inc_min));
    } else {
      rep.gap = kInf;
    }
    return rep;
  }
  if (!have_incumbent) {
    rep.status = SolveStatus::Infeasible;
    return rep;
  }
  rep.status = SolveStatus::Optimal;
  rep.objective = inc_obj;
  rep.solution = std::move(inc_solution);
  rep.gap = 0.0;
  return rep;
}

SolveReport solve(const model::FlatModel& m, const SolveConfig& cfg) {
  for (const auto& v : m.vars)
    if (v.domain != model::VarDomain::Continuous) return solve_milp(m, cfg);
  return solve_lp(m, cfg);
}

AnswerVerdict check_answer(const SolveReport& report, double expected,
                           double abs_tol, double rel_tol) {
  if (report.status != SolveStatus::Optimal) return AnswerVerdict::NotOptimal;
  double err = std::fabs(report.objective - expected);
  return err <= abs_tol + rel_tol * std::fabs(expected)
             ? AnswerVerdict::Match
             : AnswerVerdict::Mismatch;
}

}  // namespace sageforge::solver
