// Copyright 2026 The dpnoise Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dpnoise/lp.hpp"

#include <cmath>
#include <sstream>

namespace dpnoise {

const char* lp_status_name(LpSolution::Status s) {
  switch (s) {
    case LpSolution::Status::Optimal: return "optimal";
    case LpSolution::Status::TruncationSuspect: return "truncation-suspect";
    case LpSolution::Status::Infeasible: return "infeasible";
  }
  return "?";
}

std::int64_t default_truncation(double epsilon, double delta,
                                std::int64_t sensitivity) {
  if (delta > 0.0 && epsilon > 0.0) {
    // Whichever tail decays first bounds the interesting support.
    double scale = std::min(1.0 / (2.0 * delta), 14.0 / epsilon);
    return static_cast<std::int64_t>(std::ceil((scale + 6.0) * sensitivity));
  }
  if (delta > 0.0) {
    return static_cast<std::int64_t>(
        std::ceil((1.0 / (2.0 * delta) + 6.0) * sensitivity));
  }
  return static_cast<std::int64_t>(std::ceil(14.0 * sensitivity / epsilon));
}

LpProblem build_relaxed_lp(const CostFn& cost, std::int64_t sensitivity,
                           double epsilon, double delta, std::int64_t N) {
  PrivacyParams params{epsilon, delta, sensitivity, 1};
  params.validate();
  double min_scale;
  if (delta > 0.0 && epsilon > 0.0) {
    min_scale = std::min((1.0 / (2.0 * delta) + 4.0), 12.0 / epsilon);
  } else if (delta > 0.0) {
    min_scale = 1.0 / (2.0 * delta) + 4.0;
  } else {
    min_scale = 12.0 / epsilon;
  }
  std::int64_t min_n =
      static_cast<std::int64_t>(std::ceil(min_scale * sensitivity));
  if (N < min_n || N > 100000) {
    std::ostringstream os;
    os << "truncation N = " << N << " outside [" << min_n << ", 1e5]";
    throw Error(Errc::TruncationTooSmall, os.str());
  }

  LpProblem lp;
  lp.truncation = N;
  lp.objective.resize(static_cast<std::size_t>(N + 1), 0.0);
  for (std::int64_t k = 1; k <= N; ++k) {
    lp.objective[static_cast<std::size_t>(k)] = 2.0 * cost.axis(k);
  }

  std::int64_t D = sensitivity;
  auto row = [&](bool ge, double rhs) -> LpProblem::Row& {
    lp.rows.push_back({std::vector<double>(
                           static_cast<std::size_t>(N + 1), 0.0),
                       rhs, ge});
    return lp.rows.back();
  };

  {
    LpProblem::Row& mass = row(true, 0.5);
    mass.coeffs[0] = 0.5;
    for (std::int64_t k = 1; k <= N; ++k) mass.coeffs[static_cast<std::size_t>(k)] = 1.0;
  }

  if (epsilon == 0.0) {
    for (std::int64_t k = 0; k + D <= N; ++k) {
      LpProblem::Row& r = row(false, delta);
      for (std::int64_t l = 0; l < D; ++l) {
        r.coeffs[static_cast<std::size_t>(k + l)] = 1.0;
      }
    }
    return lp;
  }

  double ee = std::exp(epsilon);
  double b0 = delta + (ee - 1.0) / 2.0;
  {
    // Row around the origin: the shifted window overlaps itself.
    LpProblem::Row& r = row(false, b0);
    r.coeffs[0] = (1.0 + ee) / 2.0;
    for (std::int64_t k = 1; k < D; ++k) r.coeffs[static_cast<std::size_t>(k)] = ee;
  }
  {
    LpProblem::Row& r = row(false, b0);
    r.coeffs[0] = (ee - 1.0) / 2.0;
    for (std::int64_t k = 1; k <= D; ++k) r.coeffs[static_cast<std::size_t>(k)] = ee;
  }
  for (std::int64_t i = 2; i + D - 1 <= N; ++i) {
    LpProblem::Row& r = row(false, b0);
    r.coeffs[0] = (ee - 1.0) / 2.0;
    for (std::int64_t k = 1; k < i; ++k) r.coeffs[static_cast<std::size_t>(k)] = ee - 1.0;
    for (std::int64_t k = i; k < i + D; ++k) r.coeffs[static_cast<std::size_t>(k)] = ee;
  }
  return lp;
}

namespace {

// Dense tableau in long double. Column layout: structural | slack/surplus |
// artificial, rhs kept separately.
class Simplex {
 public:
  explicit Simplex(const LpProblem& lp) {
    m_ = static_cast<std::int64_t>(lp.rows.size());
    n_ = lp.num_vars();
    total_ = n_ + m_;  // one slack or surplus per row
    std::int64_t art = 0;
    for (const auto& r : lp.rows) {
      if (r.ge) ++art;
    }
    cols_ = total_ + art;
    blocked_from_ = cols_;
    tab_.assign(static_cast<std::size_t>(m_) *
                    static_cast<std::size_t>(cols_ + 1),
                0.0L);
    basis_.resize(static_cast<std::size_t>(m_));
    cost_.assign(static_cast<std::size_t>(cols_), 0.0L);
    for (std::int64_t j = 0; j < n_; ++j) {
      cost_[static_cast<std::size_t>(j)] = lp.objective[static_cast<std::size_t>(j)];
    }
    first_art_ = total_;

    std::int64_t art_next = total_;
    for (std::int64_t i = 0; i < m_; ++i) {
      const auto& r = lp.rows[static_cast<std::size_t>(i)];
      for (std::int64_t j = 0; j < n_; ++j) {
        at(i, j) = r.coeffs[static_cast<std::size_t>(j)];
      }
      at(i, n_ + i) = r.ge ? -1.0L : 1.0L;  // surplus or slack
      rhs(i) = r.rhs;
      if (r.ge) {
        at(i, art_next) = 1.0L;
        basis_[static_cast<std::size_t>(i)] = art_next++;
      } else {
        basis_[static_cast<std::size_t>(i)] = n_ + i;
      }
    }
  }

  // Returns false when phase 1 proves infeasibility.
  bool solve(std::int64_t* iterations) {
    if (first_art_ < cols_) {
      std::vector<long double> phase1(static_cast<std::size_t>(cols_), 0.0L);
      for (std::int64_t j = first_art_; j < cols_; ++j) {
        phase1[static_cast<std::size_t>(j)] = 1.0L;
      }
      run(phase1, iterations);
      long double art_sum = 0.0L;
      for (std::int64_t i = 0; i < m_; ++i) {
        if (basis_[static_cast<std::size_t>(i)] >= first_art_) art_sum += rhs(i);
      }
      if (art_sum > 1e-9L) return false;
      // Pivot any degenerate artificials out of the basis, then freeze the
      // artificial columns at zero.
      for (std::int64_t i = 0; i < m_; ++i) {
        if (basis_[static_cast<std::size_t>(i)] < first_art_) continue;
        for (std::int64_t j = 0; j < first_art_; ++j) {
          if (std::abs(at(i, j)) > 1e-9L) {
            pivot(i, j);
            break;
          }
        }
      }
      blocked_from_ = first_art_;
    }
    run(cost_, iterations);
    return true;
  }

  long double var_value(std::int64_t j) const {
    for (std::int64_t i = 0; i < m_; ++i) {
      if (basis_[static_cast<std::size_t>(i)] == j) return rhs(i);
    }
    return 0.0L;
  }

 private:
  long double& at(std::int64_t i, std::int64_t j) {
    return tab_[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_ + 1) +
                static_cast<std::size_t>(j)];
  }
  long double at(std::int64_t i, std::int64_t j) const {
    return tab_[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_ + 1) +
                static_cast<std::size_t>(j)];
  }
  long double& rhs(std::int64_t i) { return at(i, cols_); }
  long double rhs(std::int64_t i) const { return at(i, cols_); }

  void pivot(std::int64_t r, std::int64_t c) {
    long double p = at(r, c);
    std::int64_t w = cols_ + 1;
    long double* prow = &tab_[static_cast<std::size_t>(r) * static_cast<std::size_t>(w)];
    for (std::int64_t j = 0; j < w; ++j) prow[j] /= p;
    for (std::int64_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      long double f = at(i, c);
      if (f == 0.0L) continue;
      long double* irow = &tab_[static_cast<std::size_t>(i) * static_cast<std::size_t>(w)];
      for (std::int64_t j = 0; j < w; ++j) irow[j] -= f * prow[j];
      irow[c] = 0.0L;
    }
    prow[c] = 1.0L;
    basis_[static_cast<std::size_t>(r)] = c;
  }

  // Reduced cost of column j under the simplex multipliers for `obj`.
  void reduced_costs(const std::vector<long double>& obj,
                     std::vector<long double>* out) const {
    // y = c_B B^{-1} is implicit: with the tableau fully updated, the reduced
    // cost is c_j - sum_i c_{basis(i)} * tab(i, j).
    out->assign(static_cast<std::size_t>(cols_), 0.0L);
    for (std::int64_t j = 0; j < cols_; ++j) {
      (*out)[static_cast<std::size_t>(j)] = obj[static_cast<std::size_t>(j)];
    }
    for (std::int64_t i = 0; i < m_; ++i) {
      long double cb = obj[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])];
      if (cb == 0.0L) continue;
      for (std::int64_t j = 0; j < cols_; ++j) {
        (*out)[static_cast<std::size_t>(j)] -= cb * at(i, j);
      }
    }
  }

  void run(const std::vector<long double>& obj, std::int64_t* iterations) {
    std::vector<long double> red;
    std::int64_t limit = 400 * (m_ + cols_);
    std::int64_t bland_after = 20 * (m_ + cols_);
    for (std::int64_t iter = 0;; ++iter) {
      if (iter > limit) {
        throw Error(Errc::Unbounded, "simplex iteration limit hit");
      }
      if (iterations) ++*iterations;
      reduced_costs(obj, &red);
      bool bland = iter > bland_after;
      std::int64_t enter = -1;
      long double best = -1e-9L;
      for (std::int64_t j = 0; j < blocked_from_; ++j) {
        long double rc = red[static_cast<std::size_t>(j)];
        if (rc < -1e-9L) {
          if (bland) {
            enter = j;
            break;
          }
          if (rc < best) {
            best = rc;
            enter = j;
          }
        }
      }
      if (enter < 0) return;  // optimal for this phase
      std::int64_t leave = -1;
      long double best_ratio = 0.0L;
      for (std::int64_t i = 0; i < m_; ++i) {
        long double a = at(i, enter);
        if (a <= 1e-11L) continue;
        long double ratio = rhs(i) / a;
        if (leave < 0 || ratio < best_ratio - 1e-15L ||
            (ratio < best_ratio + 1e-15L &&
             basis_[static_cast<std::size_t>(i)] <
                 basis_[static_cast<std::size_t>(leave)])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave < 0) {
        throw Error(Errc::Unbounded,
                    "unbounded pivot column; construction bug");
      }
      pivot(leave, enter);
    }
  }

  std::int64_t m_ = 0, n_ = 0, total_ = 0, cols_ = 0, first_art_ = 0;
  std::int64_t blocked_from_ = 0;
  std::vector<long double> tab_;
  std::vector<long double> cost_;
  std::vector<std::int64_t> basis_;

 public:
  std::int64_t structural_vars() const { return n_; }
};

}  // namespace

LpSolution solve_lp(const LpProblem& problem, std::int64_t sensitivity) {
  Simplex simplex(problem);
  LpSolution sol;
  if (!simplex.solve(&sol.iterations)) {
    sol.status = LpSolution::Status::Infeasible;
    return sol;
  }

  std::int64_t N = problem.truncation;
  std::vector<double> half(static_cast<std::size_t>(N + 1), 0.0);
  for (std::int64_t k = 0; k <= N; ++k) {
    double v = static_cast<double>(simplex.var_value(k));
    half[static_cast<std::size_t>(k)] = std::max(v, 0.0);
  }

  // Guard against drift accumulated over the pivots: the reported point must
  // still satisfy every original row.
  for (const auto& r : problem.rows) {
    NeumaierSumL lhs;
    for (std::int64_t k = 0; k <= N; ++k) {
      lhs.add(static_cast<long double>(r.coeffs[static_cast<std::size_t>(k)]) *
              half[static_cast<std::size_t>(k)]);
    }
    long double slack = r.ge ? lhs.value() - r.rhs : r.rhs - lhs.value();
    if (slack < -1e-8L) {
      throw Error(Errc::Infeasible, "solver output fails a row recheck");
    }
  }

  NeumaierSumL obj;
  for (std::int64_t k = 0; k <= N; ++k) {
    obj.add(static_cast<long double>(problem.objective[static_cast<std::size_t>(k)]) *
            half[static_cast<std::size_t>(k)]);
  }
  sol.optimal_value = static_cast<double>(obj.value());

  NeumaierSum boundary;
  for (std::int64_t k = std::max<std::int64_t>(0, N - sensitivity); k <= N; ++k) {
    boundary.add(2.0 * half[static_cast<std::size_t>(k)]);
  }
  sol.boundary_mass = boundary.value();
  sol.status = sol.boundary_mass < 1e-10 ? LpSolution::Status::Optimal
                                         : LpSolution::Status::TruncationSuspect;

  sol.pmf.offset = -N;
  sol.pmf.probs.resize(static_cast<std::size_t>(2 * N + 1), 0.0);
  for (std::int64_t k = -N; k <= N; ++k) {
    sol.pmf.probs[static_cast<std::size_t>(k + N)] =
        half[static_cast<std::size_t>(std::abs(k))];
  }
  return sol;
}

LpSolution lp_solve_for(const CostFn& cost, const PrivacyParams& params,
                        std::int64_t N) {
  if (N <= 0) {
    N = default_truncation(params.epsilon, params.delta, params.sensitivity);
  }
  LpProblem lp = build_relaxed_lp(cost, params.sensitivity, params.epsilon,
                                  params.delta, N);
  return solve_lp(lp, params.sensitivity);
}

BoundReport lp_lower_bound(const CostFn& cost, const PrivacyParams& params,
                           std::int64_t N) {
  if (params.dims != 1) {
    throw Error(Errc::InvalidParams,
                "the relaxed program is only solved in one dimension");
  }
  if (N <= 0) {
    N = default_truncation(params.epsilon, params.delta, params.sensitivity);
  }
  LpSolution sol = lp_solve_for(cost, params, N);
  if (sol.status == LpSolution::Status::Infeasible) {
    throw Error(Errc::Infeasible, "relaxed program infeasible");
  }
  BoundReport report;
  report.value = sol.optimal_value;
  report.kind = BoundReport::Kind::Lower;
  report.method = "lp";
  report.preconditions_ok = sol.status == LpSolution::Status::Optimal;
  std::ostringstream os;
  os << "N=" << N << " boundary_mass=" << sol.boundary_mass << " status="
     << lp_status_name(sol.status);
  report.notes.push_back(os.str());
  return report;
}

}  // namespace dpnoise
