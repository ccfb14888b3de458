#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ballproj/problem.hpp"

namespace ballproj {

struct SpgOptions {
  int max_iterations = 1000;
  double tolerance = 1e-5;  // on ||x - P(x - grad)||_inf
  int memory = 10;          // nonmonotone window M
  double sufficient_decrease = 1e-4;
  double step_min = 1e-10;
  double step_max = 1e10;
  int bb_variant = 1;      // 1 or 2; alternates on consecutive backtracks
  int max_backtracks = 50;
  std::optional<std::vector<double>> x0;  // default: the origin
  std::size_t iterate_stride = 0;         // 0: do not record iterates
};

/// Barzilai-Borwein stepsize. Variant 1 is <dx,dx>/<dg,dx>, variant 2 is
/// <dx,dg>/<dg,dg>, clamped to [step_min, step_max]; a nonpositive or
/// non-finite raw value yields the fallback (pass the previous clamped
/// step; defaults to step_max for the first use).
double bb_stepsize(std::span<const double> dx, std::span<const double> dg,
                   int variant, double step_min, double step_max,
                   double fallback);
double bb_stepsize(std::span<const double> dx, std::span<const double> dg,
                   int variant, double step_min, double step_max);

/// Spectral projected gradient with BB steps and a nonmonotone Armijo
/// search along the projection arc (the scalar step backtracks, each trial
/// costs one projection).
std::pair<std::vector<double>, SolverReport> spg_solve(
    const ConstrainedProblem& prob, const SpgOptions& opts);

}  // namespace ballproj
