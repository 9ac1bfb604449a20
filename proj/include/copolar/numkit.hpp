#pragma once

// Shared numerical kernel: central finite differences with Richardson
// extrapolation, derivative-free maximization over spherical caps, and a
// handful of small linear-algebra helpers.

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <vector>

#include "copolar/constants.hpp"

namespace copolar {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

using ScalarField = std::function<double(const Vec&)>;

/// Step selection for finite differences. A zero base_step selects the default
/// eps^(1/(order+2)) * (1 + |x|).
struct StepPolicy {
  double base_step = 0.0;
  int richardson_levels = defaults::kRichardsonLevels;
  int order = 1;

  void validate() const;
  double step_at(const Vec& x) const;
};

/// Dense, fully symmetric rank-3 array indexed (i, j, k).
class Tensor3 {
 public:
  Tensor3() = default;
  explicit Tensor3(int n) : n_(n), data_(static_cast<std::size_t>(n) * n * n, 0.0) {}

  int size() const noexcept { return n_; }
  double& operator()(int i, int j, int k) { return data_[(static_cast<std::size_t>(i) * n_ + j) * n_ + k]; }
  double operator()(int i, int j, int k) const { return data_[(static_cast<std::size_t>(i) * n_ + j) * n_ + k]; }
  const std::vector<double>& data() const noexcept { return data_; }

  double max_abs() const;
  /// Largest |T(i,j,k) - T(sigma(i,j,k))| over index permutations.
  double asymmetry() const;
  /// Replaces every entry by the average over its index permutations.
  void symmetrize();

 private:
  int n_ = 0;
  std::vector<double> data_;
};

Vec grad_fd(const ScalarField& f, const Vec& x, StepPolicy policy = {});
Mat hess_fd(const ScalarField& f, const Vec& x, StepPolicy policy = {.order = 2});
Tensor3 third_fd(const ScalarField& f, const Vec& x, StepPolicy policy = {.order = 3});

/// Spherical cap {v unit : angle(v, center) <= max_angle - margin}.
struct CapDomain {
  Vec center;
  double max_angle = 0.0;
  double margin = 0.0;

  double effective_angle() const { return max_angle - margin; }
  void validate() const;
};

struct CapMaximum {
  Vec direction;
  double value = 0.0;
};

using DirectionField = std::function<double(const Vec&)>;

/// Maximizes g over the cap: deterministic lattice scan, then simplex
/// refinement from the `restarts` best scan points. Non-finite values of g are
/// treated as -infinity, so g may signal "outside its domain" that way.
CapMaximum maximize_on_cap(const DirectionField& g, const CapDomain& cap, int restarts = defaults::kRestarts,
                           double tol = defaults::kCapTolerance, std::uint64_t seed = 0);

/// Deterministic scan directions used by maximize_on_cap (exposed for tests
/// and for building sample grids).
std::vector<Vec> cap_lattice(const CapDomain& cap, int count, std::uint64_t seed = 0);

struct ScalarMaximum {
  double argmax = 0.0;
  double value = 0.0;
};

/// Maximizes phi on [lo, hi]: uniform scan, then golden-section refinement of
/// the best bracket.
ScalarMaximum maximize_interval(const std::function<double(double)>& phi, double lo, double hi, int scan = 64,
                                double xtol = 1e-12);

/// Minimizes f from `start` with a Nelder-Mead simplex of initial size `step`.
struct SimplexResult {
  Vec x;
  double value = 0.0;
  int iterations = 0;
};
SimplexResult nelder_mead_min(const ScalarField& f, const Vec& start, double step, double xtol,
                              int max_iterations = defaults::kSimplexMaxIterations);

/// Orthonormal basis of the complement of a unit vector, as columns.
Mat complement_basis(const Vec& unit);

/// Unit vector spanning the null space of an (n-1) x n matrix of full rank.
/// Throws RankDeficient when the smallest singular gap is below `tol`.
Vec null_vector(const Mat& rows, double tol = 1e-12);

double angle_between(const Vec& a, const Vec& b);

}  // namespace copolar
