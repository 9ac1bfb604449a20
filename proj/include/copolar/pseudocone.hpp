#pragma once

// C-pseudo-cones in radial-first representation: a recession cone plus the
// radial field rho(w) = min{t > 0 : t w in K}, defined for every w in int C and
// homogeneous of degree -1. Support functions, gauges and the copolar set are
// derived from it; closed forms are used where a family provides them.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "copolar/cone.hpp"
#include "copolar/jet.hpp"
#include "copolar/numkit.hpp"

namespace copolar {

class PseudoCone;

/// Backing representation of a pseudo-cone. Implementations are immutable.
class PseudoConeModel {
 public:
  explicit PseudoConeModel(Cone cone);
  virtual ~PseudoConeModel() = default;

  const Cone& cone() const noexcept { return cone_; }
  const Cone& dual_cone() const noexcept { return dual_; }

  virtual std::string name() const = 0;
  /// Declared smoothness class: 0, 2 or 3.
  virtual int smoothness() const = 0;
  virtual double radial(const Vec& w) const = 0;

  /// Analytic derivatives through jets; false means finite differences.
  virtual bool has_jets() const { return false; }
  virtual Jet radial_jet(const JetVec& w) const;

  /// Closed-form support value for u in the dual cone, if known.
  virtual std::optional<double> support_closed(const Vec& u) const;
  /// Closed-form membership (needed on the boundary of C), if known.
  virtual std::optional<bool> member_closed(const Vec& x, double tol) const;
  /// Closed-form copolar set, if known.
  virtual std::optional<PseudoCone> closed_copolar() const;

 private:
  Cone cone_;
  Cone dual_;
};

class PseudoCone {
 public:
  explicit PseudoCone(std::shared_ptr<const PseudoConeModel> model);

  const Cone& cone() const noexcept { return model_->cone(); }
  const Cone& dual_cone() const noexcept { return model_->dual_cone(); }
  const PseudoConeModel& model() const noexcept { return *model_; }
  const std::shared_ptr<const PseudoConeModel>& model_ptr() const noexcept { return model_; }

  std::string name() const { return model_->name(); }
  int smoothness() const { return model_->smoothness(); }
  int dim() const { return cone().dim(); }
  bool analytic() const { return model_->has_jets(); }

 private:
  std::shared_ptr<const PseudoConeModel> model_;
};

/// Settings for numerical suprema over cone footprints.
struct SearchOptions {
  double margin = defaults::kSearchMargin;
  int restarts = defaults::kRestarts;
  double tol = defaults::kCapTolerance;
  std::uint64_t seed = 0;
};

/// rho_K(v) for v in int C. Throws OutsideCone otherwise.
double radial(const PseudoCone& k, const Vec& v);
/// Extended-real support function: +inf off the dual cone; closed form when
/// the family has one, numerical supremum otherwise.
double support(const PseudoCone& k, const Vec& u, const SearchOptions& opts = {});
/// Always the numerical supremum of rho(v) <u, v> over the footprint.
double support_numeric(const PseudoCone& k, const Vec& u, const SearchOptions& opts = {});
/// Maximizing footprint direction for support_numeric.
CapMaximum support_maximizer(const PseudoCone& k, const Vec& u, const SearchOptions& opts = {});
/// Gauge F(x) = max{lambda > 0 : x in lambda K} = 1 / rho(x) on int C.
double gauge(const PseudoCone& k, const Vec& x);
bool member(const PseudoCone& k, const Vec& x, double tol = 0.0);

/// Copolar set K* over the dual cone; its radial field is w -> -1 / h_K(w).
PseudoCone copolar(const PseudoCone& k, const SearchOptions& opts = {});
/// Image A K; composes with existing linear images.
PseudoCone linear_image(const PseudoCone& k, const Mat& a);

/// Radial value by bisection on a membership predicate with geometric bracket
/// expansion (for fields without a closed form).
double radial_by_bisection(const std::function<bool(const Vec&)>& inside, const Vec& w);

// ---------------------------------------------------------------------------
// Built-in families

struct ConeSpec {
  std::string kind = "orthant";  // orthant | circular | polyhedral
  int n = 2;
  Vec axis;
  double half_angle = 0.0;
  std::vector<Vec> generators;
};

Cone make_cone(const ConeSpec& spec);

struct FamilySpec {
  std::string family;  // hyperbola | calabi | truncated_cone | shifted_cone | perturbed_hyperbola
  double c = 1.0;
  int n = 3;
  double height = 1.0;
  double delta = 0.0;
  std::optional<ConeSpec> cone;  // truncated_cone / shifted_cone; orthant(2) when absent
  Vec apex;                      // shifted_cone
  Vec normal;                    // truncated_cone; default picked from the cone when empty
};

PseudoCone make_family(const FamilySpec& spec);

PseudoCone hyperbola(double c);
PseudoCone calabi(int n, double c);
PseudoCone perturbed_hyperbola(double delta);
/// {x in C : <a, x> >= h}.
PseudoCone truncated_cone(const Cone& c, const Vec& normal, double height);
PseudoCone truncated_cone(const Cone& c, double height);
/// z + C.
PseudoCone shifted_cone(const Cone& c, const Vec& apex);

struct FamilyInfo {
  std::string name;
  std::string parameters;
  int smoothness;
  bool closed_radial;
  bool closed_support;
  bool closed_copolar;
  bool analytic_derivatives;
};

std::vector<FamilyInfo> list_families();

}  // namespace copolar
