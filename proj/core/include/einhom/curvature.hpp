#pragma once

#include <array>
#include <map>
#include <span>
#include <vector>

#include "einhom/rational.hpp"
#include "einhom/scalar_field.hpp"
#include "einhom/space.hpp"
#include "einhom/surd.hpp"

namespace einhom {

/// Positive scale factors x_alpha of an Ad(K)-invariant metric, one per summand
/// of p, stored in SpaceSpec::modules() order.
class MetricParams {
 public:
  MetricParams(const SpaceSpec& spec, std::vector<Rational> values);
  MetricParams(const SpaceSpec& spec, const std::map<ModuleId, Rational>& values);
  static MetricParams uniform(const SpaceSpec& spec, const Rational& value = 1);
  /// Three-block substitution: x on every p_a, y on p_(a,b) with b <= s, z on p_(a,s+1).
  static MetricParams three_block(const SpaceSpec& spec, const Rational& x, const Rational& y, const Rational& z);

  const SpaceSpec& spec() const { return spec_; }
  std::span<const Rational> values() const { return values_; }
  const Rational& operator[](const ModuleId& id) const;
  MetricParams scaled(const Rational& c) const;
  /// Scaled so the largest coordinate is 1.
  std::vector<double> normalized() const;

 private:
  SpaceSpec spec_;
  std::vector<Rational> values_;
};

struct EinsteinCertificate {
  double lambda = 0.0;
  double residual_inf = 0.0;
  double volume = 0.0;
  double log_volume = 0.0;
  double scalar_curvature = 0.0;
  /// Set when the Lagrange condition was verified with no rounding at all.
  bool exact_zero = false;

  bool accepted(double tolerance) const { return exact_zero || residual_inf < tolerance; }
};

/// 1e-8.
double default_residual_tolerance();

/// Scalar curvature as a Laurent polynomial in the x_alpha (variable i is
/// modules()[i]), built from the double sum over summands with the closed-form
/// triple symbols. Throws DomainError for non-generic specs.
ScalarField scalar_curvature_field(const SpaceSpec& spec);
/// Same sum without the genericity gate; used by certification, which only
/// needs the functional restricted to the diagonal family.
ScalarField scalar_curvature_field_unchecked(const SpaceSpec& spec);

Rational scalar_curvature_generic(const SpaceSpec& spec, const MetricParams& x);

/// Term-by-term evaluation of the blockwise closed form (orthogonal and symplectic).
Rational scalar_curvature_closed(const SpaceSpec& spec, const MetricParams& x);

/// Coefficients of F(x,y,z) = a/x + b/y + c/z - d x/y^2 - e x/z^2 - f y/z^2 and
/// of the volume G = x^p y^q z^r for the three-block family.
struct ThreeBlockCoeffs {
  Rational a, b, c, d, e, f, p, q, r;
  friend bool operator==(const ThreeBlockCoeffs&, const ThreeBlockCoeffs&) = default;
};

/// Range-checked: s >= 2, l >= 1, k >= 3 (so) or k >= 1 (sp).
ThreeBlockCoeffs three_block_form(GroupFamily family, int s, int k, int l);
/// Raw formulas for any s, k, l >= 1 (coefficients may vanish).
ThreeBlockCoeffs three_block_coefficients(GroupFamily family, int s, int k, int l);
/// d (q + 2p) == p b - q a and f p == q e.
bool coefficient_relations_hold(const ThreeBlockCoeffs& c);
/// S = scale * F: sk / (8(n-2)) or sk / (4(n+1)).
Rational three_block_scale(GroupFamily family, int s, int k, int l);
/// F in variables (x, y, z) = (0, 1, 2).
ScalarField three_block_field(const ThreeBlockCoeffs& c);
Rational three_block_value(const ThreeBlockCoeffs& c, const Rational& x, const Rational& y, const Rational& z);

/// Exact partial derivatives of a field at a point.
std::vector<Rational> gradient(const ScalarField& field, std::span<const Rational> point);

/// Lagrange certificate for critical points of `field` on the level sets of
/// prod x_i^{w_i}: with g = grad field and v_i = w_i / x_i, lambda = <g,v>/<v,v>
/// and residual = |g - lambda v|_inf / max(|g|_inf, |lambda v|_inf), which is
/// invariant under uniform scaling of x.
EinsteinCertificate lagrange_certificate(const ScalarField& field, std::span<const Rational> log_volume_weights,
                                         std::span<const Rational> point);
/// Exact check that grad field is parallel to the volume gradient at a point of Q(sqrt D).
bool lagrange_exact(const ScalarField& field, std::span<const Rational> log_volume_weights,
                    std::span<const QuadraticSurd> point);

std::vector<Rational> log_volume_weights(const SpaceSpec& spec);

EinsteinCertificate verify_einstein(const SpaceSpec& spec, const MetricParams& x);
bool verify_einstein_exact(const SpaceSpec& spec, std::span<const QuadraticSurd> x);

/// Polynomial Einstein system for blocks (k1, k2, k3) with s = 2, t = 1, written
/// as four fields left - right in variables (x1, x2, x12, x13, x23).
std::array<ScalarField, 4> full_system(GroupFamily family, int k1, int k2, int k3);
/// max_i |E_i(x)| / max monomial magnitude over all four equations.
double full_system_residual(GroupFamily family, std::array<int, 3> blocks, std::span<const Rational> x);
Rational full_system_residual_exact(GroupFamily family, std::array<int, 3> blocks, std::span<const Rational> x);

}  // namespace einhom
