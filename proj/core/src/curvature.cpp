#include "einhom/curvature.hpp"

#include <algorithm>
#include <cmath>

#include "einhom/errors.hpp"

namespace einhom {

// ---------------------------------------------------------------- MetricParams

MetricParams::MetricParams(const SpaceSpec& spec, std::vector<Rational> values)
    : spec_(spec), values_(std::move(values)) {
  if (values_.size() != spec_.modules().size())
    throw DomainError("MetricParams: expected " + std::to_string(spec_.modules().size()) + " values");
  for (const auto& v : values_)
    if (v <= 0) throw DomainError("MetricParams: scale factors must be positive");
}

MetricParams::MetricParams(const SpaceSpec& spec, const std::map<ModuleId, Rational>& values) : spec_(spec) {
  const auto mods = spec.modules();
  if (values.size() != mods.size())
    throw DomainError("MetricParams: key set must equal the summands of p");
  for (const auto& id : mods) {
    auto it = values.find(id);
    if (it == values.end()) throw DomainError("MetricParams: missing value for " + id.to_string());
    if (it->second <= 0) throw DomainError("MetricParams: scale factors must be positive");
    values_.push_back(it->second);
  }
}

MetricParams MetricParams::uniform(const SpaceSpec& spec, const Rational& value) {
  return MetricParams(spec, std::vector<Rational>(spec.modules().size(), value));
}

MetricParams MetricParams::three_block(const SpaceSpec& spec, const Rational& x, const Rational& y,
                                       const Rational& z) {
  if (spec.t() != 1) throw DomainError("three-block metric needs t = 1");
  const int last = spec.block_count();
  std::vector<Rational> v;
  for (const auto& id : spec.modules()) {
    if (id.is_diagonal())
      v.push_back(x);
    else if (id.second() == last)
      v.push_back(z);
    else
      v.push_back(y);
  }
  return MetricParams(spec, std::move(v));
}

const Rational& MetricParams::operator[](const ModuleId& id) const { return values_[spec_.module_index(id)]; }

MetricParams MetricParams::scaled(const Rational& c) const {
  std::vector<Rational> v(values_);
  for (auto& x : v) x *= c;
  return MetricParams(spec_, std::move(v));
}

std::vector<double> MetricParams::normalized() const {
  const Rational mx = *std::max_element(values_.begin(), values_.end());
  std::vector<double> out;
  out.reserve(values_.size());
  for (const auto& v : values_) out.push_back(Rational(v / mx).get_d());
  return out;
}

double default_residual_tolerance() { return 1e-8; }

// ------------------------------------------------------------ scalar curvature

ScalarField scalar_curvature_field_unchecked(const SpaceSpec& spec) {
  const auto mods = spec.modules();
  ScalarField field(static_cast<int>(mods.size()));
  for (std::size_t i = 0; i < mods.size(); ++i)
    field.add_term(make_rational(module_dimension(spec, mods[i]), 2), {{static_cast<int>(i), -1}});

  const TripleSymbolTable table = triple_symbols(spec);
  for (const auto& [key, value] : table.entries()) {
    if (!std::all_of(key.begin(), key.end(), [&](const ModuleId& m) { return spec.is_module(m); })) continue;
    std::array<int, 3> idx{};
    for (int i = 0; i < 3; ++i) idx[static_cast<std::size_t>(i)] = static_cast<int>(spec.module_index(key[static_cast<std::size_t>(i)]));
    std::sort(idx.begin(), idx.end());
    // Every distinct ordering (alpha, beta, gamma) contributes x_gamma / (x_alpha x_beta).
    do {
      field.add_term(Rational(-value / 4), {{idx[0], -1}, {idx[1], -1}, {idx[2], 1}});
    } while (std::next_permutation(idx.begin(), idx.end()));
  }
  return field;
}

ScalarField scalar_curvature_field(const SpaceSpec& spec) {
  if (auto g = check_generic(spec); !g) throw DomainError("scalar curvature: non-generic space (" + g.reason + ")");
  return scalar_curvature_field_unchecked(spec);
}

Rational scalar_curvature_generic(const SpaceSpec& spec, const MetricParams& x) {
  if (!(x.spec() == spec)) throw DomainError("scalar_curvature_generic: metric belongs to another space");
  return scalar_curvature_field(spec).evaluate<Rational>(x.values());
}

Rational scalar_curvature_closed(const SpaceSpec& spec, const MetricParams& x) {
  if (!(x.spec() == spec)) throw DomainError("scalar_curvature_closed: metric belongs to another space");
  const bool so = spec.family() == GroupFamily::Orthogonal;
  const long n = spec.n();
  if (so && n < 3) throw DomainError("scalar_curvature_closed: so(n) needs n >= 3");
  const int s = spec.s();
  const int m = spec.block_count();
  auto k = [&](int i) -> long { return spec.block(i); };
  auto xd = [&](int a) { return x[ModuleId::diagonal(a)]; };
  auto xo = [&](int a, int b) { return x[ModuleId::off_diagonal(a, b)]; };

  // Per-family constants of the blockwise formula.
  const Rational c_diag = so ? make_rational(1, 8 * (n - 2)) : make_rational(1, 4 * (n + 1));
  const Rational c_off = so ? make_rational(1, 2) : Rational(2);
  const Rational c_mix = so ? make_rational(1, 8 * (n - 2)) : make_rational(1, 4 * (n + 1));
  const Rational c_tri = so ? make_rational(1, 4 * (n - 2)) : make_rational(1, n + 1);
  auto diag_factor = [&](long ka) { return so ? ka * (ka - 1) * (ka - 2) : ka * (ka + 1) * (2 * ka + 1); };
  auto mix_factor = [&](long ka) { return so ? ka - 1 : 2 * ka + 1; };

  Rational S = 0;
  for (int a = 1; a <= s; ++a) S += c_diag * diag_factor(k(a)) / xd(a);
  for (int a = 1; a <= m; ++a)
    for (int b = a + 1; b <= m; ++b) S += c_off * k(a) * k(b) / xo(a, b);
  for (int a = 1; a <= s; ++a)
    for (int b = a + 1; b <= m; ++b) S -= c_mix * k(a) * k(b) * mix_factor(k(a)) * xd(a) / (xo(a, b) * xo(a, b));
  for (int a = 1; a <= s; ++a)
    for (int b = a + 1; b <= s; ++b) S -= c_mix * k(a) * k(b) * mix_factor(k(b)) * xd(b) / (xo(a, b) * xo(a, b));
  for (int a = 1; a <= m; ++a)
    for (int b = a + 1; b <= m; ++b)
      for (int c = b + 1; c <= m; ++c) {
        const Rational &ab = xo(a, b), &ac = xo(a, c), &bc = xo(b, c);
        S -= c_tri * k(a) * k(b) * k(c) * (ab / (ac * bc) + ac / (ab * bc) + bc / (ab * ac));
      }
  return S;
}

// ------------------------------------------------------------------ three-block

ThreeBlockCoeffs three_block_coefficients(GroupFamily family, int s_, int k_, int l_) {
  if (s_ < 1 || k_ < 1 || l_ < 1) throw DomainError("three-block coefficients need s, k, l >= 1");
  const long s = s_, k = k_, l = l_;
  if (family == GroupFamily::Orthogonal) {
    return {Rational((k - 1) * (k - 2)),
            Rational((s - 1) * k * ((s + 2) * k - 4)),
            Rational(4 * (k * s + l - 2) * l),
            Rational((s - 1) * k * (k - 1)),
            Rational((k - 1) * l),
            Rational((s - 1) * k * l),
            make_rational(s * k * (k - 1), 2),
            make_rational(s * (s - 1) * k * k, 2),
            Rational(s * k * l)};
  }
  return {Rational((k + 1) * (2 * k + 1)),
          Rational(2 * (s - 1) * k * ((s + 2) * k + 2)),
          Rational(8 * (k * s + l + 1) * l),
          Rational((s - 1) * k * (2 * k + 1)),
          Rational((2 * k + 1) * l),
          Rational(2 * (s - 1) * k * l),
          Rational(s * (2 * k + 1) * k),
          Rational(2 * s * (s - 1) * k * k),
          Rational(4 * s * k * l)};
}

ThreeBlockCoeffs three_block_form(GroupFamily family, int s, int k, int l) {
  if (s < 2) throw DomainError("three_block_form: need s >= 2");
  if (l < 1) throw DomainError("three_block_form: need l >= 1");
  if (family == GroupFamily::Orthogonal && k < 3) throw DomainError("three_block_form: orthogonal family needs k >= 3");
  if (family == GroupFamily::Symplectic && k < 1) throw DomainError("three_block_form: symplectic family needs k >= 1");
  return three_block_coefficients(family, s, k, l);
}

bool coefficient_relations_hold(const ThreeBlockCoeffs& c) {
  return c.d * (c.q + 2 * c.p) == c.p * c.b - c.q * c.a && c.f * c.p == c.q * c.e;
}

Rational three_block_scale(GroupFamily family, int s, int k, int l) {
  const long n = static_cast<long>(s) * k + l;
  if (family == GroupFamily::Orthogonal) return make_rational(static_cast<long>(s) * k, 8 * (n - 2));
  return make_rational(static_cast<long>(s) * k, 4 * (n + 1));
}

ScalarField three_block_field(const ThreeBlockCoeffs& c) {
  ScalarField F(3);
  F.add_term(c.a, {{0, -1}});
  F.add_term(c.b, {{1, -1}});
  F.add_term(c.c, {{2, -1}});
  F.add_term(-c.d, {{0, 1}, {1, -2}});
  F.add_term(-c.e, {{0, 1}, {2, -2}});
  F.add_term(-c.f, {{1, 1}, {2, -2}});
  return F;
}

Rational three_block_value(const ThreeBlockCoeffs& c, const Rational& x, const Rational& y, const Rational& z) {
  return c.a / x + c.b / y + c.c / z - c.d * x / (y * y) - c.e * x / (z * z) - c.f * y / (z * z);
}

// ------------------------------------------------------------------ Lagrange

std::vector<Rational> gradient(const ScalarField& field, std::span<const Rational> point) {
  if (static_cast<int>(point.size()) != field.variables()) throw DomainError("gradient: point has wrong dimension");
  std::vector<Rational> g;
  g.reserve(point.size());
  for (int v = 0; v < field.variables(); ++v) g.push_back(field.partial(v).evaluate<Rational>(point));
  return g;
}

EinsteinCertificate lagrange_certificate(const ScalarField& field, std::span<const Rational> weights,
                                         std::span<const Rational> point) {
  if (weights.size() != point.size()) throw DomainError("lagrange_certificate: weight/point size mismatch");
  for (const auto& x : point)
    if (x <= 0) throw DomainError("lagrange_certificate: point must be positive");
  const auto g = gradient(field, point);
  std::vector<Rational> v(point.size());
  for (std::size_t i = 0; i < point.size(); ++i) v[i] = weights[i] / point[i];

  Rational gv = 0, vv = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    gv += g[i] * v[i];
    vv += v[i] * v[i];
  }
  const Rational lambda = vv == 0 ? Rational(0) : Rational(gv / vv);
  Rational num = 0, den = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    num = std::max(num, abs(Rational(g[i] - lambda * v[i])));
    den = std::max(den, abs(g[i]));
    den = std::max(den, abs(Rational(lambda * v[i])));
  }

  EinsteinCertificate cert;
  cert.lambda = lambda.get_d();
  cert.exact_zero = num == 0;
  cert.residual_inf = den == 0 ? 0.0 : Rational(num / den).get_d();
  cert.scalar_curvature = field.evaluate<Rational>(point).get_d();
  double logv = 0.0;
  for (std::size_t i = 0; i < point.size(); ++i)
    if (weights[i] != 0) logv += weights[i].get_d() * std::log(point[i].get_d());
  cert.log_volume = logv;
  cert.volume = std::exp(logv);
  return cert;
}

bool lagrange_exact(const ScalarField& field, std::span<const Rational> weights,
                    std::span<const QuadraticSurd> point) {
  if (weights.size() != point.size()) throw DomainError("lagrange_exact: weight/point size mismatch");
  std::vector<QuadraticSurd> g, v;
  for (int i = 0; i < field.variables(); ++i) {
    g.push_back(field.partial(i).evaluate<QuadraticSurd>(point));
    v.push_back(QuadraticSurd(weights[static_cast<std::size_t>(i)]) / point[static_cast<std::size_t>(i)]);
  }
  // g parallel to v: all 2x2 minors vanish.
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j)
      if ((g[i] * v[j] - g[j] * v[i]).sign() != 0) return false;
  return true;
}

std::vector<Rational> log_volume_weights(const SpaceSpec& spec) {
  std::vector<Rational> w;
  for (const auto& id : spec.modules()) w.emplace_back(module_dimension(spec, id));
  return w;
}

EinsteinCertificate verify_einstein(const SpaceSpec& spec, const MetricParams& x) {
  if (!(x.spec() == spec)) throw DomainError("verify_einstein: metric belongs to another space");
  const auto w = log_volume_weights(spec);
  return lagrange_certificate(scalar_curvature_field_unchecked(spec), w, x.values());
}

bool verify_einstein_exact(const SpaceSpec& spec, std::span<const QuadraticSurd> x) {
  const auto w = log_volume_weights(spec);
  if (x.size() != w.size()) throw DomainError("verify_einstein_exact: wrong number of parameters");
  for (const auto& v : x)
    if (v.sign() <= 0) throw DomainError("verify_einstein_exact: parameters must be positive");
  return lagrange_exact(scalar_curvature_field_unchecked(spec), w, x);
}

// --------------------------------------------------------------- full system

namespace {

ScalarField constant(const Rational& c) {
  ScalarField f(5);
  f.add_term(c, Monomial{});
  return f;
}

ScalarField var(int i) {
  ScalarField f(5);
  f.add_term(Rational(1), {{i, 1}});
  return f;
}

ScalarField mono(const Rational& c, std::initializer_list<std::pair<int, int>> factors) {
  ScalarField f(5);
  f.add_term(c, factors);
  return f;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }

}  // namespace

std::array<ScalarField, 4> full_system(GroupFamily family, int k1_, int k2_, int k3_) {
  enum { X1 = 0, X2 = 1, X12 = 2, X13 = 3, X23 = 4 };
  const Rational k1(k1_), k2(k2_), k3(k3_);
  const Rational K = k1 + k2 + k3;
  const bool so = family == GroupFamily::Orthogonal;

  // Shared brackets of the four equations.
  // so: shift = -2, one = 1; sp: shift = +1 on diagonal weights, doubled cross terms.
  const Rational w1 = so ? Rational(k1 - 2) : Rational(k1 + 1);
  const Rational w2 = so ? Rational(k2 - 2) : Rational(k2 + 1);
  const Rational big = so ? Rational(2 * (K - 2)) : Rational(4 * (K + 1));
  const Rational m1 = so ? Rational(k1 - 1) : Rational(2 * k1 + 1);
  const Rational m2 = so ? Rational(k2 - 1) : Rational(2 * k2 + 1);
  const Rational t = so ? Rational(1) : Rational(2);

  const ScalarField A1 = mono(w1, {{X12, 2}, {X13, 2}}) + mono(k2, {{X1, 2}, {X13, 2}}) + mono(k3, {{X1, 2}, {X12, 2}});
  const ScalarField A2 = so ? mono(w2, {{X12, 2}, {X23, 2}}) + mono(k3, {{X2, 2}, {X12, 2}}) + mono(k1, {{X2, 2}, {X23, 2}})
                            : mono(w2, {{X12, 2}, {X23, 2}}) + mono(k1, {{X2, 2}, {X23, 2}}) + mono(k3, {{X2, 2}, {X12, 2}});
  const ScalarField B = mono(big, {{X12, 1}, {X13, 1}, {X23, 1}}) - mono(m1, {{X1, 1}, {X13, 1}, {X23, 1}}) -
                        mono(m2, {{X2, 1}, {X13, 1}, {X23, 1}}) + mono(t * k3, {{X12, 3}}) -
                        mono(t * k3, {{X12, 1}, {X13, 2}}) - mono(t * k3, {{X12, 1}, {X23, 2}});
  const ScalarField C = mono(big, {{X12, 1}, {X13, 1}, {X23, 1}}) - mono(m1, {{X1, 1}, {X12, 1}, {X23, 1}}) +
                        mono(t * k2, {{X13, 3}}) - mono(t * k2, {{X12, 2}, {X13, 1}}) -
                        mono(t * k2, {{X13, 1}, {X23, 2}});
  const ScalarField D = mono(big, {{X12, 1}, {X13, 1}, {X23, 1}}) - mono(m2, {{X2, 1}, {X12, 1}, {X13, 1}}) +
                        mono(t * k1, {{X23, 3}}) - mono(t * k1, {{X12, 2}, {X23, 1}}) -
                        mono(t * k1, {{X13, 2}, {X23, 1}});

  const ScalarField E1 = mono(1, {{X2, 1}, {X23, 2}}) * A1 - mono(1, {{X1, 1}, {X13, 2}}) * A2;
  const ScalarField E2 = constant(t) * var(X13) * A2 - mono(1, {{X2, 1}, {X23, 1}}) * B;
  const ScalarField E3 = var(X13) * B - var(X12) * C;
  const ScalarField E4 = var(X23) * C - var(X13) * D;
  return {E1, E2, E3, E4};
}

Rational full_system_residual_exact(GroupFamily family, std::array<int, 3> blocks, std::span<const Rational> x) {
  if (x.size() != 5) throw DomainError("full_system_residual: need (x1, x2, x12, x13, x23)");
  for (const auto& v : x)
    if (v <= 0) throw DomainError("full_system_residual: parameters must be positive");
  const auto eqs = full_system(family, blocks[0], blocks[1], blocks[2]);
  Rational worst = 0, scale = 0;
  for (const auto& e : eqs) {
    worst = std::max(worst, abs(e.evaluate<Rational>(x)));
    scale = std::max(scale, e.max_term_magnitude<Rational>(x));
  }
  return scale == 0 ? Rational(0) : Rational(worst / scale);
}

double full_system_residual(GroupFamily family, std::array<int, 3> blocks, std::span<const Rational> x) {
  return full_system_residual_exact(family, blocks, x).get_d();
}

}  // namespace einhom
