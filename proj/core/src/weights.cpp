#include "bjet/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace bjet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sqnorm(std::span<const Complex> z) {
  double s = 0.0;
  for (const Complex& v : z) s += std::norm(v);
  return s;
}

// Halton radical inverse for quasi-random negativity sampling.
double radical_inverse(int base, std::uint64_t i) {
  double f = 1.0, r = 0.0;
  while (i > 0) {
    f /= base;
    r += f * static_cast<double>(i % static_cast<std::uint64_t>(base));
    i /= static_cast<std::uint64_t>(base);
  }
  return r;
}

constexpr int kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29,
                           31, 37, 41, 43, 47, 53, 59, 61, 67, 71};

}  // namespace

// ---------------------------------------------------------------------------
// GammaSpec
// ---------------------------------------------------------------------------

void GammaSpec::validate() const {
  switch (kind) {
    case Kind::Zero:
    case Kind::Constant:
      break;
    case Kind::ScaledNorm:
      if (eps < 0) throw ConfigError("gamma: scaled-norm coefficient must be >= 0");
      break;
    case Kind::RadialBump:
      if (!(w > 0)) throw ConfigError("gamma: bump width must be positive");
      break;
  }
}

double GammaSpec::radial_value(double normal_sqnorm, double tangential_sqnorm) const {
  const double s = normal_sqnorm + tangential_sqnorm;
  switch (kind) {
    case Kind::Zero:
      return 0.0;
    case Kind::Constant:
      return c;
    case Kind::ScaledNorm:
      return eps * s;
    case Kind::RadialBump:
      return a * std::exp(-s / (w * w));
  }
  return 0.0;
}

double GammaSpec::value(std::span<const Complex> z) const {
  return radial_value(sqnorm(z), 0.0);
}

std::pair<double, double> GammaSpec::bounds(double sup_sqnorm) const {
  switch (kind) {
    case Kind::Zero:
      return {0.0, 0.0};
    case Kind::Constant:
      return {c, c};
    case Kind::ScaledNorm:
      return {0.0, eps * sup_sqnorm};
    case Kind::RadialBump: {
      const double lo = a * std::exp(-sup_sqnorm / (w * w));
      return a >= 0 ? std::make_pair(lo, a) : std::make_pair(a, lo);
    }
  }
  return {0.0, 0.0};
}

void GreenSpec::validate() const {
  if (k < 1) throw ConfigError("green: codimension must be >= 1");
  gamma.validate();
}

double green_value(const GreenSpec& g, const DomainSpec& dom, std::span<const Complex> z) {
  if (!dom.contains(z)) throw DomainError("green_value: point outside the domain");
  double s = 0.0;
  for (int i = 0; i < g.k; ++i) s += std::norm(z[static_cast<std::size_t>(i)]);
  if (s == 0.0) return -kInf;
  return std::log(s) + g.gamma.value(z);
}

double green_on_slice(const GreenSpec& g, const FiberSlice& slice, double v) {
  double t = 0.0;
  for (const Complex& c : slice.base_point) t += std::norm(c);
  return v + g.gamma.radial_value(std::exp(v), t);
}

double psi_value(const GreenSpec& g, const DomainSpec& dom, double s,
                 std::span<const Complex> z) {
  const double G = green_value(g, dom, z);
  return std::max(G - s, 0.0);
}

// ---------------------------------------------------------------------------
// PhiSpec
// ---------------------------------------------------------------------------

void PhiSpec::validate(int n) const {
  switch (kind) {
    case Kind::Zero:
      break;
    case Kind::ScaledSqnorm:
      if (c < 0) throw ConfigError("phi: scaled-sqnorm coefficient must be >= 0");
      break;
    case Kind::WeightedSqnorm:
      if (static_cast<int>(coeffs.size()) != n)
        throw ConfigError("phi: weighted-sqnorm needs one coefficient per coordinate");
      for (double v : coeffs)
        if (v < 0) throw ConfigError("phi: weighted-sqnorm coefficients must be >= 0");
      break;
    case Kind::MaxAffineLog:
      if (terms.empty()) throw ConfigError("phi: max-affine-log needs at least one term");
      for (const auto& t : terms) {
        if (t.b < 0) throw ConfigError("phi: affine-log slope must be >= 0");
        if (!(t.eps > 0)) throw ConfigError("phi: affine-log offset must be positive");
      }
      break;
  }
}

double PhiSpec::value(std::span<const Complex> z) const {
  switch (kind) {
    case Kind::Zero:
      return 0.0;
    case Kind::ScaledSqnorm:
      return c * sqnorm(z);
    case Kind::WeightedSqnorm: {
      double s = 0.0;
      for (std::size_t i = 0; i < z.size(); ++i) s += coeffs[i] * std::norm(z[i]);
      return s;
    }
    case Kind::MaxAffineLog: {
      const double s = sqnorm(z);
      double m = -kInf;
      for (const auto& t : terms) m = std::max(m, t.a + t.b * std::log(t.eps + s));
      return m;
    }
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// FamilyParams / family weight
// ---------------------------------------------------------------------------

void FamilyParams::validate() const {
  if (s > 0) throw ConfigError("family: s must be <= 0");
  if (q < 0) throw ConfigError("family: q must be >= 0");
  if (p < 2) throw ConfigError("family: jet order p must be >= 2");
}

double family_weight(const GreenSpec& g, const PhiSpec& phi, const FamilyParams& fp,
                     const DomainSpec& dom, std::span<const Complex> z) {
  const double G = green_value(g, dom, z);
  const int coeff = fp.p + g.k - 2;
  if (G == -kInf) {
    // on S: e^{-weight} = 0 for positive G coefficient
    return coeff > 0 ? kInf : phi.value(z);
  }
  return phi.value(z) + coeff * G + fp.q * std::max(G - fp.s, 0.0);
}

// ---------------------------------------------------------------------------
// ModelContext
// ---------------------------------------------------------------------------

void ModelContext::validate() const {
  domain.validate();
  sub.validate(domain);
  green.validate();
  if (green.k != sub.k)
    throw ConfigError("context: green codimension differs from submanifold codimension");
  phi.validate(domain.n);
  if (domain.n > static_cast<int>(sizeof(kPrimes) / sizeof(kPrimes[0])) / 2)
    throw ConfigError("context: ambient dimension too large for the sampler");

  // Exact catalog bound on sup G; if conclusive, negativity is certain.
  const auto [glo, ghi] = green.gamma.bounds(domain.sup_sqnorm());
  const double exact_bound = std::log(domain.sup_normal_sqnorm(sub.k)) + ghi;
  (void)glo;

  // 10^4 quasi-random (Halton) samples in D; any witness G >= 0 is fatal.
  std::vector<double> half_extent(static_cast<std::size_t>(domain.n));
  std::vector<double> center_re(static_cast<std::size_t>(domain.n), 0.0);
  std::vector<double> center_im(static_cast<std::size_t>(domain.n), 0.0);
  for (int i = 0; i < domain.n; ++i) {
    switch (domain.kind) {
      case DomainKind::UnitDisc:
      case DomainKind::UnitBall:
        half_extent[static_cast<std::size_t>(i)] = 1.0;
        break;
      case DomainKind::Polydisc:
        half_extent[static_cast<std::size_t>(i)] = domain.radii[static_cast<std::size_t>(i)];
        break;
      case DomainKind::Box: {
        const Rect& r = domain.rects[static_cast<std::size_t>(i)];
        half_extent[static_cast<std::size_t>(i)] = std::max(r.re_max - r.re_min, r.im_max - r.im_min) / 2;
        center_re[static_cast<std::size_t>(i)] = (r.re_min + r.re_max) / 2;
        center_im[static_cast<std::size_t>(i)] = (r.im_min + r.im_max) / 2;
        break;
      }
    }
  }

  int accepted = 0;
  PointCn z(static_cast<std::size_t>(domain.n));
  for (std::uint64_t it = 1; accepted < 10000 && it < 400000; ++it) {
    for (int i = 0; i < domain.n; ++i) {
      const double ur = radical_inverse(kPrimes[2 * i], it);
      const double ui = radical_inverse(kPrimes[2 * i + 1], it);
      z[static_cast<std::size_t>(i)] =
          Complex(center_re[static_cast<std::size_t>(i)] + (2 * ur - 1) * half_extent[static_cast<std::size_t>(i)],
                  center_im[static_cast<std::size_t>(i)] + (2 * ui - 1) * half_extent[static_cast<std::size_t>(i)]);
    }
    if (!domain.contains(z)) continue;
    ++accepted;
    const double G = green_value(green, domain, z);
    if (G >= 0.0)
      throw ConfigError("context: G is not negative on D (sampled G = " + std::to_string(G) +
                        " at a quasi-random point); choose a smaller gamma");
  }
  if (accepted < 10000 && exact_bound >= 0.0)
    throw ConfigError("context: could not certify negativity of G on D");
}

double shell_t_max(const FiberSlice& slice, const GreenSpec& green, const DomainSpec& dom) {
  const double r = slice.extent.inscribed_radius();
  if (!(r > 0)) return -kInf;
  const auto [glo, ghi] = green.gamma.bounds(dom.sup_sqnorm());
  (void)ghi;
  return 2.0 * std::log(r) - 1.0 + glo - 1e-9;
}

}  // namespace bjet
