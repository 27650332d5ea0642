#include "hyperwave/covariance.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "hyperwave/greens.hpp"
#include "hyperwave/quadrature.hpp"

namespace hyperwave::cov {

double sphere_area(Dimension dim) {
  switch (dim.value()) {
    case 1: return 2.0;
    case 2: return 2.0 * pi;
    default: return 4.0 * pi;
  }
}

double SpectralDensity::operator()(double rho) const {
  double v = coeff * std::pow(rho, exponent);
  if (damping > 0.0) v *= std::exp(-0.5 * damping * rho * rho);
  return v;
}

CovarianceModel CovarianceModel::white1d() {
  CovarianceModel m;
  m.kind_ = Kind::white_noise_1d;
  m.dim_ = Dimension(1);
  m.alpha_ = 1.0;  // gamma(cx) = c^{-1} gamma(x) for delta_0 in d=1
  m.kappa_ = 1.0;
  return m;
}

CovarianceModel CovarianceModel::riesz(Dimension dim, double alpha, double kappa) {
  if (!(alpha > 0.0) || alpha >= dim.value())
    throw std::invalid_argument(
        "riesz: homogeneity degree must satisfy 0 < alpha < d");
  if (!(kappa > 0.0)) throw std::invalid_argument("riesz: kappa must be > 0");
  CovarianceModel m;
  m.kind_ = Kind::riesz;
  m.dim_ = dim;
  m.alpha_ = alpha;
  m.kappa_ = kappa;
  return m;
}

CovarianceModel CovarianceModel::mollified(CovarianceModel base, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("mollified: eps must be > 0");
  CovarianceModel m;
  m.kind_ = Kind::mollified;
  m.dim_ = base.dim();
  m.alpha_ = base.alpha();
  m.kappa_ = base.kappa();
  m.eps_ = eps;
  m.base_ = std::make_shared<CovarianceModel>(std::move(base));
  return m;
}

const CovarianceModel& CovarianceModel::base() const {
  if (!base_) throw std::logic_error("base() on a non-mollified model");
  return *base_;
}

bool CovarianceModel::dalang_finite() const { return alpha_ < 2.0; }

std::string CovarianceModel::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::white_noise_1d: os << "white1d"; break;
    case Kind::riesz:
      os << "riesz:d=" << dim_.value() << ",alpha=" << alpha_
         << ",kappa=" << kappa_;
      break;
    case Kind::mollified:
      os << base().describe() << ",eps=" << eps_;
      break;
  }
  return os.str();
}

SpectralDensity CovarianceModel::spectral() const {
  switch (kind_) {
    case Kind::white_noise_1d:
      return {dim_, 1.0 / (2.0 * pi), 0.0, 0.0};
    case Kind::riesz: {
      double a = alpha_, d = dim_.value();
      double c = kappa_ * std::pow(pi, -0.5 * d) * std::pow(2.0, -a) *
                 std::tgamma(0.5 * (d - a)) / std::tgamma(0.5 * a);
      return {dim_, c, a - d, 0.0};
    }
    default: {
      SpectralDensity s = base().spectral();
      s.damping += eps_;
      return s;
    }
  }
}

namespace {

std::map<std::string, double> parse_kv(const std::string& s) {
  std::map<std::string, double> kv;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("model spec: expected key=value, got '" + item + "'");
    kv[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
  }
  return kv;
}

}  // namespace

CovarianceModel CovarianceModel::parse(const std::string& spec) {
  std::string head = spec, rest;
  if (auto colon = spec.find(':'); colon != std::string::npos) {
    head = spec.substr(0, colon);
    rest = spec.substr(colon + 1);
  }
  // "white1d,eps=..." carries options without a colon
  if (auto comma = head.find(','); comma != std::string::npos) {
    rest = head.substr(comma + 1);
    head = head.substr(0, comma);
  }
  auto kv = parse_kv(rest.empty() ? std::string() : rest);
  CovarianceModel m = [&] {
    if (head == "white1d") return white1d();
    if (head == "riesz") {
      if (!kv.count("d") || !kv.count("alpha"))
        throw std::invalid_argument("riesz spec needs d=<1|2|3>,alpha=<float>");
      double kappa = kv.count("kappa") ? kv["kappa"] : 1.0;
      return riesz(Dimension(static_cast<int>(kv["d"])), kv["alpha"], kappa);
    }
    throw std::invalid_argument("unknown covariance model '" + head + "'");
  }();
  if (kv.count("eps")) m = mollified(std::move(m), kv["eps"]);
  return m;
}

double gamma_eval(const CovarianceModel& model, const Point& x) {
  double r = norm(x, model.dim());
  switch (model.kind()) {
    case Kind::white_noise_1d:
      if (r == 0.0)
        throw SingularityError("gamma_eval: delta_0 has no pointwise value at 0");
      return 0.0;
    case Kind::riesz:
      if (r == 0.0)
        throw SingularityError("gamma_eval: Riesz kernel is singular at 0");
      return model.kappa() * std::pow(r, -model.alpha());
    default:
      return gamma_mollified(model.base(), model.eps(), x);
  }
}

double gamma_mollified(const CovarianceModel& model, double eps, const Point& x) {
  if (!(eps > 0.0)) throw std::invalid_argument("gamma_mollified: eps must be > 0");
  switch (model.kind()) {
    case Kind::white_noise_1d:
      return greens::heat_kernel(Dimension(1), eps, x);
    case Kind::mollified:
      // heat semigroup: (gamma_a * p_b) = gamma_{a+b}
      return gamma_mollified(model.base(), eps + model.eps(), x);
    case Kind::riesz:
      break;
  }
  int d = model.dim().value();
  double r = norm(x, model.dim());
  if (d == 1) {
    // real-space convolution, split at the kernel singularity z = 0
    double a = model.alpha();
    double X = std::abs(x[0]);
    double U = X + 10.0 * std::sqrt(eps);
    auto f = [&](double u) {
      double pa = greens::heat_kernel(Dimension(1), eps, make_point(X - u));
      double pb = greens::heat_kernel(Dimension(1), eps, make_point(X + u));
      return model.kappa() * std::pow(u, -a) * (pa + pb);
    };
    return quad::integrate_singular(f, 0.0, U, 1e-11);
  }
  // spectral route: gamma_eps(x) = int e^{i xi.x} e^{-eps|xi|^2/2} mu(d xi),
  // radially: omega_{d-1} rho^{d-1} density(rho) times the angular factor
  // J_0(rho r) (d=2) or sinc(rho r) (d=3)
  SpectralDensity s = model.spectral();
  s.damping += eps;
  double P = std::sqrt(2.0 * 40.0 / s.damping);
  auto integrand = [&](double rho) {
    double osc;
    if (d == 2)
      osc = std::cyl_bessel_j(0, rho * r);
    else {
      double z = rho * r;
      osc = z < 1e-8 ? 1.0 - z * z / 6.0 : std::sin(z) / z;
    }
    return sphere_area(model.dim()) * std::pow(rho, d - 1.0) * s(rho) * osc;
  };
  double lo = quad::integrate_singular(integrand, 0.0, 1.0, 1e-11);
  double hi = quad::integrate(integrand, 1.0, std::max(P, 2.0), 1e-11);
  return lo + hi;
}

DalangResult dalang_integral(const SpectralDensity& density) {
  int d = density.dim.value();
  // integrand ~ rho^{exponent + d - 3} at infinity: integrable iff alpha < 2
  bool finite = density.damping > 0.0 || density.exponent + d < 2.0;
  if (!finite) return {false, 0.0};
  double area = sphere_area(density.dim);
  auto f = [&](double rho) {
    return area * std::pow(rho, d - 1.0) * density(rho) / (1.0 + rho * rho);
  };
  double lo = quad::integrate_singular(f, 0.0, 1.0, 1e-11);
  // log substitution rho = e^s tames the algebraic tail
  double decay = density.damping > 0.0 ? 2.0 : 2.0 - density.alpha();
  double smax = density.damping > 0.0
                    ? std::log(std::sqrt(2.0 * 40.0 / density.damping) + 2.0)
                    : 14.0 * std::log(10.0) / decay;
  double hi = quad::integrate(
      [&](double s) {
        double rho = std::exp(s);
        return f(rho) * rho;
      },
      0.0, smax, 1e-11);
  return {true, lo + hi};
}

DalangResult dalang_integral(const CovarianceModel& model) {
  return dalang_integral(model.spectral());
}

double homogeneity_residual(const CovarianceModel& model, double c, const Point& x) {
  if (model.kind() != Kind::riesz)
    throw std::invalid_argument("homogeneity_residual: Riesz models only");
  if (!(c > 0.0)) throw std::invalid_argument("homogeneity_residual: c must be > 0");
  Point cx = x;
  for (auto& v : cx) v *= c;
  double lhs = gamma_eval(model, cx);
  double rhs = std::pow(c, -model.alpha()) * gamma_eval(model, x);
  return std::abs(lhs - rhs) / std::abs(lhs);
}

double spectral_cos_integral(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 2.0))
    throw std::invalid_argument("spectral_cos_integral: need 0 < alpha < 2");
  const double A = 500.0;
  // 1 - cos u = 2 sin^2(u/2) avoids cancellation near 0
  auto body = [&](double u) {
    double s = std::sin(0.5 * u);
    return std::pow(u, alpha - 3.0) * 2.0 * s * s;
  };
  double head = quad::integrate_singular(body, 0.0, 1.0, 1e-13);
  double mid = quad::integrate(body, 1.0, A, 1e-13);
  // tail: int_A^inf u^{alpha-3} du minus the oscillatory part by repeated
  // integration by parts (three terms; remainder O(A^{alpha-7}))
  double p = alpha - 3.0;
  double tail_monotone = std::pow(A, alpha - 2.0) / (2.0 - alpha);
  double sA = std::sin(A), cA = std::cos(A);
  double I = -std::pow(A, p) * sA
             - p * (std::pow(A, p - 1.0) * cA
                    + (p - 1.0) * (-std::pow(A, p - 2.0) * sA
                                   - (p - 2.0) * std::pow(A, p - 3.0) * cA));
  return head + mid + tail_monotone - I;
}

}  // namespace hyperwave::cov
