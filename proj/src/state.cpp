#include "circleq/state.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "circleq/errors.hpp"
#include "circleq/format.hpp"
#include "circleq/special_functions.hpp"

namespace circleq {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Family constructors and resqueeze must leave this much headroom at the
// window edge, relative to the largest coefficient.
constexpr double kEdgeRatio = 1e-12;
constexpr double kMaxExp = 700.0;

int resolve_n_trunc(int n_trunc, int auto_size) {
  if (n_trunc < 0)
    throw std::invalid_argument("n_trunc must be >= 0 (0 selects auto-sizing)");
  return n_trunc == 0 ? auto_size : n_trunc;
}

void require_boundary_decay(const std::vector<std::complex<double>>& c, const char* who) {
  double peak = 0.0;
  for (const auto& z : c) peak = std::max(peak, std::abs(z));
  const double edge = std::max(std::abs(c.front()), std::abs(c.back()));
  if (edge > kEdgeRatio * peak)
    throw TruncationError(std::string(who) +
                          ": truncation window too small for this state "
                          "(edge coefficients have not decayed)");
}

}  // namespace

PhasePoint::PhasePoint(double l_in, double phi_in) : l(l_in), phi(phi_in) {
  if (!std::isfinite(l) || !std::isfinite(phi))
    throw std::domain_error("PhasePoint: l and phi must be finite");
  phi = std::fmod(phi, kTwoPi);
  if (phi < 0.0) phi += kTwoPi;
}

std::complex<double> PhasePoint::xi() const {
  return std::polar(std::exp(-l), phi);
}

PhasePoint PhasePoint::from_xi(std::complex<double> xi) {
  const double mag = std::abs(xi);
  if (!std::isfinite(mag) || mag <= 0.0)
    throw std::domain_error("PhasePoint: xi must be finite and nonzero");
  return PhasePoint(-std::log(mag), std::arg(xi));
}

SqueezeParams::SqueezeParams(double s_in, double s0_in) : s(s_in), s0(s0_in) {
  if (!std::isfinite(s) || s <= 0.0)
    throw std::domain_error("SqueezeParams: s must be positive and finite");
  if (!std::isfinite(s0) || s0 <= 0.0)
    throw std::domain_error("SqueezeParams: s0 must be positive and finite");
}

CircleState::CircleState(int n_trunc, std::vector<std::complex<double>> coeffs)
    : n_trunc_(n_trunc), coeffs_(std::move(coeffs)) {
  if (n_trunc_ < 1)
    throw std::invalid_argument("CircleState: n_trunc must be >= 1");
  if (coeffs_.size() != static_cast<std::size_t>(2 * n_trunc_ + 1))
    throw std::invalid_argument("CircleState: need exactly 2 * n_trunc + 1 coefficients");
  for (const auto& z : coeffs_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw std::invalid_argument("CircleState: coefficients must be finite");
}

int auto_n_trunc(double l, double s) {
  // half-width where e^{-s (j - l/s)^2 / 2} drops below 1e-16: the envelope
  // center sits at j = l/s and the decay distance is sqrt(2 ln(1e16) / s)
  constexpr double log_inv_eps = 36.841361487904734;  // ln(1e16)
  const double width = std::abs(l) / s + std::sqrt(2.0 * log_inv_eps / s);
  return static_cast<int>(std::ceil(width)) + 4;
}

CircleState squeezed_state(const PhasePoint& p, double s, int n_trunc) {
  if (!std::isfinite(s) || s <= 0.0)
    throw std::domain_error("squeezed_state: s must be positive and finite");
  // peak magnitude is e^{l^2 / (2s)} at j = l/s
  if (p.l * p.l / (2.0 * s) > kMaxExp)
    throw std::range_error("squeezed_state: peak coefficient overflows double");
  const int n = resolve_n_trunc(n_trunc, auto_n_trunc(p.l, s));
  std::vector<std::complex<double>> c(2 * n + 1);
  for (int j = -n; j <= n; ++j) {
    const double jj = static_cast<double>(j);
    c[j + n] = std::polar(std::exp(p.l * jj - 0.5 * s * jj * jj), -p.phi * jj);
  }
  require_boundary_decay(c, "squeezed_state");
  return CircleState(n, std::move(c));
}

CircleState coherent_state(const PhasePoint& p, int n_trunc) {
  return squeezed_state(p, 1.0, n_trunc);
}

CircleState circular_squeezed_state(double alpha, int l, double s, int n_trunc) {
  if (!std::isfinite(s) || s <= 0.0)
    throw std::domain_error("circular_squeezed_state: s must be positive and finite");
  if (!std::isfinite(alpha))
    throw std::domain_error("circular_squeezed_state: alpha must be finite");
  // Bessel envelope half-width: smallest m with I_m(s) below 1e-16 of I_0(s)
  const double i0 = bessel_i(0, s);
  int half = 1;
  while (half < 512 && bessel_i(half, s) > 1e-16 * i0) ++half;
  const int n = resolve_n_trunc(n_trunc, std::abs(l) + half + 2);
  std::vector<std::complex<double>> c(2 * n + 1);
  double total = 0.0;
  for (int j = -n; j <= n; ++j) {
    const int m = j - l;
    const std::complex<double> z =
        std::polar(bessel_i(std::abs(m), s), -static_cast<double>(m) * alpha);
    total += std::norm(z);
    c[j + n] = z;
  }
  // this family is handed out normalized over its actual window
  const double inv = 1.0 / std::sqrt(total);
  for (auto& z : c) z *= inv;
  require_boundary_decay(c, "circular_squeezed_state");
  return CircleState(n, std::move(c));
}

CircleState momentum_eigenstate(int j0, int n_trunc) {
  if (n_trunc < 1)
    throw std::invalid_argument("momentum_eigenstate: n_trunc must be >= 1");
  if (std::abs(j0) > n_trunc)
    throw std::domain_error("momentum_eigenstate: |j0| must not exceed n_trunc");
  std::vector<std::complex<double>> c(2 * n_trunc + 1);
  c[j0 + n_trunc] = 1.0;
  return CircleState(n_trunc, std::move(c));
}

CircleState apply_u(const CircleState& st, double* truncation_loss) {
  const int n = st.n_trunc();
  std::vector<std::complex<double>> c(2 * n + 1);
  for (int j = -n + 1; j <= n; ++j) c[j + n] = st.coeff(j - 1);
  if (truncation_loss) {
    const double total = norm2(st);
    *truncation_loss = total > 0.0 ? std::norm(st.coeff(n)) / total : 0.0;
  }
  return CircleState(n, std::move(c));
}

CircleState apply_u_dagger(const CircleState& st, double* truncation_loss) {
  const int n = st.n_trunc();
  std::vector<std::complex<double>> c(2 * n + 1);
  for (int j = -n; j <= n - 1; ++j) c[j + n] = st.coeff(j + 1);
  if (truncation_loss) {
    const double total = norm2(st);
    *truncation_loss = total > 0.0 ? std::norm(st.coeff(-n)) / total : 0.0;
  }
  return CircleState(n, std::move(c));
}

CircleState apply_j(const CircleState& st) {
  const int n = st.n_trunc();
  std::vector<std::complex<double>> c(2 * n + 1);
  for (int j = -n; j <= n; ++j) c[j + n] = static_cast<double>(j) * st.coeff(j);
  return CircleState(n, std::move(c));
}

std::complex<double> inner_product(const CircleState& a, const CircleState& b) {
  const int n = std::min(a.n_trunc(), b.n_trunc());
  std::complex<double> acc{0.0, 0.0};
  for (int j = -n; j <= n; ++j) acc += std::conj(a.coeff(j)) * b.coeff(j);
  return acc;
}

double norm2(const CircleState& st) {
  double acc = 0.0;
  for (const auto& z : st.coeffs()) acc += std::norm(z);
  return acc;
}

CircleState normalize(const CircleState& st) {
  const double total = norm2(st);
  if (total <= 0.0)
    throw std::domain_error("normalize: zero state has no normalized form");
  const double inv = 1.0 / std::sqrt(total);
  std::vector<std::complex<double>> c = st.coeffs();
  for (auto& z : c) z *= inv;
  return CircleState(st.n_trunc(), std::move(c));
}

CircleState resqueeze(const CircleState& st, double ds) {
  if (!std::isfinite(ds))
    throw std::domain_error("resqueeze: ds must be finite");
  const int n = st.n_trunc();
  std::vector<std::complex<double>> c(2 * n + 1);
  for (int j = -n; j <= n; ++j) {
    const std::complex<double> z = st.coeff(j);
    if (z == 0.0) continue;
    const double fexp = -0.5 * ds * static_cast<double>(j) * static_cast<double>(j);
    if (fexp <= kMaxExp) {
      c[j + n] = z * std::exp(fexp);
    } else {
      // the bare factor overflows; the product may still be fine if c_j is
      // tiny, so form it through the log of the magnitude
      const double log_mag = std::log(std::abs(z)) + fexp;
      if (log_mag > kMaxExp + 9.0)  // ln(DBL_MAX) ~ 709.78
        throw std::range_error("resqueeze: coefficient overflows double");
      c[j + n] = std::polar(std::exp(log_mag), std::arg(z));
    }
  }
  require_boundary_decay(c, "resqueeze");
  return CircleState(n, std::move(c));
}

void dump_state_csv(const CircleState& st, std::ostream& os) {
  os << "# circleq-state v1 N=" << st.n_trunc() << "\n";
  for (int j = -st.n_trunc(); j <= st.n_trunc(); ++j) {
    const auto z = st.coeff(j);
    os << j << ',' << g17(z.real()) << ',' << g17(z.imag()) << '\n';
  }
}

std::string dump_state_csv(const CircleState& st) {
  std::ostringstream ss;
  dump_state_csv(st, ss);
  return ss.str();
}

CircleState load_state_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line))
    throw std::runtime_error("state CSV: empty input");
  int n = 0;
  if (std::sscanf(line.c_str(), "# circleq-state v1 N=%d", &n) != 1 || n < 1)
    throw std::runtime_error("state CSV: bad header: " + line);
  std::vector<std::complex<double>> c(2 * n + 1);
  int expect_j = -n;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    int j = 0;
    double re = 0.0, im = 0.0;
    if (std::sscanf(line.c_str(), "%d,%lf,%lf", &j, &re, &im) != 3)
      throw std::runtime_error("state CSV: bad row: " + line);
    if (j != expect_j || j > n)
      throw std::runtime_error("state CSV: rows must cover j = -N..N in order");
    c[j + n] = {re, im};
    ++expect_j;
  }
  if (expect_j != n + 1)
    throw std::runtime_error("state CSV: wrong row count");
  return CircleState(n, std::move(c));
}

CircleState load_state_csv(const std::string& text) {
  std::istringstream ss(text);
  return load_state_csv(ss);
}

}  // namespace circleq
