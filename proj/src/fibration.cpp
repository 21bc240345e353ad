#include "gclink/fibration.hpp"

#include <cmath>
#include <complex>
#include <exception>
#include <numbers>
#include <string>

#include "gclink/errors.hpp"

namespace gclink {

namespace {

using Complex = std::complex<double>;

void check_base(const GreatCircleLink& link, int base_index) {
  if (base_index < 0 || static_cast<std::size_t>(base_index) >= link.size()) {
    throw InvalidInput("base index " + std::to_string(base_index) + " out of range for a " +
                       std::to_string(link.size()) + "-component link");
  }
}

struct Coefficients {
  Complex a;
  Complex b;
};

Coefficients coefficients(const Mat4& r, const GreatCircle& c) {
  const Vec4 A = r * c.u();
  const Vec4 B = r * c.v();
  return {Complex(A(2), A(3)), Complex(B(2), B(3))};
}

}  // namespace

FibrationCertificate fibration_certificate(const GreatCircleLink& link, int base_index, double tol) {
  check_base(link, base_index);
  const Mat4 r = move_to_standard(link.component(base_index)).matrix();

  FibrationCertificate cert;
  cert.base_index = base_index;
  for (std::size_t i = 0; i < link.size(); ++i) {
    if (static_cast<int>(i) == base_index) continue;
    const Coefficients c = coefficients(r, link.component(i));
    WindingRecord rec;
    rec.component = static_cast<int>(i);
    rec.winding_rate = std::imag(std::conj(c.a) * c.b);
    // |w(t)|² is the quadratic form [[|a|², Re(conj a·b)], [Re(conj a·b), |b|²]] on (cos t, sin t).
    const double paa = std::norm(c.a);
    const double pbb = std::norm(c.b);
    const double pab = std::real(std::conj(c.a) * c.b);
    const double mean = 0.5 * (paa + pbb);
    const double radius = std::hypot(0.5 * (paa - pbb), pab);
    const double det = paa * pbb - pab * pab;
    rec.clearance = mean + radius > 0.0 ? det / (mean + radius) : 0.0;
    if (rec.clearance <= tol * tol || circles_intersect(link.component(base_index), link.component(i), tol) ||
        circles_equal(link.component(base_index), link.component(i), tol)) {
      throw NotDisjoint("link degenerate: component " + std::to_string(i) + " meets base " +
                            std::to_string(base_index),
                        base_index, static_cast<int>(i));
    }
    if (std::abs(rec.winding_rate) < 1e-9) {
      throw CertificateFailed("winding", "certificate failed: component " + std::to_string(i) +
                                             " has zero winding rate");
    }
    rec.winding_sign = rec.winding_rate > 0.0 ? 1 : -1;
    cert.records.push_back(rec);
  }
  cert.fiber_punctures = static_cast<int>(link.size()) - 1;
  cert.fiber_euler_characteristic = 1 - cert.fiber_punctures;
  return cert;
}

std::vector<FibrationCertificate> all_fibrations(const GreatCircleLink& link, double tol) {
  const long n = static_cast<long>(link.size());
  std::vector<FibrationCertificate> out(n);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    try {
      out[i] = fibration_certificate(link, static_cast<int>(i), tol);
    } catch (...) {
#pragma omp critical(gclink_all_fibrations)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<FiberPoint> fiber_points(const GreatCircleLink& link, int base_index, double theta) {
  const FibrationCertificate cert = fibration_certificate(link, base_index);
  const Mat4 r = move_to_standard(link.component(base_index)).matrix();
  const Complex turn = std::polar(1.0, -theta);
  std::vector<FiberPoint> points;
  for (const auto& rec : cert.records) {
    const GreatCircle& c = link.component(rec.component);
    const Coefficients k = coefficients(r, c);
    const Complex alpha = turn * k.a;
    const Complex beta = turn * k.b;
    // Im(alpha cos t + beta sin t) = 0 has two roots t0, t0 + π; keep the one with Re > 0.
    double t = std::atan2(-alpha.imag(), beta.imag());
    if (std::real(alpha * std::cos(t) + beta * std::sin(t)) < 0.0) t += std::numbers::pi;
    const Vec4 x = c.point(t);
    points.push_back({rec.component, t, x, r * x});
  }
  return points;
}

kernels::WindingInput winding_input(const GreatCircleLink& link, int base_index, int component) {
  check_base(link, base_index);
  const Mat4 r = move_to_standard(link.component(base_index)).matrix();
  const Coefficients c = coefficients(r, link.component(component));
  return {c.a.real(), c.a.imag(), c.b.real(), c.b.imag()};
}

kernels::WindingSample sample_winding(const GreatCircleLink& link, int base_index, int component, int samples) {
  return kernels::sampled_winding_serial(winding_input(link, base_index, component), samples);
}

}  // namespace gclink
