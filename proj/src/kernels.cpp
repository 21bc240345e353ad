#include "gclink/kernels.hpp"

#include <algorithm>
#include <cmath>

#include <numbers>

#include <omp.h>

namespace gclink::kernels {

void CurveSamples::resize(std::size_t n) {
  x.resize(n);
  y.resize(n);
  z.resize(n);
  tx.resize(n);
  ty.resize(n);
  tz.resize(n);
}

// Gauss double sum

double gauss_sum_serial(const CurveSamples& a, const CurveSamples& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      const double dx = a.x[i] - b.x[j];
      const double dy = a.y[i] - b.y[j];
      const double dz = a.z[i] - b.z[j];
      const double cx = a.ty[i] * b.tz[j] - a.tz[i] * b.ty[j];
      const double cy = a.tz[i] * b.tx[j] - a.tx[i] * b.tz[j];
      const double cz = a.tx[i] * b.ty[j] - a.ty[i] * b.tx[j];
      const double r2 = dx * dx + dy * dy + dz * dz;
      sum += (dx * cx + dy * cy + dz * cz) / (r2 * std::sqrt(r2));
    }
  }
  return sum;
}

double gauss_sum_omp(const CurveSamples& a, const CurveSamples& b) {
  // (r - s)·(t × t') = t'·(r × t) + t·(s × t'); both moments are per-sample.
  const long na = static_cast<long>(a.size());
  const long nb = static_cast<long>(b.size());
  std::vector<double> mbx(nb), mby(nb), mbz(nb);
  for (long j = 0; j < nb; ++j) {
    mbx[j] = b.y[j] * b.tz[j] - b.z[j] * b.ty[j];
    mby[j] = b.z[j] * b.tx[j] - b.x[j] * b.tz[j];
    mbz[j] = b.x[j] * b.ty[j] - b.y[j] * b.tx[j];
  }
  const double* bx = b.x.data();
  const double* by = b.y.data();
  const double* bz = b.z.data();
  const double* btx = b.tx.data();
  const double* bty = b.ty.data();
  const double* btz = b.tz.data();
  const double* px = mbx.data();
  const double* py = mby.data();
  const double* pz = mbz.data();

  double sum = 0.0;
#pragma omp parallel for reduction(+ : sum) schedule(static)
  for (long i = 0; i < na; ++i) {
    const double rx = a.x[i], ry = a.y[i], rz = a.z[i];
    const double tx = a.tx[i], ty = a.ty[i], tz = a.tz[i];
    const double mx = ry * tz - rz * ty;
    const double my = rz * tx - rx * tz;
    const double mz = rx * ty - ry * tx;
    double row = 0.0;
#pragma omp simd reduction(+ : row)
    for (long j = 0; j < nb; ++j) {
      const double dx = rx - bx[j];
      const double dy = ry - by[j];
      const double dz = rz - bz[j];
      const double num = btx[j] * mx + bty[j] * my + btz[j] * mz + tx * px[j] + ty * py[j] + tz * pz[j];
      const double r2 = dx * dx + dy * dy + dz * dz;
      row += num / (r2 * std::sqrt(r2));
    }
    sum += row;
  }
  return sum;
}

// Pairwise frame geometry

PairGeometry pair_geometry(std::span<const double, 8> first, std::span<const double, 8> second) {
  const double* u1 = first.data();
  const double* v1 = first.data() + 4;
  const double* u2 = second.data();
  const double* v2 = second.data() + 4;
  auto dot = [](const double* p, const double* q) {
    return p[0] * q[0] + p[1] * q[1] + p[2] * q[2] + p[3] * q[3];
  };
  auto minor = [](const double* p, const double* q, int i, int j) { return p[i] * q[j] - p[j] * q[i]; };

  PairGeometry out;
  out.determinant = minor(u1, v1, 0, 1) * minor(u2, v2, 2, 3) - minor(u1, v1, 0, 2) * minor(u2, v2, 1, 3) +
                    minor(u1, v1, 0, 3) * minor(u2, v2, 1, 2) + minor(u1, v1, 1, 2) * minor(u2, v2, 0, 3) -
                    minor(u1, v1, 1, 3) * minor(u2, v2, 0, 2) + minor(u1, v1, 2, 3) * minor(u2, v2, 0, 1);

  // Cosines: singular values of the Gram matrix [[a, b], [c, d]].
  const double a = dot(u1, u2), b = dot(u1, v2), c = dot(v1, u2), d = dot(v1, v2);
  const double s1 = std::hypot(a + d, b - c);
  const double s2 = std::hypot(a - d, b + c);
  const double cos_max = 0.5 * (s1 + s2);

  // Sines: singular values of the part of the second frame normal to the first plane.
  double ru[4], rv[4];
  for (int k = 0; k < 4; ++k) {
    ru[k] = u2[k] - a * u1[k] - c * v1[k];
    rv[k] = v2[k] - b * u1[k] - d * v1[k];
  }
  const double m11 = dot(ru, ru), m22 = dot(rv, rv), m12 = dot(ru, rv);
  const double lmax = 0.5 * (m11 + m22) + std::hypot(0.5 * (m11 - m22), m12);
  double gram_det = 0.0;  // Cauchy–Binet: sum of squared 2×2 minors
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      const double m = minor(ru, rv, i, j);
      gram_det += m * m;
    }
  }
  const double sin_min = lmax > 0.0 ? std::sqrt(gram_det / lmax) : 0.0;
  out.smaller_angle = std::atan2(sin_min, cos_max);
  return out;
}

namespace {

std::span<const double, 8> frame_at(std::span<const double> frames, std::size_t i) {
  return std::span<const double, 8>(frames.data() + 8 * i, 8);
}

}  // namespace

std::vector<PairGeometry> pairwise_geometry_serial(std::span<const double> frames) {
  const std::size_t n = frames.size() / 8;
  std::vector<PairGeometry> out(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) out[i * n + j] = pair_geometry(frame_at(frames, i), frame_at(frames, j));
    }
  }
  return out;
}

std::vector<PairGeometry> pairwise_geometry_omp(std::span<const double> frames) {
  const long n = static_cast<long>(frames.size() / 8);
  std::vector<PairGeometry> out(n * n);
#pragma omp parallel for schedule(dynamic, 4)
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) {
      if (i != j) out[i * n + j] = pair_geometry(frame_at(frames, i), frame_at(frames, j));
    }
  }
  return out;
}

// Winding of arg w(t)

WindingSample sampled_winding_serial(const WindingInput& in, int samples) {
  WindingSample out;
  if (samples < 2) return out;
  const double step = 2.0 * std::numbers::pi / samples;
  double prev_re = in.a_re;
  double prev_im = in.a_im;
  int positive = 0;
  int negative = 0;
  for (int k = 1; k <= samples; ++k) {
    const double t = k == samples ? 0.0 : step * k;
    const double c = std::cos(t);
    const double s = std::sin(t);
    const double re = in.a_re * c + in.b_re * s;
    const double im = in.a_im * c + in.b_im * s;
    const double cross = prev_re * im - prev_im * re;
    const double dot = prev_re * re + prev_im * im;
    if (cross > 0.0) ++positive;
    if (cross < 0.0) ++negative;
    out.total += std::atan2(cross, dot);
    prev_re = re;
    prev_im = im;
  }
  out.strictly_monotone = (positive == samples) || (negative == samples);
  return out;
}

std::vector<WindingSample> sampled_winding_omp(std::span<const WindingInput> in, int samples) {
  const long n = static_cast<long>(in.size());
  std::vector<WindingSample> out(n);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) out[i] = sampled_winding_serial(in[i], samples);
  return out;
}

// Polyline crossings

namespace {

void crossings_for_segment(std::span<const double> a, std::span<const double> b, int i,
                           std::vector<SegmentHit>& hits) {
  const int na = static_cast<int>(a.size() / 2);
  const int nb = static_cast<int>(b.size() / 2);
  const int i1 = (i + 1) % na;
  const double px = a[2 * i], py = a[2 * i + 1];
  const double rx = a[2 * i1] - px, ry = a[2 * i1 + 1] - py;
  for (int j = 0; j < nb; ++j) {
    const int j1 = (j + 1) % nb;
    const double qx = b[2 * j], qy = b[2 * j + 1];
    const double sx = b[2 * j1] - qx, sy = b[2 * j1 + 1] - qy;
    const double denom = rx * sy - ry * sx;
    if (denom == 0.0) continue;
    const double wx = qx - px, wy = qy - py;
    const double ta = (wx * sy - wy * sx) / denom;
    const double tb = (wx * ry - wy * rx) / denom;
    if (ta >= 0.0 && ta < 1.0 && tb >= 0.0 && tb < 1.0) hits.push_back({i, j, ta, tb});
  }
}

}  // namespace

std::vector<SegmentHit> polyline_crossings_serial(std::span<const double> a, std::span<const double> b) {
  std::vector<SegmentHit> hits;
  const int na = static_cast<int>(a.size() / 2);
  for (int i = 0; i < na; ++i) crossings_for_segment(a, b, i, hits);
  return hits;
}

std::vector<SegmentHit> polyline_crossings_omp(std::span<const double> a, std::span<const double> b) {
  const int na = static_cast<int>(a.size() / 2);
  std::vector<std::vector<SegmentHit>> per_thread(omp_get_max_threads());
#pragma omp parallel
  {
    auto& local = per_thread[omp_get_thread_num()];
#pragma omp for schedule(static)
    for (int i = 0; i < na; ++i) crossings_for_segment(a, b, i, local);
  }
  std::vector<SegmentHit> hits;
  for (auto& local : per_thread) hits.insert(hits.end(), local.begin(), local.end());
  std::sort(hits.begin(), hits.end(), [](const SegmentHit& l, const SegmentHit& r) {
    return l.segment_a != r.segment_a ? l.segment_a < r.segment_a : l.segment_b < r.segment_b;
  });
  return hits;
}

}  // namespace gclink::kernels
