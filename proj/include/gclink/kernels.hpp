#pragma once

// Data-parallel inner loops. Every kernel has a straightforward `_serial`
// reference and an OpenMP `_omp` variant; tests hold the two together and
// gclink_bench compares their throughput. Interfaces use plain arrays so this
// translation unit can be built with machine-specific flags.

#include <cstddef>
#include <span>
#include <vector>

namespace gclink::kernels {

/// Samples of a closed space curve. Tangents already carry the quadrature weight.
struct CurveSamples {
  std::vector<double> x, y, z;
  std::vector<double> tx, ty, tz;

  std::size_t size() const { return x.size(); }
  void resize(std::size_t n);
};

/// Σ_ij (r_i − s_j)·(t_i × t'_j) / |r_i − s_j|³ over all sample pairs.
double gauss_sum_serial(const CurveSamples& a, const CurveSamples& b);
double gauss_sum_omp(const CurveSamples& a, const CurveSamples& b);

/// Frames stored as 8 doubles per circle: u[0..3] then v[0..3].
struct PairGeometry {
  double determinant = 0.0;    ///< det[u_i v_i u_j v_j]
  double smaller_angle = 0.0;  ///< smaller principal angle
};

/// Geometry of one pair of frames (closed-form 2×2 singular values).
PairGeometry pair_geometry(std::span<const double, 8> first, std::span<const double, 8> second);

/// Row-major n×n table; the diagonal is left default.
std::vector<PairGeometry> pairwise_geometry_serial(std::span<const double> frames);
std::vector<PairGeometry> pairwise_geometry_omp(std::span<const double> frames);

/// Complex coefficients of w(t) = a·cos t + b·sin t.
struct WindingInput {
  double a_re, a_im, b_re, b_im;
};

struct WindingSample {
  bool strictly_monotone = false;
  double total = 0.0;  ///< accumulated change of arg w over one period
};

/// Samples arg w(t) at `samples` equally spaced t and accumulates the increments.
WindingSample sampled_winding_serial(const WindingInput& in, int samples);
std::vector<WindingSample> sampled_winding_omp(std::span<const WindingInput> in, int samples);

/// A proper crossing of segment i of polyline A with segment j of polyline B;
/// ta, tb are the positions along each segment in [0, 1).
struct SegmentHit {
  int segment_a;
  int segment_b;
  double ta;
  double tb;
};

/// All crossings between two closed 2-D polylines (x, y interleaved), ordered by
/// (segment_a, segment_b).
std::vector<SegmentHit> polyline_crossings_serial(std::span<const double> a, std::span<const double> b);
std::vector<SegmentHit> polyline_crossings_omp(std::span<const double> a, std::span<const double> b);

}  // namespace gclink::kernels
