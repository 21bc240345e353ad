#pragma once

#include <vector>

#include "gclink/greatlink.hpp"
#include "gclink/kernels.hpp"

namespace gclink {

/// How one non-base component winds around the base circle.
struct WindingRecord {
  int component = 0;
  /// Im(conj(a)·b) for w(t) = a cos t + b sin t in the move_to_standard frame.
  /// Only the sign is frame independent.
  double winding_rate = 0.0;
  /// min_t |w(t)|², the squared sine of the distance to the base.
  double clearance = 0.0;
  int winding_sign = 0;
};

/// Evidence that S³ minus the link fibres over S¹ by the half-spheres H_θ
/// bounded by the base component.
struct FibrationCertificate {
  int base_index = 0;
  std::vector<WindingRecord> records;
  int fiber_punctures = 0;
  int fiber_euler_characteristic = 1;
};

/// Throws InvalidInput for a bad base index, NotDisjoint("link degenerate") when
/// a component meets the base and CertificateFailed if a winding rate vanishes.
FibrationCertificate fibration_certificate(const GreatCircleLink& link, int base_index,
                                           double tol = kDefaultTolerance);

/// One certificate per component, computed in parallel.
std::vector<FibrationCertificate> all_fibrations(const GreatCircleLink& link, double tol = kDefaultTolerance);

struct FiberPoint {
  int component;
  double parameter;  ///< t on the component's own parametrisation
  Vec4 point;        ///< original coordinates
  Vec4 standard;     ///< coordinates after move_to_standard(base)
};

/// The q-1 points where the non-base components cross H_θ, solved in closed form.
std::vector<FiberPoint> fiber_points(const GreatCircleLink& link, int base_index, double theta);

/// w(t) coefficients of `component` seen from the standard position of `base`.
kernels::WindingInput winding_input(const GreatCircleLink& link, int base_index, int component);

/// Sampled cross-check of the closed-form rate: arg w(t) at `samples` points.
kernels::WindingSample sample_winding(const GreatCircleLink& link, int base_index, int component,
                                      int samples = 1000);

}  // namespace gclink
