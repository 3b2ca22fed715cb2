#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "gfhull/regions.hpp"

namespace gfhull::gaussian {
struct CorrelationKernel;
}

namespace gfhull::gaussian::detail {

// Exact stationary sampling on a full rectangular grid via circulant
// embedding: the covariance is wrapped onto a torus grid padded to the next
// power of two >= 2 * n per axis, its FFT gives the spectral weights, and a
// complex white-noise synthesis followed by one forward FFT yields the field
// (real part).  Negative spectral mass is clamped to zero; construction
// throws when the clamped fraction exceeds clamp_limit.
class CirculantEmbedding {
 public:
  CirculantEmbedding(const CorrelationKernel& kernel, const regions::SiteSet& sites,
                     double clamp_limit);

  // One scalar field over the grid sites, in site enumeration order.
  // Thread-safe; draws come from (key, 2*freq) and (key, 2*freq + 1).
  Eigen::VectorXd sample(std::uint64_t key) const;

  double clamped_mass() const { return clamped_mass_; }
  std::size_t embedded_size() const { return total_; }

 private:
  int m_ = 1;
  std::vector<int> grid_dims_;       // sites per axis
  std::vector<int> embed_dims_;      // padded torus per axis
  std::size_t total_ = 1;            // product of embed_dims_
  std::vector<double> sqrt_eigs_;    // sqrt(lambda_k) / sqrt(total)
  double clamped_mass_ = 0.0;
  std::vector<std::size_t> site_to_embed_;  // site index -> embedded flat index
};

}  // namespace gfhull::gaussian::detail
