#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <memory>
#include <string>

#include "gfhull/geometry.hpp"
#include "gfhull/regions.hpp"

// Stationary Gaussian fields on lattice regions.
//
// Model: X_t = sqrt_sigma * G_t, where G_t stacks d independent scalar
// stationary fields sharing the spatial correlation r.  Directional
// covariances then factor as E<X_t,theta><X_s,theta> = r(t-s) * theta' sigma
// theta, so the weak-dependence hypothesis holds exactly whenever r decays.

namespace gfhull::gaussian {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

enum class KernelKind { iid, exponential, squared_exponential, ar_tensor, equicorrelated };

// Spatial correlation r(.) with r(0) = 1.  Kinds:
//   iid                   r(t) = 1{t = 0}
//   exponential(lambda)   r(t) = exp(-lambda |t|_2)
//   squared-exponential   r(t) = exp(-lambda |t|_2^2)
//   ar-tensor(rho)        r(k) = rho^(|k_1|+...+|k_m|), |rho| < 1, lattice lags
//   equicorrelated(r)     r(t) = r for t != 0; fails weak dependence by design
struct CorrelationKernel {
  KernelKind kind = KernelKind::iid;
  double lambda = 1.0;
  double rho = 0.0;
  double r = 0.0;
  int domain_dim = 1;

  // Weak dependence: r(t) -> 0 as |t| -> infinity.
  bool decaying() const { return kind != KernelKind::equicorrelated; }
  // Continuous-parameter kernels usable on meshes of R^m.
  bool continuous_parameter() const {
    return kind == KernelKind::exponential || kind == KernelKind::squared_exponential;
  }
  void validate() const;
  std::string id() const;
};

double kernel_eval(const CorrelationKernel& kernel, const Vec& t);

// Marginal covariance of X_t; stationary, so one matrix for all sites.
struct CrossCovariance {
  Mat sigma;

  static CrossCovariance from_matrix(Mat sigma);  // validates symmetry + PSD
  int dim() const { return static_cast<int>(sigma.rows()); }
  std::string id() const;
};

geo::Ellipsoid concentration_ellipsoid(const CrossCovariance& cross);

// sigma(h) = sqrt( sup_{|t-s|<=h} E|X_t - X_s|^2 )
//          = sqrt( 2 trace(sigma) (1 - min_{|t|_inf<=h} r(t)) ),
// in closed form (both supported kernels are radially monotone, so the
// minimum sits at a corner of the sup-norm ball).  Continuous-parameter
// kernels only.
double sigma_h(const CorrelationKernel& kernel, const CrossCovariance& cross, double h);

struct FieldSample {
  regions::SiteSet sites;
  Mat values;  // d x N, column i belongs to sites.site(i)
  std::uint64_t seed = 0;
  std::uint64_t replicate = 0;
  std::string kernel_id;
  std::string sigma_id;
};

enum class SamplerPath { automatic, iid_shortcut, dense, spectral };

// Precomputes the factorization for a fixed (kernel, cross, sites) triple;
// sample() is then cheap per replicate and const (safe to call concurrently).
//
// Path selection (automatic): iid kernels take the shortcut; site sets up to
// kDenseSiteLimit are factorized densely; larger full rectangular grids go
// through circulant embedding.  Anything else throws advising grid input.
class FieldSampler {
 public:
  FieldSampler(CorrelationKernel kernel, CrossCovariance cross, regions::SiteSet sites,
               SamplerPath path = SamplerPath::automatic);
  ~FieldSampler();
  FieldSampler(FieldSampler&&) noexcept;
  FieldSampler& operator=(FieldSampler&&) noexcept;

  Mat sample(std::uint64_t master_seed, std::uint64_t replicate) const;

  SamplerPath path() const;
  // Fraction of spectral mass clamped away by the embedding (0 elsewhere).
  double clamped_spectral_mass() const;
  const regions::SiteSet& sites() const;

  static constexpr std::size_t kDenseSiteLimit = 4096;
  static constexpr double kClampMassLimit = 1e-6;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

FieldSample sample_field(const CorrelationKernel& kernel, const CrossCovariance& cross,
                         const regions::SiteSet& sites, std::uint64_t seed,
                         std::uint64_t replicate = 0,
                         SamplerPath path = SamplerPath::automatic);

// Lemma-style equicorrelated sequence: xi_k = sigma(sqrt(1-r) zeta_k +
// sqrt(r) eta) with independent standard normals eta, zeta_1..n.  Var = sigma^2
// and every pairwise covariance is sigma^2 r.  Requires 0 <= r < 1.
Vec sample_equicorrelated(double sigma_scalar, double r, int n, std::uint64_t seed,
                          std::uint64_t replicate = 0);

// Symmetric PSD factor L with L L' = R (Cholesky, falling back to a clamped
// eigendecomposition); throws naming the offending eigenvalue when R is not
// PSD within 1e-10 * trace.
Mat psd_factor(const Mat& r_matrix);

}  // namespace gfhull::gaussian
