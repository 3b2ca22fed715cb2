#include "gfhull/gaussian.hpp"

#include <cmath>
#include <stdexcept>

#include "gfhull/rng.hpp"
#include "spectral_impl.hpp"

namespace gfhull::gaussian {

void CorrelationKernel::validate() const {
  if (domain_dim < 1) throw std::invalid_argument("kernel: domain dimension must be >= 1");
  switch (kind) {
    case KernelKind::iid:
      break;
    case KernelKind::exponential:
    case KernelKind::squared_exponential:
      if (!(lambda > 0.0)) throw std::invalid_argument("kernel: lambda must be positive");
      break;
    case KernelKind::ar_tensor:
      if (!(std::abs(rho) < 1.0)) throw std::invalid_argument("kernel: ar-tensor needs |rho| < 1");
      break;
    case KernelKind::equicorrelated:
      if (!(r >= 0.0 && r < 1.0))
        throw std::invalid_argument("kernel: equicorrelated needs r in [0,1)");
      break;
  }
}

std::string CorrelationKernel::id() const {
  switch (kind) {
    case KernelKind::iid:
      return "iid";
    case KernelKind::exponential:
      return "exponential(" + std::to_string(lambda) + ")";
    case KernelKind::squared_exponential:
      return "squared-exponential(" + std::to_string(lambda) + ")";
    case KernelKind::ar_tensor:
      return "ar-tensor(" + std::to_string(rho) + ")";
    case KernelKind::equicorrelated:
      return "equicorrelated(" + std::to_string(r) + ")";
  }
  return "?";
}

double kernel_eval(const CorrelationKernel& kernel, const Vec& t) {
  if (t.size() != kernel.domain_dim)
    throw std::invalid_argument("kernel_eval: displacement dimension mismatch");
  const bool zero = t.isZero(0.0);
  switch (kernel.kind) {
    case KernelKind::iid:
      return zero ? 1.0 : 0.0;
    case KernelKind::equicorrelated:
      return zero ? 1.0 : kernel.r;
    case KernelKind::exponential:
      return std::exp(-kernel.lambda * t.norm());
    case KernelKind::squared_exponential:
      return std::exp(-kernel.lambda * t.squaredNorm());
    case KernelKind::ar_tensor: {
      double s = 0.0;
      for (Eigen::Index i = 0; i < t.size(); ++i) {
        const double a = std::abs(t[i]);
        if (std::abs(a - std::round(a)) > 1e-9)
          throw std::invalid_argument("kernel_eval: ar-tensor needs lattice displacements");
        s += std::round(a);
      }
      if (kernel.rho == 0.0) return s == 0.0 ? 1.0 : 0.0;
      return std::pow(kernel.rho, s);
    }
  }
  throw std::logic_error("unknown kernel kind");
}

CrossCovariance CrossCovariance::from_matrix(Mat sigma) {
  // Ellipsoid construction enforces symmetry and PSD with the shared tolerances.
  geo::Ellipsoid::from_covariance(sigma);
  CrossCovariance c;
  c.sigma = std::move(sigma);
  return c;
}

std::string CrossCovariance::id() const {
  std::string s = "sigma[";
  for (Eigen::Index i = 0; i < sigma.rows(); ++i) {
    for (Eigen::Index j = 0; j < sigma.cols(); ++j) {
      s += std::to_string(sigma(i, j));
      s += (j + 1 < sigma.cols()) ? "," : "";
    }
    s += (i + 1 < sigma.rows()) ? ";" : "";
  }
  return s + "]";
}

geo::Ellipsoid concentration_ellipsoid(const CrossCovariance& cross) {
  return geo::Ellipsoid::from_covariance(cross.sigma);
}

double sigma_h(const CorrelationKernel& kernel, const CrossCovariance& cross, double h) {
  kernel.validate();
  if (!(h > 0.0)) throw std::invalid_argument("sigma_h: h must be positive");
  if (!kernel.continuous_parameter())
    throw std::invalid_argument(
        "sigma_h: kernel '" + kernel.id() +
        "' is not continuous-parameter; the continuous-case hypotheses fail");
  const int m = kernel.domain_dim;
  // Farthest point of the sup-norm ball |t|_inf <= h in the Euclidean metric
  // is a corner at radius h*sqrt(m).
  const double corner = h * std::sqrt(static_cast<double>(m));
  const double min_r = (kernel.kind == KernelKind::exponential)
                           ? std::exp(-kernel.lambda * corner)
                           : std::exp(-kernel.lambda * corner * corner);
  return std::sqrt(2.0 * cross.sigma.trace() * (1.0 - min_r));
}

Mat psd_factor(const Mat& r_matrix) {
  Eigen::LLT<Mat> llt(r_matrix);
  if (llt.info() == Eigen::Success) return llt.matrixL();
  Eigen::SelfAdjointEigenSolver<Mat> es(r_matrix);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("psd_factor: eigendecomposition failed");
  const double tol = 1e-10 * std::max(r_matrix.trace(), 1e-300);
  Vec lambda = es.eigenvalues();
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (lambda[i] < -tol)
      throw std::invalid_argument("psd_factor: matrix not PSD, eigenvalue " +
                                  std::to_string(lambda[i]));
    lambda[i] = std::max(lambda[i], 0.0);
  }
  return es.eigenvectors() * lambda.cwiseSqrt().asDiagonal();
}

// --- FieldSampler ----------------------------------------------------------

struct FieldSampler::Impl {
  CorrelationKernel kernel;
  CrossCovariance cross;
  regions::SiteSet sites;
  SamplerPath path = SamplerPath::automatic;

  Mat sqrt_sigma;       // d x d
  Mat dense_factor;     // N x N, dense path
  std::unique_ptr<detail::CirculantEmbedding> spectral;  // spectral path

  Mat draw_scalar_fields(std::uint64_t master_seed, std::uint64_t replicate) const;
};

FieldSampler::FieldSampler(CorrelationKernel kernel, CrossCovariance cross,
                           regions::SiteSet sites, SamplerPath path)
    : impl_(std::make_unique<Impl>()) {
  kernel.validate();
  if (sites.count() == 0) throw std::invalid_argument("FieldSampler: empty site set");
  if (sites.m != kernel.domain_dim)
    throw std::invalid_argument("FieldSampler: kernel/site dimension mismatch");

  impl_->kernel = kernel;
  impl_->cross = cross;
  impl_->sites = std::move(sites);
  impl_->sqrt_sigma = concentration_ellipsoid(cross).sqrt_covariance();

  const auto& s = impl_->sites;
  SamplerPath chosen = path;
  if (chosen == SamplerPath::automatic) {
    if (kernel.kind == KernelKind::iid) {
      chosen = SamplerPath::iid_shortcut;
    } else if (s.count() <= kDenseSiteLimit) {
      chosen = SamplerPath::dense;
    } else if (s.grid_dims.has_value()) {
      chosen = SamplerPath::spectral;
    } else {
      throw std::invalid_argument(
          "FieldSampler: " + std::to_string(s.count()) +
          " sites exceed the dense-solver limit and the site set is not a full "
          "rectangular grid; provide grid-structured input for the fast path");
    }
  }
  if (chosen == SamplerPath::iid_shortcut && kernel.kind != KernelKind::iid)
    throw std::invalid_argument("FieldSampler: iid shortcut requires the iid kernel");
  if (chosen == SamplerPath::spectral && !s.grid_dims.has_value())
    throw std::invalid_argument("FieldSampler: spectral path requires a full rectangular grid");

  impl_->path = chosen;
  switch (chosen) {
    case SamplerPath::iid_shortcut:
      break;
    case SamplerPath::dense: {
      const std::size_t n = s.count();
      Mat r(n, n);
      Vec lag(s.m);
      for (std::size_t i = 0; i < n; ++i) {
        r(i, i) = 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
          for (int k = 0; k < s.m; ++k)
            lag[k] = s.mesh * static_cast<double>(s.site(i)[k] - s.site(j)[k]);
          r(i, j) = r(j, i) = kernel_eval(kernel, lag);
        }
      }
      impl_->dense_factor = psd_factor(r);
      break;
    }
    case SamplerPath::spectral:
      impl_->spectral = std::make_unique<detail::CirculantEmbedding>(kernel, s, kClampMassLimit);
      break;
    case SamplerPath::automatic:
      break;  // unreachable
  }
}

FieldSampler::~FieldSampler() = default;
FieldSampler::FieldSampler(FieldSampler&&) noexcept = default;
FieldSampler& FieldSampler::operator=(FieldSampler&&) noexcept = default;

SamplerPath FieldSampler::path() const { return impl_->path; }

double FieldSampler::clamped_spectral_mass() const {
  return impl_->spectral ? impl_->spectral->clamped_mass() : 0.0;
}

const regions::SiteSet& FieldSampler::sites() const { return impl_->sites; }

Mat FieldSampler::Impl::draw_scalar_fields(std::uint64_t master_seed,
                                           std::uint64_t replicate) const {
  const std::size_t n = sites.count();
  const int d = cross.dim();
  const std::uint64_t rep_key = rng::replicate_key(master_seed, replicate);
  Mat g(d, n);
  switch (path) {
    case SamplerPath::iid_shortcut: {
      const std::uint64_t key = rng::fold(rep_key, rng::stream::field);
      for (std::size_t i = 0; i < n; ++i) {
        for (int c = 0; c < d; ++c)
          g(c, i) = rng::normal(key, static_cast<std::uint64_t>(i) * d + c);
      }
      break;
    }
    case SamplerPath::dense: {
      Vec z(n);
      for (int c = 0; c < d; ++c) {
        const std::uint64_t key =
            rng::fold(rng::fold(rep_key, rng::stream::field), static_cast<std::uint64_t>(c));
        for (std::size_t i = 0; i < n; ++i) z[i] = rng::normal(key, i);
        g.row(c) = (dense_factor * z).transpose();
      }
      break;
    }
    case SamplerPath::spectral: {
      for (int c = 0; c < d; ++c) {
        const std::uint64_t key =
            rng::fold(rng::fold(rep_key, rng::stream::spectral), static_cast<std::uint64_t>(c));
        g.row(c) = spectral->sample(key).transpose();
      }
      break;
    }
    case SamplerPath::automatic:
      throw std::logic_error("sampler path unresolved");
  }
  return g;
}

Mat FieldSampler::sample(std::uint64_t master_seed, std::uint64_t replicate) const {
  return impl_->sqrt_sigma * impl_->draw_scalar_fields(master_seed, replicate);
}

FieldSample sample_field(const CorrelationKernel& kernel, const CrossCovariance& cross,
                         const regions::SiteSet& sites, std::uint64_t seed,
                         std::uint64_t replicate, SamplerPath path) {
  const FieldSampler sampler(kernel, cross, sites, path);
  FieldSample out;
  out.sites = sites;
  out.values = sampler.sample(seed, replicate);
  out.seed = seed;
  out.replicate = replicate;
  out.kernel_id = kernel.id();
  out.sigma_id = cross.id();
  return out;
}

Vec sample_equicorrelated(double sigma_scalar, double r, int n, std::uint64_t seed,
                          std::uint64_t replicate) {
  if (!(sigma_scalar > 0.0))
    throw std::invalid_argument("sample_equicorrelated: sigma must be positive");
  if (!(r >= 0.0 && r < 1.0))
    throw std::invalid_argument("sample_equicorrelated: r must lie in [0,1)");
  if (n < 1) throw std::invalid_argument("sample_equicorrelated: n must be >= 1");

  const std::uint64_t rep_key = rng::replicate_key(seed, replicate);
  const double eta = rng::normal(rng::fold(rep_key, rng::stream::eta), 0);
  const std::uint64_t zeta_key = rng::fold(rep_key, rng::stream::zeta);
  const double w_shared = sigma_scalar * std::sqrt(r);
  const double w_own = sigma_scalar * std::sqrt(1.0 - r);
  Vec out(n);
  for (int k = 0; k < n; ++k)
    out[k] = w_own * rng::normal(zeta_key, static_cast<std::uint64_t>(k)) + w_shared * eta;
  return out;
}

}  // namespace gfhull::gaussian
