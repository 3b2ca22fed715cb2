#include "spectral_impl.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <stdexcept>

#include "gfhull/gaussian.hpp"
#include "gfhull/rng.hpp"

namespace gfhull::gaussian::detail {
namespace {

// FFTW plan creation/destruction is not thread-safe; executions on distinct
// plans and buffers are.
std::mutex& fftw_mutex() {
  static std::mutex m;
  return m;
}

struct FftBuffer {
  fftw_complex* data = nullptr;
  explicit FftBuffer(std::size_t n) : data(fftw_alloc_complex(n)) {
    if (!data) throw std::bad_alloc();
  }
  ~FftBuffer() { fftw_free(data); }
  FftBuffer(const FftBuffer&) = delete;
  FftBuffer& operator=(const FftBuffer&) = delete;
};

// In-place forward DFT (FFTW_ESTIMATE keeps plan selection deterministic).
void forward_fft(const std::vector<int>& dims, fftw_complex* buf) {
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_mutex());
    plan = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), buf, buf, FFTW_FORWARD,
                         FFTW_ESTIMATE);
  }
  if (!plan) throw std::runtime_error("circulant embedding: FFTW plan failed");
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(fftw_mutex());
    fftw_destroy_plan(plan);
  }
}

int next_pow2(int n) {
  int p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace

CirculantEmbedding::CirculantEmbedding(const CorrelationKernel& kernel,
                                       const regions::SiteSet& sites, double clamp_limit) {
  if (!sites.grid_dims.has_value())
    throw std::invalid_argument("circulant embedding: site set is not a full grid");
  m_ = sites.m;
  grid_dims_.assign(sites.grid_dims->begin(), sites.grid_dims->end());

  total_ = 1;
  embed_dims_.resize(m_);
  for (int a = 0; a < m_; ++a) {
    embed_dims_[a] = next_pow2(2 * grid_dims_[a]);
    total_ *= static_cast<std::size_t>(embed_dims_[a]);
  }
  if (total_ > (std::size_t{1} << 24))
    throw std::invalid_argument("circulant embedding: grid too large (embedded size " +
                                std::to_string(total_) + ")");

  // Torus-wrapped covariance, then its eigenvalues by FFT.
  FftBuffer buf(total_);
  {
    std::vector<int> k(m_, 0);
    Eigen::VectorXd lag(m_);
    for (std::size_t idx = 0; idx < total_; ++idx) {
      for (int a = 0; a < m_; ++a) {
        const int wrapped = std::min(k[a], embed_dims_[a] - k[a]);
        lag[a] = sites.mesh * wrapped;
      }
      buf.data[idx][0] = kernel_eval(kernel, lag);
      buf.data[idx][1] = 0.0;
      for (int a = m_ - 1; a >= 0; --a) {
        if (++k[a] < embed_dims_[a]) break;
        k[a] = 0;
      }
    }
  }
  forward_fft(embed_dims_, buf.data);

  sqrt_eigs_.resize(total_);
  double neg = 0.0, total_mass = 0.0;
  for (std::size_t idx = 0; idx < total_; ++idx) {
    const double lam = buf.data[idx][0];  // imaginary parts vanish by symmetry
    total_mass += std::abs(lam);
    if (lam < 0.0) neg += -lam;
    sqrt_eigs_[idx] = std::sqrt(std::max(lam, 0.0) / static_cast<double>(total_));
  }
  clamped_mass_ = (total_mass > 0.0) ? neg / total_mass : 0.0;
  if (clamped_mass_ > clamp_limit)
    throw std::runtime_error(
        "circulant embedding: clamped spectral mass " + std::to_string(clamped_mass_) +
        " exceeds " + std::to_string(clamp_limit) + "; the embedding size is invalid");

  // Map site enumeration order onto the embedded grid (row-major, last axis
  // fastest, matching FFTW layout).
  const std::size_t n_sites = sites.count();
  site_to_embed_.resize(n_sites);
  for (std::size_t i = 0; i < n_sites; ++i) {
    std::size_t flat = 0;
    for (int a = 0; a < m_; ++a) {
      const std::int64_t rel = sites.site(i)[a] - sites.grid_min[a];
      flat = flat * static_cast<std::size_t>(embed_dims_[a]) + static_cast<std::size_t>(rel);
    }
    site_to_embed_[i] = flat;
  }
}

Eigen::VectorXd CirculantEmbedding::sample(std::uint64_t key) const {
  FftBuffer buf(total_);
  for (std::size_t idx = 0; idx < total_; ++idx) {
    const double s = sqrt_eigs_[idx];
    buf.data[idx][0] = s * rng::normal(key, 2 * idx);
    buf.data[idx][1] = s * rng::normal(key, 2 * idx + 1);
  }
  forward_fft(embed_dims_, buf.data);

  Eigen::VectorXd out(static_cast<Eigen::Index>(site_to_embed_.size()));
  for (std::size_t i = 0; i < site_to_embed_.size(); ++i)
    out[static_cast<Eigen::Index>(i)] = buf.data[site_to_embed_[i]][0];
  return out;
}

}  // namespace gfhull::gaussian::detail
