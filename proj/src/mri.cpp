#include "hankelrec/mri.hpp"

#include <cmath>

#include "hankelrec/fftu.hpp"
#include "hankelrec/hankel.hpp"
#include "hankelrec/solvers.hpp"
#include "hankelrec/threads.hpp"

namespace hankelrec {

void KSpaceVolume::validate() const {
  if (coils.empty()) throw ConfigError("k-space volume needs at least one coil");
  for (const cmat& c : coils)
    if (c.rows() != coils[0].rows() || c.cols() != coils[0].cols())
      throw ConfigError("coil k-space dimensions differ");
  if (a_dim() < 1 || z_dim() < 1) throw ConfigError("k-space dimensions must be at least 1");
}

rmat rsos_image(const std::vector<cmat>& coil_images) {
  if (coil_images.empty()) throw ConfigError("rsos needs at least one coil");
  rmat acc = rmat::Zero(coil_images[0].rows(), coil_images[0].cols());
  for (const cmat& c : coil_images) {
    if (c.rows() != acc.rows() || c.cols() != acc.cols())
      throw ConfigError("coil image dimensions differ");
    acc += c.cwiseAbs2();
  }
  return acc.cwiseSqrt();
}

KSpaceVolume kspace_from_images(const std::vector<cmat>& coil_images) {
  KSpaceVolume vol;
  for (const cmat& img : coil_images) vol.coils.push_back(fftshift_cols(fft2_u(img)));
  vol.validate();
  return vol;
}

std::vector<cmat> images_from_kspace(const KSpaceVolume& volume) {
  volume.validate();
  std::vector<cmat> images;
  for (const cmat& k : volume.coils) images.push_back(ifft2_u(ifftshift_cols(k)));
  return images;
}

MriPhantom synthetic_phantom(int a, int z, int coils) {
  if (a < 1 || z < 1 || coils < 1) throw ConfigError("phantom dimensions must be at least 1");
  // Blobs: (center_y, center_x, width_y, width_x, amplitude) in unit coords.
  const double blobs[4][5] = {{0.32, 0.3, 0.25, 0.18, 1.0},
                              {0.62, 0.6, 0.12, 0.2, 0.8},
                              {0.45, 0.72, 0.1, 0.08, 0.6},
                              {0.7, 0.25, 0.07, 0.12, 0.9}};
  rmat scene = rmat::Zero(a, z);
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < z; ++j) {
      const double y = static_cast<double>(i) / a;
      const double x = static_cast<double>(j) / z;
      double v = 0.0;
      for (const auto& b : blobs) {
        const double dy = (y - b[0]) / b[2];
        const double dx = (x - b[1]) / b[3];
        v += b[4] * std::exp(-(dy * dy + dx * dx));
      }
      scene(i, j) = v;
    }
  MriPhantom phantom;
  for (int c = 0; c < coils; ++c) {
    // Sensitivity centers slide from (0.2, 0.3) to (0.8, 0.7) across coils.
    const double t = coils > 1 ? static_cast<double>(c) / (coils - 1) : 0.0;
    const double cy = 0.2 + 0.6 * t;
    const double cx = 0.3 + 0.4 * t;
    cmat coil(a, z);
    for (int i = 0; i < a; ++i)
      for (int j = 0; j < z; ++j) {
        const double y = static_cast<double>(i) / a;
        const double x = static_cast<double>(j) / z;
        const double map = std::exp(-((y - cy) * (y - cy) + (x - cx) * (x - cx)) / 0.8);
        coil(i, j) = cplx(scene(i, j) * map, 0.0);
      }
    phantom.coil_images.push_back(std::move(coil));
  }
  phantom.image = rsos_image(phantom.coil_images);
  return phantom;
}

namespace {

cmat blend_columns(const cmat& model, const cmat& uy, double gamma,
                   const SamplingPattern& pattern) {
  cmat out = model;
  for (Eigen::Index c = 0; c < model.cols(); ++c)
    out.col(c) = data_consistency(uy.col(c), model.col(c), gamma, pattern);
  return out;
}

}  // namespace

cmat reconstruct_mri_row(const cmat& data, const SamplingPattern& pattern,
                         const MriOptions& options) {
  const int z = static_cast<int>(data.rows());
  const int channels = static_cast<int>(data.cols());
  if (z != pattern.n) throw ConfigError("row length does not match pattern grid");
  if (channels < 1) throw ConfigError("row problem needs at least one coil");
  if (options.blocks.empty()) throw ConfigError("pipeline needs at least one block");
  for (const BlockParams& b : options.blocks) b.validate();
  if (options.rank_cap <= 0) throw ConfigError("rank cap must be positive");

  const PluginSolver& plugin = options.plugin ? *options.plugin : zero_plugin();
  const HankelShape shape = default_shape(z);

  const cmat uy = data;  // unsampled entries are zero by contract
  cmat k = uy;
  FactorPair f = balanced_factors(hankel_vc({k, shape}), options.rank_cap);
  std::vector<cmat> history_p{f.p}, history_q{f.q};

  for (const BlockParams& b : options.blocks) {
    // Plugin stage on the virtual-coil lift.
    {
      const cmat hvc = hankel_vc({k, shape});
      const cmat input_p = hvc * f.q;
      const cmat corr_p = plugin.correction_p({hvc, input_p, f.q, history_p});
      if (corr_p.rows() != f.p.rows() || corr_p.cols() != f.p.cols())
        throw ConfigError("plugin correction shape mismatch on P");
      f.p += corr_p;
      const cmat input_q = hvc.adjoint() * f.p;
      const cmat corr_q = plugin.correction_q({hvc, input_q, f.p, history_q});
      if (corr_q.rows() != f.q.rows() || corr_q.cols() != f.q.cols())
        throw ConfigError("plugin correction shape mismatch on Q");
      f.q += corr_q;
      const cmat model = hankel_vc_adjoint(f.product(), shape, channels).data;
      k = blend_columns(model, uy, b.gamma_dl, pattern);
      history_p.push_back(f.p);
      history_q.push_back(f.q);
    }
    // Optimizer stage.
    {
      const cmat hvc = hankel_vc({k, shape});
      f.p = update_p(hvc, f.q, b.beta_p);
      f.q = update_q(hvc, f.p, b.beta_q);
      const cmat model = hankel_vc_adjoint(f.product(), shape, channels).data;
      k = blend_columns(model, uy, b.gamma, pattern);
      history_p.push_back(f.p);
      history_q.push_back(f.q);
    }
    if (!k.allFinite()) throw SolverDivergence("non-finite iterate in MRI row pipeline");
  }
  return k;
}

MriResult reconstruct_mri(const KSpaceVolume& volume, const SamplingPattern& pattern,
                          const MriOptions& options) {
  volume.validate();
  const int a = volume.a_dim();
  const int z = volume.z_dim();
  const int channels = volume.coil_count();
  if (z != pattern.n) throw ConfigError("pattern length does not match phase-encode dimension");

  // Hybrid space: inverse FFT along the frequency-encode axis only. Each
  // column of the k-space matrix transforms independently, so the sampled
  // phase-encode columns stay exact.
  std::vector<cmat> hybrid;
  hybrid.reserve(channels);
  for (const cmat& kc : volume.coils) hybrid.push_back(ifft_u_cols(kc));

  std::vector<cmat> rebuilt(channels, cmat(a, z));
  parallel_for(a, options.threads, [&](int row) {
    cmat data(z, channels);
    for (int c = 0; c < channels; ++c) data.col(c) = hybrid[c].row(row).transpose();
    cmat rec;
    try {
      rec = reconstruct_mri_row(data, pattern, options);
    } catch (const std::exception& e) {
      throw SolverDivergence("row " + std::to_string(row) + ": " + e.what());
    }
    for (int c = 0; c < channels; ++c) rebuilt[c].row(row) = rec.col(c).transpose();
  });

  MriResult result;
  for (int c = 0; c < channels; ++c) result.kspace.coils.push_back(fft_u_cols(rebuilt[c]));
  result.image = rsos_image(images_from_kspace(result.kspace));
  return result;
}

}  // namespace hankelrec
