#pragma once

#include <vector>

#include "hankelrec/pipeline.hpp"
#include "hankelrec/sampling.hpp"
#include "hankelrec/types.hpp"

namespace hankelrec {

// Multi-coil k-space, one A x Z matrix per coil (frequency encode x phase
// encode). The phase-encode axis is stored centered: the zero-frequency
// column sits at Z/2, matching how sampling masks describe the center band.
struct KSpaceVolume {
  std::vector<cmat> coils;

  int a_dim() const { return coils.empty() ? 0 : static_cast<int>(coils[0].rows()); }
  int z_dim() const { return coils.empty() ? 0 : static_cast<int>(coils[0].cols()); }
  int coil_count() const { return static_cast<int>(coils.size()); }
  void validate() const;
};

// Pixelwise sqrt of the summed squared coil magnitudes.
rmat rsos_image(const std::vector<cmat>& coil_images);

// Coil images -> centered k-space (2-D unitary FFT, then the phase-encode
// shift) and back.
KSpaceVolume kspace_from_images(const std::vector<cmat>& coil_images);
std::vector<cmat> images_from_kspace(const KSpaceVolume& volume);

// Smooth synthetic scene: a sum of 2-D Gaussian blobs modulated by one broad
// Gaussian sensitivity map per coil.
struct MriPhantom {
  rmat image;                    // rSoS ground truth
  std::vector<cmat> coil_images; // complex per-coil images (real-valued here)
};

MriPhantom synthetic_phantom(int a, int z, int coils);

struct MriOptions {
  std::vector<BlockParams> blocks = default_blocks_mri();
  int rank_cap = 40;  // clamped to the virtual-coil Hankel row count per row problem
  const PluginSolver* plugin = nullptr;
  int threads = 1;
};

struct MriResult {
  KSpaceVolume kspace;
  rmat image;
};

// Reconstructs a phase-encode-undersampled volume: inverse FFT along the
// frequency-encode axis splits the volume into A independent Z x C row
// problems, each solved by the block pipeline on its virtual-coil Hankel
// lift with the shared data blend at the sampled columns; the forward FFT
// restores k-space and the magnitude image is the coil rSoS. Unsampled
// entries of the input must be zero. Rows run in a parallel map with
// index-ordered assembly.
MriResult reconstruct_mri(const KSpaceVolume& volume, const SamplingPattern& pattern,
                          const MriOptions& options);

// The per-row solve, exposed for testing: data is Z x C, zero-filled.
cmat reconstruct_mri_row(const cmat& data, const SamplingPattern& pattern,
                         const MriOptions& options);

}  // namespace hankelrec
