#pragma once

#include <string>

#include "hankelrec/pipeline.hpp"
#include "hankelrec/sampling.hpp"
#include "hankelrec/solvers.hpp"
#include "hankelrec/types.hpp"

namespace hankelrec {

// 2-D spectroscopy time-domain data: rows indexed by the direct dimension,
// columns by the indirect (undersampled) dimension.
struct Spectrum2D {
  cmat data;
  int direct_dim() const { return static_cast<int>(data.rows()); }
  int indirect_dim() const { return static_cast<int>(data.cols()); }
};

enum class SolverChoice { penalty, admm, svt, cs, pipeline };

SolverChoice solver_choice_from_string(const std::string& name);
std::string to_string(SolverChoice choice);

// Everything a per-row reconstruction needs, for whichever solver is chosen.
struct RowSolverOptions {
  SolverChoice choice = SolverChoice::penalty;
  SolverConfig solver;        // penalty / admm
  PipelineConfig pipeline;    // block pipeline
  double cs_lambda = 0.05;
  int cs_iters = 2000;
  double svt_lambda = 1e4;
  int svt_iters = 500;
  int threads = 1;
};

// Reconstructs every direct-dimension row independently from its samples at
// the shared indirect-dimension pattern (one acquisition schedule covers the
// whole plane). Rows run in a parallel map with index-ordered assembly, so
// the result does not depend on the thread count.
Spectrum2D reconstruct_nmr(const Spectrum2D& input, const SamplingPattern& pattern,
                           const RowSolverOptions& options);

// Single-row entry point shared by reconstruct_nmr and the CLI.
cvec reconstruct_row(const cvec& row, const SamplingPattern& pattern,
                     const RowSolverOptions& options);

}  // namespace hankelrec
