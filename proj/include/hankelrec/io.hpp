#pragma once

#include <string>
#include <vector>

#include "hankelrec/pipeline.hpp"
#include "hankelrec/sampling.hpp"
#include "hankelrec/solvers.hpp"
#include "hankelrec/types.hpp"

namespace hankelrec {

// Complex container: header line "#CPLX v1 <d1>[ <d2>[ <d3>]]", then one
// "re,im" pair per line in row-major order (the last dimension fastest),
// 17 significant digits so doubles round-trip bit-exactly.
struct CplxData {
  std::vector<int> dims;  // 1 to 3 entries
  std::vector<cplx> values;

  int rank() const { return static_cast<int>(dims.size()); }
  cvec as_vector() const;                // rank 1
  cmat as_matrix() const;                // rank 2: d1 rows x d2 cols
  std::vector<cmat> as_volume() const;   // rank 3: d3 matrices of d1 x d2
};

CplxData read_cplx(const std::string& path);
void write_cplx(const std::string& path, const cvec& x);
void write_cplx(const std::string& path, const cmat& m);
void write_cplx(const std::string& path, const std::vector<cmat>& volume);

// Mask container: header "#MASK v1 <n> <m> <seed> <kind>", then one sampled
// index per line in increasing order.
void write_mask(const std::string& path, const SamplingPattern& pattern);
SamplingPattern read_mask(const std::string& path);

// Canonical float formatting shared by every text emitter (17 significant
// digits, shortest form).
std::string format_double(double v);

// Objective trace CSV: iter,objective,fidelity,penalty,nucproxy,seconds.
void write_trace_csv(const std::string& path, const std::vector<TraceRow>& trace);

// Pipeline diagnostics CSV: block,stage,rlne,effective_rank,nuclear_norm,
// loss_dl,loss_opt. Loss columns are filled from rows when given (matched by
// block/stage), else left empty.
void write_diagnostics_csv(const std::string& path, const std::vector<StageDiag>& diagnostics,
                           const std::vector<LossRow>* losses = nullptr);

// 16-bit binary PGM, max-normalized; all-zero images stay all zero.
void write_pgm16(const std::string& path, const rmat& image);

// Minimal self-contained SVG line/scatter chart. Series with error bars draw
// vertical whiskers. Output contains no timestamps so repeated runs match.
struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> yerr;  // empty or same length as y
};

void write_svg_plot(const std::string& path, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<PlotSeries>& series, bool scatter = false);

// Whole-file helpers used by the CLI and tests.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace hankelrec
