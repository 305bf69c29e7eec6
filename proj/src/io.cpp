#include "hankelrec/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace hankelrec {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

// std::stod rejects subnormals with out_of_range; strtod rounds them like any
// other value, which the bit-exact round trip relies on.
double parse_double(const std::string& text) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || end != begin + text.size()) throw std::invalid_argument(text);
  return v;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  return in;
}

void write_cplx_body(std::ofstream& out, const std::string& header,
                     const std::vector<const cplx*>& order, const std::string& path) {
  out << header << "\n";
  for (const cplx* v : order)
    out << format_double(v->real()) << "," << format_double(v->imag()) << "\n";
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace

cvec CplxData::as_vector() const {
  if (rank() != 1) throw IoError("expected 1-d complex data");
  return Eigen::Map<const cvec>(values.data(), dims[0]);
}

cmat CplxData::as_matrix() const {
  if (rank() != 2) throw IoError("expected 2-d complex data");
  cmat m(dims[0], dims[1]);
  for (int i = 0; i < dims[0]; ++i)
    for (int j = 0; j < dims[1]; ++j) m(i, j) = values[static_cast<std::size_t>(i) * dims[1] + j];
  return m;
}

std::vector<cmat> CplxData::as_volume() const {
  if (rank() != 3) throw IoError("expected 3-d complex data");
  std::vector<cmat> vol(dims[2], cmat(dims[0], dims[1]));
  std::size_t idx = 0;
  for (int i = 0; i < dims[0]; ++i)
    for (int j = 0; j < dims[1]; ++j)
      for (int c = 0; c < dims[2]; ++c) vol[c](i, j) = values[idx++];
  return vol;
}

CplxData read_cplx(const std::string& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty file: " + path);
  std::istringstream header(line);
  std::string magic;
  header >> magic;
  if (magic != "#CPLX") throw IoError("not a CPLX file: " + path);
  std::string version;
  header >> version;
  if (version != "v1") throw IoError("unsupported CPLX version in " + path);
  CplxData data;
  long long total = 1;
  int d;
  while (header >> d) {
    if (d <= 0) throw IoError("non-positive dimension in " + path);
    data.dims.push_back(d);
    total *= d;
  }
  if (data.dims.empty() || data.dims.size() > 3)
    throw IoError("CPLX rank must be 1..3 in " + path);
  data.values.reserve(static_cast<std::size_t>(total));
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos) throw IoError("malformed CPLX line in " + path);
    try {
      data.values.emplace_back(parse_double(line.substr(0, comma)),
                               parse_double(line.substr(comma + 1)));
    } catch (const std::exception&) {
      throw IoError("malformed CPLX value in " + path);
    }
  }
  if (static_cast<long long>(data.values.size()) != total)
    throw IoError("CPLX value count does not match dimensions in " + path);
  return data;
}

void write_cplx(const std::string& path, const cvec& x) {
  std::ofstream out = open_out(path);
  std::vector<const cplx*> order;
  order.reserve(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) order.push_back(&x[i]);
  write_cplx_body(out, "#CPLX v1 " + std::to_string(x.size()), order, path);
}

void write_cplx(const std::string& path, const cmat& m) {
  std::ofstream out = open_out(path);
  std::vector<const cplx*> order;
  order.reserve(m.size());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) order.push_back(&m(i, j));
  write_cplx_body(out, "#CPLX v1 " + std::to_string(m.rows()) + " " + std::to_string(m.cols()),
                  order, path);
}

void write_cplx(const std::string& path, const std::vector<cmat>& volume) {
  if (volume.empty()) throw IoError("cannot write empty volume: " + path);
  std::ofstream out = open_out(path);
  std::vector<const cplx*> order;
  order.reserve(volume.size() * volume[0].size());
  for (Eigen::Index i = 0; i < volume[0].rows(); ++i)
    for (Eigen::Index j = 0; j < volume[0].cols(); ++j)
      for (const cmat& c : volume) {
        if (c.rows() != volume[0].rows() || c.cols() != volume[0].cols())
          throw IoError("volume slice dimensions differ: " + path);
        order.push_back(&c(i, j));
      }
  write_cplx_body(out,
                  "#CPLX v1 " + std::to_string(volume[0].rows()) + " " +
                      std::to_string(volume[0].cols()) + " " + std::to_string(volume.size()),
                  order, path);
}

void write_mask(const std::string& path, const SamplingPattern& pattern) {
  std::ofstream out = open_out(path);
  out << "#MASK v1 " << pattern.n << " " << pattern.size() << " " << pattern.seed << " "
      << to_string(pattern.kind) << "\n";
  for (int i : pattern.indices) out << i << "\n";
  if (!out) throw IoError("write failed: " + path);
}

SamplingPattern read_mask(const std::string& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty file: " + path);
  std::istringstream header(line);
  std::string magic, version, kind;
  int n = 0, m = 0;
  std::uint64_t seed = 0;
  header >> magic >> version >> n >> m >> seed >> kind;
  if (magic != "#MASK" || version != "v1" || !header)
    throw IoError("not a MASK v1 file: " + path);
  SamplingPattern p;
  p.n = n;
  p.seed = seed;
  try {
    p.kind = pattern_kind_from_string(kind);
  } catch (const ConfigError&) {
    throw IoError("unknown pattern kind in " + path);
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      p.indices.push_back(std::stoi(line));
    } catch (const std::exception&) {
      throw IoError("malformed MASK index in " + path);
    }
  }
  if (static_cast<int>(p.indices.size()) != m)
    throw IoError("MASK index count does not match header in " + path);
  for (std::size_t i = 0; i < p.indices.size(); ++i) {
    if (p.indices[i] < 0 || p.indices[i] >= n) throw IoError("MASK index out of range in " + path);
    if (i > 0 && p.indices[i] <= p.indices[i - 1])
      throw IoError("MASK indices must be strictly increasing in " + path);
  }
  return p;
}

void write_trace_csv(const std::string& path, const std::vector<TraceRow>& trace) {
  std::ofstream out = open_out(path);
  out << "iter,objective,fidelity,penalty,nucproxy,seconds\n";
  for (const TraceRow& r : trace)
    out << r.iter << "," << format_double(r.objective) << "," << format_double(r.fidelity) << ","
        << format_double(r.penalty) << "," << format_double(r.nucproxy) << ","
        << format_double(r.seconds) << "\n";
  if (!out) throw IoError("write failed: " + path);
}

void write_diagnostics_csv(const std::string& path, const std::vector<StageDiag>& diagnostics,
                           const std::vector<LossRow>* losses) {
  std::ofstream out = open_out(path);
  out << "block,stage,rlne,effective_rank,nuclear_norm,loss_dl,loss_opt\n";
  for (const StageDiag& d : diagnostics) {
    std::string loss_dl, loss_opt;
    if (losses) {
      for (const LossRow& l : *losses)
        if (l.block == d.block && l.stage == d.stage) {
          (d.stage == "plugin" ? loss_dl : loss_opt) = format_double(l.loss);
          break;
        }
    }
    out << d.block << "," << d.stage << ","
        << (std::isnan(d.rlne) ? "" : format_double(d.rlne)) << "," << d.effective_rank << ","
        << format_double(d.nuclear_norm) << "," << loss_dl << "," << loss_opt << "\n";
  }
  if (!out) throw IoError("write failed: " + path);
}

void write_pgm16(const std::string& path, const rmat& image) {
  if (image.size() == 0) throw IoError("cannot write empty image: " + path);
  std::ofstream out = open_out(path);
  out << "P5\n" << image.cols() << " " << image.rows() << "\n65535\n";
  const double peak = image.maxCoeff();
  for (Eigen::Index i = 0; i < image.rows(); ++i)
    for (Eigen::Index j = 0; j < image.cols(); ++j) {
      double v = peak > 0.0 ? image(i, j) / peak : 0.0;
      v = std::clamp(v, 0.0, 1.0);
      const unsigned value = static_cast<unsigned>(std::lround(v * 65535.0));
      out.put(static_cast<char>((value >> 8) & 0xff));
      out.put(static_cast<char>(value & 0xff));
    }
  if (!out) throw IoError("write failed: " + path);
}

namespace {

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string svg_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace

void write_svg_plot(const std::string& path, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<PlotSeries>& series, bool scatter) {
  if (series.empty()) throw ConfigError("plot needs at least one series");
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const PlotSeries& s : series) {
    if (s.x.size() != s.y.size() || (!s.yerr.empty() && s.yerr.size() != s.y.size()))
      throw ConfigError("plot series lengths differ");
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      const double e = s.yerr.empty() ? 0.0 : s.yerr[i];
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i] - e);
      ymax = std::max(ymax, s.y[i] + e);
    }
  }
  if (xmin > xmax) throw ConfigError("plot series are empty");
  if (xmax == xmin) { xmax += 1.0; xmin -= 1.0; }
  if (ymax == ymin) { ymax += 1.0; ymin -= 1.0; }

  const double width = 800, height = 600;
  const double left = 90, right = 760, top = 60, bottom = 540;
  auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * (right - left); };
  auto py = [&](double y) { return bottom - (y - ymin) / (ymax - ymin) * (bottom - top); };

  static const char* colors[] = {"#1f6fb2", "#d1495b", "#3a7d44", "#8a5fbf", "#c98a2b", "#4a4a4a"};
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  svg << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  svg << "<text x=\"" << (width / 2) << "\" y=\"30\" text-anchor=\"middle\" font-size=\"18\" "
         "font-family=\"sans-serif\">"
      << escape_xml(title) << "</text>\n";
  // Axes.
  svg << "<line x1=\"" << left << "\" y1=\"" << bottom << "\" x2=\"" << right << "\" y2=\""
      << bottom << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << bottom
      << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 5; ++t) {
    const double fx = xmin + (xmax - xmin) * t / 5.0;
    const double fy = ymin + (ymax - ymin) * t / 5.0;
    svg << "<line x1=\"" << svg_num(px(fx)) << "\" y1=\"" << bottom << "\" x2=\"" << svg_num(px(fx))
        << "\" y2=\"" << (bottom + 6) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << svg_num(px(fx)) << "\" y=\"" << (bottom + 22)
        << "\" text-anchor=\"middle\" font-size=\"12\" font-family=\"sans-serif\">"
        << svg_num(fx) << "</text>\n";
    svg << "<line x1=\"" << (left - 6) << "\" y1=\"" << svg_num(py(fy)) << "\" x2=\"" << left
        << "\" y2=\"" << svg_num(py(fy)) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << (left - 10) << "\" y=\"" << svg_num(py(fy) + 4)
        << "\" text-anchor=\"end\" font-size=\"12\" font-family=\"sans-serif\">" << svg_num(fy)
        << "</text>\n";
  }
  svg << "<text x=\"" << ((left + right) / 2) << "\" y=\"" << (bottom + 45)
      << "\" text-anchor=\"middle\" font-size=\"14\" font-family=\"sans-serif\">"
      << escape_xml(x_label) << "</text>\n";
  svg << "<text x=\"25\" y=\"" << ((top + bottom) / 2)
      << "\" text-anchor=\"middle\" font-size=\"14\" font-family=\"sans-serif\" "
         "transform=\"rotate(-90 25 "
      << ((top + bottom) / 2) << ")\">" << escape_xml(y_label) << "</text>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const PlotSeries& s = series[si];
    const char* color = colors[si % 6];
    if (!scatter && s.x.size() > 1) {
      svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
      for (std::size_t i = 0; i < s.x.size(); ++i)
        svg << svg_num(px(s.x[i])) << "," << svg_num(py(s.y[i])) << " ";
      svg << "\"/>\n";
    }
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      svg << "<circle cx=\"" << svg_num(px(s.x[i])) << "\" cy=\"" << svg_num(py(s.y[i]))
          << "\" r=\"3\" fill=\"" << color << "\"/>\n";
      if (!s.yerr.empty() && s.yerr[i] > 0.0) {
        svg << "<line x1=\"" << svg_num(px(s.x[i])) << "\" y1=\"" << svg_num(py(s.y[i] - s.yerr[i]))
            << "\" x2=\"" << svg_num(px(s.x[i])) << "\" y2=\"" << svg_num(py(s.y[i] + s.yerr[i]))
            << "\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
      }
    }
    // Legend entry.
    const double ly = top + 8 + 20.0 * static_cast<double>(si);
    svg << "<rect x=\"" << (right - 150) << "\" y=\"" << (ly - 9)
        << "\" width=\"12\" height=\"12\" fill=\"" << color << "\"/>\n";
    svg << "<text x=\"" << (right - 132) << "\" y=\"" << (ly + 2)
        << "\" font-size=\"12\" font-family=\"sans-serif\">" << escape_xml(s.label) << "</text>\n";
  }
  svg << "</svg>\n";
  write_text_file(path, svg.str());
}

std::string read_text_file(const std::string& path) {
  std::ifstream in = open_in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (!in && !in.eof()) throw IoError("read failed: " + path);
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out = open_out(path);
  out << content;
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace hankelrec
