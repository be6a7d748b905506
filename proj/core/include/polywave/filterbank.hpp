#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "polywave/factorization.hpp"

namespace polywave {

/// Masks for levels base_level .. base_level+depth-1; the finest signal
/// stage is transformed with the deepest mask, descending to base_level.
struct FilterBankPlan {
  int order = 1;
  double xi = 0.0;
  int base_level = 0;
  int depth = 1;
  std::vector<RefinementMask> masks;

  static FilterBankPlan create(int order, double xi, int base_level, int depth);
};

/// Critically sampled transform output: details run finest first, so
/// details[0] is half the input length and approx is length / 2^depth.
struct CoefficientPyramid {
  std::size_t signal_length = 0;
  std::vector<double> approx;
  std::vector<std::vector<double>> details;

  std::size_t total_count() const;
};

CoefficientPyramid analyze_1d(const std::vector<double>& signal, const FilterBankPlan& plan);
std::vector<double> synthesize_1d(const CoefficientPyramid& pyr, const FilterBankPlan& plan);

enum class ThresholdMode { hard, soft };

// Shrinks detail coefficients only; the approx band passes through.
CoefficientPyramid threshold_denoise(const CoefficientPyramid& pyr, double tau, ThresholdMode mode);

struct ImageBuffer {
  int width = 0;
  int height = 0;
  int maxval = 255;
  std::vector<double> pixels;  // row-major, height rows of width

  double at(int y, int x) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
};

/// Per-frequency decomposition of an image: unitary DFT along the width,
/// then a 1-D transform of each column's real and imaginary parts with the
/// plan for the folded frequency min(f, width-f).
struct ImagePyramid {
  int width = 0;
  int height = 0;
  int order = 1;
  int base_level = 0;
  int depth = 1;
  int maxval = 255;
  std::vector<CoefficientPyramid> real_parts;  // one per frequency 0..width-1
  std::vector<CoefficientPyramid> imag_parts;
};

ImagePyramid analyze_2d(const ImageBuffer& img, int order, int depth, int base_level = 0);
ImageBuffer synthesize_2d(const ImagePyramid& pyr);

ImagePyramid threshold_denoise(const ImagePyramid& pyr, double tau, ThresholdMode mode);

// Pyramid JSON carries the plan parameters so synthesis can rebuild it.
struct PyramidRecord {
  int order = 1;
  double xi = 0.0;
  int base_level = 0;
  int depth = 1;
  CoefficientPyramid pyramid;
};

std::string pyramid_record_to_json(const PyramidRecord& rec);
PyramidRecord pyramid_record_from_json(const std::string& text);

std::string image_pyramid_to_json(const ImagePyramid& pyr);
ImagePyramid image_pyramid_from_json(const std::string& text);

// PGM P2/P5, 8- and 16-bit; pixels map to reals in [0, maxval] unscaled.
ImageBuffer read_pgm(std::istream& is);
void write_pgm(const ImageBuffer& img, std::ostream& os, bool binary);

// "index,value" CSV; the reader also accepts a "t,value" first column.
std::vector<double> read_signal_csv(std::istream& is);
void write_signal_csv(const std::vector<double>& values, std::ostream& os);

}  // namespace polywave
