#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "renormlab/core.hpp"

namespace renormlab {

enum class RenderMode { Julia, Mandelbrot };

struct RenderConfig {
  RenderMode mode = RenderMode::Julia;
  cplx julia_c = 0;
  cplx center = 0;
  double width = 4;  // real extent of the frame; the height follows the pixel aspect
  int pixels_w = 801;
  int pixels_h = 801;
  int max_iter = 256;
  double escape_radius = 4;
  unsigned threads = 0;  // 0: hardware concurrency; RENORMLAB_THREADS caps either way
};

struct Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // row-major, row 0 at the top

  std::uint8_t at(int i, int j) const { return pixels[static_cast<std::size_t>(j) * width + i]; }
  bool operator==(const Image& o) const {
    return width == o.width && height == o.height && pixels == o.pixels;
  }
};

void validate(const RenderConfig& cfg);

// Point sampled by pixel (i, j): x_i = center + (2i + 1 - w) W / (2w), rows top down.
cplx pixel_point(const RenderConfig& cfg, int i, int j);
// Pixel whose cell contains c, or (-1, -1) when c is outside the frame.
std::pair<int, int> pixel_of(const RenderConfig& cfg, cplx c);

// Gray level min(k + 1, 255) for escape at step k, 0 for points that never escape.
Image render(const RenderConfig& cfg);

unsigned effective_threads(unsigned requested);

void write_pgm(const std::string& path, const Image& img);
Image read_pgm(const std::string& path);

}  // namespace renormlab
