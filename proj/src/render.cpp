#include "renormlab/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <thread>

#include "renormlab/errors.hpp"

namespace renormlab {

void validate(const RenderConfig& cfg) {
  if (cfg.pixels_w < 16 || cfg.pixels_h < 16) throw PreconditionViolation("image must be at least 16x16");
  if (!(cfg.width > 0)) throw PreconditionViolation("frame width must be positive");
  if (cfg.max_iter < 1) throw PreconditionViolation("max_iter must be positive");
  if (!(cfg.escape_radius > 0)) throw PreconditionViolation("escape radius must be positive");
}

namespace {

double frame_height(const RenderConfig& cfg) { return cfg.width * cfg.pixels_h / cfg.pixels_w; }

std::uint8_t shade(const RenderConfig& cfg, cplx p) {
  const cplx c = cfg.mode == RenderMode::Julia ? cfg.julia_c : p;
  cplx z = cfg.mode == RenderMode::Julia ? p : cplx(0);
  const double r = std::max(cfg.escape_radius, 2 + std::abs(c));
  const double r2 = r * r;
  for (int k = 0; k < cfg.max_iter; ++k) {
    if (std::norm(z) > r2) return static_cast<std::uint8_t>(std::min(k + 1, 255));
    z = z * z + c;
  }
  return std::norm(z) > r2 ? static_cast<std::uint8_t>(std::min(cfg.max_iter + 1, 255)) : 0;
}

}  // namespace

cplx pixel_point(const RenderConfig& cfg, int i, int j) {
  const int w = cfg.pixels_w, h = cfg.pixels_h;
  const double x = (2.0 * i + 1 - w) * cfg.width / (2.0 * w);
  const double y = (2.0 * j + 1 - h) * frame_height(cfg) / (2.0 * h);
  return {cfg.center.real() + x, cfg.center.imag() - y};
}

std::pair<int, int> pixel_of(const RenderConfig& cfg, cplx c) {
  const double left = cfg.center.real() - cfg.width / 2;
  const double top = cfg.center.imag() + frame_height(cfg) / 2;
  const double fi = (c.real() - left) / cfg.width * cfg.pixels_w;
  const double fj = (top - c.imag()) / frame_height(cfg) * cfg.pixels_h;
  const int i = static_cast<int>(std::floor(fi)), j = static_cast<int>(std::floor(fj));
  if (i < 0 || j < 0 || i >= cfg.pixels_w || j >= cfg.pixels_h) return {-1, -1};
  return {i, j};
}

unsigned effective_threads(unsigned requested) {
  unsigned n = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
  if (const char* cap = std::getenv("RENORMLAB_THREADS")) {
    const long v = std::strtol(cap, nullptr, 10);
    if (v >= 1) n = std::min(n, static_cast<unsigned>(v));
  }
  return n;
}

Image render(const RenderConfig& cfg) {
  validate(cfg);
  Image img;
  img.width = cfg.pixels_w;
  img.height = cfg.pixels_h;
  img.pixels.assign(static_cast<std::size_t>(img.width) * img.height, 0);
  const unsigned n = std::min<unsigned>(effective_threads(cfg.threads), static_cast<unsigned>(img.height));
  auto rows = [&](unsigned first) {
    for (int j = static_cast<int>(first); j < img.height; j += static_cast<int>(n)) {
      for (int i = 0; i < img.width; ++i) {
        img.pixels[static_cast<std::size_t>(j) * img.width + i] = shade(cfg, pixel_point(cfg, i, j));
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(rows, t);
  rows(0);
  for (auto& th : pool) th.join();
  return img;
}

void write_pgm(const std::string& path, const Image& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IOError("cannot open " + path + " for writing");
  out << "P5\n" << img.width << ' ' << img.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.pixels.data()), static_cast<std::streamsize>(img.pixels.size()));
  if (!out) throw IOError("failed writing " + path);
}

Image read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IOError("cannot open " + path);
  std::string magic;
  int maxval = 0;
  Image img;
  in >> magic >> img.width >> img.height >> maxval;
  if (magic != "P5" || img.width <= 0 || img.height <= 0 || maxval != 255) {
    throw IOError(path + " is not an 8-bit binary PGM");
  }
  in.get();
  img.pixels.resize(static_cast<std::size_t>(img.width) * img.height);
  in.read(reinterpret_cast<char*>(img.pixels.data()), static_cast<std::streamsize>(img.pixels.size()));
  if (!in) throw IOError(path + " is truncated");
  return img;
}

}  // namespace renormlab
