#include "polywave/filterbank.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "polywave/errors.hpp"

namespace polywave {

FilterBankPlan FilterBankPlan::create(int order, double xi, int base_level, int depth) {
  if (depth < 1) throw std::invalid_argument("FilterBankPlan: depth must be >= 1");
  if (base_level < 0) throw std::invalid_argument("FilterBankPlan: base_level must be >= 0");
  FilterBankPlan plan;
  plan.order = order;
  plan.xi = xi;
  plan.base_level = base_level;
  plan.depth = depth;
  plan.masks.reserve(static_cast<std::size_t>(depth));
  for (int m = base_level; m < base_level + depth; ++m)
    plan.masks.push_back(refinement_mask({order, xi, m}));
  return plan;
}

std::size_t CoefficientPyramid::total_count() const {
  std::size_t n = approx.size();
  for (const auto& d : details) n += d.size();
  return n;
}

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

std::size_t wrap(long idx, std::size_t n) {
  long r = idx % static_cast<long>(n);
  if (r < 0) r += static_cast<long>(n);
  return static_cast<std::size_t>(r);
}

// One orthogonal stage: c[l] = sum_j g_j x[2l+j] / sqrt2,
// d[l] = sum_j h_j x[2l+j] / sqrt2 with h_j = (-1)^j g_{1-j}.
void analyze_stage(const std::vector<double>& x, const LaurentPolynomial& g,
                   std::vector<double>& approx, std::vector<double>& detail) {
  const std::size_t half = x.size() / 2;
  approx.assign(half, 0.0);
  detail.assign(half, 0.0);
  for (std::size_t l = 0; l < half; ++l) {
    double ca = 0.0, cd = 0.0;
    for (int j = g.lo; j <= g.hi(); ++j)
      ca += g.at(j) * x[wrap(2 * static_cast<long>(l) + j, x.size())];
    for (int j = 1 - g.hi(); j <= 1 - g.lo; ++j) {
      const double h = ((j % 2 == 0) ? 1.0 : -1.0) * g.at(1 - j);
      cd += h * x[wrap(2 * static_cast<long>(l) + j, x.size())];
    }
    approx[l] = ca * kInvSqrt2;
    detail[l] = cd * kInvSqrt2;
  }
}

void synthesize_stage(const std::vector<double>& approx, const std::vector<double>& detail,
                      const LaurentPolynomial& g, std::vector<double>& out) {
  const std::size_t n = 2 * approx.size();
  out.assign(n, 0.0);
  for (std::size_t l = 0; l < approx.size(); ++l) {
    for (int j = g.lo; j <= g.hi(); ++j)
      out[wrap(2 * static_cast<long>(l) + j, n)] += approx[l] * g.at(j) * kInvSqrt2;
    for (int j = 1 - g.hi(); j <= 1 - g.lo; ++j) {
      const double h = ((j % 2 == 0) ? 1.0 : -1.0) * g.at(1 - j);
      out[wrap(2 * static_cast<long>(l) + j, n)] += detail[l] * h * kInvSqrt2;
    }
  }
}

}  // namespace

CoefficientPyramid analyze_1d(const std::vector<double>& signal, const FilterBankPlan& plan) {
  const std::size_t n = signal.size();
  const std::size_t block = static_cast<std::size_t>(1) << plan.depth;
  if (n == 0 || n % block != 0)
    throw BadLength("analyze_1d: length not divisible by 2^J");

  CoefficientPyramid pyr;
  pyr.signal_length = n;
  std::vector<double> cur = signal;
  for (int s = 0; s < plan.depth; ++s) {
    const LaurentPolynomial& g = plan.masks[static_cast<std::size_t>(plan.depth - 1 - s)].g;
    std::vector<double> approx, detail;
    analyze_stage(cur, g, approx, detail);
    pyr.details.push_back(std::move(detail));
    cur = std::move(approx);
  }
  pyr.approx = std::move(cur);
  return pyr;
}

std::vector<double> synthesize_1d(const CoefficientPyramid& pyr, const FilterBankPlan& plan) {
  if (static_cast<int>(pyr.details.size()) != plan.depth)
    throw ShapeMismatch("synthesize_1d: detail band count does not match plan depth");
  const std::size_t block = static_cast<std::size_t>(1) << plan.depth;
  if (pyr.signal_length == 0 || pyr.signal_length % block != 0 ||
      pyr.approx.size() != pyr.signal_length / block)
    throw ShapeMismatch("synthesize_1d: approx band length mismatch");
  for (int s = 0; s < plan.depth; ++s) {
    const std::size_t want = pyr.signal_length >> (s + 1);
    if (pyr.details[static_cast<std::size_t>(s)].size() != want)
      throw ShapeMismatch("synthesize_1d: detail band length mismatch");
  }

  std::vector<double> cur = pyr.approx;
  for (int s = plan.depth - 1; s >= 0; --s) {
    const LaurentPolynomial& g = plan.masks[static_cast<std::size_t>(plan.depth - 1 - s)].g;
    std::vector<double> next;
    synthesize_stage(cur, pyr.details[static_cast<std::size_t>(s)], g, next);
    cur = std::move(next);
  }
  return cur;
}

CoefficientPyramid threshold_denoise(const CoefficientPyramid& pyr, double tau,
                                     ThresholdMode mode) {
  if (!(tau >= 0.0)) throw std::invalid_argument("threshold_denoise: tau must be >= 0");
  CoefficientPyramid out = pyr;
  for (auto& band : out.details) {
    for (double& c : band) {
      if (mode == ThresholdMode::hard) {
        if (std::abs(c) <= tau) c = 0.0;
      } else {
        const double mag = std::max(std::abs(c) - tau, 0.0);
        c = std::copysign(mag, c);
      }
    }
  }
  return out;
}

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Unitary DFT (sign = -1 forward, +1 inverse), radix-2 when possible.
void dft_unitary(std::vector<std::complex<double>>& v, int sign) {
  const std::size_t n = v.size();
  if (n <= 1) return;
  const double pi = std::acos(-1.0);
  if (is_power_of_two(n)) {
    for (std::size_t i = 1, j = 0; i < n; ++i) {
      std::size_t bit = n >> 1;
      for (; j & bit; bit >>= 1) j ^= bit;
      j ^= bit;
      if (i < j) std::swap(v[i], v[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
      const double ang = sign * 2.0 * pi / static_cast<double>(len);
      const std::complex<double> wl = std::polar(1.0, ang);
      for (std::size_t i = 0; i < n; i += len) {
        std::complex<double> w{1.0, 0.0};
        for (std::size_t k = 0; k < len / 2; ++k) {
          const std::complex<double> u = v[i + k];
          const std::complex<double> t = v[i + k + len / 2] * w;
          v[i + k] = u + t;
          v[i + k + len / 2] = u - t;
          w *= wl;
        }
      }
    }
  } else {
    std::vector<std::complex<double>> out(n, {0.0, 0.0});
    for (std::size_t f = 0; f < n; ++f)
      for (std::size_t x = 0; x < n; ++x)
        out[f] += v[x] * std::polar(1.0, sign * 2.0 * pi * static_cast<double>(f) *
                                             static_cast<double>(x) / static_cast<double>(n));
    v = std::move(out);
  }
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  for (auto& z : v) z *= norm;
}

}  // namespace

ImagePyramid analyze_2d(const ImageBuffer& img, int order, int depth, int base_level) {
  if (img.width < 1 || img.height < 1 ||
      img.pixels.size() != static_cast<std::size_t>(img.width) * img.height)
    throw ShapeMismatch("analyze_2d: inconsistent image dimensions");
  const std::size_t block = static_cast<std::size_t>(1) << depth;
  if (static_cast<std::size_t>(img.height) % block != 0)
    throw BadLength("analyze_2d: height not divisible by 2^J");

  const int w = img.width, h = img.height;
  std::vector<std::vector<std::complex<double>>> spectrum(
      static_cast<std::size_t>(h), std::vector<std::complex<double>>(static_cast<std::size_t>(w)));
  for (int y = 0; y < h; ++y) {
    auto& row = spectrum[static_cast<std::size_t>(y)];
    for (int x = 0; x < w; ++x) row[static_cast<std::size_t>(x)] = img.at(y, x);
    dft_unitary(row, -1);
  }

  std::map<int, FilterBankPlan> plans;  // keyed by folded frequency
  ImagePyramid pyr;
  pyr.width = w;
  pyr.height = h;
  pyr.order = order;
  pyr.base_level = base_level;
  pyr.depth = depth;
  pyr.maxval = img.maxval;
  pyr.real_parts.resize(static_cast<std::size_t>(w));
  pyr.imag_parts.resize(static_cast<std::size_t>(w));
  for (int f = 0; f < w; ++f) {
    const int folded = std::min(f, w - f);
    auto it = plans.find(folded);
    if (it == plans.end())
      it = plans.emplace(folded, FilterBankPlan::create(order, static_cast<double>(folded),
                                                        base_level, depth))
               .first;
    std::vector<double> re(static_cast<std::size_t>(h)), im(static_cast<std::size_t>(h));
    for (int y = 0; y < h; ++y) {
      re[static_cast<std::size_t>(y)] = spectrum[static_cast<std::size_t>(y)][static_cast<std::size_t>(f)].real();
      im[static_cast<std::size_t>(y)] = spectrum[static_cast<std::size_t>(y)][static_cast<std::size_t>(f)].imag();
    }
    pyr.real_parts[static_cast<std::size_t>(f)] = analyze_1d(re, it->second);
    pyr.imag_parts[static_cast<std::size_t>(f)] = analyze_1d(im, it->second);
  }
  return pyr;
}

ImageBuffer synthesize_2d(const ImagePyramid& pyr) {
  const int w = pyr.width, h = pyr.height;
  if (w < 1 || h < 1 || pyr.real_parts.size() != static_cast<std::size_t>(w) ||
      pyr.imag_parts.size() != static_cast<std::size_t>(w))
    throw ShapeMismatch("synthesize_2d: frequency band count does not match width");

  std::map<int, FilterBankPlan> plans;
  std::vector<std::vector<std::complex<double>>> spectrum(
      static_cast<std::size_t>(h), std::vector<std::complex<double>>(static_cast<std::size_t>(w)));
  for (int f = 0; f < w; ++f) {
    const int folded = std::min(f, w - f);
    auto it = plans.find(folded);
    if (it == plans.end())
      it = plans.emplace(folded, FilterBankPlan::create(pyr.order, static_cast<double>(folded),
                                                        pyr.base_level, pyr.depth))
               .first;
    const std::vector<double> re = synthesize_1d(pyr.real_parts[static_cast<std::size_t>(f)], it->second);
    const std::vector<double> im = synthesize_1d(pyr.imag_parts[static_cast<std::size_t>(f)], it->second);
    if (re.size() != static_cast<std::size_t>(h) || im.size() != static_cast<std::size_t>(h))
      throw ShapeMismatch("synthesize_2d: column length does not match height");
    for (int y = 0; y < h; ++y)
      spectrum[static_cast<std::size_t>(y)][static_cast<std::size_t>(f)] = {
          re[static_cast<std::size_t>(y)], im[static_cast<std::size_t>(y)]};
  }

  ImageBuffer img;
  img.width = w;
  img.height = h;
  img.maxval = pyr.maxval;
  img.pixels.resize(static_cast<std::size_t>(w) * h);
  double sup = 0.0, residue = 0.0;
  for (int y = 0; y < h; ++y) {
    auto& row = spectrum[static_cast<std::size_t>(y)];
    dft_unitary(row, +1);
    for (int x = 0; x < w; ++x) {
      const std::complex<double> z = row[static_cast<std::size_t>(x)];
      img.pixels[static_cast<std::size_t>(y) * w + x] = z.real();
      sup = std::max(sup, std::abs(z.real()));
      residue = std::max(residue, std::abs(z.imag()));
    }
  }
  if (residue > 1e-8 * std::max(1.0, sup))
    throw ShapeMismatch("synthesize_2d: imaginary residue exceeds tolerance");
  return img;
}

ImagePyramid threshold_denoise(const ImagePyramid& pyr, double tau, ThresholdMode mode) {
  ImagePyramid out = pyr;
  for (auto& p : out.real_parts) p = threshold_denoise(p, tau, mode);
  for (auto& p : out.imag_parts) p = threshold_denoise(p, tau, mode);
  return out;
}

namespace {

nlohmann::json pyramid_body(const CoefficientPyramid& p) {
  nlohmann::json j;
  j["length"] = p.signal_length;
  j["approx"] = p.approx;
  j["details"] = p.details;
  return j;
}

CoefficientPyramid pyramid_from_body(const nlohmann::json& j) {
  CoefficientPyramid p;
  p.signal_length = j.at("length").get<std::size_t>();
  p.approx = j.at("approx").get<std::vector<double>>();
  p.details = j.at("details").get<std::vector<std::vector<double>>>();
  if (p.total_count() != p.signal_length)
    throw ParseError("pyramid: coefficient count does not match recorded length");
  return p;
}

}  // namespace

std::string pyramid_record_to_json(const PyramidRecord& rec) {
  nlohmann::json j = pyramid_body(rec.pyramid);
  j["kind"] = "pyramid1d";
  j["N"] = rec.order;
  j["xi"] = rec.xi;
  j["base_level"] = rec.base_level;
  j["depth"] = rec.depth;
  return j.dump(2);
}

PyramidRecord pyramid_record_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("pyramid: ") + e.what());
  }
  try {
    if (j.at("kind").get<std::string>() != "pyramid1d")
      throw ParseError("pyramid: kind is not pyramid1d");
    PyramidRecord rec;
    rec.order = j.at("N").get<int>();
    rec.xi = j.at("xi").get<double>();
    rec.base_level = j.at("base_level").get<int>();
    rec.depth = j.at("depth").get<int>();
    rec.pyramid = pyramid_from_body(j);
    if (static_cast<int>(rec.pyramid.details.size()) != rec.depth)
      throw ParseError("pyramid: details count does not match depth");
    return rec;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("pyramid: ") + e.what());
  }
}

std::string image_pyramid_to_json(const ImagePyramid& pyr) {
  nlohmann::json j;
  j["kind"] = "pyramid2d";
  j["N"] = pyr.order;
  j["base_level"] = pyr.base_level;
  j["depth"] = pyr.depth;
  j["width"] = pyr.width;
  j["height"] = pyr.height;
  j["maxval"] = pyr.maxval;
  nlohmann::json rows = nlohmann::json::array();
  for (int f = 0; f < pyr.width; ++f) {
    nlohmann::json row;
    row["freq"] = f;
    row["real"] = pyramid_body(pyr.real_parts[static_cast<std::size_t>(f)]);
    row["imag"] = pyramid_body(pyr.imag_parts[static_cast<std::size_t>(f)]);
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j.dump(2);
}

ImagePyramid image_pyramid_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("pyramid: ") + e.what());
  }
  try {
    if (j.at("kind").get<std::string>() != "pyramid2d")
      throw ParseError("pyramid: kind is not pyramid2d");
    ImagePyramid pyr;
    pyr.order = j.at("N").get<int>();
    pyr.base_level = j.at("base_level").get<int>();
    pyr.depth = j.at("depth").get<int>();
    pyr.width = j.at("width").get<int>();
    pyr.height = j.at("height").get<int>();
    pyr.maxval = j.at("maxval").get<int>();
    const auto& rows = j.at("rows");
    if (static_cast<int>(rows.size()) != pyr.width)
      throw ParseError("pyramid: rows count does not match width");
    pyr.real_parts.resize(static_cast<std::size_t>(pyr.width));
    pyr.imag_parts.resize(static_cast<std::size_t>(pyr.width));
    for (int f = 0; f < pyr.width; ++f) {
      const auto& row = rows[static_cast<std::size_t>(f)];
      pyr.real_parts[static_cast<std::size_t>(f)] = pyramid_from_body(row.at("real"));
      pyr.imag_parts[static_cast<std::size_t>(f)] = pyramid_from_body(row.at("imag"));
    }
    return pyr;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("pyramid: ") + e.what());
  }
}

namespace {

int next_pgm_token(std::istream& is, std::string& tok) {
  tok.clear();
  int c = is.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = is.get();
    } else if (std::isspace(c)) {
      c = is.get();
    } else {
      break;
    }
  }
  while (c != EOF && !std::isspace(c)) {
    tok.push_back(static_cast<char>(c));
    c = is.get();
  }
  return c;  // the delimiter consumed after the token (or EOF)
}

long parse_pgm_int(std::istream& is, const char* what, int* delim_out = nullptr) {
  std::string tok;
  const int delim = next_pgm_token(is, tok);
  if (delim_out) *delim_out = delim;
  if (tok.empty()) throw ParseError(std::string("pgm: missing ") + what);
  try {
    std::size_t pos = 0;
    const long v = std::stol(tok, &pos);
    if (pos != tok.size()) throw ParseError(std::string("pgm: malformed ") + what);
    return v;
  } catch (const std::exception&) {
    throw ParseError(std::string("pgm: malformed ") + what);
  }
}

}  // namespace

ImageBuffer read_pgm(std::istream& is) {
  std::string magic;
  next_pgm_token(is, magic);
  const bool binary = magic == "P5";
  if (!binary && magic != "P2") throw ParseError("pgm: magic must be P2 or P5");

  ImageBuffer img;
  img.width = static_cast<int>(parse_pgm_int(is, "width"));
  img.height = static_cast<int>(parse_pgm_int(is, "height"));
  int delim = 0;
  img.maxval = static_cast<int>(parse_pgm_int(is, "maxval", &delim));
  if (img.width < 1 || img.height < 1) throw ParseError("pgm: nonpositive dimensions");
  if (img.maxval < 1 || img.maxval > 65535) throw ParseError("pgm: maxval out of range");

  const std::size_t count = static_cast<std::size_t>(img.width) * img.height;
  img.pixels.resize(count);
  if (binary) {
    if (delim == EOF) throw ParseError("pgm: truncated header");
    const bool wide = img.maxval > 255;
    std::vector<unsigned char> raw(count * (wide ? 2 : 1));
    is.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (static_cast<std::size_t>(is.gcount()) != raw.size())
      throw ParseError("pgm: truncated pixel data");
    for (std::size_t i = 0; i < count; ++i) {
      const unsigned v = wide ? (static_cast<unsigned>(raw[2 * i]) << 8) | raw[2 * i + 1]
                              : raw[i];
      img.pixels[i] = static_cast<double>(v);
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      const long v = parse_pgm_int(is, "pixel");
      if (v < 0 || v > img.maxval) throw ParseError("pgm: pixel out of range");
      img.pixels[i] = static_cast<double>(v);
    }
  }
  return img;
}

void write_pgm(const ImageBuffer& img, std::ostream& os, bool binary) {
  if (img.width < 1 || img.height < 1 ||
      img.pixels.size() != static_cast<std::size_t>(img.width) * img.height)
    throw ShapeMismatch("write_pgm: inconsistent image dimensions");
  if (img.maxval < 1 || img.maxval > 65535)
    throw ShapeMismatch("write_pgm: maxval out of range");

  os << (binary ? "P5" : "P2") << '\n' << img.width << ' ' << img.height << '\n'
     << img.maxval << '\n';
  const bool wide = img.maxval > 255;
  std::size_t col = 0;
  for (std::size_t i = 0; i < img.pixels.size(); ++i) {
    const double clamped = std::min(std::max(img.pixels[i], 0.0), static_cast<double>(img.maxval));
    const unsigned v = static_cast<unsigned>(std::lround(clamped));
    if (binary) {
      if (wide) os.put(static_cast<char>((v >> 8) & 0xff));
      os.put(static_cast<char>(v & 0xff));
    } else {
      os << v;
      if (++col == static_cast<std::size_t>(img.width)) {
        os << '\n';
        col = 0;
      } else {
        os << ' ';
      }
    }
  }
}

std::vector<double> read_signal_csv(std::istream& is) {
  std::vector<double> out;
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos) throw ParseError("csv: line has no comma");
    const std::string value = line.substr(comma + 1);
    if (first) {
      first = false;
      // Header row: second column named "value".
      if (value == "value") continue;
    }
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(value, &pos));
      while (pos < value.size() && std::isspace(static_cast<unsigned char>(value[pos]))) ++pos;
      if (pos != value.size()) throw ParseError("csv: trailing characters after value");
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception&) {
      throw ParseError("csv: malformed value field");
    }
  }
  if (out.empty()) throw ParseError("csv: no samples");
  return out;
}

void write_signal_csv(const std::vector<double>& values, std::ostream& os) {
  os << "index,value\n";
  char buf[64];
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", values[i]);
    os << i << ',' << buf << '\n';
  }
}

}  // namespace polywave
