// Copyright 2026 The onebit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "onebit/modem.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "onebit/errors.h"

namespace onebit {
namespace {

int Log2Exact(int m) {
  return std::countr_zero(static_cast<unsigned>(m));
}

}  // namespace

std::uint32_t GrayEncode(std::uint32_t v) { return v ^ (v >> 1); }

Constellation BuildPsk(int m) {
  if (m != 2 && m != 4 && m != 8 && m != 16) {
    throw ParameterError("BuildPsk: unsupported order " + std::to_string(m));
  }
  Constellation c;
  c.kind_ = ModulationKind::kPsk;
  c.order_ = m;
  c.bits_ = Log2Exact(m);
  c.name_ = m == 2 ? "bpsk" : m == 4 ? "qpsk" : std::to_string(m) + "psk";
  c.points_.resize(m);
  c.labels_.resize(m);
  if (m == 2) {
    c.points_ = {Complex(1.0, 0.0), Complex(-1.0, 0.0)};
    c.labels_ = {0, 1};
  } else {
    for (int i = 0; i < m; ++i) {
      c.points_[i] = std::polar(1.0, (2 * i + 1) * std::numbers::pi / m);
      c.labels_[i] = GrayEncode(static_cast<std::uint32_t>(i));
    }
  }
  c.index_of_label_.assign(m, -1);
  for (int i = 0; i < m; ++i) c.index_of_label_[c.labels_[i]] = i;
  return c;
}

Constellation BuildQam(int m) {
  if (m != 16 && m != 64 && m != 256) {
    throw ParameterError("BuildQam: unsupported order " + std::to_string(m));
  }
  Constellation c;
  c.kind_ = ModulationKind::kQam;
  c.order_ = m;
  c.bits_ = Log2Exact(m);
  c.name_ = std::to_string(m) + "qam";
  const int side = 1 << (c.bits_ / 2);
  const double norm = std::sqrt(2.0 * (m - 1) / 3.0);
  c.levels_.resize(side);
  for (int a = 0; a < side; ++a) c.levels_[a] = (2.0 * a - side + 1) / norm;
  c.spacing_ = 2.0 / norm;
  c.points_.resize(m);
  c.labels_.resize(m);
  const int half_bits = c.bits_ / 2;
  for (int re = 0; re < side; ++re) {
    for (int im = 0; im < side; ++im) {
      const int idx = re * side + im;
      c.points_[idx] = Complex(c.levels_[re], c.levels_[im]);
      c.labels_[idx] = (GrayEncode(re) << half_bits) | GrayEncode(im);
    }
  }
  c.index_of_label_.assign(m, -1);
  for (int i = 0; i < m; ++i) c.index_of_label_[c.labels_[i]] = i;
  return c;
}

Constellation ConstellationFromName(std::string_view name) {
  if (name == "bpsk") return BuildPsk(2);
  if (name == "qpsk") return BuildPsk(4);
  if (name == "8psk") return BuildPsk(8);
  if (name == "16psk") return BuildPsk(16);
  if (name == "16qam") return BuildQam(16);
  if (name == "64qam") return BuildQam(64);
  if (name == "256qam") return BuildQam(256);
  throw ParameterError("unknown constellation '" + std::string(name) + "'");
}

int Constellation::IndexOfLabel(std::uint32_t label) const {
  if (label >= static_cast<std::uint32_t>(order_)) {
    throw ParameterError("IndexOfLabel: label out of range");
  }
  return index_of_label_[label];
}

int IndexOfBits(std::span<const std::uint8_t> bits, const Constellation& c) {
  if (static_cast<int>(bits.size()) != c.bits_per_symbol()) {
    throw ParameterError("bit word length " + std::to_string(bits.size()) +
                         " does not match log2(M) = " +
                         std::to_string(c.bits_per_symbol()));
  }
  std::uint32_t label = 0;
  for (std::uint8_t b : bits) {
    if (b > 1) throw ParameterError("bit values must be 0 or 1");
    label = (label << 1) | b;
  }
  return c.IndexOfLabel(label);
}

Complex MapBits(std::span<const std::uint8_t> bits, const Constellation& c) {
  return c.point(IndexOfBits(bits, c));
}

std::vector<std::uint8_t> DemapIndex(int idx, const Constellation& c) {
  if (idx < 0 || idx >= c.order()) {
    throw ParameterError("DemapIndex: index out of range");
  }
  const std::uint32_t label = c.label(idx);
  const int nb = c.bits_per_symbol();
  std::vector<std::uint8_t> bits(nb);
  for (int b = 0; b < nb; ++b) bits[b] = (label >> (nb - 1 - b)) & 1U;
  return bits;
}

int Detect(Complex y, const Constellation& c) {
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  const auto pts = c.points();
  for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
    const double d = std::norm(y - pts[i]);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

double CoordinateLevel(int idx, Dimension dim, const Constellation& c) {
  if (!c.is_qam()) {
    throw UnsupportedError("coordinate levels are defined for QAM only");
  }
  const Complex p = c.point(idx);
  return dim == Dimension::kReal ? p.real() : p.imag();
}

CoordinateClass CoordinateClassOf(int idx, Dimension dim,
                                  const Constellation& c) {
  const double level = CoordinateLevel(idx, dim, c);
  // Levels are exact multiples of spacing/2; half a spacing separates them.
  return std::abs(level) > c.max_level() - 0.25 * c.level_spacing()
             ? CoordinateClass::kOuter
             : CoordinateClass::kInner;
}

}  // namespace onebit
