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

#ifndef ONEBIT_MODEM_H_
#define ONEBIT_MODEM_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "onebit/model.h"

namespace onebit {

enum class ModulationKind { kPsk, kQam };
enum class Dimension { kReal, kImag };
enum class CoordinateClass { kInner, kOuter };

// Immutable unit-energy constellation with Gray labels.
//
// PSK (M >= 4): symbol index i sits at exp(j(2i+1)pi/M) and carries the
// label gray(i), so QPSK decision boundaries are the coordinate axes.
// BPSK: {+1, -1}. Square QAM: index = a_re * L + a_im over per-dimension
// level indices a in [0, L); level a has amplitude (2a - L + 1) / norm and
// the label concatenates gray(a_re) (high bits) with gray(a_im).
class Constellation {
 public:
  ModulationKind kind() const { return kind_; }
  int order() const { return order_; }
  int bits_per_symbol() const { return bits_; }
  const std::string& name() const { return name_; }
  std::span<const Complex> points() const { return points_; }
  Complex point(int idx) const { return points_.at(idx); }
  std::uint32_t label(int idx) const { return labels_.at(idx); }
  int IndexOfLabel(std::uint32_t label) const;

  // QAM only: sorted per-dimension amplitudes, spacing between adjacent
  // levels, and the largest level.
  std::span<const double> levels() const { return levels_; }
  double level_spacing() const { return spacing_; }
  double max_level() const { return levels_.empty() ? 0.0 : levels_.back(); }
  int levels_per_dim() const { return static_cast<int>(levels_.size()); }

  bool is_psk() const { return kind_ == ModulationKind::kPsk; }
  bool is_qam() const { return kind_ == ModulationKind::kQam; }

 private:
  friend Constellation BuildPsk(int m);
  friend Constellation BuildQam(int m);

  ModulationKind kind_ = ModulationKind::kPsk;
  int order_ = 0;
  int bits_ = 0;
  std::string name_;
  std::vector<Complex> points_;
  std::vector<std::uint32_t> labels_;
  std::vector<int> index_of_label_;
  std::vector<double> levels_;
  double spacing_ = 0.0;
};

Constellation BuildPsk(int m);
Constellation BuildQam(int m);
// bpsk, qpsk, 8psk, 16psk, 16qam, 64qam, 256qam.
Constellation ConstellationFromName(std::string_view name);

std::uint32_t GrayEncode(std::uint32_t v);

// bits are MSB first, one 0/1 byte per bit, length log2(M).
Complex MapBits(std::span<const std::uint8_t> bits, const Constellation& c);
int IndexOfBits(std::span<const std::uint8_t> bits, const Constellation& c);
std::vector<std::uint8_t> DemapIndex(int idx, const Constellation& c);

// Minimum-distance detection; ties go to the smallest index.
int Detect(Complex y, const Constellation& c);

// Per-dimension level of a QAM symbol (signed amplitude).
double CoordinateLevel(int idx, Dimension dim, const Constellation& c);
CoordinateClass CoordinateClassOf(int idx, Dimension dim,
                                  const Constellation& c);

}  // namespace onebit

#endif  // ONEBIT_MODEM_H_
