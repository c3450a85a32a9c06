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

#ifndef ONEBIT_REPORT_H_
#define ONEBIT_REPORT_H_

#include <string>

#include "onebit/sim.h"

namespace onebit {

// snr_db,precoder,bits,bit_errors,ber,avg_margin,avg_mults,wallclock_ms
std::string FormatCsv(const BerCurves& curves);
std::string FormatJson(const BerCurves& curves);
// 800x600 SVG, log10 BER vs SNR, one polyline per precoder.
std::string FormatSvgPlot(const BerCurves& curves);

// Throw IoError when the path cannot be written.
void EmitCsv(const BerCurves& curves, const std::string& path);
void EmitJson(const BerCurves& curves, const std::string& path);
void EmitPlot(const BerCurves& curves, const std::string& path);

}  // namespace onebit

#endif  // ONEBIT_REPORT_H_
