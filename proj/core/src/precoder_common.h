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

#ifndef ONEBIT_SRC_PRECODER_COMMON_H_
#define ONEBIT_SRC_PRECODER_COMMON_H_

#include "onebit/precoders.h"

namespace onebit::internal {

enum class ReceiverScaleRule {
  kBestScale,     // CI precoders: refit on the quantized vector
  kLeastSquares,  // MSE precoders: LS fit of H q onto s
};

void ValidateInput(const PrecoderInput& in);
ComplexVector SymbolVector(const PrecoderInput& in);

// Scales a stacked +-1 vector by g and fills margin/receiver fields.
PrecodeOutcome FinishOneBit(const PrecoderInput& in, const RealVector& q,
                            ReceiverScaleRule rule);

}  // namespace onebit::internal

#endif  // ONEBIT_SRC_PRECODER_COMMON_H_
