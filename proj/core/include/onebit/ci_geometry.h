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

// Constructive-interference geometry: symbol-scaling decomposition along
// PSK decision boundaries, safety margins, interference classification and
// the per-dimension QAM constraint structure.

#ifndef ONEBIT_CI_GEOMETRY_H_
#define ONEBIT_CI_GEOMETRY_H_

#include <optional>
#include <span>
#include <vector>

#include "onebit/model.h"
#include "onebit/modem.h"

namespace onebit {

// The two decision-boundary directions adjacent to an M-PSK symbol s:
// s_a = s e^{+j pi/M}, s_b = s e^{-j pi/M}.
struct BoundaryDirs {
  Complex s_a;
  Complex s_b;
};

// z = alpha_a * s_a + alpha_b * s_b.
struct CiDecomposition {
  double alpha_a = 0.0;
  double alpha_b = 0.0;
};

enum class InterferenceKind { kConstructive, kDestructive, kNeutral };

// Throws UnsupportedError for m == 2 (use BpskMargin).
BoundaryDirs BoundaryDirections(Complex s, int m);
CiDecomposition Decompose(Complex z, Complex s, int m);

// min(alpha_a, alpha_b) for m >= 4, BpskMargin for m == 2.
double PskMargin(Complex z, Complex s, int m);
// Re(z conj(s)): signed distance from the imaginary axis toward s.
double BpskMargin(Complex z, Complex s);

// Margin comparison of desired vs desired + interf with a +-1e-12 neutral
// band. QAM margins are evaluated at receiver scale 1.
InterferenceKind ClassifyInterference(Complex desired, Complex interf,
                                      int symbol, const Constellation& c);

// One row per (user, dimension), users in order, Real before Imag.
struct QamConstraint {
  int user = 0;
  Dimension dim = Dimension::kReal;
  double level = 0.0;
  CoordinateClass cls = CoordinateClass::kInner;
};

struct QamConstraintSpec {
  std::vector<QamConstraint> rows;
};

QamConstraintSpec QamConstraints(std::span<const int> symbols,
                                 const Constellation& c);

// Margin of one QAM coordinate in received units for receiver scale beta:
// Outer  sign(c) r - beta (|c| - spacing/2)
// Inner  beta spacing/2 - |r - beta c|
// Dividing by beta gives the margin of the scaled coordinate u = r / beta.
double QamDimMargin(double r, const QamConstraint& target, double beta,
                    double spacing);

struct ScaledMargin {
  double beta = 1.0;
  double margin = 0.0;  // received units
};

// Receiver scale maximizing min_d QamDimMargin(r_d, beta) (a concave
// piecewise-linear function of beta) by golden-section search.
ScaledMargin BestReceiverScale(std::span<const double> received,
                               std::span<const QamConstraint> targets,
                               double spacing);

struct MarginReport {
  std::vector<double> per_user_margins;
  double global_margin = 0.0;
  double receiver_scale = 1.0;

  // Global margin in received-signal units. For PSK margins already are;
  // for QAM this is receiver_scale * global_margin.
  double received_margin = 0.0;
};

// PSK: per-user PskMargin of h_k x, receiver scale ignored.
// QAM: per-user min of the scaled-coordinate margins at receiver scale beta,
// or at the best scale when beta is nullopt.
MarginReport ComputeMarginReport(const ComplexMatrix& h,
                                 const ComplexVector& x,
                                 std::span<const int> symbols,
                                 const Constellation& c,
                                 std::optional<double> beta = std::nullopt);

// Real linear functionals whose minimum is the PSK margin of the stacked
// transmit vector: margin(x) = min_i (coeffs * RealStack(x))_i. Two rows per
// user for M >= 4 (alpha_a then alpha_b), one for BPSK.
struct CiRows {
  RealMatrix coeffs;
  std::vector<int> user;
};

CiRows BuildPskCiRows(const ComplexMatrix& h, std::span<const int> symbols,
                      const Constellation& c);

}  // namespace onebit

#endif  // ONEBIT_CI_GEOMETRY_H_
