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

#include "onebit/ci_geometry.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "onebit/errors.h"

namespace onebit {
namespace {

constexpr double kNeutralBand = 1e-12;
constexpr int kGoldenIterations = 60;

void CheckUnit(Complex s) {
  if (std::abs(std::abs(s) - 1.0) > 1e-9) {
    throw ParameterError("PSK symbol must have unit modulus");
  }
}

double ClassifyMargin(Complex z, int symbol, const Constellation& c) {
  const Complex s = c.point(symbol);
  if (c.is_psk()) return PskMargin(z, s, c.order());
  const QamConstraint re{0, Dimension::kReal, s.real(),
                         CoordinateClassOf(symbol, Dimension::kReal, c)};
  const QamConstraint im{0, Dimension::kImag, s.imag(),
                         CoordinateClassOf(symbol, Dimension::kImag, c)};
  return std::min(QamDimMargin(z.real(), re, 1.0, c.level_spacing()),
                  QamDimMargin(z.imag(), im, 1.0, c.level_spacing()));
}

}  // namespace

BoundaryDirs BoundaryDirections(Complex s, int m) {
  if (m == 2) {
    throw UnsupportedError(
        "BPSK has a single decision boundary; use BpskMargin");
  }
  if (m < 4) throw ParameterError("BoundaryDirections: m must be >= 4");
  CheckUnit(s);
  const double half = std::numbers::pi / m;
  return {s * std::polar(1.0, half), s * std::polar(1.0, -half)};
}

CiDecomposition Decompose(Complex z, Complex s, int m) {
  const BoundaryDirs d = BoundaryDirections(s, m);
  // Cramer's rule on [Re s_a, Re s_b; Im s_a, Im s_b] [a; b] = [Re z; Im z].
  const double det = d.s_a.real() * d.s_b.imag() - d.s_b.real() * d.s_a.imag();
  return {(z.real() * d.s_b.imag() - d.s_b.real() * z.imag()) / det,
          (d.s_a.real() * z.imag() - z.real() * d.s_a.imag()) / det};
}

double BpskMargin(Complex z, Complex s) {
  return z.real() * s.real() + z.imag() * s.imag();
}

double PskMargin(Complex z, Complex s, int m) {
  if (m == 2) return BpskMargin(z, s);
  const CiDecomposition d = Decompose(z, s, m);
  return std::min(d.alpha_a, d.alpha_b);
}

InterferenceKind ClassifyInterference(Complex desired, Complex interf,
                                      int symbol, const Constellation& c) {
  const double base = ClassifyMargin(desired, symbol, c);
  const double with = ClassifyMargin(desired + interf, symbol, c);
  if (with > base + kNeutralBand) return InterferenceKind::kConstructive;
  if (with < base - kNeutralBand) return InterferenceKind::kDestructive;
  return InterferenceKind::kNeutral;
}

QamConstraintSpec QamConstraints(std::span<const int> symbols,
                                 const Constellation& c) {
  if (!c.is_qam()) {
    throw UnsupportedError("QamConstraints requires a QAM constellation");
  }
  QamConstraintSpec spec;
  spec.rows.reserve(2 * symbols.size());
  for (int k = 0; k < static_cast<int>(symbols.size()); ++k) {
    for (Dimension dim : {Dimension::kReal, Dimension::kImag}) {
      spec.rows.push_back({k, dim, CoordinateLevel(symbols[k], dim, c),
                           CoordinateClassOf(symbols[k], dim, c)});
    }
  }
  return spec;
}

double QamDimMargin(double r, const QamConstraint& target, double beta,
                    double spacing) {
  const double c = target.level;
  if (target.cls == CoordinateClass::kOuter) {
    const double sign = c >= 0.0 ? 1.0 : -1.0;
    return sign * r - beta * (std::abs(c) - 0.5 * spacing);
  }
  return beta * 0.5 * spacing - std::abs(r - beta * c);
}

ScaledMargin BestReceiverScale(std::span<const double> received,
                               std::span<const QamConstraint> targets,
                               double spacing) {
  if (received.size() != targets.size()) {
    throw DimensionError("BestReceiverScale: size mismatch");
  }
  auto score = [&](double beta) {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t d = 0; d < received.size(); ++d) {
      m = std::min(m, QamDimMargin(received[d], targets[d], beta, spacing));
    }
    return m;
  };
  double rmax = 0.0;
  for (double r : received) rmax = std::max(rmax, std::abs(r));
  if (rmax == 0.0) return {1.0, score(1.0)};

  // Every kink of the piecewise-linear score lies at beta <= 2 rmax/spacing;
  // beyond it the score is non-increasing.
  double hi = 1.25 * 2.0 * rmax / spacing;
  double lo = hi * 1e-12;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo + (1.0 - inv_phi) * (hi - lo);
  double b = lo + inv_phi * (hi - lo);
  double fa = score(a);
  double fb = score(b);
  for (int it = 0; it < kGoldenIterations; ++it) {
    if (fa < fb) {
      lo = a;
      a = b;
      fa = fb;
      b = lo + inv_phi * (hi - lo);
      fb = score(b);
    } else {
      hi = b;
      b = a;
      fb = fa;
      a = lo + (1.0 - inv_phi) * (hi - lo);
      fa = score(a);
    }
  }
  ScaledMargin best = fa >= fb ? ScaledMargin{a, fa} : ScaledMargin{b, fb};
  for (double end : {lo, hi}) {
    const double f = score(end);
    if (f > best.margin) best = {end, f};
  }
  return best;
}

MarginReport ComputeMarginReport(const ComplexMatrix& h,
                                 const ComplexVector& x,
                                 std::span<const int> symbols,
                                 const Constellation& c,
                                 std::optional<double> beta) {
  if (h.cols() != x.size() || h.rows() != static_cast<Eigen::Index>(symbols.size())) {
    throw DimensionError("ComputeMarginReport: inconsistent dimensions");
  }
  if (beta && !(*beta > 0.0)) {
    throw ParameterError("receiver scale must be positive");
  }
  for (const int s : symbols) {
    if (s < 0 || s >= c.order()) {
      throw ParameterError("ComputeMarginReport: symbol index out of range");
    }
  }
  const int k = static_cast<int>(h.rows());
  const ComplexVector r = h * x;
  MarginReport rep;
  rep.per_user_margins.resize(k);
  if (c.is_psk()) {
    for (int u = 0; u < k; ++u) {
      rep.per_user_margins[u] = PskMargin(r(u), c.point(symbols[u]), c.order());
    }
    rep.global_margin =
        *std::min_element(rep.per_user_margins.begin(), rep.per_user_margins.end());
    rep.received_margin = rep.global_margin;
    rep.receiver_scale = beta.value_or(1.0);
    return rep;
  }

  const QamConstraintSpec spec = QamConstraints(symbols, c);
  std::vector<double> dims(spec.rows.size());
  for (std::size_t d = 0; d < spec.rows.size(); ++d) {
    const Complex ru = r(spec.rows[d].user);
    dims[d] = spec.rows[d].dim == Dimension::kReal ? ru.real() : ru.imag();
  }
  const double b =
      beta ? *beta : BestReceiverScale(dims, spec.rows, c.level_spacing()).beta;
  std::fill(rep.per_user_margins.begin(), rep.per_user_margins.end(),
            std::numeric_limits<double>::infinity());
  for (std::size_t d = 0; d < spec.rows.size(); ++d) {
    const double m =
        QamDimMargin(dims[d], spec.rows[d], b, c.level_spacing()) / b;
    double& slot = rep.per_user_margins[spec.rows[d].user];
    slot = std::min(slot, m);
  }
  rep.global_margin =
      *std::min_element(rep.per_user_margins.begin(), rep.per_user_margins.end());
  rep.receiver_scale = b;
  rep.received_margin = b * rep.global_margin;
  return rep;
}

CiRows BuildPskCiRows(const ComplexMatrix& h, std::span<const int> symbols,
                      const Constellation& c) {
  if (!c.is_psk()) throw UnsupportedError("BuildPskCiRows requires PSK");
  const int k = static_cast<int>(h.rows());
  const int n = static_cast<int>(h.cols());
  if (static_cast<int>(symbols.size()) != k) {
    throw DimensionError("BuildPskCiRows: one symbol per user required");
  }
  const int per_user = c.order() == 2 ? 1 : 2;
  CiRows rows;
  rows.coeffs.resize(per_user * k, 2 * n);
  rows.user.resize(per_user * k);
  // Re r = [Re h, -Im h] x~, Im r = [Im h, Re h] x~; each functional
  // (a, b) acts on (Re r, Im r).
  auto put = [&](int row, int user, double a, double b) {
    rows.user[row] = user;
    for (int j = 0; j < n; ++j) {
      const Complex hj = h(user, j);
      rows.coeffs(row, j) = a * hj.real() + b * hj.imag();
      rows.coeffs(row, n + j) = -a * hj.imag() + b * hj.real();
    }
  };
  for (int u = 0; u < k; ++u) {
    const Complex s = c.point(symbols[u]);
    if (per_user == 1) {
      put(u, u, s.real(), s.imag());
      continue;
    }
    const BoundaryDirs d = BoundaryDirections(s, c.order());
    const double det =
        d.s_a.real() * d.s_b.imag() - d.s_b.real() * d.s_a.imag();
    put(2 * u, u, d.s_b.imag() / det, -d.s_b.real() / det);
    put(2 * u + 1, u, -d.s_a.imag() / det, d.s_a.real() / det);
  }
  return rows;
}

}  // namespace onebit
