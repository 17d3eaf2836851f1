#include "qds/state_id.hpp"

#include <cmath>
#include <mutex>
#include <optional>
#include <stdexcept>

namespace qds {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

void check_copies(int n) {
  if (n < 1 || n > kMaxCopiesExact)
    throw std::invalid_argument("copy count n must be in [1, 64]");
}

/// exp(i * m * pi / 2) for integer m, exact on the axes.
std::complex<double> quarter_phase(int m) {
  switch (((m % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

long double sqrt_big(BigUInt v) {
  // Values up to 2^64 convert to long double exactly (64-bit mantissa).
  return sqrtl(static_cast<long double>(v));
}

double gaussian(Rng& rng) {
  // Box-Muller; the discarded second variate keeps the stream simple.
  double u1 = rng.next_double();
  while (u1 <= 0.0) u1 = rng.next_double();
  const double u2 = rng.next_double();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * 3.14159265358979323846 * u2);
}

}  // namespace

BigUInt alpha(int j, int n) {
  check_copies(n);
  if (j < 0 || j > 3) throw std::invalid_argument("alpha: j must be in Z_4");
  BigUInt sum = 0;
  BigUInt binom = 1;  // C(n, 0)
  for (int k = 0; k <= n; ++k) {
    if (k % 4 == j) sum += binom;
    binom = binom * BigUInt(n - k) / BigUInt(k + 1);
  }
  return sum;
}

std::array<BigUInt, 4> alphas(int n) {
  return {alpha(0, n), alpha(1, n), alpha(2, n), alpha(3, n)};
}

std::array<bool, 4> support_mask(int n) {
  const auto a = alphas(n);
  return {a[0] > 0, a[1] > 0, a[2] > 0, a[3] > 0};
}

int label_phase_index(Bb84Label label) {
  switch (label) {
    case Bb84Label::Zero: return 0;
    case Bb84Label::Plus: return 1;
    case Bb84Label::One: return 2;
    default: return 3;
  }
}

Bb84Label label_from_phase_index(int x) {
  switch (((x % 4) + 4) % 4) {
    case 0: return Bb84Label::Zero;
    case 1: return Bb84Label::Plus;
    case 2: return Bb84Label::One;
    default: return Bb84Label::Minus;
  }
}

Vec4 f_state(int x, int n) {
  const auto a = alphas(n);
  Vec4 v = Vec4::Zero();
  for (int j = 0; j < 4; ++j) {
    if (a[j] == 0) continue;
    const double mag =
        static_cast<double>(sqrt_big(a[j]) / powl(2.0L, 0.5L * n));
    v(j) = mag * quarter_phase(j * x);
  }
  return v;
}

Mat4 rep_unitary(int x, int n) {
  check_copies(n);
  Mat4 u = Mat4::Zero();
  for (int j = 0; j < 4; ++j) u(j, j) = quarter_phase(j * x);
  return u;
}

double risk(int x, int xhat) {
  switch ((((x - xhat) % 4) + 4) % 4) {
    case 0: return 0.0;
    case 2: return 1.0;
    default: return 0.5;
  }
}

std::array<Mat4, 4> covariant_povm(const Mat4& seed, int n) {
  check_copies(n);
  std::array<Mat4, 4> povm;
  for (int xhat = 0; xhat < 4; ++xhat) {
    const Mat4 u = rep_unitary(xhat, n);
    povm[xhat] = u * seed * u.adjoint();
  }
  return povm;
}

std::array<Mat4, 4> optimal_povm(int n) {
  const auto supp = support_mask(n);
  Mat4 seed = Mat4::Zero();
  for (int j = 0; j < 4; ++j)
    for (int jp = 0; jp < 4; ++jp)
      if (supp[j] && supp[jp]) seed(j, jp) = 0.25;
  return covariant_povm(seed, n);
}

Mat4 random_covariant_seed(int n, Rng& rng) {
  const auto supp = support_mask(n);
  int dim = 0;
  for (bool s : supp) dim += s;
  while (true) {
    Mat4 g = Mat4::Zero();
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < dim; ++c)
        g(r, c) = std::complex<double>(gaussian(rng), gaussian(rng));
    Mat4 gram = g * g.adjoint();
    bool ok = true;
    for (int j = 0; j < 4; ++j)
      if (supp[j] && gram(j, j).real() < 1e-9) ok = false;
    if (!ok) continue;
    // Rescale rows/columns so the supported diagonal is exactly 1/4; this
    // is a congruence, so positivity and |off-diagonal| <= diagonal bound
    // are preserved.
    Mat4 seed = Mat4::Zero();
    for (int j = 0; j < 4; ++j) {
      if (!supp[j]) continue;
      for (int jp = 0; jp < 4; ++jp) {
        if (!supp[jp]) continue;
        seed(j, jp) = gram(j, jp) / (4.0 * std::sqrt(gram(j, j).real() *
                                                     gram(jp, jp).real()));
      }
      seed(j, j) = 0.25;
    }
    return seed;
  }
}

double average_risk(const std::array<Mat4, 4>& povm, int n) {
  check_copies(n);
  const auto supp = support_mask(n);
  Mat4 sum = Mat4::Zero();
  for (const Mat4& elem : povm) {
    if ((elem - Mat4(elem.adjoint())).cwiseAbs().maxCoeff() > 1e-9)
      throw std::invalid_argument("average_risk: element not Hermitian");
    Eigen::SelfAdjointEigenSolver<Mat4> es(elem, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-9)
      throw std::invalid_argument("average_risk: element not PSD");
    sum += elem;
  }
  Mat4 projector = Mat4::Zero();
  for (int j = 0; j < 4; ++j)
    if (supp[j]) projector(j, j) = 1.0;
  if ((sum - projector).cwiseAbs().maxCoeff() > 1e-9)
    throw std::invalid_argument("average_risk: POVM not complete");

  double total = 0.0;
  for (int x = 0; x < 4; ++x) {
    const Vec4 state = f_state(x, n);
    for (int xhat = 0; xhat < 4; ++xhat) {
      const double p = std::real(state.dot(povm[xhat] * state));
      total += 0.25 * risk(x, xhat) * p;
    }
  }
  return total;
}

double min_risk_closed_form(int n) {
  const auto a = alphas(n);
  long double sum = 0.0L;
  for (int j = 0; j < 4; ++j) {
    const long double d = sqrt_big(a[j]) - sqrt_big(a[(j + 1) % 4]);
    sum += d * d;
  }
  return static_cast<double>(sum / powl(2.0L, n + 2));
}

double f_bound(int n) {
  if (n == 0) return 0.5;
  return static_cast<double>(1.0L -
                             static_cast<long double>(min_risk_closed_form(n)));
}

std::array<std::array<double, 4>, 4> outcome_distribution(int n) {
  const auto povm = optimal_povm(n);
  std::array<std::array<double, 4>, 4> p{};
  for (int x = 0; x < 4; ++x) {
    const Vec4 state = f_state(x, n);
    double row = 0.0;
    for (int xhat = 0; xhat < 4; ++xhat) {
      double v = std::real(state.dot(povm[xhat] * state));
      if (v < 0.0) v = 0.0;
      p[x][xhat] = v;
      row += v;
    }
    for (int xhat = 0; xhat < 4; ++xhat) p[x][xhat] /= row;
  }
  return p;
}

namespace {

/// Cached outcome tables; the POVM for each n is fixed, and Monte Carlo
/// runs draw millions of samples.
const std::array<std::array<double, 4>, 4>& cached_distribution(int n) {
  static std::mutex mu;
  static std::array<std::optional<std::array<std::array<double, 4>, 4>>,
                    kMaxCopiesExact + 1>
      cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache.at(n);
  if (!slot) slot = outcome_distribution(n);
  return *slot;
}

}  // namespace

int sample_estimate(int x_true, int n, Rng& rng) {
  const auto& dist = cached_distribution(n);
  const double u = rng.next_double();
  double cum = 0.0;
  for (int xhat = 0; xhat < 4; ++xhat) {
    cum += dist[((x_true % 4) + 4) % 4][xhat];
    if (u < cum) return xhat;
  }
  return 3;
}

std::vector<std::complex<double>> symmetric_expansion(int x, int n) {
  check_copies(n);
  std::vector<std::complex<double>> coeffs(n + 1);
  BigUInt binom = 1;
  for (int k = 0; k <= n; ++k) {
    const double mag =
        static_cast<double>(sqrt_big(binom) / powl(2.0L, 0.5L * n));
    coeffs[k] = mag * quarter_phase(k * x);
    binom = binom * BigUInt(n - k) / BigUInt(k + 1);
  }
  return coeffs;
}

}  // namespace qds
