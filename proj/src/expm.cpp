#include "sshlab/expm.hpp"

#include <array>
#include <cmath>

#include "sshlab/error.hpp"

namespace sshlab {
namespace {

// 1-norm bounds below which degree m keeps the backward error under 2^-53.
constexpr std::array<double, 5> kTheta = {1.495585217958292e-2, 2.539398330063230e-1,
                                          9.504178996162932e-1, 2.097847961257068e0,
                                          5.371920351148152e0};

constexpr std::array<double, 4> kPade3 = {120.0, 60.0, 12.0, 1.0};
constexpr std::array<double, 6> kPade5 = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
constexpr std::array<double, 8> kPade7 = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                                          25200.0,    1512.0,    56.0,      1.0};
constexpr std::array<double, 10> kPade9 = {17643225600.0, 8821612800.0, 2075673600.0, 302702400.0,
                                           30270240.0,    2162160.0,    110880.0,     3960.0,
                                           90.0,          1.0};
constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};

double one_norm(const ComplexMatrix& a) { return a.cwiseAbs().colwise().sum().maxCoeff(); }

// U holds the odd part, V the even part: r_m(A) = (V - U)^{-1} (V + U).
template <std::size_t N>
void pade_low(const ComplexMatrix& a, const std::array<double, N>& b, ComplexMatrix& u,
              ComplexMatrix& v) {
  const auto n = a.rows();
  const ComplexMatrix ident = ComplexMatrix::Identity(n, n);
  const ComplexMatrix a2 = a * a;
  ComplexMatrix power = ident;
  ComplexMatrix odd = b[1] * ident;
  v = b[0] * ident;
  for (std::size_t k = 2; k < N; k += 2) {
    power = power * a2;
    v += b[k] * power;
    if (k + 1 < N) odd += b[k + 1] * power;
  }
  u.noalias() = a * odd;
}

void pade13(const ComplexMatrix& a, ComplexMatrix& u, ComplexMatrix& v) {
  const auto& b = kPade13;
  const auto n = a.rows();
  const ComplexMatrix ident = ComplexMatrix::Identity(n, n);
  const ComplexMatrix a2 = a * a;
  const ComplexMatrix a4 = a2 * a2;
  const ComplexMatrix a6 = a4 * a2;
  const ComplexMatrix odd_hi = b[13] * a6 + b[11] * a4 + b[9] * a2;
  const ComplexMatrix odd = a6 * odd_hi + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident;
  u.noalias() = a * odd;
  const ComplexMatrix even_hi = b[12] * a6 + b[10] * a4 + b[8] * a2;
  v = a6 * even_hi + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident;
}

}  // namespace

ComplexMatrix expm(const ComplexMatrix& a, ExpmInfo* info) {
  if (a.rows() != a.cols()) throw ValidationError("expm: matrix is not square");
  if (!a.allFinite()) throw ValidationError("expm: matrix has non-finite entries");
  const auto n = a.rows();
  if (n == 0) return a;

  const double norm = one_norm(a);
  ComplexMatrix u(n, n);
  ComplexMatrix v(n, n);
  int degree = 13;
  int squarings = 0;

  if (norm <= kTheta[0]) {
    degree = 3;
    pade_low(a, kPade3, u, v);
  } else if (norm <= kTheta[1]) {
    degree = 5;
    pade_low(a, kPade5, u, v);
  } else if (norm <= kTheta[2]) {
    degree = 7;
    pade_low(a, kPade7, u, v);
  } else if (norm <= kTheta[3]) {
    degree = 9;
    pade_low(a, kPade9, u, v);
  } else {
    if (norm > kTheta[4]) {
      squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm / kTheta[4]))));
    }
    pade13(a / std::ldexp(1.0, squarings), u, v);
  }

  ComplexMatrix result = (v - u).partialPivLu().solve(v + u);
  for (int s = 0; s < squarings; ++s) result = result * result;

  if (info != nullptr) *info = {degree, squarings};
  return result;
}

}  // namespace sshlab
