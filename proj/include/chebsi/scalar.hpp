#pragma once

#include <complex>
#include <type_traits>

namespace chebsi {

// The library is instantiated for binary64 and complex binary64 only.
template <typename T>
concept Scalar =
    std::is_same_v<T, double> || std::is_same_v<T, std::complex<double>>;

template <Scalar T>
struct scalar_traits {
  using real_type = double;
  static constexpr bool is_complex = !std::is_same_v<T, double>;
};

template <Scalar T>
inline constexpr bool is_complex_v = scalar_traits<T>::is_complex;

// Unit roundoff of binary64.
inline constexpr double kUnitRoundoff = 0x1p-53;

inline double conj_if(double x) { return x; }
inline std::complex<double> conj_if(const std::complex<double>& x) {
  return std::conj(x);
}

inline double real_part(double x) { return x; }
inline double real_part(const std::complex<double>& x) { return x.real(); }

inline double abs_sq(double x) { return x * x; }
inline double abs_sq(const std::complex<double>& x) {
  return x.real() * x.real() + x.imag() * x.imag();
}

}  // namespace chebsi
