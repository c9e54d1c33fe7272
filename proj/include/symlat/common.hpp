#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace symlat {

using Int = mpz_class;
using Rat = mpq_class;

// Error taxonomy. Each named condition from the public contracts gets its
// own type so callers can distinguish them; all derive from Error.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct BadU : Error {
  explicit BadU(const std::string& m = "u must have order exactly 2") : Error(m) {}
};
struct OddOrder : Error {
  explicit OddOrder(const std::string& m = "group order must be even") : Error(m) {}
};
struct KindMismatch : Error {
  explicit KindMismatch(const std::string& m = "mixed scalar kinds") : Error(m) {}
};
struct NotAUnitError : Error {
  explicit NotAUnitError(const std::string& m = "element is not a unit") : Error(m) {}
};
struct NotPositiveDefinite : Error {
  explicit NotPositiveDefinite(const std::string& m = "Gram matrix is not positive definite") : Error(m) {}
};
struct ModulusTooSmall : Error {
  explicit ModulusTooSmall(const std::string& m = "modulus below coset-uniqueness threshold") : Error(m) {}
};
struct FactorTooLarge : Error {
  explicit FactorTooLarge(const std::string& m = "trial division bound exceeded") : Error(m) {}
};
struct NotInvertible : Error {
  explicit NotInvertible(const std::string& m = "G-lattice is not invertible") : Error(m) {}
};
struct NotIntegral : Error {
  explicit NotIntegral(const std::string& m = "ideal Gram form is not integer-valued") : Error(m) {}
};
struct NotPositive : Error {
  explicit NotPositive(const std::string& m = "ideal Gram form is not positive definite") : Error(m) {}
};
struct HypothesisFailed : Error {
  explicit HypothesisFailed(const std::string& m = "arithmetic hypothesis violated") : Error(m) {}
};
struct NuNotShort : Error {
  explicit NuNotShort(const std::string& m = "nu is not a short vector") : Error(m) {}
};
struct BadInput : Error {
  explicit BadInput(const std::string& m = "bad input") : Error(m) {}
};
struct DegenerateV : Error {
  explicit DegenerateV(const std::string& m = "could not sample a unit v") : Error(m) {}
};
struct InternalCheckFailed : Error {
  explicit InternalCheckFailed(const std::string& m = "internal certificate check failed") : Error(m) {}
};

// Dense matrix over an exact scalar (Int or Rat).
template <class T>
class Mat {
 public:
  Mat() = default;
  Mat(int r, int c) : r_(r), c_(c), a_(static_cast<size_t>(r) * c) {}

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  int rows() const { return r_; }
  int cols() const { return c_; }

  T& operator()(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
  const T& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

  bool operator==(const Mat& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
  bool operator!=(const Mat& o) const { return !(*this == o); }

  Mat operator*(const Mat& o) const {
    Mat out(r_, o.c_);
    for (int i = 0; i < r_; ++i)
      for (int l = 0; l < c_; ++l) {
        const T& x = (*this)(i, l);
        if (x == 0) continue;
        for (int j = 0; j < o.c_; ++j) out(i, j) += x * o(l, j);
      }
    return out;
  }
  std::vector<T> operator*(const std::vector<T>& v) const {
    std::vector<T> out(r_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }
  Mat operator+(const Mat& o) const {
    Mat out(r_, c_);
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] + o.a_[i];
    return out;
  }
  Mat operator-(const Mat& o) const {
    Mat out(r_, c_);
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] - o.a_[i];
    return out;
  }
  Mat operator-() const {
    Mat out(r_, c_);
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = -a_[i];
    return out;
  }

 private:
  int r_ = 0, c_ = 0;
  std::vector<T> a_;
};

using MatZ = Mat<Int>;
using MatQ = Mat<Rat>;

template <class T>
Mat<T> transpose(const Mat<T>& m) {
  Mat<T> out(m.cols(), m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(j, i) = m(i, j);
  return out;
}

inline MatQ to_rational(const MatZ& m) {
  MatQ out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = Rat(m(i, j));
  return out;
}

inline bool is_integral(const Rat& q) { return q.get_den() == 1; }

// Nearest integer; exact half rounds toward the smaller integer.
inline Int round_nearest(const Rat& q) {
  Int fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  Rat frac = q - Rat(fl);
  if (2 * frac > 1) return fl + 1;
  return fl;
}

// Canonical representative in [0, m).
inline Int mod_reduce(const Int& a, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline Int mod_inverse(const Int& a, const Int& m) {
  Int r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw NotAUnitError("no inverse mod m");
  return r;
}

}  // namespace symlat
