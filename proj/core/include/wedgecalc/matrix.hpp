#pragma once

#include <vector>

#include "wedgecalc/coeff.hpp"

namespace wedgecalc {

// Dense exact integer matrix.  Small sizes only (ranks through ~10), so the
// adjugate inverse and cofactor determinant are plenty.
class IntMat {
  public:
    IntMat() = default;
    IntMat(int rows, int cols) : r_(rows), c_(cols), a_(size_t(rows) * cols, 0) {}
    static IntMat identity(int k);

    int rows() const { return r_; }
    int cols() const { return c_; }
    Coeff& at(int i, int j) { return a_[size_t(i) * c_ + j]; }
    const Coeff& at(int i, int j) const { return a_[size_t(i) * c_ + j]; }

    bool is_identity() const;
    bool is_zero() const;

    friend bool operator==(const IntMat&, const IntMat&) = default;

  private:
    int r_ = 0, c_ = 0;
    std::vector<Coeff> a_;
};

IntMat mul(const IntMat& a, const IntMat& b);
IntMat add(const IntMat& a, const IntMat& b);
IntMat transpose(const IntMat& a);
Coeff det(const IntMat& a);

// Exact inverse of a square matrix with det = +-1 (adjugate / det).
// Throws PreconditionError otherwise, reporting the determinant.
IntMat unimodular_inverse(const IntMat& a);

// Invariant factors d_1 | d_2 | ... (nonnegative, zeros trailing) of the
// Smith normal form.  Complete invariant for Q*M*R^T equivalence over Z.
std::vector<Coeff> smith_invariants(IntMat a);

// Dense F_2 matrix.
class Mod2Mat {
  public:
    Mod2Mat() = default;
    Mod2Mat(int rows, int cols) : r_(rows), c_(cols), a_(size_t(rows) * cols, 0) {}
    static Mod2Mat identity(int k);

    int rows() const { return r_; }
    int cols() const { return c_; }
    unsigned char& at(int i, int j) { return a_[size_t(i) * c_ + j]; }
    unsigned char at(int i, int j) const { return a_[size_t(i) * c_ + j]; }

    bool is_zero() const;

    friend bool operator==(const Mod2Mat&, const Mod2Mat&) = default;

  private:
    int r_ = 0, c_ = 0;
    std::vector<unsigned char> a_;
};

Mod2Mat mul(const Mod2Mat& a, const Mod2Mat& b);
Mod2Mat add(const Mod2Mat& a, const Mod2Mat& b);

// Inverse over F_2 by Gauss-Jordan.  Throws PreconditionError if singular.
Mod2Mat inverse_mod2(const Mod2Mat& a);

Mod2Mat reduce_mod2(const IntMat& a);

} // namespace wedgecalc
