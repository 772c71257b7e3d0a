#include "wedgecalc/matrix.hpp"

#include <algorithm>
#include <string>

#include "wedgecalc/errors.hpp"

namespace wedgecalc {

IntMat IntMat::identity(int k) {
    IntMat m(k, k);
    for (int i = 0; i < k; ++i) m.at(i, i) = 1;
    return m;
}

bool IntMat::is_identity() const {
    if (r_ != c_) return false;
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j)
            if (at(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

bool IntMat::is_zero() const {
    for (const auto& x : a_)
        if (x != 0) return false;
    return true;
}

IntMat mul(const IntMat& a, const IntMat& b) {
    if (a.cols() != b.rows()) throw PreconditionError("matrix product shape mismatch");
    IntMat out(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const Coeff& aik = a.at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < b.cols(); ++j) out.at(i, j) += aik * b.at(k, j);
        }
    return out;
}

IntMat add(const IntMat& a, const IntMat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw PreconditionError("matrix sum shape mismatch");
    IntMat out(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out.at(i, j) = a.at(i, j) + b.at(i, j);
    return out;
}

IntMat transpose(const IntMat& a) {
    IntMat out(a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out.at(j, i) = a.at(i, j);
    return out;
}

namespace {

// Bareiss fraction-free elimination: exact determinant without rationals.
Coeff det_bareiss(IntMat m) {
    const int k = m.rows();
    if (k == 0) return 1;
    Coeff sign = 1, prev = 1;
    for (int p = 0; p < k - 1; ++p) {
        if (m.at(p, p) == 0) {
            int q = p + 1;
            while (q < k && m.at(q, p) == 0) ++q;
            if (q == k) return 0;
            for (int j = 0; j < k; ++j) std::swap(m.at(p, j), m.at(q, j));
            sign = -sign;
        }
        for (int i = p + 1; i < k; ++i)
            for (int j = p + 1; j < k; ++j)
                m.at(i, j) = (m.at(p, p) * m.at(i, j) - m.at(i, p) * m.at(p, j)) / prev;
        prev = m.at(p, p);
    }
    return sign * m.at(k - 1, k - 1);
}

Coeff minor_det(const IntMat& a, int skip_row, int skip_col) {
    IntMat m(a.rows() - 1, a.cols() - 1);
    int mi = 0;
    for (int i = 0; i < a.rows(); ++i) {
        if (i == skip_row) continue;
        int mj = 0;
        for (int j = 0; j < a.cols(); ++j) {
            if (j == skip_col) continue;
            m.at(mi, mj) = a.at(i, j);
            ++mj;
        }
        ++mi;
    }
    return det_bareiss(std::move(m));
}

} // namespace

Coeff det(const IntMat& a) {
    if (a.rows() != a.cols()) throw PreconditionError("determinant of a non-square matrix");
    return det_bareiss(a);
}

IntMat unimodular_inverse(const IntMat& a) {
    Coeff d = det(a);
    if (d != 1 && d != -1)
        throw PreconditionError("matrix is not unimodular (det = " + coeff_str(d) + ")");
    const int k = a.rows();
    IntMat inv(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            Coeff cof = minor_det(a, j, i);
            if ((i + j) % 2 == 1) cof = -cof;
            inv.at(i, j) = cof / d;
        }
    return inv;
}

std::vector<Coeff> smith_invariants(IntMat a) {
    const int r = a.rows(), c = a.cols();
    std::vector<Coeff> out;
    int top = 0;
    while (top < r && top < c) {
        // find a nonzero pivot in the remaining block
        int pi = -1, pj = -1;
        for (int i = top; i < r && pi < 0; ++i)
            for (int j = top; j < c; ++j)
                if (a.at(i, j) != 0) {
                    pi = i;
                    pj = j;
                    break;
                }
        if (pi < 0) break;
        for (int j = 0; j < c; ++j) std::swap(a.at(top, j), a.at(pi, j));
        for (int i = 0; i < r; ++i) std::swap(a.at(i, top), a.at(i, pj));
        for (;;) {
            // euclidean reduction of the pivot row and column
            bool changed = false;
            for (int i = top + 1; i < r; ++i) {
                if (a.at(i, top) == 0) continue;
                Coeff q = a.at(i, top) / a.at(top, top);
                for (int j = 0; j < c; ++j) a.at(i, j) -= q * a.at(top, j);
                if (a.at(i, top) != 0) {
                    for (int j = 0; j < c; ++j) std::swap(a.at(top, j), a.at(i, j));
                    changed = true;
                }
            }
            for (int j = top + 1; j < c; ++j) {
                if (a.at(top, j) == 0) continue;
                Coeff q = a.at(top, j) / a.at(top, top);
                for (int i = 0; i < r; ++i) a.at(i, j) -= q * a.at(i, top);
                if (a.at(top, j) != 0) {
                    for (int i = 0; i < r; ++i) std::swap(a.at(i, top), a.at(i, j));
                    changed = true;
                }
            }
            if (changed) continue;
            // pivot must divide every remaining entry
            bool fixed = true;
            for (int i = top + 1; i < r && fixed; ++i)
                for (int j = top + 1; j < c && fixed; ++j)
                    if (a.at(i, j) % a.at(top, top) != 0) {
                        for (int jj = 0; jj < c; ++jj) a.at(top, jj) += a.at(i, jj);
                        fixed = false;
                    }
            if (fixed) break;
        }
        if (a.at(top, top) < 0)
            for (int j = 0; j < c; ++j) a.at(top, j) = -a.at(top, j);
        out.push_back(a.at(top, top));
        ++top;
    }
    while (int(out.size()) < std::min(r, c)) out.push_back(0);
    return out;
}

Mod2Mat Mod2Mat::identity(int k) {
    Mod2Mat m(k, k);
    for (int i = 0; i < k; ++i) m.at(i, i) = 1;
    return m;
}

bool Mod2Mat::is_zero() const {
    for (auto x : a_)
        if (x) return false;
    return true;
}

Mod2Mat mul(const Mod2Mat& a, const Mod2Mat& b) {
    if (a.cols() != b.rows()) throw PreconditionError("matrix product shape mismatch");
    Mod2Mat out(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            if (!a.at(i, k)) continue;
            for (int j = 0; j < b.cols(); ++j) out.at(i, j) ^= b.at(k, j);
        }
    return out;
}

Mod2Mat add(const Mod2Mat& a, const Mod2Mat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw PreconditionError("matrix sum shape mismatch");
    Mod2Mat out(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out.at(i, j) = a.at(i, j) ^ b.at(i, j);
    return out;
}

Mod2Mat inverse_mod2(const Mod2Mat& a) {
    if (a.rows() != a.cols()) throw PreconditionError("inverse of a non-square matrix");
    const int k = a.rows();
    Mod2Mat m = a, inv = Mod2Mat::identity(k);
    for (int p = 0; p < k; ++p) {
        int q = p;
        while (q < k && !m.at(q, p)) ++q;
        if (q == k) throw PreconditionError("matrix is singular over F_2");
        if (q != p)
            for (int j = 0; j < k; ++j) {
                std::swap(m.at(p, j), m.at(q, j));
                std::swap(inv.at(p, j), inv.at(q, j));
            }
        for (int i = 0; i < k; ++i) {
            if (i == p || !m.at(i, p)) continue;
            for (int j = 0; j < k; ++j) {
                m.at(i, j) ^= m.at(p, j);
                inv.at(i, j) ^= inv.at(p, j);
            }
        }
    }
    return inv;
}

Mod2Mat reduce_mod2(const IntMat& a) {
    Mod2Mat out(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out.at(i, j) = (unsigned char)(a.at(i, j) % 2 != 0);
    return out;
}

} // namespace wedgecalc
