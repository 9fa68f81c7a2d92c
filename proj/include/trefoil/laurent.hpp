#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <vector>

// Integer Laurent polynomials with arbitrary-precision coefficients, plus the
// exact determinant machinery behind the Alexander polynomial computations.

namespace trefoil {

using BigInt = boost::multiprecision::cpp_int;

class Laurent {
public:
    Laurent() = default;
    explicit Laurent(BigInt constant);
    Laurent(std::vector<BigInt> coeffs, int low);  // coeffs[i] multiplies t^(low+i)

    static Laurent monomial(BigInt c, int power);

    bool is_zero() const { return coeffs_.empty(); }
    int low_degree() const;   // undefined on zero
    int high_degree() const;
    BigInt coeff(int power) const;
    const std::vector<BigInt>& coeffs() const { return coeffs_; }

    BigInt eval(const BigInt& t) const;      // t != 0 when low degree < 0
    BigInt eval_at_one() const;

    Laurent operator-() const;
    Laurent& operator+=(const Laurent& o);
    Laurent& operator-=(const Laurent& o);
    friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
    friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
    friend Laurent operator*(const Laurent& a, const Laurent& b);
    friend bool operator==(const Laurent&, const Laurent&) = default;

    // Exact division; nullopt when the division leaves a remainder.
    std::optional<Laurent> divided_by(const Laurent& d) const;

    // Multiply by +-t^k so the lowest degree is 0 and the top coefficient is
    // positive (the Alexander normalization).
    Laurent alexander_normalized() const;
    bool is_palindromic() const;  // Delta(t) == +-t^deg Delta(1/t)

    std::string str() const;  // human-readable, e.g. "t^2 - t + 1"

private:
    void trim();
    std::vector<BigInt> coeffs_;
    int low_ = 0;
};

// Fraction-free determinant of a dense integer matrix.
BigInt det_bareiss(std::vector<std::vector<BigInt>> m);

// Exact determinant of a Laurent-matrix via integer evaluation and Lagrange
// interpolation (entries stay small; sizes up to a few dozen).
Laurent det_laurent(const std::vector<std::vector<Laurent>>& m);

}  // namespace trefoil
