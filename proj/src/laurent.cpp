#include "trefoil/laurent.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <sstream>
#include <stdexcept>

namespace trefoil {

using BigRat = boost::multiprecision::cpp_rational;

Laurent::Laurent(BigInt constant) {
    if (constant != 0) coeffs_.push_back(std::move(constant));
}

Laurent::Laurent(std::vector<BigInt> coeffs, int low) : coeffs_(std::move(coeffs)), low_(low) {
    trim();
}

Laurent Laurent::monomial(BigInt c, int power) {
    if (c == 0) return Laurent();
    return Laurent({std::move(c)}, power);
}

void Laurent::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    size_t k = 0;
    while (k < coeffs_.size() && coeffs_[k] == 0) ++k;
    if (k) {
        coeffs_.erase(coeffs_.begin(), coeffs_.begin() + k);
        low_ += static_cast<int>(k);
    }
    if (coeffs_.empty()) low_ = 0;
}

int Laurent::low_degree() const { return low_; }
int Laurent::high_degree() const { return low_ + static_cast<int>(coeffs_.size()) - 1; }

BigInt Laurent::coeff(int power) const {
    const int i = power - low_;
    if (i < 0 || i >= static_cast<int>(coeffs_.size())) return 0;
    return coeffs_[i];
}

BigInt Laurent::eval(const BigInt& t) const {
    if (is_zero()) return 0;
    if (low_ < 0) throw std::domain_error("Laurent::eval: negative powers");
    BigInt acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
    for (int i = 0; i < low_; ++i) acc *= t;
    return acc;
}

BigInt Laurent::eval_at_one() const {
    BigInt s = 0;
    for (const auto& c : coeffs_) s += c;
    return s;
}

Laurent Laurent::operator-() const {
    Laurent r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

Laurent& Laurent::operator+=(const Laurent& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) { *this = o; return *this; }
    const int lo = std::min(low_, o.low_);
    const int hi = std::max(high_degree(), o.high_degree());
    std::vector<BigInt> out(hi - lo + 1);
    for (int i = 0; i < static_cast<int>(coeffs_.size()); ++i) out[low_ + i - lo] += coeffs_[i];
    for (int i = 0; i < static_cast<int>(o.coeffs_.size()); ++i) out[o.low_ + i - lo] += o.coeffs_[i];
    coeffs_ = std::move(out);
    low_ = lo;
    trim();
    return *this;
}

Laurent& Laurent::operator-=(const Laurent& o) { return *this += -o; }

Laurent operator*(const Laurent& a, const Laurent& b) {
    if (a.is_zero() || b.is_zero()) return Laurent();
    std::vector<BigInt> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (size_t i = 0; i < a.coeffs_.size(); ++i)
        for (size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Laurent(std::move(out), a.low_ + b.low_);
}

std::optional<Laurent> Laurent::divided_by(const Laurent& d) const {
    if (d.is_zero()) throw std::domain_error("Laurent division by zero");
    if (is_zero()) return Laurent();
    std::vector<BigInt> num = coeffs_;
    const std::vector<BigInt>& den = d.coeffs_;
    if (num.size() < den.size()) return std::nullopt;
    std::vector<BigInt> q(num.size() - den.size() + 1);
    for (int i = static_cast<int>(q.size()) - 1; i >= 0; --i) {
        const BigInt& lead = num[i + den.size() - 1];
        if (lead == 0) { q[i] = 0; continue; }
        if (lead % den.back() != 0) return std::nullopt;
        q[i] = lead / den.back();
        for (size_t j = 0; j < den.size(); ++j) num[i + j] -= q[i] * den[j];
    }
    for (const auto& c : num)
        if (c != 0) return std::nullopt;
    return Laurent(std::move(q), low_ - d.low_);
}

Laurent Laurent::alexander_normalized() const {
    if (is_zero()) return Laurent();
    Laurent r(coeffs_, 0);
    if (r.coeffs_.back() < 0) r = -r;
    return r;
}

bool Laurent::is_palindromic() const {
    if (is_zero()) return true;
    const size_t n = coeffs_.size();
    bool plus = true, minus = true;
    for (size_t i = 0; i < n; ++i) {
        if (coeffs_[i] != coeffs_[n - 1 - i]) plus = false;
        if (coeffs_[i] != -coeffs_[n - 1 - i]) minus = false;
    }
    return plus || minus;
}

std::string Laurent::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = static_cast<int>(coeffs_.size()) - 1; i >= 0; --i) {
        const BigInt& c = coeffs_[i];
        if (c == 0) continue;
        const int p = low_ + i;
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        first = false;
        BigInt a = abs(c);
        if (a != 1 || p == 0) os << a.str();
        if (p != 0) {
            if (a != 1) os << "*";
            os << "t";
            if (p != 1) os << "^" << p;
        }
    }
    return os.str();
}

BigInt det_bareiss(std::vector<std::vector<BigInt>> m) {
    const int n = static_cast<int>(m.size());
    if (n == 0) return 1;
    BigInt prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m[k][k] == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (m[i][k] != 0) { p = i; break; }
            if (p < 0) return 0;
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

Laurent det_laurent(const std::vector<std::vector<Laurent>>& m) {
    const int n = static_cast<int>(m.size());
    if (n == 0) return Laurent(BigInt(1));
    // pull t^min out of each row so every entry is an honest polynomial
    int shift = 0;
    std::vector<std::vector<Laurent>> poly(n, std::vector<Laurent>(n));
    int deg_bound = 0;
    for (int i = 0; i < n; ++i) {
        int row_low = 0;
        bool any = false;
        for (int j = 0; j < n; ++j)
            if (!m[i][j].is_zero()) {
                row_low = any ? std::min(row_low, m[i][j].low_degree()) : m[i][j].low_degree();
                any = true;
            }
        if (!any) return Laurent();
        shift += row_low;
        int row_deg = 0;
        for (int j = 0; j < n; ++j) {
            poly[i][j] = m[i][j] * Laurent::monomial(1, -row_low);
            if (!poly[i][j].is_zero()) row_deg = std::max(row_deg, poly[i][j].high_degree());
        }
        deg_bound += row_deg;
    }
    const int npts = deg_bound + 1;
    std::vector<BigInt> xs(npts), ys(npts);
    for (int k = 0; k < npts; ++k) {
        xs[k] = k + 2;
        std::vector<std::vector<BigInt>> num(n, std::vector<BigInt>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) num[i][j] = poly[i][j].eval(xs[k]);
        ys[k] = det_bareiss(std::move(num));
    }
    // Lagrange interpolation over the rationals; the result must be integral
    std::vector<BigRat> acc(npts);
    for (int k = 0; k < npts; ++k) {
        std::vector<BigInt> basis{1};
        BigInt den = 1;
        for (int j = 0; j < npts; ++j) {
            if (j == k) continue;
            std::vector<BigInt> nb(basis.size() + 1);
            for (size_t i = 0; i < basis.size(); ++i) {
                nb[i] += basis[i] * (-xs[j]);
                nb[i + 1] += basis[i];
            }
            basis = std::move(nb);
            den *= (xs[k] - xs[j]);
        }
        if (den < 0) den = -den, ys[k] = -ys[k];  // cpp_rational rejects den < 0
        for (size_t i = 0; i < basis.size(); ++i) {
            const BigInt num = basis[i] * ys[k];
            acc[i] += BigRat(num, den);
        }
    }
    std::vector<BigInt> coeffs(npts);
    for (int i = 0; i < npts; ++i) {
        if (denominator(acc[i]) != 1)
            throw std::logic_error("det_laurent: non-integer interpolation result");
        coeffs[i] = numerator(acc[i]);
    }
    return Laurent(std::move(coeffs), shift);
}

}  // namespace trefoil
