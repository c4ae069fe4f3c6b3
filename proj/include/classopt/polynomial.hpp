#pragma once

// Sparse polynomials with exact integer coefficients over one variable, and
// a certified bisection root isolator. Sign-change counting (for the
// Descartes bound) is done on the exact coefficients, never on floats.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "classopt/core.hpp"

namespace classopt {

class RootNotBracketed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SparsePolynomial {
 public:
  struct Term {
    int exp;
    long long coef;
  };

  SparsePolynomial() = default;

  /// Builds a polynomial from arbitrary terms: sorts by exponent, combines
  /// like terms, drops zero coefficients.
  static SparsePolynomial from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return a.exp < b.exp; });
    SparsePolynomial p;
    for (const Term& t : terms) {
      detail::require(t.exp >= 0, "SparsePolynomial: exponents must be >= 0");
      if (!p.terms_.empty() && p.terms_.back().exp == t.exp)
        p.terms_.back().coef += t.coef;
      else
        p.terms_.push_back(t);
    }
    std::erase_if(p.terms_, [](const Term& t) { return t.coef == 0; });
    return p;
  }

  static SparsePolynomial monomial(int exp, long long coef) {
    return from_terms({{exp, coef}});
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const { return terms_.empty() ? -1 : terms_.back().exp; }

  bool operator==(const SparsePolynomial& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (size_t i = 0; i < terms_.size(); ++i)
      if (terms_[i].exp != o.terms_[i].exp ||
          terms_[i].coef != o.terms_[i].coef)
        return false;
    return true;
  }
  bool operator!=(const SparsePolynomial& o) const { return !(*this == o); }

  double eval(double x) const {
    double total = 0.0;
    for (const Term& t : terms_)
      total += double(t.coef) * std::pow(x, double(t.exp));
    return total;
  }

  /// Exact value at x = 1 (the coefficient sum).
  long long eval_at_one() const {
    long long s = 0;
    for (const Term& t : terms_) s += t.coef;
    return s;
  }

  /// Exact derivative value at x = 1.
  long long derivative_at_one() const {
    long long s = 0;
    for (const Term& t : terms_) s += t.coef * t.exp;
    return s;
  }

  /// Exact second derivative value at x = 1.
  long long second_derivative_at_one() const {
    long long s = 0;
    for (const Term& t : terms_)
      s += t.coef * t.exp * (long long)(t.exp - 1);
    return s;
  }

  SparsePolynomial derivative() const {
    std::vector<Term> out;
    for (const Term& t : terms_)
      if (t.exp > 0) out.push_back({t.exp - 1, t.coef * t.exp});
    return from_terms(std::move(out));
  }

  /// Coefficient-reversed polynomial x^deg * f(1/x); its roots in (0, 1)
  /// are the reciprocals of f's roots in (1, inf).
  SparsePolynomial reversed() const {
    std::vector<Term> out;
    const int d = degree();
    for (const Term& t : terms_) out.push_back({d - t.exp, t.coef});
    return from_terms(std::move(out));
  }

  SparsePolynomial scaled(long long factor) const {
    std::vector<Term> out = terms_;
    for (Term& t : out) t.coef *= factor;
    return from_terms(std::move(out));
  }

  friend SparsePolynomial operator+(const SparsePolynomial& a,
                                    const SparsePolynomial& b) {
    std::vector<Term> out = a.terms_;
    out.insert(out.end(), b.terms_.begin(), b.terms_.end());
    return from_terms(std::move(out));
  }
  friend SparsePolynomial operator-(const SparsePolynomial& a,
                                    const SparsePolynomial& b) {
    std::vector<Term> out = a.terms_;
    for (Term t : b.terms_) out.push_back({t.exp, -t.coef});
    return from_terms(std::move(out));
  }

  /// Number of sign alternations in the ordered nonzero coefficient
  /// sequence. By the Descartes bound the positive-root count (with
  /// multiplicity) equals this number minus an even quantity.
  int sign_changes() const {
    detail::require(!terms_.empty(), "sign_changes: zero polynomial");
    int changes = 0;
    for (size_t i = 1; i < terms_.size(); ++i)
      if ((terms_[i - 1].coef > 0) != (terms_[i].coef > 0)) ++changes;
    return changes;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const Term& t : terms_) {
      if (!s.empty()) s += t.coef >= 0 ? " + " : " - ";
      else if (t.coef < 0) s += "-";
      s += std::to_string(std::llabs(t.coef)) + "*p^" + std::to_string(t.exp);
    }
    return s;
  }

 private:
  std::vector<Term> terms_;
};

struct RootEstimate {
  double value = 0.0;
  double residual = 0.0;
  bool certified = false;  ///< endpoint signs differed at the initial bracket
};

/// Bisects poly on [lo, hi] down to interval width tol (or an exactly zero
/// midpoint). Requires a sign change across the bracket; throws
/// RootNotBracketed otherwise.
inline RootEstimate isolate_root(const SparsePolynomial& poly, double lo,
                                 double hi, double tol = 1e-12) {
  detail::require(lo < hi, "isolate_root: empty interval");
  detail::require(tol > 0.0, "isolate_root: tol must be > 0");
  double flo = poly.eval(lo);
  double fhi = poly.eval(hi);
  if (flo == 0.0) return {lo, 0.0, true};
  if (fhi == 0.0) return {hi, 0.0, true};
  if ((flo > 0.0) == (fhi > 0.0))
    throw RootNotBracketed("isolate_root: no sign change across bracket");
  for (int iter = 0; iter < 200 && hi - lo > tol; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // hit double resolution
    const double fm = poly.eval(mid);
    if (fm == 0.0) return {mid, 0.0, true};
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  const double root = 0.5 * (lo + hi);
  return {root, std::abs(poly.eval(root)), true};
}

/// Scans n+1 equally spaced points of [lo, hi] and returns one entry per
/// detected root: a (a, b) pair with a strict sign change across it, or a
/// degenerate (x, x) pair when a sample hits a root exactly.
inline std::vector<std::pair<double, double>> scan_sign_brackets(
    const SparsePolynomial& poly, double lo, double hi, int n = 10000) {
  detail::require(n >= 1 && lo < hi, "scan_sign_brackets: bad arguments");
  std::vector<std::pair<double, double>> out;
  double last_x = lo;
  double last_v = poly.eval(lo);
  if (last_v == 0.0) out.emplace_back(lo, lo);
  for (int i = 1; i <= n; ++i) {
    const double x = lo + (hi - lo) * double(i) / double(n);
    const double v = poly.eval(x);
    if (v == 0.0)
      out.emplace_back(x, x);
    else if (last_v != 0.0 && (last_v > 0.0) != (v > 0.0))
      out.emplace_back(last_x, x);
    last_x = x;
    last_v = v;
  }
  return out;
}

}  // namespace classopt
