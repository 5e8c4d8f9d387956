#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "bagcq/common.hpp"
#include "bagcq/relcore/query.hpp"
#include "bagcq/relcore/structure.hpp"

namespace bagcq {

/// Product of numerical variables with coefficient 1, as a sorted multiset
/// of 1-based indices. The empty monomial is the constant 1.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<std::uint32_t> indices);

  const std::vector<std::uint32_t>& indices() const { return indices_; }
  std::size_t degree() const { return indices_.size(); }
  std::uint32_t max_index() const { return indices_.empty() ? 0 : indices_.back(); }

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<std::uint32_t> indices_;
};

/// Sequence of monomial occurrences; repeats encode coefficients.
struct Polynomial {
  std::vector<Monomial> terms;

  bool empty() const { return terms.empty(); }
  std::uint32_t max_index() const;
  /// Distinct monomials in ascending order.
  std::vector<Monomial> monomials() const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;
};

/// Values of x1..xn; values[i] is the value of x(i+1).
struct Valuation {
  std::vector<std::uint64_t> values;

  std::size_t size() const { return values.size(); }
  std::uint64_t operator()(std::uint32_t index) const;

  friend bool operator==(const Valuation&, const Valuation&) = default;
};

Count eval_monomial(const Monomial& m, const Valuation& v);
Count eval_poly(const Polynomial& p, const Valuation& v);
Count coef(const Monomial& m, const Polynomial& p);

/// Name of the unary relation for variable n: "X<n>".
std::string unary_relation(std::uint32_t n);
/// {X1/1, ..., Xn/1}.
Signature unary_signature(std::uint32_t n);

/// One atom X_n(_) on a fresh variable per occurrence of n; the constant
/// monomial gives the empty CQ. Signature is unary_signature(max(n, m.max_index())).
CQ mono_to_cq(const Monomial& m, std::uint32_t n = 0);

/// One disjunct per monomial occurrence. Throws on the empty polynomial.
UCQ poly_to_ucq(const Polynomial& p, std::uint32_t n = 0);

/// Disjoint witness vertices "n<i>_<k>" for each variable.
Structure structure_of_valuation(const Valuation& v);

/// Number of X_n facts for every n up to the largest X-relation of the
/// signature. The signature must consist of unary X relations only.
Valuation valuation_of_structure(const Structure& d);

/// valuation_of_structure(seen(p, d)).
Valuation local_valuation(VertexId p, const Structure& d);

struct Padding {
  Polynomial ps;
  Polynomial pb;
  Count u;
};

/// Turns an instance of "ps0 <= pb0 for all valuations" into one of
/// "c (1 + ps) <= 1 + pb for all valuations" where additionally
/// cent * coef(M, ps) <= coef(M, pb) for every monomial M.
///
/// Pads every monomial of ps0 and the constant monomial by the least u >= 1
/// meeting the ratio condition, scales the s-side by the denominator of c
/// and the b-side by its numerator, then drops one constant monomial from
/// each side. Requires 1 < cent < c <= min(cent^2, 2).
Padding pad_polynomials(const Polynomial& ps0, const Polynomial& pb0, const Rational& c,
                        const Rational& cent);

/// Least u >= 1 with cent/c <= (coef(M,pb0)+u)/(coef(M,ps0)+u) for every
/// monomial of ps0 and the constant monomial.
Count padding_amount(const Polynomial& ps0, const Polynomial& pb0, const Rational& c,
                     const Rational& cent);

/// Whether a given u meets that ratio condition.
bool padding_ratio_holds(const Polynomial& ps0, const Polynomial& pb0, const Rational& c,
                         const Rational& cent, const Count& u);

/// `x1*x1*x2 + x4 + 1`; an integer factor such as `3*x1` repeats the monomial.
Polynomial parse_polynomial(std::string_view text);
/// `x1=2, x2=0`; unmentioned variables up to the largest index are 0.
Valuation parse_valuation(std::string_view text);

std::string to_string(const Monomial& m);
/// Groups equal monomials as `k*M`, in order of first occurrence.
std::string to_string(const Polynomial& p);
std::string to_string(const Valuation& v);

}  // namespace bagcq
