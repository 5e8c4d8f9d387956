#include "bagcq/polyrep/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "bagcq/bageval/eval.hpp"

namespace bagcq {

namespace {

constexpr std::size_t kMaxTerms = 20000000;

Count ceil_div(const Count& n, const Count& d) {
  Count q = n / d;
  if (n % d != 0 && n > 0) ++q;
  return q;
}

}  // namespace

Monomial::Monomial(std::vector<std::uint32_t> indices) : indices_(std::move(indices)) {
  for (auto i : indices_)
    if (i == 0) throw PreconditionError("monomial variable indices start at 1");
  std::sort(indices_.begin(), indices_.end());
}

std::uint32_t Polynomial::max_index() const {
  std::uint32_t n = 0;
  for (const auto& m : terms) n = std::max(n, m.max_index());
  return n;
}

std::vector<Monomial> Polynomial::monomials() const {
  std::vector<Monomial> out(terms.begin(), terms.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::uint64_t Valuation::operator()(std::uint32_t index) const {
  if (index == 0 || index > values.size())
    throw PreconditionError("variable x" + std::to_string(index) + " is outside the valuation");
  return values[index - 1];
}

Count eval_monomial(const Monomial& m, const Valuation& v) {
  Count product = 1;
  for (auto i : m.indices()) product *= v(i);
  return product;
}

Count eval_poly(const Polynomial& p, const Valuation& v) {
  Count total = 0;
  for (const auto& m : p.terms) total += eval_monomial(m, v);
  return total;
}

Count coef(const Monomial& m, const Polynomial& p) {
  return static_cast<std::uint64_t>(std::count(p.terms.begin(), p.terms.end(), m));
}

std::string unary_relation(std::uint32_t n) { return "X" + std::to_string(n); }

Signature unary_signature(std::uint32_t n) {
  Signature sig;
  for (std::uint32_t i = 1; i <= n; ++i) sig.add_relation(unary_relation(i), 1);
  return sig;
}

CQ mono_to_cq(const Monomial& m, std::uint32_t n) {
  std::vector<Atom> atoms;
  std::size_t k = 0;
  for (auto i : m.indices())
    atoms.emplace_back(rel(unary_relation(i), {Term::var("_w" + std::to_string(++k))}));
  return CQ(std::move(atoms), unary_signature(std::max(n, m.max_index())));
}

UCQ poly_to_ucq(const Polynomial& p, std::uint32_t n) {
  if (p.empty()) throw PreconditionError("the empty polynomial has no query");
  n = std::max(n, p.max_index());
  std::vector<CQ> disjuncts;
  disjuncts.reserve(p.terms.size());
  for (const auto& m : p.terms) disjuncts.push_back(mono_to_cq(m, n));
  return UCQ(std::move(disjuncts));
}

Structure structure_of_valuation(const Valuation& v) {
  auto n = static_cast<std::uint32_t>(v.size());
  StructureBuilder b(unary_signature(n));
  for (std::uint32_t i = 1; i <= n; ++i)
    for (std::uint64_t k = 1; k <= v(i); ++k)
      b.add_fact(unary_relation(i), {"n" + std::to_string(i) + "_" + std::to_string(k)});
  return b.build();
}

Valuation valuation_of_structure(const Structure& d) {
  const auto& sig = d.signature();
  if (!sig.constants.empty()) throw SignatureError("valuation structures have no constants");
  std::uint32_t n = 0;
  for (const auto& [name, ar] : sig.relations) {
    bool ok = ar == 1 && name.size() > 1 && name[0] == 'X' && name[1] != '0' &&
              std::all_of(name.begin() + 1, name.end(),
                          [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    if (!ok) throw SignatureError("relation '" + name + "' is not of the form X<n>/1");
    n = std::max(n, static_cast<std::uint32_t>(std::stoul(name.substr(1))));
  }
  Valuation v;
  v.values.resize(n, 0);
  for (std::uint32_t i = 1; i <= n; ++i) v.values[i - 1] = d.facts(unary_relation(i)).size();
  return v;
}

Valuation local_valuation(VertexId p, const Structure& d) {
  return valuation_of_structure(seen(p, d));
}

bool padding_ratio_holds(const Polynomial& ps0, const Polynomial& pb0, const Rational& c,
                         const Rational& cent, const Count& u) {
  auto ms = ps0.monomials();
  ms.push_back(Monomial());
  for (const auto& m : ms) {
    Rational a(coef(m, ps0) + u);
    Rational b(coef(m, pb0) + u);
    if (cent * a > c * b) return false;
  }
  return true;
}

Count padding_amount(const Polynomial& ps0, const Polynomial& pb0, const Rational& c,
                     const Rational& cent) {
  // cent (a+u) <= c (b+u)  <=>  u >= (cent a - c b) / (c - cent)
  Count u = 1;
  auto ms = ps0.monomials();
  ms.push_back(Monomial());
  for (const auto& m : ms) {
    Rational bound = (cent * Rational(coef(m, ps0)) - c * Rational(coef(m, pb0))) / (c - cent);
    if (bound <= 0) continue;
    u = std::max(u, ceil_div(boost::multiprecision::numerator(bound),
                             boost::multiprecision::denominator(bound)));
  }
  return u;
}

Padding pad_polynomials(const Polynomial& ps0, const Polynomial& pb0, const Rational& c,
                        const Rational& cent) {
  if (!(cent > 1 && cent < c && c <= cent * cent && c <= 2))
    throw PreconditionError("padding needs 1 < cent < c <= min(cent^2, 2)");
  if (ps0.empty() || pb0.empty()) throw PreconditionError("padding needs nonempty polynomials");

  Padding out;
  out.u = padding_amount(ps0, pb0, c, cent);

  auto ms = ps0.monomials();
  if (!std::binary_search(ms.begin(), ms.end(), Monomial())) ms.insert(ms.begin(), Monomial());
  const Count c_num = boost::multiprecision::numerator(c);
  const Count c_den = boost::multiprecision::denominator(c);
  const Count total = (Count(ps0.terms.size()) + out.u * ms.size()) * c_den +
                      (Count(pb0.terms.size()) + out.u * ms.size()) * c_num;
  if (total > kMaxTerms) throw CapExceeded("padded polynomials would have " + total.str() + " terms");

  auto pad = [&](const Polynomial& p0, const Count& factor) {
    Polynomial p1 = p0;
    for (const auto& m : ms)
      for (Count k = 0; k < out.u; ++k) p1.terms.push_back(m);
    Polynomial p2;
    for (Count k = 0; k < factor; ++k) p2.terms.insert(p2.terms.end(), p1.terms.begin(), p1.terms.end());
    auto it = std::find(p2.terms.begin(), p2.terms.end(), Monomial());
    if (it == p2.terms.end()) throw PreconditionError("no constant monomial left to subtract");
    p2.terms.erase(it);
    return p2;
  };
  out.ps = pad(ps0, c_den);
  out.pb = pad(pb0, c_num);
  return out;
}

namespace {

class PolyLexer {
 public:
  explicit PolyLexer(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool done() {
    skip_space();
    return pos_ == text_.size();
  }
  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  std::uint64_t number() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    try {
      return std::stoull(std::string(text_.substr(start, pos_ - start)));
    } catch (const std::out_of_range&) {
      fail("number too large");
    }
  }
  std::uint32_t variable() {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != 'x') fail("expected a variable x<n>");
    ++pos_;
    auto n = number();
    if (n == 0 || n > UINT32_MAX) fail("variable index must be positive");
    return static_cast<std::uint32_t>(n);
  }
  bool at_variable() {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == 'x';
  }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, 1, pos_ + 1); }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text) {
  PolyLexer lex(text);
  Polynomial p;
  if (lex.done()) lex.fail("expected a polynomial");
  do {
    std::uint64_t times = 1;
    std::vector<std::uint32_t> idx;
    do {
      if (lex.at_variable())
        idx.push_back(lex.variable());
      else
        times *= lex.number();
    } while (lex.accept('*'));
    Monomial m(std::move(idx));
    if (p.terms.size() + times > kMaxTerms) lex.fail("polynomial has too many terms");
    for (std::uint64_t k = 0; k < times; ++k) p.terms.push_back(m);
  } while (lex.accept('+'));
  if (!lex.done()) lex.fail("unexpected input");
  return p;
}

Valuation parse_valuation(std::string_view text) {
  PolyLexer lex(text);
  std::map<std::uint32_t, std::uint64_t> assigned;
  if (!lex.done()) {
    do {
      auto i = lex.variable();
      lex.expect('=');
      auto value = lex.number();
      if (!assigned.emplace(i, value).second) lex.fail("variable assigned twice");
    } while (lex.accept(','));
  }
  if (!lex.done()) lex.fail("unexpected input");
  Valuation v;
  if (!assigned.empty()) v.values.resize(assigned.rbegin()->first, 0);
  for (const auto& [i, value] : assigned) v.values[i - 1] = value;
  return v;
}

std::string to_string(const Monomial& m) {
  if (m.degree() == 0) return "1";
  std::string out;
  for (auto i : m.indices()) {
    if (!out.empty()) out += "*";
    out += "x" + std::to_string(i);
  }
  return out;
}

std::string to_string(const Polynomial& p) {
  if (p.empty()) return "0";
  std::vector<Monomial> order;
  std::map<Monomial, std::size_t> count;
  for (const auto& m : p.terms)
    if (count[m]++ == 0) order.push_back(m);
  std::string out;
  for (const auto& m : order) {
    if (!out.empty()) out += " + ";
    auto k = count[m];
    if (k == 1)
      out += to_string(m);
    else if (m.degree() == 0)
      out += std::to_string(k);
    else
      out += std::to_string(k) + "*" + to_string(m);
  }
  return out;
}

std::string to_string(const Valuation& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += "x" + std::to_string(i + 1) + "=" + std::to_string(v.values[i]);
  }
  return out;
}

}  // namespace bagcq
