#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "hurwitz/counting.hpp"
#include "hurwitz/exact.hpp"

namespace hurwitz {

// Dense polynomial in one variable, coefficients lowest degree first.
struct Polynomial {
  std::vector<Rational> coeffs;

  void trim() {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  }
  // -1 for the zero polynomial
  std::int64_t degree() const { return static_cast<std::int64_t>(coeffs.size()) - 1; }
  Rational coefficient(std::int64_t k) const {
    return k >= 0 && k <= degree() ? coeffs[static_cast<std::size_t>(k)] : Rational(0);
  }
  Rational operator()(const Rational& x) const {
    Rational r = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * x + *it;
    return r;
  }
  bool operator==(const Polynomial& o) const { return coeffs == o.coeffs; }
};

inline Polynomial poly_mul_linear(const Polynomial& p, const Rational& a, const Rational& b) {
  // p * (a x + b)
  Polynomial r;
  r.coeffs.assign(p.coeffs.size() + 1, 0);
  for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
    r.coeffs[i] += p.coeffs[i] * b;
    r.coeffs[i + 1] += p.coeffs[i] * a;
  }
  r.trim();
  return r;
}

inline std::string format_polynomial(const Polynomial& p, const std::string& var = "n") {
  if (p.coeffs.empty()) return "0";
  std::string out;
  for (std::int64_t k = p.degree(); k >= 0; --k) {
    Rational c = p.coefficient(k);
    if (c == 0) continue;
    std::string cs = to_string(abs(c));
    if (!out.empty()) out += c < 0 ? " - " : " + ";
    else if (c < 0) out += "-";
    if (k == 0) out += cs;
    else {
      if (abs(c) != 1) out += cs + "*";
      out += var;
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out;
}

struct QuasiPolynomial {
  std::int64_t period = 1;
  std::vector<Polynomial> polys;  // polys[r] applies when n mod period == r
  std::int64_t onset = 0;
  bool leading_residue_dominates = true;  // deg Q_0 >= deg Q_i for all i

  Rational operator()(std::int64_t n) const {
    auto r = ((n % period) + period) % period;
    return polys[static_cast<std::size_t>(r)](Rational(n));
  }
  std::int64_t max_degree() const {
    std::int64_t d = -1;
    for (const auto& p : polys) d = std::max(d, p.degree());
    return d;
  }
};

struct FitFailure {
  std::string reason;
  // per period tried: earliest onset that would need more data, or none
  std::vector<std::string> diagnostics;
};

class QuasiPolyFitError : public std::runtime_error {
 public:
  QuasiPolyFitError(FitFailure f) : std::runtime_error(f.reason), failure_(std::move(f)) {}
  const FitFailure& failure() const noexcept { return failure_; }

 private:
  FitFailure failure_;
};

namespace detail {

// Smallest d <= max_degree whose (d+1)-th differences all vanish, with at
// least d+2 points. Returns the Newton coefficients (Delta^k y_0).
inline std::optional<std::vector<BigInt>> fit_residue(const std::vector<BigInt>& ys, std::int64_t max_degree) {
  std::vector<std::vector<BigInt>> diffs{ys};
  for (std::int64_t d = 0; d <= max_degree; ++d) {
    if (static_cast<std::int64_t>(ys.size()) < d + 2) return std::nullopt;
    const auto& prev = diffs.back();
    std::vector<BigInt> next;
    for (std::size_t i = 0; i + 1 < prev.size(); ++i) next.push_back(prev[i + 1] - prev[i]);
    diffs.push_back(next);
    bool zero = true;
    for (const auto& v : next) zero = zero && v == 0;
    if (zero) {
      std::vector<BigInt> newton;
      for (std::int64_t k = 0; k <= d; ++k) newton.push_back(diffs[static_cast<std::size_t>(k)][0]);
      while (!newton.empty() && newton.back() == 0) newton.pop_back();
      return newton;
    }
  }
  return std::nullopt;
}

// sum_k c_k binom(j, k) with j = (n - n_first) / W, as a polynomial in n
inline Polynomial newton_to_monomial(const std::vector<BigInt>& newton, std::int64_t n_first, std::int64_t W) {
  Polynomial out;
  Polynomial basis{{Rational(1)}};  // binom(j, 0)
  for (std::size_t k = 0; k < newton.size(); ++k) {
    if (k > 0) {
      // binom(j,k) = binom(j,k-1) * (j - (k-1)) / k, j = n/W - n_first/W
      Rational a = Rational(1, W) / Rational(static_cast<std::int64_t>(k));
      Rational b = (Rational(-n_first, W) - Rational(static_cast<std::int64_t>(k - 1))) /
                   Rational(static_cast<std::int64_t>(k));
      basis = poly_mul_linear(basis, a, b);
    }
    if (out.coeffs.size() < basis.coeffs.size()) out.coeffs.resize(basis.coeffs.size(), 0);
    for (std::size_t i = 0; i < basis.coeffs.size(); ++i) out.coeffs[i] += basis.coeffs[i] * Rational(newton[k]);
  }
  out.trim();
  return out;
}

}  // namespace detail

// Fits Q_{n mod W} to the data from some onset on. Among periods up to
// max_period the earliest onset wins, then the smaller period. Each residue
// needs deg+2 points in the window, so at least one point is checked beyond
// interpolation.
inline QuasiPolynomial fit_quasipolynomial(const std::map<std::int64_t, BigInt>& seq, std::int64_t max_period,
                                           std::int64_t max_degree) {
  if (seq.empty()) throw QuasiPolyFitError({"empty sequence", {}});
  const std::int64_t first = seq.begin()->first, last = seq.rbegin()->first;
  if (static_cast<std::int64_t>(seq.size()) != last - first + 1)
    throw QuasiPolyFitError({"sequence must cover a contiguous range of n", {}});
  FitFailure fail{"no quasi-polynomial with period <= " + std::to_string(max_period) + " and degree <= " +
                      std::to_string(max_degree) + " reproduces the tail",
                  {}};
  std::optional<QuasiPolynomial> best;
  for (std::int64_t W = 1; W <= max_period; ++W) {
    std::optional<QuasiPolynomial> found;
    for (std::int64_t n0 = first; n0 + 2 * W - 1 <= last && !found; ++n0) {
      if (best && n0 >= best->onset) break;
      QuasiPolynomial q;
      q.period = W;
      q.onset = n0;
      q.polys.resize(static_cast<std::size_t>(W));
      bool ok = true;
      for (std::int64_t r = 0; r < W && ok; ++r) {
        std::int64_t start = n0;
        while (((start % W) + W) % W != r) ++start;
        std::vector<BigInt> ys;
        for (std::int64_t n = start; n <= last; n += W) ys.push_back(seq.at(n));
        auto newton = detail::fit_residue(ys, max_degree);
        if (!newton) {
          ok = false;
          break;
        }
        // Newton coefficients are the binomial-basis coordinates in j; data is integral so
        // they are integers, which makes Q_r integer-valued on its residue class
        q.polys[static_cast<std::size_t>(r)] = detail::newton_to_monomial(*newton, start, W);
      }
      if (ok) found = q;
    }
    if (!found) {
      fail.diagnostics.push_back("W=" + std::to_string(W) + ": no onset with enough points");
      continue;
    }
    if (!best || found->onset < best->onset) best = found;
  }
  if (!best) throw QuasiPolyFitError(fail);
  const auto d0 = best->polys[0].degree();
  for (const auto& p : best->polys) best->leading_residue_dominates = best->leading_residue_dominates && p.degree() <= d0;
  return *best;
}

// Degree is the largest residue degree (deg Q_0 when Q_0 dominates); the
// coefficient averages the residues' coefficients at that degree.
inline LeadingMonomial average_order_leading(const QuasiPolynomial& q) {
  std::int64_t d = std::max<std::int64_t>(q.max_degree(), 0);
  Rational sum = 0;
  for (const auto& p : q.polys) sum += p.coefficient(d);
  return {d, sum / Rational(q.period)};
}

inline nlohmann::json to_json(const QuasiPolynomial& q) {
  nlohmann::json polys = nlohmann::json::array();
  for (const auto& p : q.polys) {
    nlohmann::json cs = nlohmann::json::array();
    for (const auto& c : p.coeffs) cs.push_back(to_string(c));
    polys.push_back(cs);
  }
  auto lead = average_order_leading(q);
  return {{"W", q.period},
          {"onset", q.onset},
          {"polys", polys},
          {"leading", {{"degree", lead.degree}, {"avg_coefficient", to_string(lead.coefficient)}}},
          {"leading_residue_dominates", q.leading_residue_dominates}};
}

}  // namespace hurwitz
