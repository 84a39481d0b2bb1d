#pragma once

#include "cohomkit/resolution.hpp"

namespace cohomkit {

/// Hom over the group ring from an explicit resolution into a coefficient module N (trivial
/// Z or Z/c by default). A cochain of degree n lists f(e_k) in N for each generator e_k of P_n.
class CochainComplex {
 public:
  CochainComplex(const Resolution& res, Modulus coefficients = Modulus())
      : CochainComplex(res, std::move(coefficients), trivial_actions(*res.group), 1) {}

  CochainComplex(const Resolution& res, Modulus coefficients, ElementActions target, std::size_t target_dim)
      : res_(&res), modulus_(std::move(coefficients)), target_(std::move(target)), dim_(target_dim) {
    if (target_.size() != res.group->order()) throw DimensionMismatch("one action matrix per element");
  }

  const Resolution& resolution() const { return *res_; }
  const Modulus& modulus() const { return modulus_; }
  std::size_t length() const { return res_->length(); }
  std::size_t dimension(std::size_t n) const { return res_->ranks.at(n) * dim_; }

  /// delta^n : C^n -> C^{n+1}, (delta f)(e) = f(d e).
  IntMatrix coboundary(std::size_t n) const {
    const auto& g = *res_->group;
    const std::size_t order = g.order();
    const IntMatrix& images = res_->images.at(n + 1);
    IntMatrix out(dimension(n + 1), dimension(n));
    for (std::size_t kp = 0; kp < res_->ranks[n + 1]; ++kp)
      for (std::size_t j = 0; j < res_->ranks[n]; ++j)
        for (std::size_t h = 0; h < order; ++h) {
          const Integer& a = images(j * order + h, kp);
          if (a == 0) continue;
          const IntMatrix& act = target_[h];
          for (std::size_t r = 0; r < dim_; ++r)
            for (std::size_t c = 0; c < dim_; ++c)
              if (act(r, c) != 0) out(kp * dim_ + r, j * dim_ + c) += a * act(r, c);
        }
    return modulus_.is_integral() ? out : out.reduced(modulus_.value());
  }

  /// H^n = ker delta^n / im delta^{n-1}; needs P_{n+1}.
  Subquotient cohomology(std::size_t n) const {
    if (n + 1 > length()) throw InvalidArgument("cohomology needs the resolution to reach degree n + 1");
    const IntMatrix a = n == 0 ? IntMatrix(dimension(0), 0) : coboundary(n - 1);
    return subquotient(a, coboundary(n), dimension(n), modulus_);
  }

 private:
  const Resolution* res_;
  Modulus modulus_;
  ElementActions target_;
  std::size_t dim_;
};

}  // namespace cohomkit
