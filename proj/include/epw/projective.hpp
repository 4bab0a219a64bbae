#pragma once

#include "epw/field.hpp"

#include <vector>

namespace epw {

/// Iterator over canonical representatives of P^{n-1}(F_q): first nonzero
/// coordinate normalized to 1.  Order: leading position 0 first, then the
/// trailing free coordinates in odometer order (last coordinate fastest,
/// elements by canonical index).  This order is what fixes witness
/// determinism across the tool.
class ProjectivePoints {
 public:
  ProjectivePoints(const Field& F, size_t n) : F_(F), n_(n) {}

  uint64_t count() const {
    uint64_t q = F_.size(), t = 1, total = 0;
    for (size_t i = 0; i < n_; ++i) { total += t; t *= q; }
    return total;  // (q^n - 1)/(q - 1)
  }

  /// Visits every point once; f receives the normalized coordinate vector.
  template <typename Fn>
  void for_each(Fn&& f) const {
    uint64_t q = F_.size();
    std::vector<Fel> v(n_, F_.zero());
    std::vector<uint64_t> digits;
    for (size_t lead = 0; lead < n_; ++lead) {
      for (size_t i = 0; i < n_; ++i) v[i] = F_.zero();
      v[lead] = F_.one();
      size_t nfree = n_ - lead - 1;
      digits.assign(nfree, 0);
      while (true) {
        for (size_t i = 0; i < nfree; ++i)
          v[lead + 1 + i] = F_.element_from_index(digits[i]);
        f(v);
        size_t pos = nfree;
        while (pos > 0) {
          if (++digits[pos - 1] < q) break;
          digits[pos - 1] = 0;
          --pos;
        }
        if (pos == 0) break;
      }
    }
  }

 private:
  const Field& F_;
  size_t n_;
};

/// Normalizes a nonzero vector so its first nonzero coordinate is 1.
inline std::vector<Fel> normalize_point(const Field& F, std::vector<Fel> v) {
  for (size_t i = 0; i < v.size(); ++i) {
    if (!F.is_zero(v[i])) {
      Fel d = F.inv(v[i]);
      for (size_t j = i; j < v.size(); ++j) v[j] = F.mul(v[j], d);
      return v;
    }
  }
  throw error("cannot normalize the zero vector");
}

}  // namespace epw
