#include "tsqrt/tensor3.hpp"

#include <cmath>

#include "tsqrt/errors.hpp"

namespace tsqrt {

Tensor3 identity_tensor(std::size_t n, std::size_t p) {
    if (n < 1 || p < 1) throw DimensionMismatch("identity_tensor: n and p must be >= 1");
    Tensor3 t(n, n, p);
    for (std::size_t i = 0; i < n; ++i) t.at(i, i, 0) = 1.0;
    return t;
}

double frobenius_norm(const Tensor3& a) {
    double s = 0.0;
    for (double v : a.data) s += v * v;
    return std::sqrt(s);
}

Tensor3 operator+(const Tensor3& a, const Tensor3& b) {
    if (!a.same_shape(b)) throw DimensionMismatch("tensor add: shape mismatch");
    Tensor3 c = a;
    for (std::size_t i = 0; i < c.data.size(); ++i) c.data[i] += b.data[i];
    return c;
}

Tensor3 operator-(const Tensor3& a, const Tensor3& b) {
    if (!a.same_shape(b)) throw DimensionMismatch("tensor sub: shape mismatch");
    Tensor3 c = a;
    for (std::size_t i = 0; i < c.data.size(); ++i) c.data[i] -= b.data[i];
    return c;
}

Tensor3 operator*(double s, const Tensor3& a) {
    Tensor3 c = a;
    for (double& v : c.data) v *= s;
    return c;
}

}  // namespace tsqrt
