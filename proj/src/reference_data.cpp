#include "tsqrt/reference_data.hpp"

namespace tsqrt::golden {

namespace {

Tensor3 tensor_from_slices(std::size_t n, std::initializer_list<std::initializer_list<double>> slices) {
    Tensor3 t(n, n, slices.size());
    std::size_t k = 0;
    for (const auto& slice : slices) {
        std::size_t idx = 0;
        for (double v : slice) {
            t.at(idx / n, idx % n, k) = v;
            ++idx;
        }
        ++k;
    }
    return t;
}

RealMatrix matrix3(std::initializer_list<double> vals) {
    RealMatrix m(3, 3);
    std::size_t idx = 0;
    for (double v : vals) {
        m(idx / 3, idx % 3) = v;
        ++idx;
    }
    return m;
}

}  // namespace

Tensor3 well_conditioned_tensor() {
    return tensor_from_slices(3, {
        {3, 1, 0,
         1, 4, 1,
         0, 1, 3},
        {2, 0.5, 0,
         0.5, 2, 0.5,
         0, 0.5, 2},
        {1, 0, 0,
         0, 1, 0,
         0, 0, 1},
    });
}

Tensor3 well_conditioned_sqrt_printed() {
    return tensor_from_slices(3, {
        {1.63499, 0.29426, -0.02899,
         0.29426, 1.90498, 0.29426,
         -0.02899, 0.29426, 1.63499},
        {0.58655, 0.05896, -0.00286,
         0.05896, 0.49317, 0.05896,
         -0.00286, 0.05896, 0.58655},
        {0.20962, -0.05470, 0.01352,
         -0.05470, 0.21371, -0.05470,
         0.01352, -0.05470, 0.20962},
    });
}

Tensor3 ill_conditioned_tensor() {
    return tensor_from_slices(3, {
        {100, 5, 1,
         5, 20, 1,
         1, 1, 0.2},
        {25, 1, 0.3,
         1, 5, 0.2,
         0.3, 0.2, 0.1},
        {5, 0.2, 0.05,
         0.2, 1.5, 0.1,
         0.05, 0.1, 0.05},
    });
}

Tensor3 tbw_tensor_a() {
    return tensor_from_slices(3, {
        {4, 1, 0,
         1, 3, 1,
         0, 1, 2},
        {1, 0.5, 0,
         0.5, 1, 0.5,
         0, 0.5, 1},
        {1, 0.5, 0,
         0.5, 1, 0.5,
         0, 0.5, 1},
    });
}

Tensor3 tbw_tensor_b() {
    return tensor_from_slices(3, {
        {5, 2, 0,
         2, 4, 1,
         0, 1, 3},
        {2, 0.5, 0,
         0.5, 2, 0.5,
         0, 0.5, 2},
        {2, 0.5, 0,
         0.5, 2, 0.5,
         0, 0.5, 2},
    });
}

imaging::ImageTensor toy_image() {
    imaging::ImageTensor img(2, 2, 3);
    const double r[4] = {1, 2, 3, 4};
    const double g[4] = {2, 1, 4, 3};
    const double b[4] = {1, 3, 2, 4};
    for (std::size_t idx = 0; idx < 4; ++idx) {
        img.at(idx / 2, idx % 2, 0) = r[idx];
        img.at(idx / 2, idx % 2, 1) = g[idx];
        img.at(idx / 2, idx % 2, 2) = b[idx];
    }
    return img;
}

RealMatrix toy_channel_covariance_printed() {
    return matrix3({1.25, 0.75, 0.75,
                    0.75, 1.25, 0.25,
                    0.75, 0.25, 1.25});
}

RealMatrix toy_covariance_inv_sqrt_printed() {
    return matrix3({1.12, -0.32, -0.28,
                    -0.32, 1.18, -0.08,
                    -0.28, -0.08, 1.20});
}

RealMatrix toy_grayscale_printed() {
    RealMatrix m(2, 2);
    m(0, 0) = -1.13;
    m(0, 1) = -0.49;
    m(1, 0) = 0.49;
    m(1, 1) = 1.13;
    return m;
}

}  // namespace tsqrt::golden
