#include "wfd/quantize.hpp"

#include <cmath>
#include <stdexcept>

namespace wfd {

Q14 quantize_value(double x) {
    if (std::abs(x) > 1.0 || std::isnan(x))
        throw std::out_of_range("quantize_value: input outside [-1, 1]");
    // scale and trim the remaining fraction; toward-zero keeps the map odd
    return Q14(static_cast<int>(std::trunc(x * Q14::kScale)));
}

Q14CoefficientBank quantize_bank(const FloatCoefficientBank& bank) {
    if (bank.real.size() != bank.imag.size() || bank.real.size() != bank.spec.tap_count)
        throw std::invalid_argument("quantize_bank: bank sizes disagree with its spec");

    const Eigen::Index n = bank.real.size();
    Q14Array real(n);
    Q14Array imag(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        real[i] = static_cast<std::int16_t>(quantize_value(bank.real[i]).value());
        imag[i] = static_cast<std::int16_t>(quantize_value(bank.imag[i]).value());
    }
    return {std::move(real), std::move(imag), bank.spec};
}

} // namespace wfd
