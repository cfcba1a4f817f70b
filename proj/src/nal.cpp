#include "iceid/nal.hpp"

#include <cmath>
#include <string>

namespace iceid {

double frequency(const Truth& t) {
    const double w = t.total();
    if (!(w > 0.0)) throw DomainError("frequency: no evidence");
    return t.w_plus / w;
}

double confidence(const Truth& t, const NalConfig& cfg) {
    const double w = t.total();
    if (w <= 0.0) return 0.0;
    return w / (w + cfg.k);
}

double expectation(const Truth& t, const NalConfig& cfg) {
    const double w = t.total();
    if (w <= 0.0) return 0.5;
    const double f = t.w_plus / w;
    const double c = w / (w + cfg.k);
    return c * (f - 0.5) + 0.5;
}

Truth truth_from_fc(double f, double c, const NalConfig& cfg) {
    if (!(f >= 0.0 && f <= 1.0) || std::isnan(f))
        throw DomainError("truth_from_fc: frequency outside [0,1]: " + std::to_string(f));
    if (!(c >= 0.0) || std::isnan(c))
        throw DomainError("truth_from_fc: negative confidence: " + std::to_string(c));
    if (c >= 1.0)
        throw DomainError("truth_from_fc: confidence must be < 1: " + std::to_string(c));
    const double w = cfg.k * c / (1.0 - c);
    return Truth{f * w, (1.0 - f) * w};
}

Truth revise(const Truth& a, const Truth& b) {
    return Truth{a.w_plus + b.w_plus, a.w_minus + b.w_minus};
}

}  // namespace iceid
