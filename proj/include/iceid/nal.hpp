#pragma once

#include "iceid/errors.hpp"

namespace iceid {

// Evidential horizon constant. k controls how fast confidence approaches 1
// as evidence accumulates: c = w / (w + k).
struct NalConfig {
    double k = 1.0;

    void validate() const {
        if (!(k > 0.0)) throw ConfigError("NalConfig: k must be > 0");
    }
};

// A truth value stored as raw evidence counts. Frequency/confidence are
// derived views; keeping the counts makes revision exact addition and rules
// out fabricated evidence by construction.
struct Truth {
    double w_plus = 0.0;
    double w_minus = 0.0;

    double total() const { return w_plus + w_minus; }
    bool has_evidence() const { return total() > 0.0; }

    bool operator==(const Truth&) const = default;
};

// w+ / (w+ + w-). Throws DomainError on zero total evidence.
double frequency(const Truth& t);

// (w+ + w-) / (w+ + w- + k). Zero when there is no evidence.
double confidence(const Truth& t, const NalConfig& cfg);

// c * (f - 0.5) + 0.5; exactly 0.5 for zero evidence (maximal ignorance).
double expectation(const Truth& t, const NalConfig& cfg);

// Inverse of the (frequency, confidence) mapping: w = k*c/(1-c), w+ = f*w.
// Requires f in [0,1] and c in [0,1).
Truth truth_from_fc(double f, double c, const NalConfig& cfg);

// Evidence-space sum. Callers are responsible for source independence.
Truth revise(const Truth& a, const Truth& b);

}  // namespace iceid
