// Shared success-probability fixtures for the statistics tests.
//
// Four of the 2-qubit values are exact reference numbers (S0+ = 0.963,
// S0- = 0.986 and the interval bounds S3+ = 0.950, S1- = 0.997); the
// remaining bars are approximate chart reads. Two 2-qubit sets are kept:
// one whose mean lands on the reference 97.4% average, and one whose
// spread lands on the reference ±0.130% ensemble margin. The reference
// mean and margin are not simultaneously consistent with the margin
// formula, so each fixture pins down one of the two.

#pragma once

#include <vector>

namespace fixtures {

// order: S_m^+ for m = 0..3, then S_m^- for m = 0..3
inline const std::vector<double> two_qubit_mean_true = {
    0.963, 0.960, 0.968, 0.950,  // positives
    0.986, 0.997, 0.983, 0.985,  // negatives
};

inline const std::vector<double> two_qubit_margin_true = {
    0.963, 0.996, 0.996, 0.950,
    0.986, 0.997, 0.996, 0.996,
};

// order: S_m^+ for m = 0..7, then S_m^- for m = 0..7. Every operator whose
// circuit needs a Toffoli sits visibly lower.
inline const std::vector<double> three_qubit_values = {
    0.960, 0.790, 0.940, 0.780, 0.950, 0.770, 0.930, 0.713,  // positives
    0.800, 0.955, 0.790, 0.978, 0.810, 0.945, 0.820, 0.965,  // negatives
};

}  // namespace fixtures
