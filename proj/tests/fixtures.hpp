#pragma once

#include <cstdint>
#include <string>

namespace lsqca::testing {

// Deterministic shift-add multiplier benchmark in the qasm subset:
// x[bits] * y[bits] accumulated into a product register via Toffoli
// partial products and carry chains. `rows` limits how many partial-product
// rows are emitted to keep desk-scale runtimes; qubit count is 4*bits.
std::string make_multiplier_qasm(std::uint32_t bits, std::uint32_t rows);

// 400-qubit instance used by the acceptance suite
inline std::string make_multiplier_qasm_400() { return make_multiplier_qasm(100, 6); }

}  // namespace lsqca::testing
