#include "fixtures.hpp"

#include <sstream>

namespace lsqca::testing {

std::string make_multiplier_qasm(std::uint32_t bits, std::uint32_t rows) {
    // registers: x[bits], y[bits], p[2*bits - 4], anc[4]  ->  4*bits qubits.
    // Two ancilla pairs alternate by column parity so neighbouring partial
    // products overlap, as the carry-save structure of the real circuit does.
    std::uint32_t pbits = 2 * bits - 4;
    std::ostringstream out;
    out << "OPENQASM 2.0;\n";
    out << "include \"qelib1.inc\";\n";
    out << "qreg x[" << bits << "];\n";
    out << "qreg y[" << bits << "];\n";
    out << "qreg p[" << pbits << "];\n";
    out << "qreg anc[4];\n";
    out << "creg c[" << pbits << "];\n";

    for (std::uint32_t i = 0; i < rows && i < bits; i++) {
        for (std::uint32_t j = 0; j + 1 < bits; j++) {
            std::uint32_t k = (i + j) % pbits;
            std::uint32_t k1 = (i + j + 1) % pbits;
            std::uint32_t a0 = 2 * (j % 2);
            std::uint32_t a1 = a0 + 1;
            out << "ccx x[" << i << "],y[" << j << "],anc[" << a0 << "];\n";
            out << "ccx anc[" << a0 << "],p[" << k << "],anc[" << a1 << "];\n";
            out << "cx anc[" << a0 << "],p[" << k << "];\n";
            out << "cx anc[" << a1 << "],p[" << k1 << "];\n";
            out << "ccx x[" << i << "],y[" << j << "],anc[" << a0 << "];\n";
        }
    }
    for (std::uint32_t k = 0; k < pbits; k++)
        out << "measure p[" << k << "] -> c[" << k << "];\n";
    return out.str();
}

}  // namespace lsqca::testing
