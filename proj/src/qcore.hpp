// qcore.hpp
// Exact finite-dimensional quantum mechanics over 1-3 qubits: pure states,
// density matrices, gates, projective measurement enumeration, POVM elements,
// partial trace and fidelity.

#pragma once

#include <array>
#include <complex>
#include <optional>
#include <utility>
#include <vector>

namespace rsp {

using Complex = std::complex<double>;

inline constexpr double kNormTol = 1e-12;
inline constexpr double kDegenerateProb = 1e-15;

// The (theta, phi) pair defining |phi> on the Bloch sphere,
// theta in [0, pi/2], phi in [0, 2*pi).
struct TargetQubit {
    double theta;
    double phi;
};

// Normalized amplitude vector over 1-3 qubits.
// Basis ordering is big-endian: index bit i is qubit i, qubit 0 leftmost.
class PureState {
public:
    PureState(int num_qubits, std::vector<Complex> amplitudes);

    static PureState basis(int num_qubits, std::size_t index);

    int num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return amps_.size(); }
    const std::vector<Complex>& amplitudes() const { return amps_; }
    Complex amplitude(std::size_t i) const { return amps_.at(i); }

    // <this|other>
    Complex inner_product(const PureState& other) const;

    // |this> (x) |other>, this occupying the leading qubits
    PureState tensor(const PureState& other) const;

private:
    int num_qubits_;
    std::vector<Complex> amps_;
};

// Hermitian, positive, unit-trace matrix (trace renormalized on construction).
class DensityMatrix {
public:
    DensityMatrix(std::size_t dimension, std::vector<Complex> entries);

    static DensityMatrix from_pure(const PureState& state);

    std::size_t dimension() const { return dim_; }
    Complex entry(std::size_t row, std::size_t col) const;
    const std::vector<Complex>& entries() const { return entries_; }

    // Tr(rho^2); equals 1 for pure states
    double purity() const;

    // <left|rho|right>
    Complex matrix_element(const PureState& left, const PureState& right) const;

private:
    std::size_t dim_;
    std::vector<Complex> entries_;  // row-major
};

// Unitary on 1 or 2 qubits.
class Gate {
public:
    Gate(int arity, std::vector<Complex> matrix);

    int arity() const { return arity_; }
    const std::vector<Complex>& matrix() const { return matrix_; }

    static const Gate& identity();
    static const Gate& sigma_x();
    static const Gate& sigma_z();
    static const Gate& hadamard();
    // Control is the first target qubit.
    static const Gate& cnot();

private:
    int arity_;
    std::vector<Complex> matrix_;
};

// Single-qubit generalized-measurement element M with M'M <= I.
class PovmElement {
public:
    explicit PovmElement(std::array<Complex, 4> matrix);

    static PovmElement diagonal(double d0, double d1);

    const std::array<Complex, 4>& matrix() const { return matrix_; }

private:
    std::array<Complex, 4> matrix_;
};

struct MeasurementBranch {
    int outcome;
    double probability;
    std::optional<PureState> state;  // null marker on zero-probability branches
};

enum class FidelityConvention {
    probability,  // <target|rho|target>
    overlap,      // |<actual|target>|
};

struct Fidelity {
    double value;
    FidelityConvention convention;
};

// cos(theta)|0> + sin(theta) e^{i phi}|1>; with companion set, the orthonormal
// partner sin(theta)|0> - cos(theta) e^{i phi}|1>.
PureState make_target_state(double theta, double phi, bool companion = false);
PureState make_target_state(const TargetQubit& target, bool companion = false);

PureState apply_gate(const PureState& state, const Gate& gate,
                     const std::vector<int>& targets);

// Enumerates both outcomes of a computational-basis measurement of one qubit.
// Probabilities are normalized to sum to exactly 1; post-states keep the full
// register with the measured qubit collapsed.
std::vector<MeasurementBranch> measure_enumerate(const PureState& state, int qubit);

// Returns (probability, renormalized M|state>); throws when the branch is
// degenerate (probability below kDegenerateProb).
std::pair<double, PureState> apply_povm_element(const PureState& state,
                                                const PovmElement& element,
                                                int qubit);

DensityMatrix partial_trace(const PureState& state, const std::vector<int>& keep);
DensityMatrix partial_trace(const DensityMatrix& rho, int num_qubits,
                            const std::vector<int>& keep);

Fidelity fidelity(const PureState& target, const PureState& actual);
Fidelity fidelity(const PureState& target, const DensityMatrix& actual);

// |<a|b>| >= 1 - kNormTol; the equivalence used by all protocol postconditions.
bool phase_equivalent(const PureState& a, const PureState& b);

// Removes a qubit that a measurement has collapsed to |outcome>.
PureState drop_measured_qubit(const PureState& state, int qubit, int outcome);

}  // namespace rsp
