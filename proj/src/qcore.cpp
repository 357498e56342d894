#include "qcore.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rsp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Big-endian bit position of `qubit` in an n-qubit index.
inline std::size_t qubit_mask(int num_qubits, int qubit) {
    return std::size_t{1} << (num_qubits - 1 - qubit);
}

void check_qubit_index(int num_qubits, int qubit) {
    if (qubit < 0 || qubit >= num_qubits) {
        throw std::domain_error("qubit index " + std::to_string(qubit) +
                                " out of range for " + std::to_string(num_qubits) +
                                "-qubit state");
    }
}

double vector_norm(const std::vector<Complex>& v) {
    double s = 0.0;
    for (const auto& a : v) s += std::norm(a);
    return std::sqrt(s);
}

}  // namespace

PureState::PureState(int num_qubits, std::vector<Complex> amplitudes)
    : num_qubits_(num_qubits), amps_(std::move(amplitudes)) {
    if (num_qubits_ < 1 || num_qubits_ > 3) {
        throw std::domain_error("num_qubits must be in {1,2,3}, got " +
                                std::to_string(num_qubits_));
    }
    if (amps_.size() != (std::size_t{1} << num_qubits_)) {
        throw std::invalid_argument("amplitude vector size does not match qubit count");
    }
    const double norm = vector_norm(amps_);
    if (norm < 1e-15) {
        throw std::invalid_argument("cannot normalize a zero amplitude vector");
    }
    for (auto& a : amps_) a /= norm;
}

PureState PureState::basis(int num_qubits, std::size_t index) {
    std::vector<Complex> amps(std::size_t{1} << num_qubits, Complex{0.0, 0.0});
    amps.at(index) = Complex{1.0, 0.0};
    return PureState(num_qubits, std::move(amps));
}

Complex PureState::inner_product(const PureState& other) const {
    if (num_qubits_ != other.num_qubits_) {
        throw std::domain_error("inner product requires equal qubit counts");
    }
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        acc += std::conj(amps_[i]) * other.amps_[i];
    }
    return acc;
}

PureState PureState::tensor(const PureState& other) const {
    std::vector<Complex> out;
    out.reserve(amps_.size() * other.amps_.size());
    for (const auto& a : amps_) {
        for (const auto& b : other.amps_) out.push_back(a * b);
    }
    return PureState(num_qubits_ + other.num_qubits_, std::move(out));
}

DensityMatrix::DensityMatrix(std::size_t dimension, std::vector<Complex> entries)
    : dim_(dimension), entries_(std::move(entries)) {
    if (dim_ < 2 || entries_.size() != dim_ * dim_) {
        throw std::invalid_argument("density matrix entries do not match dimension");
    }
    double trace = 0.0;
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = r; c < dim_; ++c) {
            const Complex upper = entries_[r * dim_ + c];
            const Complex lower = entries_[c * dim_ + r];
            if (std::abs(upper - std::conj(lower)) > kNormTol) {
                throw std::domain_error("density matrix is not Hermitian");
            }
        }
        if (entries_[r * dim_ + r].real() < -kNormTol) {
            throw std::domain_error("density matrix has a negative diagonal entry");
        }
        trace += entries_[r * dim_ + r].real();
    }
    if (std::abs(trace - 1.0) > 1e-9) {
        throw std::domain_error("density matrix trace is not 1");
    }
    for (auto& e : entries_) e /= trace;
    if (dim_ == 2) {
        const double mean = 0.5 * (entries_[0].real() + entries_[3].real());
        const double half = 0.5 * (entries_[0].real() - entries_[3].real());
        const double radius = std::sqrt(half * half + std::norm(entries_[1]));
        if (mean - radius < -kNormTol) {
            throw std::domain_error("density matrix has a negative eigenvalue");
        }
    }
}

DensityMatrix DensityMatrix::from_pure(const PureState& state) {
    const auto& amps = state.amplitudes();
    const std::size_t d = amps.size();
    std::vector<Complex> entries(d * d);
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            entries[r * d + c] = amps[r] * std::conj(amps[c]);
        }
    }
    return DensityMatrix(d, std::move(entries));
}

Complex DensityMatrix::entry(std::size_t row, std::size_t col) const {
    return entries_.at(row * dim_ + col);
}

double DensityMatrix::purity() const {
    double acc = 0.0;
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = 0; c < dim_; ++c) {
            acc += (entries_[r * dim_ + c] * entries_[c * dim_ + r]).real();
        }
    }
    return acc;
}

Complex DensityMatrix::matrix_element(const PureState& left, const PureState& right) const {
    if (left.dim() != dim_ || right.dim() != dim_) {
        throw std::domain_error("matrix element requires matching dimensions");
    }
    Complex acc{0.0, 0.0};
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = 0; c < dim_; ++c) {
            acc += std::conj(left.amplitude(r)) * entries_[r * dim_ + c] *
                   right.amplitude(c);
        }
    }
    return acc;
}

Gate::Gate(int arity, std::vector<Complex> matrix)
    : arity_(arity), matrix_(std::move(matrix)) {
    if (arity_ < 1 || arity_ > 2) {
        throw std::domain_error("gate arity must be 1 or 2");
    }
    const std::size_t d = std::size_t{1} << arity_;
    if (matrix_.size() != d * d) {
        throw std::invalid_argument("gate matrix size does not match arity");
    }
    // unitarity: U U' = I
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            Complex acc{0.0, 0.0};
            for (std::size_t k = 0; k < d; ++k) {
                acc += matrix_[r * d + k] * std::conj(matrix_[c * d + k]);
            }
            const Complex expected = (r == c) ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
            if (std::abs(acc - expected) > kNormTol) {
                throw std::domain_error("gate matrix is not unitary");
            }
        }
    }
}

const Gate& Gate::identity() {
    static const Gate g(1, {Complex{1, 0}, Complex{0, 0}, Complex{0, 0}, Complex{1, 0}});
    return g;
}

const Gate& Gate::sigma_x() {
    static const Gate g(1, {Complex{0, 0}, Complex{1, 0}, Complex{1, 0}, Complex{0, 0}});
    return g;
}

const Gate& Gate::sigma_z() {
    static const Gate g(1, {Complex{1, 0}, Complex{0, 0}, Complex{0, 0}, Complex{-1, 0}});
    return g;
}

const Gate& Gate::hadamard() {
    static const double h = 1.0 / std::numbers::sqrt2;
    static const Gate g(1, {Complex{h, 0}, Complex{h, 0}, Complex{h, 0}, Complex{-h, 0}});
    return g;
}

const Gate& Gate::cnot() {
    static const Gate g(2, {Complex{1, 0}, {}, {}, {},
                            {}, Complex{1, 0}, {}, {},
                            {}, {}, {}, Complex{1, 0},
                            {}, {}, Complex{1, 0}, {}});
    return g;
}

PovmElement::PovmElement(std::array<Complex, 4> matrix) : matrix_(matrix) {
    // eigenvalues of M'M must lie in [0, 1] (within kNormTol)
    const Complex a = std::conj(matrix_[0]) * matrix_[0] + std::conj(matrix_[2]) * matrix_[2];
    const Complex b = std::conj(matrix_[0]) * matrix_[1] + std::conj(matrix_[2]) * matrix_[3];
    const Complex d = std::conj(matrix_[1]) * matrix_[1] + std::conj(matrix_[3]) * matrix_[3];
    const double mean = 0.5 * (a.real() + d.real());
    const double half = 0.5 * (a.real() - d.real());
    const double radius = std::sqrt(half * half + std::norm(b));
    if (mean - radius < -kNormTol || mean + radius > 1.0 + kNormTol) {
        throw std::domain_error("POVM element M'M has eigenvalues outside [0, 1]");
    }
}

PovmElement PovmElement::diagonal(double d0, double d1) {
    return PovmElement({Complex{d0, 0}, Complex{0, 0}, Complex{0, 0}, Complex{d1, 0}});
}

PureState make_target_state(double theta, double phi, bool companion) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi / 2.0)) {
        throw std::domain_error("theta must lie in [0, pi/2], got " + std::to_string(theta));
    }
    if (!(phi >= 0.0 && phi < kTwoPi)) {
        throw std::domain_error("phi must lie in [0, 2*pi), got " + std::to_string(phi));
    }
    const Complex phase = std::polar(1.0, phi);
    if (companion) {
        return PureState(1, {Complex{std::sin(theta), 0.0}, -std::cos(theta) * phase});
    }
    return PureState(1, {Complex{std::cos(theta), 0.0}, std::sin(theta) * phase});
}

PureState make_target_state(const TargetQubit& target, bool companion) {
    return make_target_state(target.theta, target.phi, companion);
}

PureState apply_gate(const PureState& state, const Gate& gate,
                     const std::vector<int>& targets) {
    const int n = state.num_qubits();
    const int arity = gate.arity();
    if (static_cast<int>(targets.size()) != arity) {
        throw std::domain_error("gate arity does not match target count");
    }
    for (int t : targets) check_qubit_index(n, t);
    if (arity == 2 && targets[0] == targets[1]) {
        throw std::domain_error("gate targets must be distinct");
    }

    const std::size_t dim = state.dim();
    const std::size_t sub = std::size_t{1} << arity;
    std::array<std::size_t, 2> masks{};
    std::size_t all_targets = 0;
    for (int i = 0; i < arity; ++i) {
        masks[i] = qubit_mask(n, targets[i]);
        all_targets |= masks[i];
    }
    // gate index bit j (MSB first) corresponds to targets[j]
    auto spread = [&](std::size_t g) {
        std::size_t m = 0;
        for (int j = 0; j < arity; ++j) {
            if ((g >> (arity - 1 - j)) & 1u) m |= masks[j];
        }
        return m;
    };

    const auto& m = gate.matrix();
    const auto& in = state.amplitudes();
    std::vector<Complex> out(dim);
    for (std::size_t base = 0; base < dim; ++base) {
        if (base & all_targets) continue;
        for (std::size_t r = 0; r < sub; ++r) {
            Complex acc{0.0, 0.0};
            for (std::size_t c = 0; c < sub; ++c) {
                acc += m[r * sub + c] * in[base | spread(c)];
            }
            out[base | spread(r)] = acc;
        }
    }
    return PureState(n, std::move(out));
}

std::vector<MeasurementBranch> measure_enumerate(const PureState& state, int qubit) {
    const int n = state.num_qubits();
    check_qubit_index(n, qubit);
    const std::size_t mask = qubit_mask(n, qubit);
    const auto& amps = state.amplitudes();

    std::array<double, 2> raw{0.0, 0.0};
    for (std::size_t k = 0; k < amps.size(); ++k) {
        raw[(k & mask) ? 1 : 0] += std::norm(amps[k]);
    }
    const double total = raw[0] + raw[1];

    std::vector<MeasurementBranch> branches;
    branches.reserve(2);
    for (int outcome = 0; outcome < 2; ++outcome) {
        const double p = raw[outcome] / total;
        std::optional<PureState> post;
        if (p >= kDegenerateProb) {
            std::vector<Complex> collapsed(amps.size(), Complex{0.0, 0.0});
            for (std::size_t k = 0; k < amps.size(); ++k) {
                if (((k & mask) ? 1 : 0) == outcome) collapsed[k] = amps[k];
            }
            post = PureState(n, std::move(collapsed));
        }
        branches.push_back({outcome, p, std::move(post)});
    }
    return branches;
}

std::pair<double, PureState> apply_povm_element(const PureState& state,
                                                const PovmElement& element,
                                                int qubit) {
    const int n = state.num_qubits();
    check_qubit_index(n, qubit);
    const std::size_t mask = qubit_mask(n, qubit);
    const auto& m = element.matrix();
    const auto& in = state.amplitudes();

    std::vector<Complex> out(in.size());
    for (std::size_t base = 0; base < in.size(); ++base) {
        if (base & mask) continue;
        out[base] = m[0] * in[base] + m[1] * in[base | mask];
        out[base | mask] = m[2] * in[base] + m[3] * in[base | mask];
    }
    double probability = 0.0;
    for (const auto& a : out) probability += std::norm(a);
    if (probability < kDegenerateProb) {
        throw std::domain_error("POVM branch is degenerate: no renormalizable state");
    }
    return {probability, PureState(n, std::move(out))};
}

namespace {

void check_keep_set(int num_qubits, const std::vector<int>& keep) {
    if (keep.empty()) throw std::domain_error("partial trace keep set is empty");
    if (static_cast<int>(keep.size()) >= num_qubits) {
        throw std::domain_error("partial trace keep set must be a proper subset");
    }
    for (std::size_t i = 0; i < keep.size(); ++i) {
        check_qubit_index(num_qubits, keep[i]);
        if (i > 0 && keep[i] <= keep[i - 1]) {
            throw std::domain_error("partial trace keep set must be strictly increasing");
        }
    }
}

// Builds the full-register index from kept-subsystem and environment indices.
struct TraceIndexer {
    TraceIndexer(int num_qubits, const std::vector<int>& keep) {
        std::vector<bool> kept(num_qubits, false);
        for (int k : keep) kept[k] = true;
        for (int q = 0; q < num_qubits; ++q) {
            const std::size_t mask = std::size_t{1} << (num_qubits - 1 - q);
            if (kept[q]) keep_masks.push_back(mask);
            else env_masks.push_back(mask);
        }
    }

    std::size_t compose(std::size_t kept_index, std::size_t env_index) const {
        std::size_t idx = 0;
        for (std::size_t j = 0; j < keep_masks.size(); ++j) {
            if ((kept_index >> (keep_masks.size() - 1 - j)) & 1u) idx |= keep_masks[j];
        }
        for (std::size_t j = 0; j < env_masks.size(); ++j) {
            if ((env_index >> (env_masks.size() - 1 - j)) & 1u) idx |= env_masks[j];
        }
        return idx;
    }

    std::vector<std::size_t> keep_masks;
    std::vector<std::size_t> env_masks;
};

}  // namespace

DensityMatrix partial_trace(const PureState& state, const std::vector<int>& keep) {
    const int n = state.num_qubits();
    check_keep_set(n, keep);
    const TraceIndexer idx(n, keep);
    const std::size_t kd = std::size_t{1} << keep.size();
    const std::size_t ed = std::size_t{1} << (n - static_cast<int>(keep.size()));
    const auto& amps = state.amplitudes();

    std::vector<Complex> rho(kd * kd, Complex{0.0, 0.0});
    for (std::size_t r = 0; r < kd; ++r) {
        for (std::size_t c = 0; c < kd; ++c) {
            Complex acc{0.0, 0.0};
            for (std::size_t e = 0; e < ed; ++e) {
                acc += amps[idx.compose(r, e)] * std::conj(amps[idx.compose(c, e)]);
            }
            rho[r * kd + c] = acc;
        }
    }
    return DensityMatrix(kd, std::move(rho));
}

DensityMatrix partial_trace(const DensityMatrix& rho, int num_qubits,
                            const std::vector<int>& keep) {
    if (rho.dimension() != (std::size_t{1} << num_qubits)) {
        throw std::domain_error("density matrix dimension does not match qubit count");
    }
    check_keep_set(num_qubits, keep);
    const TraceIndexer idx(num_qubits, keep);
    const std::size_t kd = std::size_t{1} << keep.size();
    const std::size_t ed = std::size_t{1} << (num_qubits - static_cast<int>(keep.size()));

    std::vector<Complex> out(kd * kd, Complex{0.0, 0.0});
    for (std::size_t r = 0; r < kd; ++r) {
        for (std::size_t c = 0; c < kd; ++c) {
            Complex acc{0.0, 0.0};
            for (std::size_t e = 0; e < ed; ++e) {
                acc += rho.entry(idx.compose(r, e), idx.compose(c, e));
            }
            out[r * kd + c] = acc;
        }
    }
    return DensityMatrix(kd, std::move(out));
}

Fidelity fidelity(const PureState& target, const PureState& actual) {
    if (target.num_qubits() != 1) {
        throw std::domain_error("fidelity target must be a single-qubit pure state");
    }
    if (target.dim() != actual.dim()) {
        throw std::domain_error("fidelity requires matching dimensions");
    }
    return {std::abs(actual.inner_product(target)), FidelityConvention::overlap};
}

Fidelity fidelity(const PureState& target, const DensityMatrix& actual) {
    if (target.num_qubits() != 1) {
        throw std::domain_error("fidelity target must be a single-qubit pure state");
    }
    if (target.dim() != actual.dimension()) {
        throw std::domain_error("fidelity requires matching dimensions");
    }
    return {actual.matrix_element(target, target).real(), FidelityConvention::probability};
}

bool phase_equivalent(const PureState& a, const PureState& b) {
    if (a.dim() != b.dim()) return false;
    return std::abs(a.inner_product(b)) >= 1.0 - kNormTol;
}

PureState drop_measured_qubit(const PureState& state, int qubit, int outcome) {
    const int n = state.num_qubits();
    check_qubit_index(n, qubit);
    if (n == 1) throw std::domain_error("cannot drop the only qubit");
    if (outcome != 0 && outcome != 1) throw std::domain_error("outcome must be 0 or 1");

    const std::size_t mask = qubit_mask(n, qubit);
    const auto& amps = state.amplitudes();
    double leak = 0.0;
    for (std::size_t k = 0; k < amps.size(); ++k) {
        if (((k & mask) ? 1 : 0) != outcome) leak += std::norm(amps[k]);
    }
    if (leak > kNormTol) {
        throw std::domain_error("qubit is not collapsed to the requested outcome");
    }

    std::vector<Complex> out(amps.size() / 2);
    const std::size_t low = mask - 1;            // bits below the dropped qubit
    for (std::size_t k = 0; k < out.size(); ++k) {
        const std::size_t high = (k & ~low) << 1;
        std::size_t src = high | (k & low);
        if (outcome == 1) src |= mask;
        out[k] = amps[src];
    }
    return PureState(n - 1, std::move(out));
}

}  // namespace rsp
