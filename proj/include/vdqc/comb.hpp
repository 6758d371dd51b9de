// Copyright 2026 The vdqc-cutchoose Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * n-combs: networks with n ordered holes for the server's round channels,
 * interleaved with n+1 teeth acting on the test registers and a memory.
 *
 * Wire layout. The work space is X_1 (x) ... (x) X_W (x) M, with W test
 * registers of k qubits each (X_1 most significant) and a memory of
 * `memory_qubits` qubits initialized to |0...0>. Hole i acts on register
 * hole_register[i]; every other wire stays in the network for that hole.
 * Tooth j (j = 0..n) acts on the whole work space after hole j and before
 * hole j+1. The memory is traced out after the last tooth.
 */

#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "channel.hpp"
#include "quantum_objects.hpp"
#include "random.hpp"

namespace vdqc {

/// Embeds an operator acting on the listed qubit wires (first wire most
/// significant) into a register of `n_qubits` qubits, wire 0 most significant.
inline ComplexMatrix lift_operator(const ComplexMatrix &op, const std::vector<std::size_t> &wires,
                                   std::size_t n_qubits) {
    const std::size_t m = wires.size();
    if (!op.is_square() || op.rows() != pow2(m)) {
        throw DimensionError("lift_operator: operator " + op.shape() + " does not act on " +
                             std::to_string(m) + " qubits");
    }
    for (std::size_t a = 0; a < m; ++a) {
        if (wires[a] >= n_qubits) {
            throw DimensionError("lift_operator: wire " + std::to_string(wires[a]) +
                                 " outside 0.." + std::to_string(n_qubits - 1));
        }
        for (std::size_t b = 0; b < a; ++b) {
            if (wires[a] == wires[b]) {
                throw ContractViolation("lift_operator: repeated wire " + std::to_string(wires[a]));
            }
        }
    }
    const std::size_t d = pow2(n_qubits);
    auto bit = [&](std::size_t w) { return std::size_t{1} << (n_qubits - 1 - w); };
    ComplexMatrix out(d, d);
    for (std::size_t x = 0; x < d; ++x) {
        std::size_t s = 0;
        std::size_t rest = x;
        for (std::size_t a = 0; a < m; ++a) {
            s = (s << 1) | ((x & bit(wires[a])) != 0 ? 1 : 0);
            rest &= ~bit(wires[a]);
        }
        for (std::size_t t = 0; t < op.rows(); ++t) {
            const cplx v = op(t, s);
            if (v == cplx{}) {
                continue;
            }
            std::size_t y = rest;
            for (std::size_t a = 0; a < m; ++a) {
                if (((t >> (m - 1 - a)) & 1U) != 0) {
                    y |= bit(wires[a]);
                }
            }
            out(y, x) = v;
        }
    }
    return out;
}

/**
 * @brief Permutation unitary on W registers of k qubits followed by
 * `trailing_qubits` untouched qubits: the content of register r moves to
 * register perm[r].
 */
inline ComplexMatrix register_permutation(const std::vector<std::size_t> &perm, std::size_t k,
                                          std::size_t trailing_qubits = 0) {
    const std::size_t w = perm.size();
    std::vector<bool> seen(w, false);
    for (std::size_t r : perm) {
        if (r >= w || seen[r]) {
            throw ContractViolation("register_permutation: not a permutation of 0.." +
                                    std::to_string(w == 0 ? 0 : w - 1));
        }
        seen[r] = true;
    }
    const std::size_t n_qubits = k * w + trailing_qubits;
    const std::size_t d = pow2(n_qubits);
    const std::size_t reg_dim = pow2(k);
    const std::size_t tail_dim = pow2(trailing_qubits);
    ComplexMatrix p(d, d);
    for (std::size_t x = 0; x < d; ++x) {
        const std::size_t tail = x % tail_dim;
        std::size_t head = x / tail_dim;
        std::vector<std::size_t> regs(w);
        for (std::size_t r = w; r-- > 0;) {
            regs[r] = head % reg_dim;
            head /= reg_dim;
        }
        std::vector<std::size_t> moved(w);
        for (std::size_t r = 0; r < w; ++r) {
            moved[perm[r]] = regs[r];
        }
        std::size_t y = 0;
        for (std::size_t r = 0; r < w; ++r) {
            y = y * reg_dim + moved[r];
        }
        p(y * tail_dim + tail, x) = 1.0;
    }
    return p;
}

class Comb {
  public:
    /**
     * @param k              qubits per register and per hole
     * @param registers      W, number of test registers
     * @param memory_qubits  size of the internal memory
     * @param hole_register  register index (0-based) of each hole, in order
     * @param teeth          n_holes + 1 channels on the work space
     * @param cap            limit on the work-space dimension
     */
    Comb(std::size_t k, std::size_t registers, std::size_t memory_qubits,
         std::vector<std::size_t> hole_register, std::vector<Channel> teeth,
         std::size_t cap = 256)
        : k_(k), w_(registers), mq_(memory_qubits), holes_(std::move(hole_register)),
          teeth_(std::move(teeth)) {
        if (k_ == 0 || w_ == 0) {
            throw ContractViolation("Comb: k and the register count must be positive");
        }
        const std::size_t q = k_ * w_ + mq_;
        if (q >= 63 || pow2(q) > cap) {
            throw DimensionError("Comb: work space 2^" + std::to_string(q) +
                                 " exceeds dimension cap " + std::to_string(cap));
        }
        if (teeth_.size() != holes_.size() + 1) {
            throw ContractViolation("Comb: " + std::to_string(holes_.size()) + " holes need " +
                                    std::to_string(holes_.size() + 1) + " teeth, got " +
                                    std::to_string(teeth_.size()));
        }
        for (std::size_t i = 0; i < holes_.size(); ++i) {
            if (holes_[i] >= w_) {
                throw ContractViolation("Comb: hole " + std::to_string(i + 1) +
                                        " targets register " + std::to_string(holes_[i]) +
                                        " of " + std::to_string(w_));
            }
        }
        for (std::size_t j = 0; j < teeth_.size(); ++j) {
            if (teeth_[j].in_dim() != work_dim() || teeth_[j].out_dim() != work_dim()) {
                throw DimensionError("Comb: tooth " + std::to_string(j) + " acts on dimension " +
                                     std::to_string(teeth_[j].in_dim()) + ", work space is " +
                                     std::to_string(work_dim()));
            }
        }
    }

    /// Identity teeth, no memory, holes on the given registers.
    static Comb with_layout(std::size_t k, std::size_t registers,
                            std::vector<std::size_t> hole_register, std::size_t memory_qubits = 0) {
        const std::size_t d = pow2(k * registers + memory_qubits);
        std::vector<Channel> teeth(hole_register.size() + 1, Channel::identity(d));
        return Comb(k, registers, memory_qubits, std::move(hole_register), std::move(teeth));
    }

    /// Trivial parallel comb: hole i on its own register i.
    static Comb parallel(std::size_t k, std::size_t n) {
        std::vector<std::size_t> holes(n);
        std::iota(holes.begin(), holes.end(), std::size_t{0});
        return with_layout(k, std::max<std::size_t>(n, 1), std::move(holes));
    }

    /// All n holes in sequence on a single register.
    static Comb sequential(std::size_t k, std::size_t n) {
        return with_layout(k, 1, std::vector<std::size_t>(n, 0));
    }

    /// Five holes on three registers: holes 1, 2 on register 1, holes 3, 5 on
    /// register 2, hole 4 on register 3.
    static Comb five_hole_network(std::size_t k = 1) { return with_layout(k, 3, {0, 0, 1, 2, 1}); }

    [[nodiscard]] std::size_t k() const noexcept { return k_; }
    [[nodiscard]] std::size_t registers() const noexcept { return w_; }
    [[nodiscard]] std::size_t memory_qubits() const noexcept { return mq_; }
    [[nodiscard]] std::size_t n_holes() const noexcept { return holes_.size(); }
    [[nodiscard]] const std::vector<std::size_t> &hole_register() const noexcept { return holes_; }
    [[nodiscard]] const std::vector<Channel> &teeth() const noexcept { return teeth_; }
    /// 2^{k W}
    [[nodiscard]] std::size_t register_dim() const { return pow2(k_ * w_); }
    /// 2^{k W + memory}
    [[nodiscard]] std::size_t work_dim() const { return pow2(k_ * w_ + mq_); }

    /**
     * @brief The channel on X^W obtained by plugging `rounds` into the holes
     * in order. Kraus operators with Frobenius norm below 1e-14 are dropped.
     */
    [[nodiscard]] Channel plug(const std::vector<Channel> &rounds) const {
        if (rounds.size() != holes_.size()) {
            throw ContractViolation("plug: comb has " + std::to_string(holes_.size()) +
                                    " holes, got " + std::to_string(rounds.size()) +
                                    " channels");
        }
        const std::size_t hole_dim = pow2(k_);
        for (std::size_t i = 0; i < rounds.size(); ++i) {
            if (rounds[i].in_dim() != hole_dim || rounds[i].out_dim() != hole_dim) {
                throw DimensionError("plug: channel for hole " + std::to_string(i + 1) +
                                     " is not 2^k-dimensional");
            }
        }
        const std::size_t dx = register_dim();
        const std::size_t dm = pow2(mq_);
        const std::size_t d = work_dim();

        // |x> -> |x>|0_M>
        ComplexMatrix init(d, dx);
        for (std::size_t x = 0; x < dx; ++x) {
            init(x * dm, x) = 1.0;
        }
        std::vector<ComplexMatrix> ops{init};

        auto advance = [&](const std::vector<ComplexMatrix> &step) {
            std::vector<ComplexMatrix> next;
            next.reserve(ops.size() * step.size());
            for (const auto &s : step) {
                for (const auto &k : ops) {
                    ComplexMatrix p = s * k;
                    if (p.frobenius_norm() > 1e-14) {
                        next.push_back(std::move(p));
                    }
                }
            }
            if (next.size() > kMaxKraus) {
                throw DimensionError("plug: Kraus rank exceeds " + std::to_string(kMaxKraus));
            }
            ops = std::move(next);
        };

        advance(teeth_[0].kraus());
        for (std::size_t i = 0; i < holes_.size(); ++i) {
            const std::size_t r = holes_[i];
            const std::size_t before = pow2(k_ * r);
            const std::size_t after = pow2(k_ * (w_ - r - 1) + mq_);
            std::vector<ComplexMatrix> lifted;
            for (const auto &kr : rounds[i].kraus()) {
                lifted.push_back(kron(kron(ComplexMatrix::identity(before), kr, d),
                                      ComplexMatrix::identity(after), d));
            }
            advance(lifted);
            advance(teeth_[i + 1].kraus());
        }

        // Trace out the memory: K_m = (1 (x) <m|) K.
        std::vector<ComplexMatrix> out;
        for (const auto &k : ops) {
            for (std::size_t m = 0; m < dm; ++m) {
                ComplexMatrix km(dx, dx);
                for (std::size_t y = 0; y < dx; ++y) {
                    for (std::size_t x = 0; x < dx; ++x) {
                        km(y, x) = k(y * dm + m, x);
                    }
                }
                if (km.frobenius_norm() > 1e-14) {
                    out.push_back(std::move(km));
                }
            }
        }
        Channel result(std::move(out));
        if (result.kraus().size() > dx * dx) {
            return result.canonicalized();
        }
        return result;
    }

    /// Plugs unitary channels.
    [[nodiscard]] Channel plug_unitaries(const std::vector<ComplexMatrix> &rounds) const {
        std::vector<Channel> chans;
        chans.reserve(rounds.size());
        for (const auto &u : rounds) {
            chans.push_back(Channel::unitary(u));
        }
        return plug(chans);
    }

  private:
    static constexpr std::size_t kMaxKraus = 1U << 14;

    std::size_t k_;
    std::size_t w_;
    std::size_t mq_;
    std::vector<std::size_t> holes_;
    std::vector<Channel> teeth_;
};

/// Operation from the tooth palette, acting on the listed qubit wires of the
/// work space (registers first, then memory).
struct PaletteOp {
    std::string gate; ///< identity, hadamard, phase, cnot, dephasing, depolarizing, amplitude-damping
    std::vector<std::size_t> wires;
    double parameter = 0.0; ///< angle for phase, probability for the noise channels

    friend bool operator==(const PaletteOp &, const PaletteOp &) = default;
};

/// Register permutation followed by palette operations, in order.
struct ToothDescriptor {
    std::vector<std::size_t> permutation; ///< empty means identity
    std::vector<PaletteOp> ops;

    friend bool operator==(const ToothDescriptor &, const ToothDescriptor &) = default;
};

inline const std::vector<std::string> &palette_gates() {
    static const std::vector<std::string> names{"identity",   "hadamard",     "phase",
                                                "cnot",       "dephasing",    "depolarizing",
                                                "amplitude-damping"};
    return names;
}

/// Channel of a palette gate on its own wires.
inline Channel palette_channel(const PaletteOp &op) {
    const std::size_t arity = op.gate == "cnot" ? 2 : 1;
    if (op.wires.size() != arity) {
        throw ContractViolation("palette gate '" + op.gate + "' takes " + std::to_string(arity) +
                                " wire(s), got " + std::to_string(op.wires.size()));
    }
    if (op.gate == "identity") {
        return Channel::identity(2);
    }
    if (op.gate == "hadamard") {
        return Channel::unitary(hadamard());
    }
    if (op.gate == "phase") {
        return Channel::unitary(phase_gate(op.parameter));
    }
    if (op.gate == "cnot") {
        return Channel::unitary(ComplexMatrix{{1.0, 0.0, 0.0, 0.0},
                                              {0.0, 1.0, 0.0, 0.0},
                                              {0.0, 0.0, 0.0, 1.0},
                                              {0.0, 0.0, 1.0, 0.0}});
    }
    if (op.gate == "dephasing") {
        return Channel::dephasing(op.parameter);
    }
    if (op.gate == "depolarizing") {
        return Channel::depolarizing(op.parameter);
    }
    if (op.gate == "amplitude-damping") {
        return Channel::amplitude_damping(op.parameter);
    }
    throw ContractViolation("unknown palette gate '" + op.gate + "'");
}

/// Tooth channel on the work space of a comb with W registers of k qubits
/// and `memory_qubits` memory qubits.
inline Channel build_tooth(const ToothDescriptor &desc, std::size_t k, std::size_t registers,
                           std::size_t memory_qubits) {
    const std::size_t nq = k * registers + memory_qubits;
    Channel tooth = Channel::identity(pow2(nq));
    if (!desc.permutation.empty()) {
        if (desc.permutation.size() != registers) {
            throw ContractViolation("tooth permutation has " +
                                    std::to_string(desc.permutation.size()) + " entries for " +
                                    std::to_string(registers) + " registers");
        }
        tooth = Channel::unitary(register_permutation(desc.permutation, k, memory_qubits));
    }
    for (const auto &op : desc.ops) {
        std::vector<ComplexMatrix> lifted;
        const Channel gate = palette_channel(op);
        for (const auto &kr : gate.kraus()) {
            lifted.push_back(lift_operator(kr, op.wires, nq));
        }
        tooth = compose(Channel(std::move(lifted)), tooth);
    }
    return tooth;
}

/// Random CPTP map on dimension d with `kraus_count` Kraus operators, from
/// a Haar isometry d -> d * kraus_count.
inline Channel random_channel(std::size_t d, std::size_t kraus_count, Rng &rng) {
    if (kraus_count == 0) {
        throw ContractViolation("random_channel: kraus_count must be positive");
    }
    const ComplexMatrix v = random_unitary(d * kraus_count, rng);
    std::vector<ComplexMatrix> ks;
    for (std::size_t e = 0; e < kraus_count; ++e) {
        ComplexMatrix k(d, d);
        for (std::size_t a = 0; a < d; ++a) {
            for (std::size_t b = 0; b < d; ++b) {
                k(a, b) = v(e * d + a, b);
            }
        }
        ks.push_back(std::move(k));
    }
    return Channel(std::move(ks));
}

/**
 * @brief Random comb for n holes with k = 1: W in 1..min(n, 3) registers,
 * up to one memory qubit, random hole placement, and teeth that are either
 * Haar unitaries or random two-Kraus channels.
 */
inline Comb random_comb(std::size_t n, Rng &rng) {
    const std::size_t w_max = std::clamp<std::size_t>(n, 1, 3);
    const std::size_t w = 1 + static_cast<std::size_t>(rng.below(w_max));
    const std::size_t mq = static_cast<std::size_t>(rng.below(2));
    std::vector<std::size_t> holes(n);
    for (auto &h : holes) {
        h = static_cast<std::size_t>(rng.below(w));
    }
    const std::size_t d = pow2(w + mq);
    std::vector<Channel> teeth;
    for (std::size_t j = 0; j <= n; ++j) {
        if (rng.bernoulli(0.5)) {
            teeth.push_back(Channel::unitary(random_unitary(d, rng)));
        } else {
            teeth.push_back(random_channel(d, 2, rng));
        }
    }
    return Comb(1, w, mq, std::move(holes), std::move(teeth));
}

} // namespace vdqc
