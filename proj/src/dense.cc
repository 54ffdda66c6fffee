#include "zdistill/dense.h"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace zdistill {

namespace {

void check_cap(uint32_t width, uint32_t cap) {
    if (cap > 63) {
        throw std::invalid_argument("dense cap must be at most 63 qubits");
    }
    if (width > cap) {
        throw std::out_of_range("dense state of " + std::to_string(width) +
                                " qubits exceeds the cap of " + std::to_string(cap));
    }
}

/// Calls f(word) for each n-bit word with exactly k set bits, in increasing order.
template <typename F>
void for_each_weight_k(uint32_t k, uint32_t n, F &&f) {
    if (k > n) {
        return;
    }
    if (k == 0) {
        f(uint64_t{0});
        return;
    }
    uint64_t word = (uint64_t{1} << k) - 1;
    const uint64_t limit = uint64_t{1} << n;
    while (word < limit) {
        f(word);
        // Next word with the same popcount (Gosper).
        uint64_t low = word & -word;
        uint64_t ripple = word + low;
        word = ripple | (((word ^ ripple) >> 2) / low);
    }
}

Rational self_inner(const DenseState &s) {
    Rational total = 0;
    for (const auto &[bits, amp] : s.amplitudes) {
        total += amp * amp;
    }
    return total;
}

}  // namespace

uint32_t DenseState::width() const {
    uint32_t w = 0;
    for (const auto &r : registers) {
        w += r.width;
    }
    return w;
}

Rational DenseState::amplitude(uint64_t bits) const {
    auto it = amplitudes.find(bits);
    return it == amplitudes.end() ? Rational(0) : it->second;
}

void DenseState::add(uint64_t bits, const Rational &value) {
    if (value == 0) {
        return;
    }
    auto [it, fresh] = amplitudes.try_emplace(bits, value);
    if (!fresh) {
        it->second += value;
        if (it->second == 0) {
            amplitudes.erase(it);
        }
    }
}

std::string bits_to_string(uint64_t bits, uint32_t width) {
    std::string s(width, '0');
    for (uint32_t i = 0; i < width; ++i) {
        if ((bits >> i) & 1) {
            s[i] = '1';
        }
    }
    return s;
}

std::string DenseState::dump() const {
    std::map<std::string, Rational> sorted;
    for (const auto &[bits, amp] : amplitudes) {
        sorted.emplace(bits_to_string(bits, width()), amp);
    }
    std::ostringstream out;
    for (const auto &[s, amp] : sorted) {
        out << s << ' ' << to_fraction_string(amp) << '\n';
    }
    return out.str();
}

DenseState dense_z(uint32_t k, uint32_t n, uint32_t cap, const std::string &label) {
    check_cap(n, cap);
    if (k > n) {
        throw std::invalid_argument("dense_z: k exceeds n");
    }
    DenseState s;
    s.registers.push_back({label, n});
    for_each_weight_k(k, n, [&](uint64_t word) { s.amplitudes.emplace(word, Rational(1)); });
    return s;
}

DenseState to_dense(const BlockSum &a, uint32_t cap) {
    check_cap(a.total_width(), cap);
    DenseState out;
    out.registers = a.registers();
    for (const auto &term : a.terms()) {
        std::map<uint64_t, Rational> partial{{0, term.coeff}};
        uint32_t offset = 0;
        for (const auto &block : term.product.blocks) {
            std::map<uint64_t, Rational> next;
            for (const auto &[bits, amp] : partial) {
                for_each_weight_k(block.k, block.reg.width,
                                  [&](uint64_t word) { next.emplace(bits | (word << offset), amp); });
            }
            partial = std::move(next);
            offset += block.reg.width;
        }
        for (const auto &[bits, amp] : partial) {
            out.add(bits, amp);
        }
    }
    return out;
}

Rational dense_inner(const DenseState &a, const DenseState &b) {
    if (a.registers != b.registers) {
        throw std::invalid_argument("dense_inner: register layouts differ");
    }
    const auto &small = a.amplitudes.size() <= b.amplitudes.size() ? a : b;
    const auto &large = &small == &a ? b : a;
    Rational total = 0;
    for (const auto &[bits, amp] : small.amplitudes) {
        auto it = large.amplitudes.find(bits);
        if (it != large.amplitudes.end()) {
            total += amp * it->second;
        }
    }
    return total;
}

bool same_amplitudes(const DenseState &a, const DenseState &b) {
    return a.width() == b.width() && a.amplitudes == b.amplitudes;
}

std::optional<Rational> proportionality(const DenseState &a, const DenseState &b) {
    if (a.width() != b.width() || a.amplitudes.size() != b.amplitudes.size() ||
        b.amplitudes.empty()) {
        return std::nullopt;
    }
    std::optional<Rational> ratio;
    auto ia = a.amplitudes.begin();
    for (const auto &[bits, amp] : b.amplitudes) {
        if (ia->first != bits) {
            return std::nullopt;
        }
        Rational r = ia->second / amp;
        if (ratio && *ratio != r) {
            return std::nullopt;
        }
        ratio = r;
        ++ia;
    }
    return ratio;
}

Projection dense_project(const DenseState &state, std::span<const uint32_t> qubits,
                         const DenseState &target) {
    const uint32_t width = state.width();
    if (qubits.empty()) {
        throw std::invalid_argument("dense_project: empty qubit subset");
    }
    if (state.amplitudes.empty()) {
        throw std::invalid_argument("dense_project: zero input state");
    }
    if (target.width() != qubits.size()) {
        throw std::invalid_argument("dense_project: target width does not match the subset size");
    }
    if (target.amplitudes.empty()) {
        throw std::invalid_argument("dense_project: zero target state");
    }
    std::vector<bool> measured(width, false);
    for (uint32_t q : qubits) {
        if (q >= width || measured[q]) {
            throw std::invalid_argument("dense_project: qubit indices must be distinct and in range");
        }
        measured[q] = true;
    }
    std::vector<uint32_t> kept;
    for (uint32_t i = 0; i < width; ++i) {
        if (!measured[i]) {
            kept.push_back(i);
        }
    }

    Projection out;
    uint32_t offset = 0;
    for (const auto &reg : state.registers) {
        uint32_t left = 0;
        for (uint32_t i = offset; i < offset + reg.width; ++i) {
            left += measured[i] ? 0 : 1;
        }
        if (left > 0) {
            out.remainder.registers.push_back({reg.label, left});
        }
        offset += reg.width;
    }

    for (const auto &[bits, amp] : state.amplitudes) {
        uint64_t x = 0;
        for (size_t i = 0; i < qubits.size(); ++i) {
            x |= ((bits >> qubits[i]) & 1) << i;
        }
        auto t = target.amplitudes.find(x);
        if (t == target.amplitudes.end()) {
            continue;
        }
        uint64_t y = 0;
        for (size_t i = 0; i < kept.size(); ++i) {
            y |= ((bits >> kept[i]) & 1) << i;
        }
        out.remainder.add(y, t->second * amp);
    }
    out.weight = self_inner(out.remainder) / (self_inner(state) * self_inner(target));
    return out;
}

DenseState permute_qubits(const DenseState &state, std::span<const uint32_t> perm) {
    const uint32_t width = state.width();
    if (perm.size() != width) {
        throw std::invalid_argument("permute_qubits: permutation size differs from qubit count");
    }
    std::vector<bool> hit(width, false);
    for (uint32_t p : perm) {
        if (p >= width || hit[p]) {
            throw std::invalid_argument("permute_qubits: not a permutation");
        }
        hit[p] = true;
    }
    DenseState out;
    out.registers = state.registers;
    for (const auto &[bits, amp] : state.amplitudes) {
        uint64_t moved = 0;
        for (uint32_t i = 0; i < width; ++i) {
            moved |= ((bits >> i) & 1) << perm[i];
        }
        out.amplitudes.emplace(moved, amp);
    }
    return out;
}

DenseState dense_bit_flip(const DenseState &state) {
    const uint32_t width = state.width();
    const uint64_t mask = width == 64 ? ~uint64_t{0} : (uint64_t{1} << width) - 1;
    DenseState out;
    out.registers = state.registers;
    for (const auto &[bits, amp] : state.amplitudes) {
        out.amplitudes.emplace(bits ^ mask, amp);
    }
    return out;
}

}  // namespace zdistill
