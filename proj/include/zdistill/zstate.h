#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "zdistill/combinatorics.h"

namespace zdistill {

/// A named group of qubits held by one party. Width 0 is permitted so that
/// splitting at an edge yields the empty register carrying Z_0(0).
struct RegisterId {
    std::string label;
    uint32_t width = 0;

    auto operator<=>(const RegisterId &) const = default;
    bool operator==(const RegisterId &) const = default;
};

/// Unnormalized Z_k(width) on one register: every weight-k basis string with amplitude 1.
struct ZBlock {
    RegisterId reg;
    uint32_t k = 0;

    auto operator<=>(const ZBlock &) const = default;
    bool operator==(const ZBlock &) const = default;
};

/// Tensor product of blocks over pairwise-distinct registers, sorted by label.
struct BlockProduct {
    std::vector<ZBlock> blocks;

    /// Sorts by label and rejects duplicate labels or k > width.
    static BlockProduct make(std::vector<ZBlock> blocks);

    std::vector<RegisterId> registers() const;
    const ZBlock *find(const std::string &label) const;

    auto operator<=>(const BlockProduct &) const = default;
    bool operator==(const BlockProduct &) const = default;
};

/// Rational-weighted sum of BlockProducts over one fixed register set.
///
/// Always canonical: like terms merged, zero coefficients dropped, terms
/// sorted. Because of that, two BlockSums are equal as states iff they
/// compare equal here, provided they are expressed in the same register
/// partition (Z_1(1)Z_0(2)+Z_0(1)Z_1(2) and Z_1(3) are the same vector but
/// different BlockSums until merged).
class BlockSum {
   public:
    struct Term {
        Rational coeff;
        BlockProduct product;

        bool operator==(const Term &) const = default;
    };

    /// The zero vector over no registers.
    BlockSum() = default;

    static BlockSum zero(std::vector<RegisterId> registers);
    /// Scalar 1 over the empty register set; the identity for tensor().
    static BlockSum unit();
    /// Validates that every term spans exactly `registers`, then canonicalizes.
    static BlockSum from_terms(std::vector<RegisterId> registers, std::vector<Term> terms);

    const std::vector<RegisterId> &registers() const { return registers_; }
    const std::vector<Term> &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    uint32_t total_width() const;
    const RegisterId *find_register(const std::string &label) const;

    /// The lone term's block when this is c * Z_k(n) on a single register.
    std::optional<std::pair<Rational, ZBlock>> single_block() const;

    BlockSum operator+(const BlockSum &other) const;
    BlockSum operator*(const Rational &scale) const;
    bool operator==(const BlockSum &) const = default;

    /// One term per line: `coeff * Z_k^label(n) ⊗ ...`. The zero sum prints "0",
    /// the empty product prints "I".
    std::string to_string() const;

   private:
    void canonicalize();

    std::vector<RegisterId> registers_;
    std::vector<Term> terms_;
};

std::ostream &operator<<(std::ostream &out, const BlockSum &sum);

BlockSum z_state(uint32_t k, uint32_t n, const std::string &label);

/// Distributive product; the register label sets must be disjoint.
BlockSum tensor(const BlockSum &a, const BlockSum &b);

/// Factor-wise: <Z_j(n)|Z_l(n)> is C(n, j) when j == l and 0 otherwise.
Rational inner_product(const BlockSum &a, const BlockSum &b);

Rational norm_sq(const BlockSum &a);

/// Partial inner product: contracts `bra` against the registers of `state`
/// it spans and returns the state left on the remaining registers.
BlockSum contract(const BlockSum &bra, const BlockSum &state);

/// Replaces each Z_k(N) on `label` with sum_j Z_j(M) Z_{k-j}(N-M), putting the
/// first M qubits on `new_labels.first` and the rest on `new_labels.second`.
BlockSum split_register(const BlockSum &a, const std::string &label, uint32_t M,
                        const std::pair<std::string, std::string> &new_labels);

struct MergeResult {
    BlockSum state;
    bool collected = false;
};

/// Inverse of split_register. All-or-nothing: every group of terms that agree
/// off the two registers and share a total excitation count must carry every
/// admissible split with one common coefficient. Otherwise the input is
/// returned unchanged with collected = false.
MergeResult merge_registers(const BlockSum &a, const std::string &left, const std::string &right,
                            const std::string &new_label);

/// 0 <-> 1 on every qubit: Z_k(n) becomes Z_{n-k}(n).
BlockSum bit_flip(const BlockSum &a);

BlockSum relabel(const BlockSum &a, const std::string &from, const std::string &to);

}  // namespace zdistill
