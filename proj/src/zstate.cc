#include "zdistill/zstate.h"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace zdistill {

namespace {

std::vector<RegisterId> sorted_registers(std::vector<RegisterId> regs) {
    std::sort(regs.begin(), regs.end());
    for (size_t i = 1; i < regs.size(); ++i) {
        if (regs[i - 1].label == regs[i].label) {
            throw std::invalid_argument("duplicate register label '" + regs[i].label + "'");
        }
    }
    return regs;
}

void require_register(const BlockSum &a, const std::string &label, const char *op) {
    if (a.find_register(label) == nullptr) {
        throw std::invalid_argument(std::string(op) + ": unknown register '" + label + "'");
    }
}

}  // namespace

BlockProduct BlockProduct::make(std::vector<ZBlock> blocks) {
    std::sort(blocks.begin(), blocks.end());
    for (size_t i = 0; i < blocks.size(); ++i) {
        if (blocks[i].k > blocks[i].reg.width) {
            throw std::invalid_argument("block on '" + blocks[i].reg.label + "' has k > width");
        }
        if (i > 0 && blocks[i - 1].reg.label == blocks[i].reg.label) {
            throw std::invalid_argument("duplicate register label '" + blocks[i].reg.label + "'");
        }
    }
    return BlockProduct{std::move(blocks)};
}

std::vector<RegisterId> BlockProduct::registers() const {
    std::vector<RegisterId> regs;
    regs.reserve(blocks.size());
    for (const auto &b : blocks) {
        regs.push_back(b.reg);
    }
    return regs;
}

const ZBlock *BlockProduct::find(const std::string &label) const {
    for (const auto &b : blocks) {
        if (b.reg.label == label) {
            return &b;
        }
    }
    return nullptr;
}

BlockSum BlockSum::zero(std::vector<RegisterId> registers) {
    BlockSum s;
    s.registers_ = sorted_registers(std::move(registers));
    return s;
}

BlockSum BlockSum::unit() {
    BlockSum s;
    s.terms_.push_back(Term{Rational(1), BlockProduct{}});
    return s;
}

BlockSum BlockSum::from_terms(std::vector<RegisterId> registers, std::vector<Term> terms) {
    BlockSum s;
    s.registers_ = sorted_registers(std::move(registers));
    for (auto &t : terms) {
        t.product = BlockProduct::make(std::move(t.product.blocks));
        if (t.product.registers() != s.registers_) {
            throw std::invalid_argument("BlockSum term does not span the declared register set");
        }
    }
    s.terms_ = std::move(terms);
    s.canonicalize();
    return s;
}

void BlockSum::canonicalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term &a, const Term &b) { return a.product < b.product; });
    std::vector<Term> merged;
    for (auto &t : terms_) {
        if (!merged.empty() && merged.back().product == t.product) {
            merged.back().coeff += t.coeff;
        } else {
            merged.push_back(std::move(t));
        }
    }
    std::erase_if(merged, [](const Term &t) { return t.coeff == 0; });
    terms_ = std::move(merged);
}

uint32_t BlockSum::total_width() const {
    uint32_t w = 0;
    for (const auto &r : registers_) {
        w += r.width;
    }
    return w;
}

const RegisterId *BlockSum::find_register(const std::string &label) const {
    for (const auto &r : registers_) {
        if (r.label == label) {
            return &r;
        }
    }
    return nullptr;
}

std::optional<std::pair<Rational, ZBlock>> BlockSum::single_block() const {
    if (terms_.size() != 1 || terms_[0].product.blocks.size() != 1) {
        return std::nullopt;
    }
    return std::make_pair(terms_[0].coeff, terms_[0].product.blocks[0]);
}

BlockSum BlockSum::operator+(const BlockSum &other) const {
    if (registers_ != other.registers_) {
        throw std::invalid_argument("cannot add BlockSums over different registers");
    }
    BlockSum s = *this;
    s.terms_.insert(s.terms_.end(), other.terms_.begin(), other.terms_.end());
    s.canonicalize();
    return s;
}

BlockSum BlockSum::operator*(const Rational &scale) const {
    BlockSum s = *this;
    for (auto &t : s.terms_) {
        t.coeff *= scale;
    }
    s.canonicalize();
    return s;
}

std::string BlockSum::to_string() const {
    if (terms_.empty()) {
        return "0";
    }
    std::ostringstream out;
    for (size_t i = 0; i < terms_.size(); ++i) {
        if (i > 0) {
            out << '\n';
        }
        out << to_fraction_string(terms_[i].coeff) << " * ";
        const auto &blocks = terms_[i].product.blocks;
        if (blocks.empty()) {
            out << "I";
        }
        for (size_t b = 0; b < blocks.size(); ++b) {
            if (b > 0) {
                out << " ⊗ ";
            }
            out << "Z_" << blocks[b].k << "^" << blocks[b].reg.label << "(" << blocks[b].reg.width
                << ")";
        }
    }
    return out.str();
}

std::ostream &operator<<(std::ostream &out, const BlockSum &sum) {
    return out << sum.to_string();
}

BlockSum z_state(uint32_t k, uint32_t n, const std::string &label) {
    if (k > n) {
        throw std::invalid_argument("z_state: k = " + std::to_string(k) + " exceeds n = " +
                                    std::to_string(n));
    }
    RegisterId reg{label, n};
    return BlockSum::from_terms({reg}, {{Rational(1), BlockProduct{{ZBlock{reg, k}}}}});
}

BlockSum tensor(const BlockSum &a, const BlockSum &b) {
    std::vector<RegisterId> regs = a.registers();
    regs.insert(regs.end(), b.registers().begin(), b.registers().end());
    std::set<std::string> seen;
    for (const auto &r : regs) {
        if (!seen.insert(r.label).second) {
            throw std::invalid_argument("tensor: register '" + r.label + "' appears in both operands");
        }
    }
    std::vector<BlockSum::Term> terms;
    terms.reserve(a.terms().size() * b.terms().size());
    for (const auto &ta : a.terms()) {
        for (const auto &tb : b.terms()) {
            std::vector<ZBlock> blocks = ta.product.blocks;
            blocks.insert(blocks.end(), tb.product.blocks.begin(), tb.product.blocks.end());
            terms.push_back({ta.coeff * tb.coeff, BlockProduct{std::move(blocks)}});
        }
    }
    return BlockSum::from_terms(std::move(regs), std::move(terms));
}

BlockSum contract(const BlockSum &bra, const BlockSum &state) {
    std::vector<RegisterId> rest;
    for (const auto &r : state.registers()) {
        if (bra.find_register(r.label) == nullptr) {
            rest.push_back(r);
        }
    }
    for (const auto &r : bra.registers()) {
        const RegisterId *match = state.find_register(r.label);
        if (match == nullptr || match->width != r.width) {
            throw std::invalid_argument("contract: register '" + r.label +
                                        "' is missing from the state or has a different width");
        }
    }

    std::vector<BlockSum::Term> terms;
    for (const auto &ts : state.terms()) {
        for (const auto &tb : bra.terms()) {
            Rational factor = ts.coeff * tb.coeff;
            for (const auto &block : tb.product.blocks) {
                const ZBlock *other = ts.product.find(block.reg.label);
                if (other->k != block.k) {
                    factor = 0;
                    break;
                }
                factor *= Rational(binom(block.reg.width, block.k));
            }
            if (factor == 0) {
                continue;
            }
            std::vector<ZBlock> remaining;
            for (const auto &block : ts.product.blocks) {
                if (bra.find_register(block.reg.label) == nullptr) {
                    remaining.push_back(block);
                }
            }
            terms.push_back({factor, BlockProduct{std::move(remaining)}});
        }
    }
    return BlockSum::from_terms(std::move(rest), std::move(terms));
}

Rational inner_product(const BlockSum &a, const BlockSum &b) {
    if (a.registers() != b.registers()) {
        throw std::invalid_argument("inner_product: operands are over different registers");
    }
    BlockSum scalar = contract(a, b);
    return scalar.is_zero() ? Rational(0) : scalar.terms().front().coeff;
}

Rational norm_sq(const BlockSum &a) {
    return inner_product(a, a);
}

BlockSum split_register(const BlockSum &a, const std::string &label, uint32_t M,
                        const std::pair<std::string, std::string> &new_labels) {
    require_register(a, label, "split_register");
    const auto &[left, right] = new_labels;
    if (left == right) {
        throw std::invalid_argument("split_register: new labels must differ");
    }
    for (const auto &r : a.registers()) {
        if (r.label != label && (r.label == left || r.label == right)) {
            throw std::invalid_argument("split_register: label '" + r.label + "' already in use");
        }
    }
    uint32_t width = a.find_register(label)->width;
    if (M > width) {
        throw std::invalid_argument("split_register: M exceeds register width");
    }
    RegisterId left_reg{left, M};
    RegisterId right_reg{right, width - M};

    std::vector<RegisterId> regs;
    for (const auto &r : a.registers()) {
        if (r.label != label) {
            regs.push_back(r);
        }
    }
    regs.push_back(left_reg);
    regs.push_back(right_reg);

    std::vector<BlockSum::Term> terms;
    for (const auto &t : a.terms()) {
        std::vector<ZBlock> rest;
        uint32_t k = 0;
        for (const auto &b : t.product.blocks) {
            if (b.reg.label == label) {
                k = b.k;
            } else {
                rest.push_back(b);
            }
        }
        // Summands with j > M or k - j > N - M vanish (binomial zero convention).
        uint32_t lo = k > width - M ? k - (width - M) : 0;
        uint32_t hi = std::min(k, M);
        for (uint32_t j = lo; j <= hi; ++j) {
            std::vector<ZBlock> blocks = rest;
            blocks.push_back({left_reg, j});
            blocks.push_back({right_reg, k - j});
            terms.push_back({t.coeff, BlockProduct{std::move(blocks)}});
        }
    }
    return BlockSum::from_terms(std::move(regs), std::move(terms));
}

MergeResult merge_registers(const BlockSum &a, const std::string &left, const std::string &right,
                            const std::string &new_label) {
    require_register(a, left, "merge_registers");
    require_register(a, right, "merge_registers");
    if (left == right) {
        throw std::invalid_argument("merge_registers: cannot merge a register with itself");
    }
    for (const auto &r : a.registers()) {
        if (r.label == new_label && r.label != left && r.label != right) {
            throw std::invalid_argument("merge_registers: label '" + new_label + "' already in use");
        }
    }
    uint32_t wl = a.find_register(left)->width;
    uint32_t wr = a.find_register(right)->width;
    RegisterId merged{new_label, wl + wr};

    struct Group {
        std::vector<uint32_t> left_ks;
        Rational coeff;
        bool uniform = true;
    };
    std::map<std::pair<BlockProduct, uint32_t>, Group> groups;
    for (const auto &t : a.terms()) {
        std::vector<ZBlock> rest;
        uint32_t kl = 0;
        uint32_t kr = 0;
        for (const auto &b : t.product.blocks) {
            if (b.reg.label == left) {
                kl = b.k;
            } else if (b.reg.label == right) {
                kr = b.k;
            } else {
                rest.push_back(b);
            }
        }
        auto [it, fresh] = groups.try_emplace({BlockProduct{std::move(rest)}, kl + kr});
        Group &g = it->second;
        if (fresh) {
            g.coeff = t.coeff;
        } else if (g.coeff != t.coeff) {
            g.uniform = false;
        }
        g.left_ks.push_back(kl);
    }

    std::vector<BlockSum::Term> terms;
    for (const auto &[key, g] : groups) {
        uint32_t k = key.second;
        uint32_t lo = k > wr ? k - wr : 0;
        uint32_t hi = std::min(k, wl);
        // Canonical input holds each left_k at most once per group.
        if (!g.uniform || g.left_ks.size() != hi - lo + 1) {
            return {a, false};
        }
        std::vector<ZBlock> blocks = key.first.blocks;
        blocks.push_back({merged, k});
        terms.push_back({g.coeff, BlockProduct{std::move(blocks)}});
    }

    std::vector<RegisterId> regs;
    for (const auto &r : a.registers()) {
        if (r.label != left && r.label != right) {
            regs.push_back(r);
        }
    }
    regs.push_back(merged);
    return {BlockSum::from_terms(std::move(regs), std::move(terms)), true};
}

BlockSum bit_flip(const BlockSum &a) {
    std::vector<BlockSum::Term> terms = a.terms();
    for (auto &t : terms) {
        for (auto &b : t.product.blocks) {
            b.k = b.reg.width - b.k;
        }
    }
    return BlockSum::from_terms(a.registers(), std::move(terms));
}

BlockSum relabel(const BlockSum &a, const std::string &from, const std::string &to) {
    require_register(a, from, "relabel");
    std::vector<RegisterId> regs = a.registers();
    for (auto &r : regs) {
        if (r.label == from) {
            r.label = to;
        }
    }
    std::vector<BlockSum::Term> terms = a.terms();
    for (auto &t : terms) {
        for (auto &b : t.product.blocks) {
            if (b.reg.label == from) {
                b.reg.label = to;
            }
        }
    }
    return BlockSum::from_terms(std::move(regs), std::move(terms));
}

}  // namespace zdistill
