#include "zdistill/verify.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "zdistill/combinatorics.h"
#include "zdistill/distillation.h"
#include "zdistill/oracle.h"
#include "zdistill/zstate.h"

namespace zdistill {

namespace {

class Tally {
   public:
    explicit Tally(std::string name) { result_.name = std::move(name); }

    void check(bool ok, const std::string &cell) {
        ++result_.total;
        if (ok) {
            ++result_.passed;
        } else if (!result_.first_failure) {
            result_.first_failure = cell;
        }
    }

    SweepResult done() { return std::move(result_); }

   private:
    SweepResult result_;
};

std::string cell(std::initializer_list<std::pair<const char *, uint64_t>> fields) {
    std::ostringstream out;
    out << "(";
    bool first = true;
    for (const auto &[name, value] : fields) {
        out << (first ? "" : ", ") << name << "=" << value;
        first = false;
    }
    out << ")";
    return out.str();
}

std::optional<std::vector<Rational>> corrupted(uint32_t k, bool corrupt) {
    if (!corrupt) {
        return std::nullopt;
    }
    return std::vector<Rational>(k + 1, Rational(1));
}

Selection random_selection(uint32_t k, uint32_t n1, uint32_t n2, std::mt19937_64 &rng) {
    auto pick = [&](uint32_t n) {
        std::vector<uint32_t> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        std::shuffle(idx.begin(), idx.end(), rng);
        idx.resize(k);
        return idx;
    };
    Selection s;
    s.from_a = pick(n1);
    s.from_b = pick(n2);
    return s;
}

}  // namespace

SweepResult sweep_vandermonde(uint32_t max_n) {
    Tally t("vandermonde");
    for (uint32_t N = 0; N <= max_n; ++N) {
        for (uint32_t M = 0; M <= N; ++M) {
            for (uint32_t k = 0; k <= N; ++k) {
                t.check(vandermonde_holds(N, M, k), cell({{"N", N}, {"M", M}, {"k", k}}));
            }
        }
    }
    return t.done();
}

SweepResult sweep_norm(uint32_t max_n, uint32_t dense_cap) {
    Tally t("norm");
    for (uint32_t N = 0; N <= max_n; ++N) {
        for (uint32_t k = 0; k <= N; ++k) {
            BlockSum z = z_state(k, N, "q");
            Rational expected(binom(N, k));
            bool ok = norm_sq(z) == expected;
            if (N <= dense_cap) {
                DenseState d = dense_z(k, N, dense_cap);
                ok = ok && dense_inner(d, d) == expected && to_dense(z, dense_cap) == d;
            }
            t.check(ok, cell({{"N", N}, {"k", k}}));
        }
    }
    return t.done();
}

SweepResult sweep_composition(uint32_t max_n, uint32_t dense_cap) {
    Tally t("composition");
    for (uint32_t N = 0; N <= max_n; ++N) {
        for (uint32_t k = 0; k <= N; ++k) {
            DenseState expected = dense_z(k, N, dense_cap);
            BlockSum z = z_state(k, N, "q");
            for (uint32_t M = 0; M <= N; ++M) {
                BlockSum split = split_register(z, "q", M, {"q0", "q1"});
                MergeResult back = merge_registers(split, "q0", "q1", "q");
                bool ok = same_amplitudes(to_dense(split, dense_cap), expected) && back.collected &&
                          back.state == z;
                t.check(ok, cell({{"N", N}, {"k", k}, {"M", M}}));
            }
        }
    }
    return t.done();
}

SweepResult sweep_bit_flip(uint32_t max_n, uint32_t dense_cap) {
    Tally t("bit_flip");
    for (uint32_t N = 0; N <= max_n; ++N) {
        for (uint32_t k = 0; k <= N; ++k) {
            BlockSum flipped = bit_flip(z_state(k, N, "q"));
            bool ok = flipped == z_state(N - k, N, "q") &&
                      to_dense(flipped, dense_cap) == dense_bit_flip(dense_z(k, N, dense_cap)) &&
                      bit_flip(flipped) == z_state(k, N, "q");
            t.check(ok, cell({{"N", N}, {"k", k}}));
        }
    }
    return t.done();
}

SweepResult sweep_permutation(uint32_t max_n, uint64_t seed, uint32_t dense_cap) {
    Tally t("permutation");
    std::mt19937_64 rng(seed);
    const uint32_t top = std::min<uint32_t>(max_n, 10);
    for (uint32_t N = 1; N <= top; ++N) {
        for (uint32_t k = 0; k <= N; ++k) {
            DenseState z = dense_z(k, N, dense_cap);
            bool ok = true;
            std::vector<uint32_t> perm(N);
            for (int trial = 0; trial < 50 && ok; ++trial) {
                std::iota(perm.begin(), perm.end(), 0);
                std::shuffle(perm.begin(), perm.end(), rng);
                ok = permute_qubits(z, perm) == z;
            }
            t.check(ok, cell({{"N", N}, {"k", k}}));
        }
    }
    return t.done();
}

SweepResult sweep_distillation(uint32_t max_n, uint32_t max_k, uint32_t dense_cap,
                               bool corrupt_alpha) {
    Tally t("distillation");
    const uint32_t width = std::min(max_n + 2, dense_cap);
    for (uint32_t k = 1; k <= max_k; ++k) {
        for (uint32_t n1 = 2 * k; n1 <= max_n; ++n1) {
            for (uint32_t n2 = 2 * k; n2 <= max_n && n1 + n2 <= width; ++n2) {
                const uint32_t n_out = n1 + n2 - 2 * k;
                DistillOptions opts;
                opts.alpha = corrupted(k, corrupt_alpha);
                DistillOutcome symbolic =
                    distill_step(z_state(k, n1, "A"), z_state(k, n2, "B"), opts);
                Rational p = success_probability(k, n1, n2);
                bool ok = symbolic.collected && symbolic.post_state == z_state(k, n_out, "A") &&
                          symbolic.success_probability == p;
                if (ok) {
                    Projection dense = oracle_distill(k, n1, n2, symbolic.selection, dense_cap,
                                                      opts.alpha);
                    ok = oracle_agrees(dense, k, n_out, p, dense_cap);
                }
                t.check(ok, cell({{"k", k}, {"n1", n1}, {"n2", n2}}));
            }
        }
    }
    return t.done();
}

SweepResult sweep_selection(uint32_t max_n, uint32_t max_k, uint64_t seed, uint32_t dense_cap,
                            bool corrupt_alpha) {
    Tally t("selection");
    std::mt19937_64 rng(seed ^ 0x5eedu);
    const uint32_t width = std::min(max_n + 2, dense_cap);
    for (uint32_t k = 1; k <= max_k; ++k) {
        for (uint32_t n1 = 2 * k; n1 <= max_n; ++n1) {
            for (uint32_t n2 = 2 * k; n2 <= max_n && n1 + n2 <= width; ++n2) {
                const uint32_t n_out = n1 + n2 - 2 * k;
                Rational p = success_probability(k, n1, n2);
                auto alpha = corrupted(k, corrupt_alpha);
                bool ok = true;
                for (int trial = 0; trial < 10 && ok; ++trial) {
                    Selection sel = random_selection(k, n1, n2, rng);
                    ok = oracle_agrees(oracle_distill(k, n1, n2, sel, dense_cap, alpha), k, n_out,
                                       p, dense_cap);
                }
                t.check(ok, cell({{"k", k}, {"n1", n1}, {"n2", n2}}));
            }
        }
    }
    return t.done();
}

std::vector<SweepResult> run_verification(const VerifyConfig &config) {
    if (config.max_n > config.dense_cap) {
        throw std::out_of_range("max_n " + std::to_string(config.max_n) +
                                " exceeds the dense cap " + std::to_string(config.dense_cap));
    }
    return {
        sweep_vandermonde(config.max_n),
        sweep_norm(config.max_n, config.dense_cap),
        sweep_composition(config.max_n, config.dense_cap),
        sweep_bit_flip(config.max_n, config.dense_cap),
        sweep_permutation(config.max_n, config.seed, config.dense_cap),
        sweep_distillation(config.max_n, config.max_k, config.dense_cap, config.corrupt_alpha),
        sweep_selection(config.max_n, config.max_k, config.seed, config.dense_cap,
                        config.corrupt_alpha),
    };
}

}  // namespace zdistill
