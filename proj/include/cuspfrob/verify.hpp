#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cuspfrob/report.hpp"
#include "cuspfrob/triplet.hpp"

namespace cuspfrob {

struct VerifyOptions {
    int K = 2;
    std::optional<int> D;
    std::uint64_t seed = 9001;
    int points = 5;
    std::vector<Rational> smu_values = {rat(1), rat(1, 2), rat(3)};
    int period_order_negative = 6;  // chi < 0
    int period_order_positive = 4;  // chi > 0, symbolic deformations
};

VerifyReport verify_invariants(const Triplet& A, const VerifyOptions& opts);
VerifyReport verify_residue(const Triplet& A, const VerifyOptions& opts);
VerifyReport verify_periods(const Triplet& A, const VerifyOptions& opts);
VerifyReport verify_wdvv(const Triplet& A, const VerifyOptions& opts);
VerifyReport verify_intersection(const Triplet& A, const VerifyOptions& opts);
VerifyReport verify_weyl(const Triplet& A, const VerifyOptions& opts);

std::vector<VerifyReport> verify_all(const Triplet& A, const VerifyOptions& opts);

}  // namespace cuspfrob
