#pragma once

// Inner families used in substitution tests: per fan-in m the circuit has
// inputs 0..m-1, a forwarding output gate m, and one internal gate m+1
// computing the family's operation. Shapes satisfy the substitution
// requirements (single output of fan-in 1, admissible numbering).

#include <memory>

#include "paracirc/oracle.hpp"

namespace testing_families {

enum class inner_op { and_all, or_all, not_first };

class inner_oracle : public paracirc::family_oracle {
 public:
  explicit inner_oracle(inner_op op) : op_(op) {}

  std::optional<paracirc::gate_type> type_of(paracirc::gate_id g, std::uint64_t n,
                                             std::uint64_t) const override {
    using paracirc::gate_type;
    if (g < n) return gate_type::input;
    if (g == n) return gate_type::g_or;
    if (g == n + 1) {
      switch (op_) {
        case inner_op::and_all: return gate_type::g_and;
        case inner_op::or_all: return gate_type::g_or;
        case inner_op::not_first: return gate_type::g_not;
      }
    }
    return std::nullopt;
  }

  std::optional<paracirc::gate_id> pth_input(paracirc::gate_id g, std::uint64_t p,
                                             std::uint64_t n, std::uint64_t) const override {
    if (g == n && p == 0) return n + 1;
    if (g == n + 1) {
      if (op_ == inner_op::not_first) {
        if (p == 0 && n > 0) return paracirc::gate_id(0);
      } else if (p < n) {
        return paracirc::gate_id(p);
      }
    }
    return std::nullopt;
  }

  std::uint64_t numbering_bound(std::uint64_t n, std::uint64_t) const override {
    return n + 2;
  }
  std::uint64_t depth_bound(std::uint64_t) const override { return 2; }
  std::uint64_t output_count(std::uint64_t, std::uint64_t) const override { return 1; }

 private:
  inner_op op_;
};

inline std::shared_ptr<paracirc::family_oracle> make_inner(inner_op op) {
  return std::make_shared<inner_oracle>(op);
}

}  // namespace testing_families
