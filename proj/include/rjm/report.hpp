#pragma once

#include <string>
#include <vector>

#include "rjm/poly.hpp"

namespace rjm {

struct Mismatch {
  std::string where;
  std::string lhs;
  std::string rhs;
};

/// Outcome of one verification; passes iff no mismatch was recorded.
struct CheckReport {
  static constexpr std::size_t kMaxListed = 25;

  std::string name;
  bool pass = true;
  std::size_t compared = 0;
  std::size_t mismatch_count = 0;
  std::vector<Mismatch> mismatches;
  Json details = Json::object();

  explicit CheckReport(std::string n = {}) : name(std::move(n)) {}

  void fail(std::string where, std::string lhs, std::string rhs);
  bool expect(bool ok, const std::string& where, const std::string& lhs = {},
              const std::string& rhs = {});
  bool expect_equal(const std::string& where, const Poly& lhs, const Poly& rhs);
  bool expect_equal(const std::string& where, const Rational& lhs, const Rational& rhs);
  void absorb(const CheckReport& sub);

  Json to_json() const;
};

}  // namespace rjm
