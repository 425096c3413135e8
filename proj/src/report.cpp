#include "rjm/report.hpp"

namespace rjm {

void CheckReport::fail(std::string where, std::string lhs, std::string rhs) {
  pass = false;
  ++mismatch_count;
  if (mismatches.size() < kMaxListed) {
    mismatches.push_back({std::move(where), std::move(lhs), std::move(rhs)});
  }
}

bool CheckReport::expect(bool ok, const std::string& where, const std::string& lhs,
                         const std::string& rhs) {
  ++compared;
  if (!ok) fail(where, lhs, rhs);
  return ok;
}

bool CheckReport::expect_equal(const std::string& where, const Poly& lhs, const Poly& rhs) {
  ++compared;
  if (lhs == rhs) return true;
  fail(where, lhs.to_string(), rhs.to_string());
  return false;
}

bool CheckReport::expect_equal(const std::string& where, const Rational& lhs, const Rational& rhs) {
  ++compared;
  if (lhs == rhs) return true;
  fail(where, to_string(lhs), to_string(rhs));
  return false;
}

void CheckReport::absorb(const CheckReport& sub) {
  compared += sub.compared;
  if (sub.pass) return;
  pass = false;
  mismatch_count += sub.mismatch_count;
  for (const auto& m : sub.mismatches) {
    if (mismatches.size() >= kMaxListed) break;
    mismatches.push_back({sub.name + ": " + m.where, m.lhs, m.rhs});
  }
}

Json CheckReport::to_json() const {
  Json j;
  j["name"] = name;
  j["pass"] = pass;
  j["compared"] = compared;
  j["mismatch_count"] = mismatch_count;
  Json list = Json::array();
  for (const auto& m : mismatches) list.push_back(Json{{"where", m.where}, {"lhs", m.lhs}, {"rhs", m.rhs}});
  j["mismatches"] = list;
  if (!details.empty()) j["details"] = details;
  return j;
}

}  // namespace rjm
