#pragma once

#include <optional>
#include <string>

#include "condmorph/error.hpp"

#ifndef CONDMORPH_TEST_DATA
#define CONDMORPH_TEST_DATA "."
#endif

namespace testutil {

// Error code thrown by fn, or nullopt when it returns normally.
template <typename Fn>
std::optional<condmorph::ErrorCode> error_of(Fn&& fn) {
  try {
    fn();
  } catch (const condmorph::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline std::string data_path(const std::string& name) {
  return std::string(CONDMORPH_TEST_DATA) + "/" + name;
}

inline std::string cifar_fixture() { return data_path("cifar10_data_batch_1_head200.bin"); }

}  // namespace testutil

#define EXPECT_ERROR_CODE(stmt, code) \
  EXPECT_EQ(::testutil::error_of([&] { (void)(stmt); }), std::optional(code))
